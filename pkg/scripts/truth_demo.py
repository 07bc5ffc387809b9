#!/usr/bin/env python3
"""Run the compute-then-uncompute protocol: apply U, read the answer, apply
U^dag, and check the original state comes back.

Shows the Bell circuit taking |00> to the maximally entangled pair and back,
then the same round trip for a batch of Haar-random unitaries.

Usage: python3 scripts/truth_demo.py [--trials 20] [--dim 4] [--seed 1]
"""

import argparse

import numpy as np

from qmeasure.gates import BELL_CIRCUIT
from qmeasure.measurement import QuantumState
from qmeasure.mirror import truth_protocol
from qmeasure.reversible import UnitaryOperator


def haar_unitary(rng, n):
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def show(label, transcript):
    print(f"{label}:")
    print(f"  computed  {np.round(transcript.computed.amplitudes, 6)}")
    print(f"  restored  {np.round(transcript.restored.amplitudes, 6)}")
    print(f"  fidelity  {transcript.fidelity:.15f}")
    print(f"  ||U^dag U - I||_F = {transcript.identity_residual:.3e}")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--dim", type=int, default=4)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    zero2 = QuantumState(np.array([1, 0, 0, 0], dtype=complex))
    show("Bell circuit on |00>", truth_protocol(UnitaryOperator(BELL_CIRCUIT), zero2))

    rng = np.random.default_rng(args.seed)
    worst_fid, worst_resid = 1.0, 0.0
    for _ in range(args.trials):
        u = UnitaryOperator(haar_unitary(rng, args.dim))
        amps = rng.normal(size=args.dim) + 1j * rng.normal(size=args.dim)
        t = truth_protocol(u, QuantumState(amps, normalize=True))
        worst_fid = min(worst_fid, t.fidelity)
        worst_resid = max(worst_resid, t.identity_residual)
    print(f"{args.trials} random dim-{args.dim} unitaries: "
          f"worst fidelity {worst_fid:.15f}, "
          f"worst identity residual {worst_resid:.3e}")


if __name__ == "__main__":
    main()
