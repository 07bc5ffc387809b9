#!/usr/bin/env python3
"""Sweep single-qubit mirrors over (theta, alpha) and confirm that every one
preserves computational-basis probabilities, while a garden-variety unitary
(Hadamard) does not.

Usage: python3 scripts/mirror_sweep.py [--grid 12] [--states 50] [--seed 0]
"""

import argparse

import numpy as np

from qmeasure.gates import HADAMARD
from qmeasure.measurement import QuantumState
from qmeasure.mirror import (
    build_qubit_mirror,
    computational_projector_set,
    verify_probability_preservation,
)
from qmeasure.reversible import UnitaryOperator


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--grid", type=int, default=12, help="points per axis")
    ap.add_argument("--states", type=int, default=50, help="random states per mirror")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    pset = computational_projector_set(2)
    thetas = np.linspace(0.0, 2.0 * np.pi, args.grid, endpoint=False)
    angles = np.linspace(0.0, 2.0 * np.pi, args.grid, endpoint=False)

    worst = 0.0
    for theta in thetas:
        for ang in angles:
            mirror = build_qubit_mirror(theta, np.exp(1j * ang))
            for _ in range(args.states):
                amps = rng.normal(size=2) + 1j * rng.normal(size=2)
                psi = QuantumState(amps, normalize=True)
                rep = verify_probability_preservation(mirror.unitary, pset, psi)
                worst = max(worst, rep.max_deviation)
    total = args.grid * args.grid
    print(f"{total} mirrors x {args.states} states: "
          f"worst probability deviation {worst:.3e}")

    psi0 = QuantumState(np.array([1, 0], dtype=complex))
    rep = verify_probability_preservation(UnitaryOperator(HADAMARD), pset, psi0)
    print(f"Hadamard on |0>: before {rep.probabilities_before}, "
          f"after {rep.probabilities_after} "
          f"(deviation {rep.max_deviation:.2f}, not a mirror)")


if __name__ == "__main__":
    main()
