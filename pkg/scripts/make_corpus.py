"""Regenerate the bundled operator/state corpus under corpus/.

The files double as CLI documentation and as fixtures for the golden-file
tests, so this script is the single source of truth for their contents.
Running it twice in a row is byte-stable.
"""

import argparse
import os

import numpy as np

from qmeasure.fileio import save_operator_file, save_state_file
from qmeasure.gates import (
    BELL_CIRCUIT,
    BELL_LABELS,
    BELL_VECTORS,
    HADAMARD,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    computational_projectors,
)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="corpus", help="output directory")
    args = parser.parse_args()
    os.makedirs(args.out, exist_ok=True)

    def op(name, kind, mats):
        save_operator_file(os.path.join(args.out, name), kind, mats)

    def state(name, amps):
        save_state_file(os.path.join(args.out, name), amps)

    op("projectors_n2.json", "projector_set", computational_projectors(2))
    op("projectors_n4.json", "projector_set", computational_projectors(4))

    op("pauli_x.json", "unitary", [PAULI_X])
    op("pauli_y.json", "unitary", [PAULI_Y])
    op("pauli_z.json", "unitary", [PAULI_Z])
    op("hadamard.json", "unitary", [HADAMARD])
    op("bell_circuit.json", "unitary", [BELL_CIRCUIT])
    # two-qubit mirror used in the Bell comparison walkthrough
    op("mirror_diag.json", "unitary", [np.diag([1, 1j, 1j, 1]).astype(complex)])

    # complete non-projective set: M_0 = |1><0|, M_1 = |0><1|
    m0 = np.array([[0, 0], [1, 0]], dtype=complex)
    m1 = np.array([[0, 1], [0, 0]], dtype=complex)
    op("general_set.json", "measurement_set", [m0, m1])

    # deliberately incomplete: a lone projector cannot resolve the identity
    op("invalid_set.json", "measurement_set", [np.diag([1, 0]).astype(complex)])

    # parity POVM on two qubits: E_0 = P_00 + P_11, E_1 = P_01 + P_10
    p = computational_projectors(4)
    op("povm_parity_n4.json", "povm", [p[0] + p[3], p[1] + p[2]])

    op("observable_z.json", "observable", [PAULI_Z])

    state("state_zero.json", np.array([1, 0], dtype=complex))
    state("state_plus.json", (HADAMARD @ np.array([1, 0], dtype=complex)))
    state("state_00.json", np.array([1, 0, 0, 0], dtype=complex))
    for label, vec in zip(BELL_LABELS, BELL_VECTORS):
        state(f"bell_{label}.json", vec)

    print(f"corpus written to {args.out}/")


if __name__ == "__main__":
    main()
