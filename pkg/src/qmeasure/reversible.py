"""Reversible measurements on a closed system.

A unitary U is a generalized measurement whose collection holds the single
operator U: the lone outcome has probability one and the post-state is
U|psi>, so the operation is invertible. The converse construction also
works: a complete operator family that is two-sided orthogonal
(M_i^dag M_j = M_i M_j^dag = 0 for i != j) combines with unimodular phases
into a unitary M = sum_m alpha_m M_m. Specializing to projectors gives
P_hat = sum_m alpha_m P_m, and with alpha_m = e^{i lambda_m} this equals
e^{iA} for the observable A with those eigenvalues.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np

from . import linalg
from .errors import (
    CompletenessViolation,
    DimensionMismatch,
    NotUnitary,
    OrthogonalityViolation,
    PhaseNotUnimodular,
)
from .linalg import DEFAULT_TOL, adjoint, as_matrix, freeze, identity
from .measurement import (
    MeasurementOperatorSet,
    Observable,
    Povm,
    ProjectorSet,
    validate_completeness,
)

UNIMODULAR_TOL = 1e-12  # ||alpha|^2 - 1| admitted for phase coefficients


@dataclass(frozen=True, eq=False)
class UnitaryOperator:
    """Square matrix with U^dag U = U U^dag = I within tolerance."""

    matrix: np.ndarray
    tol: InitVar[float] = DEFAULT_TOL

    def __post_init__(self, tol: float):
        mat = as_matrix(self.matrix)
        if mat.shape[0] != mat.shape[1]:
            raise DimensionMismatch(f"unitary must be square, got {mat.shape}")
        left, right = linalg.unitarity_residuals(mat)
        scale = linalg.scale_of(identity(mat.shape[0]))
        if left > tol * scale or right > tol * scale:
            raise NotUnitary(
                f"matrix is not unitary within {tol:g} "
                f"(residuals {left:.3e}, {right:.3e})"
            )
        object.__setattr__(self, "matrix", freeze(mat))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def inverse(self) -> "UnitaryOperator":
        """U^{-1} computed as the adjoint, exact for unitaries."""
        return UnitaryOperator(adjoint(self.matrix))


def _as_unitary(u, tol: float = DEFAULT_TOL) -> UnitaryOperator:
    return u if isinstance(u, UnitaryOperator) else UnitaryOperator(u, tol=tol)


@dataclass(frozen=True, eq=False)
class PhaseVector:
    """Unimodular coefficients alpha_m, each with |alpha_m|^2 = 1."""

    phases: np.ndarray

    def __post_init__(self):
        arr = np.array(self.phases, dtype=np.complex128).reshape(-1)
        if arr.size == 0:
            raise ValueError("phase vector must be nonempty")
        if not np.isfinite(arr).all():
            raise ValueError("phases must be finite")
        worst = float(np.max(np.abs(np.abs(arr) ** 2 - 1.0)))
        if worst > UNIMODULAR_TOL:
            raise PhaseNotUnimodular(
                f"phases deviate from the unit circle by {worst:.3e}"
            )
        object.__setattr__(self, "phases", freeze(arr))

    @classmethod
    def from_angles(cls, angles) -> "PhaseVector":
        """Map real angles lambda_m to e^{i lambda_m}."""
        arr = np.array(angles, dtype=float).reshape(-1)
        return cls(np.exp(1j * arr))

    def __len__(self) -> int:
        return len(self.phases)


def unitary_as_measurement(u, tol: float = DEFAULT_TOL) -> MeasurementOperatorSet:
    """Read a unitary as the singleton measurement collection {U}.

    The set is complete by unitarity, every state yields the unique outcome
    with probability one, and the post-state is U|psi>.
    """
    unit = _as_unitary(u, tol)
    return MeasurementOperatorSet((unit.matrix,))


def _check_pairwise_orthogonality(ops, tol: float) -> None:
    for i, mi in enumerate(ops):
        ni = linalg.frobenius_norm(mi)
        for j, mj in enumerate(ops):
            if i == j:
                continue
            scale = max(1.0, ni * linalg.frobenius_norm(mj))
            left = linalg.frobenius_norm(adjoint(mi) @ mj)
            if left > tol * scale:
                raise OrthogonalityViolation(i, j, left)
            right = linalg.frobenius_norm(mi @ adjoint(mj))
            if right > tol * scale:
                raise OrthogonalityViolation(i, j, right)


def superpose_operators(opset: MeasurementOperatorSet, phases: PhaseVector,
                        tol: float = DEFAULT_TOL) -> UnitaryOperator:
    """Combine a two-sided-orthogonal complete family into the unitary
    M = sum_m alpha_m M_m.

    Preconditions are enforced hard: one phase per operator, two-sided
    pairwise orthogonality, and completeness. Unitarity of the result is
    verified rather than trusted, so a family sneaking past the checks
    still fails loudly instead of returning a non-unitary.
    """
    if len(phases) != len(opset):
        raise DimensionMismatch(
            f"{len(phases)} phases for {len(opset)} operators"
        )
    _check_pairwise_orthogonality(opset.operators, tol)
    report = validate_completeness(opset, tol)
    if not report.passed:
        raise CompletenessViolation(
            f"operator family is not complete (residual {report.residual:.3e})"
        )
    combined = sum(
        alpha * m for alpha, m in zip(phases.phases, opset.operators)
    )
    return UnitaryOperator(combined, tol=tol)


def phase_superpose_projectors(pset: ProjectorSet, phases: PhaseVector,
                               tol: float = DEFAULT_TOL) -> UnitaryOperator:
    """Unitary P_hat = sum_m alpha_m P_m over a complete orthogonal
    projector set; diagonal in the eigenbasis of the generating observable."""
    if not isinstance(pset, ProjectorSet):
        pset = ProjectorSet(tuple(pset), tol=tol)
    if len(phases) != len(pset):
        raise DimensionMismatch(
            f"{len(phases)} phases for {len(pset)} projectors"
        )
    combined = sum(
        alpha * p for alpha, p in zip(phases.phases, pset.projectors)
    )
    return UnitaryOperator(combined, tol=tol)


def exp_observable(obs: Observable, tol: float = DEFAULT_TOL) -> UnitaryOperator:
    """e^{iA} assembled from the spectrum: sum_m e^{i lambda_m} P_m.

    Built from the spectral data directly; ``linalg.expm_oracle`` on i*A is
    the independent cross-check exercised by the test suite.
    """
    phases = PhaseVector.from_angles(obs.eigenvalues)
    combined = sum(
        alpha * p for alpha, (_, p) in zip(phases.phases, obs.spectrum)
    )
    return UnitaryOperator(combined, tol=tol)


def irm_povm(u, tol: float = DEFAULT_TOL) -> Povm:
    """Singleton POVM {U^dag U} of a reversible measurement.

    The lone element equals the identity (within tolerance), so every state
    produces the unique outcome with probability one.
    """
    unit = _as_unitary(u, tol)
    return Povm((adjoint(unit.matrix) @ unit.matrix,), tol=tol)
