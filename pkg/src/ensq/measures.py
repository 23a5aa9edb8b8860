"""Closed forms and derived measures built on the ensemble quantumness.

Covers the two-pure-state closed form, its links to l1 coherence (single
qubit, incoherent basis) and to concurrence (two qubits), and the
classical-quantum-state measure obtained by reading the block states of
sum_i p_i |i><i| ⊗ rho_i as an ensemble.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .ensemble import Ensemble, quantumness
from .errors import (
    DimensionMismatch,
    NonRealAmplitudes,
    NotUnitary,
    ParamOutOfRange,
    WeightSumInvalid,
)
from .linalg import NormSpec
from .states import DensityMatrix, PureState, _hermitize, projector, schmidt_coefficients

__all__ = [
    "ClassicalQuantumState",
    "bell_phi_plus",
    "coherence_l1_pure_qubit",
    "concurrence_pure_two_qubit",
    "cq_append_ancilla",
    "cq_local_unitary",
    "cq_quantumness",
    "plus_state",
    "pure_pair_quantumness",
    "quantumness_coherence_relation",
    "quantumness_concurrence_relation",
]

_OVERLAP_SLOP = 1e-12


def plus_state() -> PureState:
    """(|0> + |1>) / sqrt(2)."""
    return PureState(np.array([1.0, 1.0]) / math.sqrt(2.0))


def bell_phi_plus() -> PureState:
    """(|00> + |11>) / sqrt(2)."""
    return PureState(np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0))


def pure_pair_quantumness(p1: float, p2: float, c: float) -> float:
    """Trace-norm quantumness of two pure states with overlap magnitude ``c``.

    For the ensemble {(p1, |psi><psi|), (p2, |phi><phi|)} with
    c = |<psi|phi>| the trace norm of the commutator is 2 c sqrt(1 - c^2),
    giving 4 c sqrt(p1 p2) sqrt(1 - c^2).  Maximal at c = 1/sqrt(2).
    """
    p1, p2, c = float(p1), float(p2), float(c)
    if p1 < 0.0 or p2 < 0.0:
        raise ParamOutOfRange(f"probabilities must be nonnegative, got {p1}, {p2}")
    if abs(p1 + p2 - 1.0) > 1e-10:
        raise ParamOutOfRange(f"probabilities sum to {p1 + p2!r}, expected 1")
    if c < -_OVERLAP_SLOP or c > 1.0 + _OVERLAP_SLOP:
        raise ParamOutOfRange(f"overlap magnitude {c!r} outside [0, 1]")
    c = min(max(c, 0.0), 1.0)
    return 4.0 * c * math.sqrt(p1 * p2) * math.sqrt(max(1.0 - c * c, 0.0))


def coherence_l1_pure_qubit(psi: PureState) -> float:
    """l1 coherence 2|alpha beta| of a real-amplitude qubit state."""
    if psi.dim != 2:
        raise DimensionMismatch(f"need a qubit state, got dim {psi.dim}")
    a = psi.amplitudes
    if float(np.abs(a.imag).max()) > 1e-10:
        raise NonRealAmplitudes("amplitudes must be real in the incoherent basis")
    return 2.0 * abs(float(a[0].real) * float(a[1].real))


def concurrence_pure_two_qubit(psi: PureState) -> float:
    """Concurrence 2 a b from the Schmidt coefficients of a two-qubit state."""
    a, b = schmidt_coefficients(psi)
    return 2.0 * a * b


def quantumness_coherence_relation(psi: PureState) -> tuple[float, float]:
    """(M, C_l1) for the equal-weight ensemble {psi, |+>} under the trace norm.

    For real amplitudes these satisfy M = sqrt(1 - C_l1^2) = |alpha^2 - beta^2|.
    """
    coherence = coherence_l1_pure_qubit(psi)
    e = Ensemble(((0.5, projector(psi)), (0.5, projector(plus_state()))))
    return quantumness(e, NormSpec.trace()), coherence


def quantumness_concurrence_relation(psi: PureState) -> tuple[float, float]:
    """(M, C) for the equal-weight ensemble {psi, |phi+>} under the trace norm.

    For a state in Schmidt form alpha |00> + beta |11> these satisfy
    M = sqrt(1 - C^2); the caller is responsible for the Schmidt form,
    since the relation is not basis-free.
    """
    concurrence = concurrence_pure_two_qubit(psi)
    e = Ensemble(((0.5, projector(psi)), (0.5, projector(bell_phi_plus()))))
    return quantumness(e, NormSpec.trace()), concurrence


@dataclass(frozen=True, eq=False)
class ClassicalQuantumState:
    """A classical-quantum state sum_i p_i |i><i| ⊗ rho_i.

    Stored as the classical distribution plus the conditional block states;
    ``matrix()`` materializes the block-diagonal joint density matrix.
    """

    probs: tuple
    blocks: tuple
    _ensemble: Ensemble = field(init=False, repr=False)

    def __post_init__(self) -> None:
        probs = tuple(float(p) for p in self.probs)
        blocks = tuple(
            b if isinstance(b, DensityMatrix) else DensityMatrix(b) for b in self.blocks
        )
        if not probs or len(probs) != len(blocks):
            raise ParamOutOfRange("need matching, nonempty probs and blocks")
        for p in probs:
            if p < 0.0:
                raise ParamOutOfRange(f"negative probability {p!r}")
        total = math.fsum(probs)
        if abs(total - 1.0) > 1e-10:
            raise WeightSumInvalid(f"probabilities sum to {total!r}, expected 1")
        dims = {b.dim for b in blocks}
        if len(dims) > 1:
            raise DimensionMismatch(f"blocks have mixed dimensions {sorted(dims)}")
        object.__setattr__(self, "probs", probs)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "_ensemble", Ensemble(tuple(zip(probs, blocks))))

    @property
    def num_blocks(self) -> int:
        return len(self.blocks)

    @property
    def block_dim(self) -> int:
        return self.blocks[0].dim

    def induced_ensemble(self) -> Ensemble:
        """The ensemble {(p_i, rho_i)} read off the blocks."""
        return self._ensemble

    def matrix(self) -> np.ndarray:
        """The joint density matrix, block-diagonal in the classical index."""
        k, d = self.num_blocks, self.block_dim
        out = np.zeros((k * d, k * d), dtype=complex)
        for i, (p, b) in enumerate(zip(self.probs, self.blocks)):
            out[i * d : (i + 1) * d, i * d : (i + 1) * d] = p * b.matrix
        return out


def cq_quantumness(state: ClassicalQuantumState, spec: NormSpec) -> float:
    """Quantumness of the induced block ensemble; zero iff the blocks commute."""
    return quantumness(state.induced_ensemble(), spec)


def cq_local_unitary(state: ClassicalQuantumState, u) -> ClassicalQuantumState:
    """Conjugate every block by one unitary on the quantum side."""
    u = linalg.as_matrix(u)
    if u.shape[0] != state.block_dim:
        raise DimensionMismatch(
            f"unitary dim {u.shape[0]} does not match block dim {state.block_dim}"
        )
    defect = float(np.abs(u.conj().T @ u - np.eye(state.block_dim)).max())
    if defect > 1e-10:
        raise NotUnitary(f"unitarity defect {defect:.3e}")
    uh = u.conj().T
    blocks = tuple(DensityMatrix(_hermitize(u @ b.matrix @ uh)) for b in state.blocks)
    return ClassicalQuantumState(state.probs, blocks)


def cq_append_ancilla(state: ClassicalQuantumState, sigma) -> ClassicalQuantumState:
    """Attach an uncorrelated ancilla: every block rho_i becomes rho_i ⊗ sigma.

    Under the trace norm the measure scales by trace(sigma^2), so it never
    increases and is preserved exactly when sigma is pure.
    """
    if not isinstance(sigma, DensityMatrix):
        sigma = DensityMatrix(sigma)
    blocks = tuple(
        DensityMatrix(_hermitize(np.kron(b.matrix, sigma.matrix))) for b in state.blocks
    )
    return ClassicalQuantumState(state.probs, blocks)
