"""Quantum states and channels on finite-dimensional Hilbert spaces.

Density matrices, pure states, Bloch-sphere qubits, Kraus channels, and
seeded random generation (Haar pure states, Ginibre density matrices,
Haar unitaries).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import (
    BlochOutOfBall,
    DimensionMismatch,
    InvalidState,
    ParamOutOfRange,
)

__all__ = [
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "BlochVector",
    "DensityMatrix",
    "PureState",
    "QuantumChannel",
    "apply_channel",
    "bloch_from_density",
    "density_from_bloch",
    "overlap",
    "phase_damping",
    "projector",
    "random_density_matrix",
    "random_pure_state",
    "random_unitary",
    "schmidt_coefficients",
]

TRACE_TOL = 1e-10
PSD_TOL = 1e-10
NORM_TOL = 1e-10
COMPLETENESS_TOL = 1e-10


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=complex)
    out.setflags(write=False)
    return out


PAULI_X = _frozen([[0, 1], [1, 0]])
PAULI_Y = _frozen([[0, -1j], [1j, 0]])
PAULI_Z = _frozen([[1, 0], [0, -1]])


def _hermitize(m: np.ndarray) -> np.ndarray:
    return (m + m.conj().T) / 2.0


def _as_generator(rng) -> np.random.Generator:
    """Accept a ``numpy.random.Generator`` or seed material for one."""
    if isinstance(rng, np.random.Generator):
        return rng
    return np.random.default_rng(rng)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated density matrix (Hermitian, unit trace, positive).

    Eigenvalues in ``[-1e-10, 0)`` are treated as round-off: they are
    clamped to zero and the matrix is renormalized.  Anything more negative
    is rejected.
    """

    matrix: np.ndarray

    def __post_init__(self) -> None:
        m = linalg.as_matrix(self.matrix)
        defect = linalg.hermiticity_defect(m)
        if defect > linalg.HERMITIAN_TOL:
            raise InvalidState(f"density matrix not Hermitian (defect {defect:.3e})")
        tr = complex(np.trace(m))
        if abs(tr - 1.0) > TRACE_TOL:
            raise InvalidState(f"density matrix trace {tr:.12g} is not 1")
        w = np.linalg.eigvalsh(m)
        lo = float(w[0])
        if lo < -PSD_TOL:
            raise InvalidState(f"density matrix has negative eigenvalue {lo:.3e}")
        if lo < 0.0:
            w2, v = np.linalg.eigh(m)
            m = (v * np.clip(w2, 0.0, None)) @ v.conj().T
            m = _hermitize(m / np.trace(m).real)
        object.__setattr__(self, "matrix", _frozen(m))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def purity(self) -> float:
        """trace(rho^2), equal to 1 exactly for pure states."""
        return float(np.trace(self.matrix @ self.matrix).real)

    def eigenvalues(self) -> np.ndarray:
        """Spectrum, sorted nonincreasing."""
        return np.linalg.eigvalsh(self.matrix)[::-1].copy()

    def spectral_decomposition(self) -> list[tuple[float, "DensityMatrix"]]:
        """Decompose into (weight, eigenprojector) pairs with weights summing to 1.

        Round-off negatives in the spectrum are clamped before the weights
        are renormalized, so the pairs recombine to the original matrix to
        machine precision.
        """
        w, v = np.linalg.eigh(self.matrix)
        w = np.clip(w, 0.0, None)
        w = w / w.sum()
        parts = []
        for k in range(self.dim):
            vec = v[:, k]
            parts.append((float(w[k]), DensityMatrix(np.outer(vec, vec.conj()))))
        return parts


@dataclass(frozen=True, eq=False)
class PureState:
    """A unit vector of complex amplitudes."""

    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.amplitudes, dtype=complex)
        if a.ndim != 1 or a.size == 0:
            raise InvalidState(f"amplitudes must be a nonempty vector, got shape {a.shape}")
        nrm = float(np.linalg.norm(a))
        if abs(nrm - 1.0) > NORM_TOL:
            raise InvalidState(f"amplitude vector has norm {nrm:.12g}, expected 1")
        object.__setattr__(self, "amplitudes", _frozen(a))

    @property
    def dim(self) -> int:
        return self.amplitudes.shape[0]

    @classmethod
    def basis(cls, dim: int, index: int) -> "PureState":
        """Computational basis vector |index> in the given dimension."""
        if not 0 <= index < dim:
            raise ParamOutOfRange(f"basis index {index} outside 0..{dim - 1}")
        a = np.zeros(dim, dtype=complex)
        a[index] = 1.0
        return cls(a)


@dataclass(frozen=True)
class BlochVector:
    """A point in the closed Bloch ball."""

    x: float
    y: float
    z: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", float(self.x))
        object.__setattr__(self, "y", float(self.y))
        object.__setattr__(self, "z", float(self.z))
        if self.length() > 1.0 + 1e-10:
            raise BlochOutOfBall(f"Bloch vector length {self.length():.12g} exceeds 1")

    def length(self) -> float:
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """A completely positive trace-preserving map given by Kraus operators."""

    kraus: tuple

    def __post_init__(self) -> None:
        ops = tuple(linalg.as_matrix(k) for k in self.kraus)
        if not ops:
            raise InvalidState("channel needs at least one Kraus operator")
        dim = ops[0].shape[0]
        for k in ops:
            if k.shape[0] != dim:
                raise DimensionMismatch("Kraus operators must share one dimension")
        total = sum(k.conj().T @ k for k in ops)
        defect = float(np.abs(total - np.eye(dim)).max())
        if defect > COMPLETENESS_TOL:
            raise InvalidState(f"Kraus completeness defect {defect:.3e}")
        object.__setattr__(self, "kraus", tuple(_frozen(k) for k in ops))

    @property
    def dim(self) -> int:
        return self.kraus[0].shape[0]


def density_from_bloch(r) -> DensityMatrix:
    """Qubit density matrix (I + r . sigma) / 2 for a Bloch-ball vector."""
    if not isinstance(r, BlochVector):
        r = BlochVector(*r)
    m = (np.eye(2) + r.x * PAULI_X + r.y * PAULI_Y + r.z * PAULI_Z) / 2.0
    return DensityMatrix(m)


def bloch_from_density(rho: DensityMatrix) -> BlochVector:
    """Bloch vector (trace(rho sigma_x), trace(rho sigma_y), trace(rho sigma_z))."""
    if rho.dim != 2:
        raise DimensionMismatch(f"Bloch coordinates need a qubit, got dim {rho.dim}")
    m = rho.matrix
    return BlochVector(
        float(np.trace(m @ PAULI_X).real),
        float(np.trace(m @ PAULI_Y).real),
        float(np.trace(m @ PAULI_Z).real),
    )


def projector(psi: PureState) -> DensityMatrix:
    """Rank-1 density matrix |psi><psi|."""
    a = psi.amplitudes
    m = np.outer(a, a.conj())
    return DensityMatrix(m / np.trace(m).real)


def apply_channel(channel: QuantumChannel, rho: DensityMatrix) -> DensityMatrix:
    """sum_k E_k rho E_k^dagger."""
    if channel.dim != rho.dim:
        raise DimensionMismatch(
            f"channel dim {channel.dim} does not match state dim {rho.dim}"
        )
    out = sum(k @ rho.matrix @ k.conj().T for k in channel.kraus)
    return DensityMatrix(_hermitize(out))


def phase_damping(lam: float) -> QuantumChannel:
    """Qubit phase-damping channel with damping parameter ``lam`` in [0, 1].

    Kraus operators diag(1, sqrt(1 - lam)) and sqrt(lam) |1><1|; on the
    Bloch ball it shrinks the transversal components by sqrt(1 - lam).
    Values within 1e-12 outside [0, 1] (float grid endpoints) are clamped.
    """
    lam = float(lam)
    if lam < -1e-12 or lam > 1.0 + 1e-12:
        raise ParamOutOfRange(f"damping parameter {lam!r} outside [0, 1]")
    lam = min(max(lam, 0.0), 1.0)
    e0 = np.array([[1.0, 0.0], [0.0, math.sqrt(1.0 - lam)]], dtype=complex)
    e1 = np.array([[0.0, 0.0], [0.0, math.sqrt(lam)]], dtype=complex)
    return QuantumChannel((e0, e1))


def overlap(psi: PureState, phi: PureState) -> complex:
    """Inner product <psi|phi>."""
    if psi.dim != phi.dim:
        raise DimensionMismatch(f"overlap of dims {psi.dim} and {phi.dim}")
    return complex(np.vdot(psi.amplitudes, phi.amplitudes))


def schmidt_coefficients(psi: PureState) -> tuple[float, float]:
    """Schmidt coefficients of a two-qubit pure state, largest first.

    Amplitudes are read in the row-major basis |00>, |01>, |10>, |11>, so
    the coefficient matrix is the 2x2 reshape of the amplitude vector.
    """
    if psi.dim != 4:
        raise DimensionMismatch(f"need a two-qubit state (dim 4), got dim {psi.dim}")
    s = linalg.singular_values(psi.amplitudes.reshape(2, 2))
    return float(s[0]), float(s[1])


def random_pure_state(dim: int, rng) -> PureState:
    """Haar-random pure state: a normalized complex Gaussian vector."""
    if dim < 1:
        raise ParamOutOfRange(f"dimension must be positive, got {dim}")
    g = _as_generator(rng)
    z = g.standard_normal(dim) + 1j * g.standard_normal(dim)
    return PureState(z / np.linalg.norm(z))


def random_density_matrix(dim: int, rank: int, rng) -> DensityMatrix:
    """Ginibre-random density matrix G G^dagger / trace with G of shape (dim, rank)."""
    if dim < 1:
        raise ParamOutOfRange(f"dimension must be positive, got {dim}")
    if not 1 <= rank <= dim:
        raise ParamOutOfRange(f"rank must lie in 1..{dim}, got {rank}")
    g = _as_generator(rng)
    z = g.standard_normal((dim, rank)) + 1j * g.standard_normal((dim, rank))
    m = z @ z.conj().T
    return DensityMatrix(_hermitize(m / np.trace(m).real))


def random_unitary(dim: int, rng) -> np.ndarray:
    """Haar-random unitary via QR of a complex Gaussian with phase fix."""
    if dim < 1:
        raise ParamOutOfRange(f"dimension must be positive, got {dim}")
    g = _as_generator(rng)
    z = g.standard_normal((dim, dim)) + 1j * g.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
