"""Dense complex-matrix core.

Hermitian eigendecomposition, singular values, and the family of
unitary-similarity-invariant norms (Schatten and Ky Fan) used throughout
the package.  Everything works on plain ``numpy`` arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, InvalidNormSpec, NoConvergence, NotHermitian

__all__ = [
    "HERMITIAN_TOL",
    "NormSpec",
    "add",
    "adjoint",
    "as_matrix",
    "commutator",
    "gram_singular_values",
    "hermitian_eig",
    "hermitian_eigenvalues",
    "hermiticity_defect",
    "is_hermitian",
    "multiply",
    "norm",
    "norm_from_singular_values",
    "scale",
    "singular_values",
    "trace",
]

HERMITIAN_TOL = 1e-10

# Commutators of Hermitian matrices are anti-Hermitian up to round-off; this
# threshold decides when the cheap eigenvalue route for singular values applies.
_ANTIHERMITIAN_TOL = 1e-12


def as_matrix(a) -> np.ndarray:
    """Coerce ``a`` to a square complex matrix, rejecting malformed input."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionMismatch(f"expected a nonempty square matrix, got shape {m.shape}")
    return m


def _same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"incompatible shapes {a.shape} and {b.shape}")


def add(a, b) -> np.ndarray:
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return a + b


def scale(z, a) -> np.ndarray:
    return complex(z) * as_matrix(a)


def multiply(a, b) -> np.ndarray:
    """Matrix product of two equal-dimension square matrices."""
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return a @ b


def adjoint(a) -> np.ndarray:
    return as_matrix(a).conj().T


def trace(a) -> complex:
    return complex(np.trace(as_matrix(a)))


def hermiticity_defect(a) -> float:
    """Largest entrywise deviation of ``a`` from its adjoint."""
    m = as_matrix(a)
    return float(np.abs(m - m.conj().T).max())


def is_hermitian(a, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_defect(a) <= tol


def commutator(a, b) -> np.ndarray:
    """AB - BA.  Anti-Hermitian (up to round-off) when A and B are Hermitian."""
    a, b = as_matrix(a), as_matrix(b)
    _same_dim(a, b)
    return a @ b - b @ a


def hermitian_eig(a, tol: float = HERMITIAN_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, v)`` with real eigenvalues ``w`` sorted nonincreasing and
    the matching orthonormal eigenvectors in the columns of ``v``.  Inputs
    whose hermiticity defect exceeds ``tol`` are rejected.
    """
    m = as_matrix(a)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitian(f"hermiticity defect {defect:.3e} exceeds tolerance {tol:.3e}")
    try:
        w, v = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver failed: {exc}") from exc
    return w[::-1].copy(), v[:, ::-1].copy()


def hermitian_eigenvalues(a, tol: float = HERMITIAN_TOL) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix, sorted nonincreasing."""
    m = as_matrix(a)
    defect = hermiticity_defect(m)
    if defect > tol:
        raise NotHermitian(f"hermiticity defect {defect:.3e} exceeds tolerance {tol:.3e}")
    try:
        w = np.linalg.eigvalsh(m)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver failed: {exc}") from exc
    return w[::-1].copy()


def gram_singular_values(a) -> np.ndarray:
    """Singular values via the eigenvalues of A^dagger A, sorted nonincreasing.

    This is the general route; tiny negative eigenvalues produced by
    round-off are clamped to zero before the square root.
    """
    m = as_matrix(a)
    g = m.conj().T @ m
    g = (g + g.conj().T) / 2.0
    try:
        w = np.linalg.eigvalsh(g)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver failed: {exc}") from exc
    return np.sqrt(np.clip(w, 0.0, None))[::-1].copy()


def singular_values(a) -> np.ndarray:
    """Singular values of a square matrix, sorted nonincreasing.

    Anti-Hermitian input (the common case here: commutators of Hermitian
    matrices) is detected and routed through a single Hermitian
    eigendecomposition of ``iA``; everything else goes through the Gram
    matrix A^dagger A.
    """
    m = as_matrix(a)
    scale_ = float(np.abs(m).max())
    if float(np.abs(m + m.conj().T).max()) <= _ANTIHERMITIAN_TOL * (1.0 + scale_):
        try:
            w = np.linalg.eigvalsh(1j * m)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(f"eigensolver failed: {exc}") from exc
        return np.sort(np.abs(w))[::-1].copy()
    return gram_singular_values(m)


@dataclass(frozen=True)
class NormSpec:
    """Selector for a unitary-similarity-invariant matrix norm.

    Either a Schatten norm with exponent ``p >= 1`` (``math.inf`` gives the
    spectral norm) or a Ky Fan norm summing the ``k`` largest singular
    values.  ``trace``, ``frobenius`` and ``spectral`` are the usual
    Schatten 1, 2 and infinity aliases.
    """

    kind: str
    p: float | None = None
    k: int | None = None

    def __post_init__(self) -> None:
        if self.kind == "schatten":
            if self.k is not None:
                raise InvalidNormSpec("schatten norm takes no k")
            if self.p is None or isinstance(self.p, bool):
                raise InvalidNormSpec("schatten norm needs an exponent p")
            p = float(self.p)
            if not p >= 1.0:
                raise InvalidNormSpec(f"schatten exponent must satisfy p >= 1, got {self.p}")
            object.__setattr__(self, "p", p)
        elif self.kind == "kyfan":
            if self.p is not None:
                raise InvalidNormSpec("kyfan norm takes no p")
            if not isinstance(self.k, (int, np.integer)) or isinstance(self.k, bool):
                raise InvalidNormSpec(f"kyfan order must be an integer, got {self.k!r}")
            if self.k < 1:
                raise InvalidNormSpec(f"kyfan order must satisfy k >= 1, got {self.k}")
            object.__setattr__(self, "k", int(self.k))
        else:
            raise InvalidNormSpec(f"unknown norm kind {self.kind!r}")

    @classmethod
    def schatten(cls, p: float) -> "NormSpec":
        return cls(kind="schatten", p=p)

    @classmethod
    def kyfan(cls, k: int) -> "NormSpec":
        return cls(kind="kyfan", k=k)

    @classmethod
    def trace(cls) -> "NormSpec":
        return cls.schatten(1.0)

    @classmethod
    def frobenius(cls) -> "NormSpec":
        return cls.schatten(2.0)

    @classmethod
    def spectral(cls) -> "NormSpec":
        return cls.schatten(math.inf)

    @classmethod
    def parse(cls, text: str) -> "NormSpec":
        """Parse ``trace | frobenius | spectral | schatten:<p> | kyfan:<k>``."""
        t = text.strip().lower()
        if t == "trace":
            return cls.trace()
        if t == "frobenius":
            return cls.frobenius()
        if t == "spectral":
            return cls.spectral()
        if t.startswith("schatten:"):
            try:
                p = float(t.split(":", 1)[1])
            except ValueError as exc:
                raise InvalidNormSpec(f"bad schatten exponent in {text!r}") from exc
            return cls.schatten(p)
        if t.startswith("kyfan:"):
            try:
                k = int(t.split(":", 1)[1])
            except ValueError as exc:
                raise InvalidNormSpec(f"bad kyfan order in {text!r}") from exc
            return cls.kyfan(k)
        raise InvalidNormSpec(f"unrecognized norm {text!r}")

    def label(self) -> str:
        """Canonical string form; ``NormSpec.parse`` round-trips it."""
        if self.kind == "kyfan":
            return f"kyfan:{self.k}"
        if self.p == 1.0:
            return "trace"
        if self.p == 2.0:
            return "frobenius"
        if math.isinf(self.p):
            return "spectral"
        return f"schatten:{self.p:g}"


def norm_from_singular_values(s: np.ndarray, spec: NormSpec):
    """Apply a norm selector to precomputed singular values.

    ``s`` holds nonincreasing singular values along the last axis; a 2-D
    input yields one norm per row.  Shared by :func:`norm` and the batched
    ensemble kernel so the two routes use identical arithmetic.
    """
    s = np.asarray(s, dtype=float)
    n = s.shape[-1]
    if spec.kind == "schatten":
        if math.isinf(spec.p):
            v = s[..., 0]
        else:
            v = np.sum(s**spec.p, axis=-1) ** (1.0 / spec.p)
    else:
        if spec.k > n:
            raise InvalidNormSpec(f"kyfan order {spec.k} exceeds dimension {n}")
        v = np.sum(s[..., : spec.k], axis=-1)
    return float(v) if v.ndim == 0 else v


def norm(a, spec: NormSpec) -> float:
    """Norm of a square matrix under the given Schatten / Ky Fan selector."""
    return float(norm_from_singular_values(singular_values(a), spec))
