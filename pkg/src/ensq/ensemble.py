"""Quantum ensembles and their commutator-norm quantumness.

The quantumness of an ensemble ``{(p_i, rho_i)}`` is

    2 * sum_{i<j} sqrt(p_i p_j) ||[rho_i, rho_j]||

for a chosen unitary-similarity-invariant norm.  It vanishes exactly when
all states occurring with positive probability commute, and this module
also provides the transformations (unitary conjugation, probabilistic
union, member decomposition, fine- and coarse-graining) under which the
measure is provably monotone.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import (
    DecompositionMismatch,
    DimensionMismatch,
    InvalidPartition,
    NoConvergence,
    NotUnitary,
    ParamOutOfRange,
    WeightSumInvalid,
    ZeroBlockProbability,
)
from .linalg import NormSpec
from .states import DensityMatrix, _hermitize

__all__ = [
    "Ensemble",
    "Partition",
    "coarse_grain",
    "decompose_member",
    "fine_grain",
    "is_classical",
    "probabilistic_union",
    "quantumness",
    "unitary_conjugate",
]

WEIGHT_TOL = 1e-10
MIX_TOL = 1e-10
UNITARY_TOL = 1e-10


def _check_weights(weights, what: str) -> list[float]:
    ws = [float(w) for w in weights]
    if not ws:
        raise ParamOutOfRange(f"{what}: need at least one weight")
    for w in ws:
        if w < 0.0:
            raise ParamOutOfRange(f"{what}: negative weight {w!r}")
    total = math.fsum(ws)
    if abs(total - 1.0) > WEIGHT_TOL:
        raise WeightSumInvalid(f"{what}: weights sum to {total!r}, expected 1")
    return ws


@dataclass(frozen=True, eq=False)
class Ensemble:
    """An ordered collection of (probability, DensityMatrix) members.

    Probabilities must be nonnegative and sum to one within 1e-10; members
    with zero probability are kept (they contribute nothing to the
    quantumness) and duplicates are not merged.  Raw arrays are accepted in
    place of ``DensityMatrix`` and validated on the way in.
    """

    members: tuple
    probabilities: np.ndarray = field(init=False, repr=False)
    state_stack: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        pairs = []
        for p, s in self.members:
            if not isinstance(s, DensityMatrix):
                s = DensityMatrix(s)
            pairs.append((float(p), s))
        probs = _check_weights([p for p, _ in pairs], "ensemble probabilities")
        dims = {s.dim for _, s in pairs}
        if len(dims) > 1:
            raise DimensionMismatch(f"members have mixed dimensions {sorted(dims)}")
        stack = np.stack([s.matrix for _, s in pairs])
        stack.setflags(write=False)
        probarr = np.array(probs)
        probarr.setflags(write=False)
        object.__setattr__(self, "members", tuple(pairs))
        object.__setattr__(self, "probabilities", probarr)
        object.__setattr__(self, "state_stack", stack)

    @property
    def dim(self) -> int:
        return self.members[0][1].dim

    @property
    def states(self) -> tuple:
        return tuple(s for _, s in self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def average_state(self) -> DensityMatrix:
        """The barycenter sum_i p_i rho_i."""
        m = np.tensordot(self.probabilities, self.state_stack, axes=1)
        return DensityMatrix(_hermitize(m))


def _pair_singular_values(stack: np.ndarray, pairs) -> np.ndarray:
    """Nonincreasing singular values of [rho_i, rho_j] for each index pair.

    The commutators are anti-Hermitian, so one batched Hermitian
    eigendecomposition of i[rho_i, rho_j] covers every pair, with the same
    arithmetic as the per-matrix route in ``linalg.singular_values``.
    """
    a = stack[[i for i, _ in pairs]]
    b = stack[[j for _, j in pairs]]
    c = a @ b - b @ a
    try:
        w = np.linalg.eigvalsh(1j * c)
    except np.linalg.LinAlgError as exc:
        raise NoConvergence(f"eigensolver failed: {exc}") from exc
    return np.sort(np.abs(w), axis=-1)[:, ::-1]


def quantumness(ensemble: Ensemble, spec: NormSpec) -> float:
    """Commutator-norm quantumness 2 sum_{i<j} sqrt(p_i p_j) ||[rho_i, rho_j]||.

    Pairs are visited in lexicographic (i, j) order and accumulated with
    exact summation, so the result is deterministic for a given member
    order; pairs involving a zero-probability member are skipped.
    """
    p = ensemble.probabilities
    m = len(ensemble)
    pairs = [(i, j) for i in range(m) for j in range(i + 1, m) if p[i] > 0.0 and p[j] > 0.0]
    if not pairs:
        return 0.0
    sv = _pair_singular_values(ensemble.state_stack, pairs)
    vals = np.atleast_1d(linalg.norm_from_singular_values(sv, spec))
    return math.fsum(
        2.0 * math.sqrt(p[i] * p[j]) * float(v) for (i, j), v in zip(pairs, vals)
    )


def is_classical(ensemble: Ensemble, tol: float = 1e-9) -> bool:
    """True when all members occurring with positive probability commute.

    Commutators are measured entrywise (Frobenius norm), independently of
    the norm used for the quantumness, so this is the reference check for
    "quantumness vanishes iff classical".
    """
    p = ensemble.probabilities
    m = len(ensemble)
    stack = ensemble.state_stack
    for i in range(m):
        if p[i] <= 0.0:
            continue
        for j in range(i + 1, m):
            if p[j] <= 0.0:
                continue
            c = stack[i] @ stack[j] - stack[j] @ stack[i]
            if math.sqrt(float(np.sum(np.abs(c) ** 2))) > tol:
                return False
    return True


def unitary_conjugate(ensemble: Ensemble, u) -> Ensemble:
    """Conjugate every member by one unitary: (p_i, U rho_i U^dagger)."""
    u = linalg.as_matrix(u)
    if u.shape[0] != ensemble.dim:
        raise DimensionMismatch(
            f"unitary dim {u.shape[0]} does not match ensemble dim {ensemble.dim}"
        )
    defect = float(np.abs(u.conj().T @ u - np.eye(ensemble.dim)).max())
    if defect > UNITARY_TOL:
        raise NotUnitary(f"unitarity defect {defect:.3e}")
    uh = u.conj().T
    return Ensemble(
        tuple((p, DensityMatrix(_hermitize(u @ s.matrix @ uh))) for p, s in ensemble)
    )


def probabilistic_union(ensembles, weights) -> Ensemble:
    """Mix whole ensembles: member (p, rho) of E_mu enters with weight lambda_mu p."""
    ensembles = list(ensembles)
    ws = [float(w) for w in weights]
    if len(ensembles) != len(ws) or not ensembles:
        raise ParamOutOfRange("need matching, nonempty ensembles and weights")
    _check_weights(ws, "union weights")
    dims = {e.dim for e in ensembles}
    if len(dims) > 1:
        raise DimensionMismatch(f"ensembles have mixed dimensions {sorted(dims)}")
    members = []
    for lam, e in zip(ws, ensembles):
        members.extend((lam * p, s) for p, s in e)
    return Ensemble(tuple(members))


def _check_parts(parts, target: DensityMatrix, what: str):
    out = []
    for lam, s in parts:
        if not isinstance(s, DensityMatrix):
            s = DensityMatrix(s)
        if s.dim != target.dim:
            raise DimensionMismatch(f"{what}: part dim {s.dim} != state dim {target.dim}")
        out.append((float(lam), s))
    _check_weights([lam for lam, _ in out], what)
    mix = sum(lam * s.matrix for lam, s in out)
    defect = float(np.abs(mix - target.matrix).max())
    if defect > MIX_TOL:
        raise DecompositionMismatch(f"{what}: recombination misses target by {defect:.3e}")
    return out


def decompose_member(ensemble: Ensemble, index: int, parts) -> list[Ensemble]:
    """Split member ``index`` into a convex mixture; one ensemble per part.

    ``parts`` is a sequence of (weight, state) with weights summing to one
    and the weighted states recombining to the chosen member.  Each
    returned ensemble keeps every other member unchanged and replaces the
    chosen state by one part (same member probability).
    """
    if not 0 <= index < len(ensemble):
        raise IndexError(f"member index {index} outside 0..{len(ensemble) - 1}")
    p_c, target = ensemble.members[index]
    checked = _check_parts(parts, target, f"decomposition of member {index}")
    out = []
    for _, part_state in checked:
        members = list(ensemble.members)
        members[index] = (p_c, part_state)
        out.append(Ensemble(tuple(members)))
    return out


def fine_grain(ensemble: Ensemble, decompositions) -> Ensemble:
    """Refine every member by a convex decomposition, flattening the result.

    ``decompositions[i]`` lists (weight, state) parts for member i; the
    output members are (p_i * weight, part) in member-major order.
    """
    decompositions = list(decompositions)
    if len(decompositions) != len(ensemble):
        raise ParamOutOfRange(
            f"got {len(decompositions)} decompositions for {len(ensemble)} members"
        )
    members = []
    for i, (p_i, target) in enumerate(ensemble.members):
        checked = _check_parts(decompositions[i], target, f"decomposition of member {i}")
        members.extend((p_i * lam, s) for lam, s in checked)
    return Ensemble(tuple(members))


@dataclass(frozen=True)
class Partition:
    """Disjoint, nonempty index blocks; ``validate_for`` checks full coverage."""

    blocks: tuple

    def __post_init__(self) -> None:
        blocks = tuple(tuple(int(i) for i in blk) for blk in self.blocks)
        if not blocks:
            raise InvalidPartition("partition needs at least one block")
        seen = set()
        for blk in blocks:
            if not blk:
                raise InvalidPartition("empty block")
            for i in blk:
                if i < 0:
                    raise InvalidPartition(f"negative index {i}")
                if i in seen:
                    raise InvalidPartition(f"index {i} appears in two blocks")
                seen.add(i)
        object.__setattr__(self, "blocks", blocks)

    def validate_for(self, n: int) -> None:
        covered = {i for blk in self.blocks for i in blk}
        if covered != set(range(n)):
            raise InvalidPartition(f"blocks do not cover exactly 0..{n - 1}")

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(tuple((i,) for i in range(n)))

    @classmethod
    def single_block(cls, n: int) -> "Partition":
        return cls((tuple(range(n)),))


def coarse_grain(ensemble: Ensemble, partition) -> Ensemble:
    """Merge index blocks into their barycenters.

    Block s becomes one member with probability p_s = sum of the block's
    probabilities and state sum (p_i / p_s) rho_i.  Blocks of zero total
    probability have no barycenter and are rejected.
    """
    if not isinstance(partition, Partition):
        partition = Partition(tuple(partition))
    partition.validate_for(len(ensemble))
    p = ensemble.probabilities
    members = []
    for blk in partition.blocks:
        p_s = math.fsum(float(p[i]) for i in blk)
        if p_s <= 0.0:
            raise ZeroBlockProbability(f"block {blk} has zero total probability")
        m = sum((p[i] / p_s) * ensemble.state_stack[i] for i in blk)
        members.append((p_s, DensityMatrix(_hermitize(m))))
    return Ensemble(tuple(members))
