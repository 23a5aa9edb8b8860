"""Randomized checks of the quantumness measure's structural properties.

Each trial builds a seeded random ensemble plus random transformations and
verifies, with additive slack, that

  * the measure is nonnegative and vanishes exactly on classical
    (pairwise commuting) ensembles,
  * unitary conjugation leaves it unchanged,
  * probabilistic union is concave: M(union) >= sum lambda_mu M(E_mu),
  * member decomposition is convex: M(E) <= sum lambda_mu M(E_mu),
  * fine-graining never decreases it, coarse-graining never increases it.

Trial t of a run draws from ``default_rng([seed, t])``, so any single
trial can be replayed in isolation via :func:`run_single_trial`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ensemble import (
    Ensemble,
    Partition,
    coarse_grain,
    decompose_member,
    fine_grain,
    is_classical,
    probabilistic_union,
    quantumness,
    unitary_conjugate,
)
from .errors import ParamOutOfRange
from .linalg import NormSpec
from .states import DensityMatrix, random_density_matrix, random_unitary

__all__ = [
    "PROPERTY_NAMES",
    "PropertyResult",
    "RunReport",
    "check_properties",
    "random_ensemble",
    "run_single_trial",
]

DEFAULT_SLACK = 1e-9

PROPERTY_NAMES = (
    "positivity-classicality",
    "unitary-invariance",
    "union-concavity",
    "decomposition-convexity",
    "fine-graining-monotone",
    "coarse-graining-monotone",
)

# A boolean check (classicality detection) has no numeric slack; a failure
# is recorded as this sentinel so it is impossible to miss in a report.
_BOOL_FAIL = 1.0


def random_ensemble(dim: int, members: int, rng, allow_zero_prob: bool = False) -> Ensemble:
    """Random ensemble of Ginibre states (random ranks) with random weights."""
    probs = rng.random(members)
    if allow_zero_prob and members >= 3 and rng.random() < 0.2:
        probs[int(rng.integers(members))] = 0.0
    probs = probs / probs.sum()
    states = [
        random_density_matrix(dim, int(rng.integers(1, dim + 1)), rng)
        for _ in range(members)
    ]
    return Ensemble(tuple(zip(probs, states)))


def _classical_ensemble(dim: int, members: int, rng) -> Ensemble:
    """Pairwise commuting ensemble: random diagonals in one random basis."""
    u = random_unitary(dim, rng)
    uh = u.conj().T
    members_out = []
    probs = rng.random(members)
    probs = probs / probs.sum()
    for p in probs:
        d = rng.random(dim)
        d = d / d.sum()
        m = (u * d) @ uh
        members_out.append((p, DensityMatrix((m + m.conj().T) / 2.0)))
    return Ensemble(tuple(members_out))


def _random_partition(n: int, probs: np.ndarray, rng) -> Partition:
    """Random partition into contiguous chunks of a shuffled index list.

    Rejects draws that would give a block zero total probability (those are
    not coarse-grainable); falls back to the single-block partition.
    """
    for _ in range(20):
        order = rng.permutation(n)
        nblocks = int(rng.integers(1, n + 1))
        cuts = sorted(rng.choice(np.arange(1, n), size=nblocks - 1, replace=False)) if nblocks > 1 else []
        bounds = [0, *cuts, n]
        blocks = tuple(tuple(int(i) for i in order[a:b]) for a, b in zip(bounds, bounds[1:]))
        if all(sum(float(probs[i]) for i in blk) > 0.0 for blk in blocks):
            return Partition(blocks)
    return Partition.single_block(n)


def run_single_trial(
    dim: int, members: int, spec: NormSpec, seed: int, trial: int, slack: float = DEFAULT_SLACK
) -> dict:
    """Run one trial; returns {property: violation} plus the base quantumness.

    A violation is the amount by which the required inequality is broken
    (positive means broken); the trial passes a property when its
    violation is <= ``slack``.
    """
    rng = np.random.default_rng([seed, trial])
    e = random_ensemble(dim, members, rng, allow_zero_prob=True)
    m_e = quantumness(e, spec)
    out = {"quantumness": m_e}

    # Positivity, and zero exactly on classical ensembles.
    classical = _classical_ensemble(dim, members, rng)
    m_cl = quantumness(classical, spec)
    v = max(-m_e, m_cl)
    if is_classical(e, slack) != (m_e <= slack):
        v = max(v, _BOOL_FAIL)
    if not is_classical(classical, slack):
        v = max(v, _BOOL_FAIL)
    out["positivity-classicality"] = v

    u = random_unitary(dim, rng)
    out["unitary-invariance"] = abs(quantumness(unitary_conjugate(e, u), spec) - m_e)

    other = random_ensemble(dim, members, rng)
    lam = rng.random(2)
    lam = lam / lam.sum()
    mixed = probabilistic_union([e, other], lam)
    bound = lam[0] * m_e + lam[1] * quantumness(other, spec)
    out["union-concavity"] = bound - quantumness(mixed, spec)

    target = int(rng.integers(members))
    parts = e.states[target].spectral_decomposition()
    variants = decompose_member(e, target, parts)
    avg = math.fsum(
        lam_mu * quantumness(variant, spec)
        for (lam_mu, _), variant in zip(parts, variants)
        if lam_mu > 0.0
    )
    out["decomposition-convexity"] = m_e - avg

    finer = fine_grain(e, [s.spectral_decomposition() for s in e.states])
    out["fine-graining-monotone"] = m_e - quantumness(finer, spec)

    coarser = coarse_grain(e, _random_partition(members, e.probabilities, rng))
    out["coarse-graining-monotone"] = quantumness(coarser, spec) - m_e

    return out


@dataclass
class PropertyResult:
    name: str
    passes: int = 0
    failures: int = 0
    worst_slack: float = -math.inf
    worst_trial: int = -1
    failed_trials: list = field(default_factory=list)

    def record(self, trial: int, violation: float, slack: float) -> None:
        if violation > self.worst_slack:
            self.worst_slack = violation
            self.worst_trial = trial
        if violation <= slack:
            self.passes += 1
        else:
            self.failures += 1
            if len(self.failed_trials) < 20:
                self.failed_trials.append((trial, violation))


@dataclass
class RunReport:
    """Outcome of a property-check run; ``render`` gives the printable form."""

    command: str
    seed: int
    norm_label: str
    dim: int
    members: int
    trials: int
    slack: float
    results: list
    quantumness_min: float = math.nan
    quantumness_mean: float = math.nan
    quantumness_max: float = math.nan

    def all_passed(self) -> bool:
        return all(r.failures == 0 for r in self.results)

    def worst_slack(self) -> float:
        return max(r.worst_slack for r in self.results)

    def render(self) -> str:
        lines = [
            f"command: {self.command}",
            f"seed: {self.seed}  norm: {self.norm_label}  dim: {self.dim}"
            f"  members: {self.members}  trials: {self.trials}  slack: {self.slack:.1e}",
            "base quantumness: "
            f"min {self.quantumness_min:.6e}  mean {self.quantumness_mean:.6e}"
            f"  max {self.quantumness_max:.6e}",
            f"{'property':<28}{'pass':>8}{'fail':>8}{'worst-slack':>16}{'at-trial':>10}",
        ]
        for r in self.results:
            lines.append(
                f"{r.name:<28}{r.passes:>8}{r.failures:>8}"
                f"{r.worst_slack:>16.3e}{r.worst_trial:>10}"
            )
        for r in self.results:
            for trial, violation in r.failed_trials:
                lines.append(
                    f"FAIL {r.name} trial {trial} violation {violation:.3e}"
                    f" (replay: run_single_trial(dim={self.dim}, members={self.members},"
                    f" spec=NormSpec.parse({self.norm_label!r}), seed={self.seed},"
                    f" trial={trial}))"
                )
        checks = sum(r.passes + r.failures for r in self.results)
        passed = sum(r.passes for r in self.results)
        verdict = "PASS" if self.all_passed() else "FAIL"
        lines.append(f"overall: {verdict} ({passed}/{checks} checks)")
        return "\n".join(lines)


def check_properties(
    dim: int,
    members: int,
    trials: int,
    seed: int,
    spec: NormSpec,
    slack: float = DEFAULT_SLACK,
) -> RunReport:
    """Run the full property suite; deterministic for fixed arguments."""
    if dim < 2:
        raise ParamOutOfRange(f"dim must be >= 2, got {dim}")
    if members < 2:
        raise ParamOutOfRange(f"members must be >= 2, got {members}")
    if trials < 1:
        raise ParamOutOfRange(f"trials must be >= 1, got {trials}")
    if seed < 0:
        raise ParamOutOfRange(f"seed must be >= 0, got {seed}")
    command = (
        f"check-properties --dim {dim} --members {members} --trials {trials}"
        f" --seed {seed} --norm {spec.label()}"
    )
    results = [PropertyResult(name) for name in PROPERTY_NAMES]
    values = []
    for t in range(trials):
        outcome = run_single_trial(dim, members, spec, seed, t, slack)
        values.append(outcome["quantumness"])
        for r in results:
            r.record(t, outcome[r.name], slack)
    return RunReport(
        command=command,
        seed=seed,
        norm_label=spec.label(),
        dim=dim,
        members=members,
        trials=trials,
        slack=slack,
        results=results,
        quantumness_min=min(values),
        quantumness_mean=math.fsum(values) / len(values),
        quantumness_max=max(values),
    )
