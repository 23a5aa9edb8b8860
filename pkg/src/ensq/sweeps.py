"""Parameter sweeps comparing closed forms against the matrix pipeline.

Three sweep families (qubit Bloch pairs under the Frobenius norm, phase
damping, two pure states with given overlap under the trace norm) plus the
self-checking worked-example artifacts.  Rows carry both the closed-form
value and the full matrix-pipeline value so agreement is visible in the
output itself.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

import numpy as np

from .ensemble import Ensemble, quantumness
from .errors import ParamOutOfRange
from .linalg import NormSpec
from .measures import (
    ClassicalQuantumState,
    bell_phi_plus,
    coherence_l1_pure_qubit,
    concurrence_pure_two_qubit,
    cq_append_ancilla,
    cq_local_unitary,
    cq_quantumness,
    plus_state,
    pure_pair_quantumness,
)
from .states import (
    DensityMatrix,
    PureState,
    apply_channel,
    density_from_bloch,
    phase_damping,
    projector,
    random_unitary,
)

__all__ = [
    "AGREEMENT_TOL",
    "bloch_angle_rows",
    "example_artifacts",
    "overlap_rows",
    "parse_grid",
    "phase_damping_rows",
    "write_csv",
]

AGREEMENT_TOL = 1e-9


def parse_grid(text: str) -> list[float]:
    """Parse a grid flag: a single value ``v`` or a range ``start:stop:step``.

    The last point is snapped to ``stop`` when float accumulation overshoots
    it, so ``0:1:0.01`` ends exactly at 1.0.
    """
    parts = text.strip().split(":")
    try:
        if len(parts) == 1:
            return [float(parts[0])]
        if len(parts) != 3:
            raise ValueError
        start, stop, step = (float(x) for x in parts)
    except ValueError:
        raise ParamOutOfRange(
            f"bad grid {text!r}: expected a number or start:stop:step"
        ) from None
    if step <= 0.0:
        raise ParamOutOfRange(f"grid step must be positive, got {step}")
    if stop < start:
        raise ParamOutOfRange(f"grid stop {stop} is below start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    values = [start + i * step for i in range(count)]
    if values[-1] > stop:
        values[-1] = stop
    return values


def _check_unit(name: str, value: float) -> float:
    if not 0.0 <= value <= 1.0:
        raise ParamOutOfRange(f"{name} must lie in [0, 1], got {value}")
    return value


def bloch_angle_rows(alphas, r1s, r2s, p1s) -> tuple[list[str], list[list[float]]]:
    """Two Bloch vectors separated by angle alpha, Frobenius norm.

    Closed form sqrt(2 p1 p2) |r1| |r2| sin(alpha), realized as the cross
    product magnitude so it stays exact for degenerate vectors.
    """
    header = ["alpha", "r1", "r2", "p1", "M_formula", "M_matrix"]
    rows = []
    spec = NormSpec.frobenius()
    for r1 in r1s:
        _check_unit("r1", r1)
    for r2 in r2s:
        _check_unit("r2", r2)
    for p1 in p1s:
        _check_unit("p1", p1)
    for alpha in alphas:
        for r1 in r1s:
            for r2 in r2s:
                for p1 in p1s:
                    p2 = 1.0 - p1
                    v1 = np.array([0.0, 0.0, r1])
                    v2 = np.array([r2 * math.sin(alpha), 0.0, r2 * math.cos(alpha)])
                    formula = math.sqrt(2.0 * p1 * p2) * float(
                        np.linalg.norm(np.cross(v1, v2))
                    )
                    e = Ensemble(
                        ((p1, density_from_bloch(v1)), (p2, density_from_bloch(v2)))
                    )
                    rows.append([alpha, r1, r2, p1, formula, quantumness(e, spec)])
    return header, rows


def phase_damping_rows(lams, thetas, p1s) -> tuple[list[str], list[list[float]]]:
    """A pure qubit state against its phase-damped image, Frobenius norm.

    Closed form sqrt(2 p1 p2) (1 - sqrt(1 - lam)) |sin(theta) cos(theta)|.
    """
    header = ["lambda", "theta", "p1", "M_formula", "M_matrix"]
    rows = []
    spec = NormSpec.frobenius()
    for p1 in p1s:
        _check_unit("p1", p1)
    for lam in lams:
        _check_unit("lambda", lam)
        channel = phase_damping(lam)
        for theta in thetas:
            rho = density_from_bloch((math.sin(theta), 0.0, math.cos(theta)))
            damped = apply_channel(channel, rho)
            for p1 in p1s:
                p2 = 1.0 - p1
                formula = (
                    math.sqrt(2.0 * p1 * p2)
                    * (1.0 - math.sqrt(1.0 - lam))
                    * abs(math.sin(theta) * math.cos(theta))
                )
                e = Ensemble(((p1, rho), (p2, damped)))
                rows.append([lam, theta, p1, formula, quantumness(e, spec)])
    return header, rows


def overlap_rows(cs, p1s) -> tuple[list[str], list[list[float]]]:
    """Two pure states with overlap magnitude c, trace norm.

    Closed form 4 c sqrt(p1 p2) sqrt(1 - c^2), maximal (value 1 for
    p1 = p2 = 1/2) at c = 1/sqrt(2).
    """
    header = ["c", "p1", "M_formula", "M_matrix"]
    rows = []
    spec = NormSpec.trace()
    psi = PureState.basis(2, 0)
    for p1 in p1s:
        _check_unit("p1", p1)
    for c in cs:
        _check_unit("c", c)
        phi = PureState(np.array([c, math.sqrt(max(1.0 - c * c, 0.0))]))
        for p1 in p1s:
            p2 = 1.0 - p1
            e = Ensemble(((p1, projector(psi)), (p2, projector(phi))))
            rows.append([c, p1, pure_pair_quantumness(p1, p2, c), quantumness(e, spec)])
    return header, rows


def write_csv(path, header: list[str], rows) -> None:
    """CSV with '.' decimals, ',' separators, LF line endings, shortest floats."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow(
                [repr(float(x)) if isinstance(x, (int, float, np.floating)) else x for x in row]
            )


def worst_disagreement(rows, formula_col: int, matrix_col: int) -> float:
    return max(abs(r[formula_col] - r[matrix_col]) for r in rows)


def _passfail(a: float, b: float) -> str:
    return "PASS" if abs(a - b) <= AGREEMENT_TOL else "FAIL"


def _with_pass(header, rows, formula_col, matrix_col):
    out = [[*r, _passfail(r[formula_col], r[matrix_col])] for r in rows]
    return [*header, "pass"], out


def _example_coherence_rows():
    header = ["alpha", "beta", "C_l1", "M_formula", "M_matrix", "pass"]
    rows = []
    for alpha in [0.0, 0.2, 0.4, 1.0 / math.sqrt(2.0), 0.8, 1.0]:
        beta = math.sqrt(max(1.0 - alpha * alpha, 0.0))
        psi = PureState(np.array([alpha, beta]))
        coherence = coherence_l1_pure_qubit(psi)
        formula = abs(alpha * alpha - beta * beta)
        e = Ensemble(((0.5, projector(psi)), (0.5, projector(plus_state()))))
        matrix = quantumness(e, NormSpec.trace())
        rows.append([alpha, beta, coherence, formula, matrix, _passfail(formula, matrix)])
    return header, rows


def _example_concurrence_rows():
    header = ["alpha", "beta", "concurrence", "M_formula", "M_matrix", "pass"]
    rows = []
    for alpha in [0.0, 0.2, 0.4, 1.0 / math.sqrt(2.0), 0.8, 1.0]:
        beta = math.sqrt(max(1.0 - alpha * alpha, 0.0))
        psi = PureState(np.array([alpha, 0.0, 0.0, beta]))
        concurrence = concurrence_pure_two_qubit(psi)
        formula = math.sqrt(max(1.0 - concurrence * concurrence, 0.0))
        e = Ensemble(((0.5, projector(psi)), (0.5, projector(bell_phi_plus()))))
        matrix = quantumness(e, NormSpec.trace())
        rows.append(
            [alpha, beta, concurrence, formula, matrix, _passfail(formula, matrix)]
        )
    return header, rows


def _example_cq_rows():
    header = ["case", "D_expected", "D_matrix", "pass"]
    spec = NormSpec.trace()
    base = ClassicalQuantumState(
        (0.5, 0.5), (projector(PureState.basis(2, 0)), projector(plus_state()))
    )
    d_base = cq_quantumness(base, spec)
    rows = []

    commuting = ClassicalQuantumState(
        (0.5, 0.5),
        (DensityMatrix(np.diag([0.7, 0.3])), DensityMatrix(np.diag([0.2, 0.8]))),
    )
    d = cq_quantumness(commuting, spec)
    rows.append(["commuting-blocks", 0.0, d, _passfail(0.0, d)])

    expected = pure_pair_quantumness(0.5, 0.5, 1.0 / math.sqrt(2.0))
    rows.append(["zero-vs-plus-blocks", expected, d_base, _passfail(expected, d_base)])

    u = random_unitary(2, np.random.default_rng(7))
    d = cq_quantumness(cq_local_unitary(base, u), spec)
    rows.append(["local-unitary-invariant", d_base, d, _passfail(d_base, d)])

    pure_anc = projector(PureState.basis(2, 0))
    d = cq_quantumness(cq_append_ancilla(base, pure_anc), spec)
    rows.append(["pure-ancilla-preserves", d_base, d, _passfail(d_base, d)])

    mixed_anc = DensityMatrix(np.eye(2) / 2.0)
    d = cq_quantumness(cq_append_ancilla(base, mixed_anc), spec)
    rows.append(["mixed-ancilla-halves", d_base / 2.0, d, _passfail(d_base / 2.0, d)])
    return header, rows


def example_artifacts(out_dir) -> list[tuple[Path, int]]:
    """Write the six worked-example CSVs; returns (path, fail-count) pairs.

    Every file carries closed-form and matrix-pipeline columns side by side
    with a PASS/FAIL verdict per row at the 1e-9 agreement tolerance.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pi = math.pi
    written = []

    header, rows = bloch_angle_rows(
        [0.0, pi / 6, pi / 4, pi / 2, 2 * pi / 3, pi], [0.5, 1.0], [0.5, 1.0], [0.3, 0.5]
    )
    header, rows = _with_pass(header, rows, 4, 5)
    written.append((out / "example1_bloch_pair.csv", header, rows, 4, 5))

    header, rows = phase_damping_rows(parse_grid("0:1:0.05"), [pi / 4], [0.5])
    header, rows = _with_pass(header, rows, 3, 4)
    written.append((out / "example2_phase_damping.csv", header, rows, 3, 4))

    header, rows = overlap_rows(
        sorted([*parse_grid("0:1:0.05"), 1.0 / math.sqrt(2.0)]), [0.5]
    )
    header, rows = _with_pass(header, rows, 2, 3)
    written.append((out / "example3_pure_overlap.csv", header, rows, 2, 3))

    header, rows = _example_coherence_rows()
    written.append((out / "example4_coherence.csv", header, rows, 3, 4))

    header, rows = _example_concurrence_rows()
    written.append((out / "example5_concurrence.csv", header, rows, 3, 4))

    header, rows = _example_cq_rows()
    written.append((out / "example6_classical_quantum.csv", header, rows, 1, 2))

    results = []
    for path, header, rows, a, b in written:
        write_csv(path, header, rows)
        fails = sum(1 for r in rows if abs(float(r[a]) - float(r[b])) > AGREEMENT_TOL)
        results.append((path, fails))
    return results
