"""Acceptance suite: every shipping criterion at its stated tolerance.

Each criterion is one test that prints a single pass/fail line (run with
``pytest tests/test_acceptance.py -v -s`` to see them inline); stated
runtime budgets are asserted alongside the numeric tolerances.
"""

import math
import time

import numpy as np

from ensq.cli import main
from ensq.ensemble import Ensemble, quantumness
from ensq.harness import check_properties
from ensq.linalg import NormSpec, norm
from ensq.measures import (
    ClassicalQuantumState,
    cq_append_ancilla,
    cq_local_unitary,
    cq_quantumness,
    plus_state,
    projector,
    quantumness_coherence_relation,
    quantumness_concurrence_relation,
)
from ensq.states import (
    DensityMatrix,
    PureState,
    density_from_bloch,
    random_density_matrix,
    random_pure_state,
    random_unitary,
)
from ensq.sweeps import parse_grid, phase_damping_rows

from _oracles import random_complex

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def _finish(name, failures):
    status = "PASS" if not failures else "FAIL"
    print(f"[acceptance] {name}: {status}")
    assert not failures, f"{name}: " + "; ".join(failures[:5])


def _overlap_ensemble(c):
    psi = PureState.basis(2, 0)
    phi = PureState(np.array([c, math.sqrt(max(1.0 - c * c, 0.0))]))
    return Ensemble(((0.5, projector(psi)), (0.5, projector(phi))))


def test_criterion_1_pure_overlap_peak():
    """Equal-weight pure pair, trace norm: peak 1.0 at c = 1/sqrt(2)."""
    failures = []
    start = time.perf_counter()
    grid = parse_grid("0:1:0.001")
    values = [quantumness(_overlap_ensemble(c), NormSpec.trace()) for c in grid]
    elapsed = time.perf_counter() - start
    if abs(values[0]) > 1e-9:
        failures.append(f"M(0) = {values[0]!r}, expected 0")
    if abs(values[-1]) > 1e-9:
        failures.append(f"M(1) = {values[-1]!r}, expected 0")
    argmax = grid[int(np.argmax(values))]
    if abs(argmax - INV_SQRT2) > 0.001:
        failures.append(f"grid argmax {argmax} not within 0.001 of 1/sqrt(2)")
    peak = quantumness(_overlap_ensemble(INV_SQRT2), NormSpec.trace())
    if abs(peak - 1.0) > 1e-9:
        failures.append(f"peak value {peak!r} differs from 1.0 beyond 1e-9")
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.3f}s exceeds 1s budget")
    _finish("criterion 1 (pure-pair peak at 1/sqrt2)", failures)


def test_criterion_2_bloch_pair_closed_form():
    """1000 random qubit pairs: Frobenius pipeline vs cross-product form, 1e-10."""
    failures = []
    rng = np.random.default_rng(2024)
    spec = NormSpec.frobenius()
    start = time.perf_counter()
    for trial in range(1000):
        v1 = rng.standard_normal(3)
        v1 = v1 / np.linalg.norm(v1) * rng.random()
        v2 = rng.standard_normal(3)
        v2 = v2 / np.linalg.norm(v2) * rng.random()
        p1 = rng.random()
        e = Ensemble(
            ((p1, density_from_bloch(v1)), (1.0 - p1, density_from_bloch(v2)))
        )
        got = quantumness(e, spec)
        want = math.sqrt(2.0 * p1 * (1.0 - p1)) * float(np.linalg.norm(np.cross(v1, v2)))
        if abs(got - want) > 1e-10:
            failures.append(f"trial {trial}: |{got!r} - {want!r}| > 1e-10")
    elapsed = time.perf_counter() - start
    if elapsed >= 5.0:
        failures.append(f"runtime {elapsed:.3f}s exceeds 5s budget")
    _finish("criterion 2 (Bloch-pair closed form, 1000 trials)", failures)


def test_criterion_3_phase_damping_sweep():
    """Lambda sweep at theta = pi/4: nondecreasing and matches the formula."""
    failures = []
    header, rows = phase_damping_rows(parse_grid("0:1:0.01"), [math.pi / 4.0], [0.5])
    formula_col = header.index("M_formula")
    matrix_col = header.index("M_matrix")
    if len(rows) != 101:
        failures.append(f"expected 101 rows, got {len(rows)}")
    for i, row in enumerate(rows):
        if abs(row[formula_col] - row[matrix_col]) > 1e-10:
            failures.append(f"row {i}: formula/pipeline disagree beyond 1e-10")
    matrix_vals = [row[matrix_col] for row in rows]
    for i in range(1, len(matrix_vals)):
        if matrix_vals[i] < matrix_vals[i - 1]:
            failures.append(f"M not nondecreasing at row {i}")
    _finish("criterion 3 (phase-damping sweep)", failures)


def test_criterion_4_coherence_relation():
    """200 random real-amplitude qubit states: M = sqrt(1 - C_l1^2) at 1e-9."""
    failures = []
    rng = np.random.default_rng(4)
    for trial in range(200):
        t = rng.random() * 2.0 * math.pi
        psi = PureState(np.array([math.cos(t), math.sin(t)]))
        m, c = quantumness_coherence_relation(psi)
        want = math.sqrt(max(1.0 - c * c, 0.0))
        if abs(m - want) > 1e-9:
            failures.append(f"trial {trial}: |M - sqrt(1 - C^2)| = {abs(m - want):.3e}")
    _finish("criterion 4 (coherence relation, 200 trials)", failures)


def test_criterion_5_concurrence_relation():
    """200 random Schmidt pairs: M = sqrt(1 - C^2) at 1e-9."""
    failures = []
    rng = np.random.default_rng(5)
    for trial in range(200):
        t = rng.random() * (math.pi / 2.0)
        psi = PureState(np.array([math.cos(t), 0.0, 0.0, math.sin(t)]))
        m, c = quantumness_concurrence_relation(psi)
        want = math.sqrt(max(1.0 - c * c, 0.0))
        if abs(m - want) > 1e-9:
            failures.append(f"trial {trial}: |M - sqrt(1 - C^2)| = {abs(m - want):.3e}")
    _finish("criterion 5 (concurrence relation, 200 trials)", failures)


def test_criterion_6_property_suite_full_grid():
    """dims {2,3,4} x members {2,3,4} x 5 norms x 1000 trials, slack 1e-9, < 2 min."""
    failures = []
    specs = [
        NormSpec.trace(),
        NormSpec.frobenius(),
        NormSpec.spectral(),
        NormSpec.schatten(3.0),
        NormSpec.kyfan(2),
    ]
    start = time.perf_counter()
    worst = -math.inf
    combo = 0
    for dim in (2, 3, 4):
        for members in (2, 3, 4):
            for spec in specs:
                report = check_properties(
                    dim=dim, members=members, trials=1000, seed=combo, spec=spec
                )
                combo += 1
                if not report.all_passed():
                    failures.append(
                        f"dim {dim} members {members} norm {spec.label()}: FAIL"
                    )
                worst = max(worst, report.worst_slack())
    elapsed = time.perf_counter() - start
    if worst > 1e-9:
        failures.append(f"worst observed slack {worst:.3e} exceeds 1e-9")
    if elapsed >= 120.0:
        failures.append(f"runtime {elapsed:.1f}s exceeds 2 min budget")
    # the CLI wrapper must exit 0 on a passing combination
    code = main(
        ["check-properties", "--dim", "3", "--members", "3", "--trials", "1000",
         "--seed", "0", "--norm", "trace"]
    )
    if code != 0:
        failures.append(f"check-properties exit code {code}, expected 0")
    print(f"[acceptance] criterion 6 detail: 45 combos, worst slack {worst:.3e}, {elapsed:.1f}s")
    _finish("criterion 6 (property suite over full grid)", failures)


def test_criterion_7_norm_layer_cross_checks():
    """Ky Fan / Schatten coincidences at 1e-10 and unitary invariance at 1e-9."""
    failures = []
    rng = np.random.default_rng(7)
    dims = (2, 3, 4, 5)
    for trial in range(500):
        a = random_complex(dims[trial % 4], rng)
        n = a.shape[0]
        if abs(norm(a, NormSpec.kyfan(n)) - norm(a, NormSpec.trace())) > 1e-10:
            failures.append(f"trial {trial}: kyfan(n) != trace")
        if abs(norm(a, NormSpec.kyfan(1)) - norm(a, NormSpec.spectral())) > 1e-10:
            failures.append(f"trial {trial}: kyfan(1) != spectral")
        fro = math.sqrt(float(np.sum(np.abs(a) ** 2)))
        if abs(norm(a, NormSpec.frobenius()) - fro) > 1e-10:
            failures.append(f"trial {trial}: schatten(2) != entrywise frobenius")
    specs = [
        NormSpec.trace(),
        NormSpec.frobenius(),
        NormSpec.spectral(),
        NormSpec.schatten(3.0),
        NormSpec.kyfan(2),
    ]
    for trial in range(500):
        dim = dims[trial % 4]
        a = random_complex(dim, rng)
        u = random_unitary(dim, rng)
        rotated = u @ a @ u.conj().T
        for spec in specs:
            base = norm(a, spec)
            if abs(norm(rotated, spec) - base) > 1e-9 * (1.0 + base):
                failures.append(f"trial {trial}: {spec.label()} not unitarily invariant")
    _finish("criterion 7 (norm-layer cross-checks, 500 + 500 trials)", failures)


def _random_cq(rng, blocks=3, dim=2):
    probs = rng.random(blocks)
    probs = probs / probs.sum()
    states = tuple(
        random_density_matrix(dim, int(rng.integers(1, dim + 1)), rng)
        for _ in range(blocks)
    )
    return ClassicalQuantumState(tuple(probs), states)


def test_criterion_8_classical_quantum_measure():
    """Commuting blocks give exactly 0; local-unitary invariant; ancilla monotone."""
    failures = []
    spec = NormSpec.trace()
    rng = np.random.default_rng(8)

    for trial in range(20):
        k = int(rng.integers(2, 5))
        probs = rng.random(k)
        probs = probs / probs.sum()
        blocks = []
        for _ in range(k):
            d = rng.random(3)
            blocks.append(DensityMatrix(np.diag(d / d.sum())))
        commuting = ClassicalQuantumState(tuple(probs), tuple(blocks))
        d_val = cq_quantumness(commuting, spec)
        if d_val != 0.0:
            failures.append(f"trial {trial}: commuting blocks gave D = {d_val!r}, not 0.0")

    for trial in range(200):
        s = _random_cq(rng)
        base = cq_quantumness(s, spec)
        u = random_unitary(2, rng)
        after = cq_quantumness(cq_local_unitary(s, u), spec)
        if abs(after - base) > 1e-9:
            failures.append(f"trial {trial}: local unitary changed D by {abs(after - base):.3e}")

    for trial in range(200):
        s = _random_cq(rng)
        base = cq_quantumness(s, spec)
        sigma = random_density_matrix(2, int(rng.integers(1, 3)), rng)
        appended = cq_quantumness(cq_append_ancilla(s, sigma), spec)
        if appended > base + 1e-9:
            failures.append(
                f"trial {trial}: ancilla increased D from {base!r} to {appended!r}"
            )

    for trial in range(50):
        s = _random_cq(rng)
        base = cq_quantumness(s, spec)
        pure_anc = projector(random_pure_state(2, rng))
        appended = cq_quantumness(cq_append_ancilla(s, pure_anc), spec)
        if abs(appended - base) > 1e-9:
            failures.append(
                f"trial {trial}: pure ancilla moved D by {abs(appended - base):.3e}"
            )

    zero_plus = ClassicalQuantumState(
        (0.5, 0.5), (projector(PureState.basis(2, 0)), projector(plus_state()))
    )
    d_val = cq_quantumness(zero_plus, spec)
    if abs(d_val - 1.0) > 1e-9:
        failures.append(f"zero/plus blocks gave D = {d_val!r}, expected 1.0")

    _finish("criterion 8 (classical-quantum measure)", failures)
