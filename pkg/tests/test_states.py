"""States, channels, Bloch geometry, and random generation."""

import math

import numpy as np
import pytest

from ensq import states
from ensq.errors import (
    BlochOutOfBall,
    DimensionMismatch,
    InvalidState,
    ParamOutOfRange,
)
from ensq.states import (
    BlochVector,
    DensityMatrix,
    PureState,
    QuantumChannel,
    apply_channel,
    bloch_from_density,
    density_from_bloch,
    overlap,
    phase_damping,
    projector,
    random_density_matrix,
    random_pure_state,
    random_unitary,
    schmidt_coefficients,
)


def test_density_matrix_accepts_valid_and_freezes():
    rho = DensityMatrix(np.eye(2) / 2.0)
    assert rho.dim == 2
    assert rho.purity() == pytest.approx(0.5)
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 7.0


def test_density_matrix_rejects_bad_input():
    with pytest.raises(InvalidState):
        DensityMatrix(np.array([[0.5, 0.5], [0.0, 0.5]]))  # not Hermitian
    with pytest.raises(InvalidState):
        DensityMatrix(np.eye(2))  # trace 2
    with pytest.raises(InvalidState):
        DensityMatrix(np.diag([1.5, -0.5]))  # negative eigenvalue


def test_density_matrix_clamps_round_off_negatives():
    rho = DensityMatrix(np.diag([1.0 + 5e-11, -5e-11]))
    w = rho.eigenvalues()
    assert w[-1] >= 0.0
    assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-12)


def test_spectral_decomposition_recombines():
    rng = np.random.default_rng(31)
    for _ in range(20):
        rho = random_density_matrix(4, int(rng.integers(1, 5)), rng)
        parts = rho.spectral_decomposition()
        assert math.fsum(w for w, _ in parts) == pytest.approx(1.0, abs=1e-12)
        mix = sum(w * s.matrix for w, s in parts)
        assert np.abs(mix - rho.matrix).max() <= 1e-12
        for _, s in parts:
            assert s.purity() == pytest.approx(1.0, abs=1e-9)


def test_pure_state_validation():
    PureState(np.array([1.0, 0.0]))
    with pytest.raises(InvalidState):
        PureState(np.array([1.0, 1.0]))
    with pytest.raises(InvalidState):
        PureState(np.array([[1.0, 0.0]]))
    assert PureState.basis(3, 2).amplitudes[2] == 1.0
    with pytest.raises(ParamOutOfRange):
        PureState.basis(2, 5)


def test_bloch_vector_ball_constraint():
    BlochVector(0.6, 0.0, 0.8)
    BlochVector(0.0, 0.0, 1.0 + 5e-11)  # inside tolerance
    with pytest.raises(BlochOutOfBall):
        BlochVector(1.0, 1.0, 0.0)


def test_density_from_bloch_known_values():
    plus = density_from_bloch((1.0, 0.0, 0.0))
    assert np.allclose(plus.matrix, np.array([[0.5, 0.5], [0.5, 0.5]]))
    up = density_from_bloch(BlochVector(0.0, 0.0, 1.0))
    assert np.allclose(up.matrix, np.diag([1.0, 0.0]))
    center = density_from_bloch((0.0, 0.0, 0.0))
    assert np.allclose(center.matrix, np.eye(2) / 2.0)


def test_bloch_round_trip():
    rng = np.random.default_rng(32)
    for _ in range(1000):
        v = rng.standard_normal(3)
        v = v / np.linalg.norm(v) * rng.random()
        r = bloch_from_density(density_from_bloch(v))
        assert np.abs(r.as_array() - v).max() <= 1e-12
    y = bloch_from_density(DensityMatrix((np.eye(2) + 0.3 * states.PAULI_Y) / 2.0))
    assert np.allclose(y.as_array(), [0.0, 0.3, 0.0], atol=1e-12)


def test_bloch_requires_qubit():
    with pytest.raises(DimensionMismatch):
        bloch_from_density(DensityMatrix(np.eye(3) / 3.0))


def test_purity_corresponds_to_bloch_length():
    rng = np.random.default_rng(33)
    for _ in range(50):
        v = rng.standard_normal(3)
        v = v / np.linalg.norm(v) * rng.random()
        rho = density_from_bloch(v)
        want = (1.0 + float(v @ v)) / 2.0
        assert abs(rho.purity() - want) <= 1e-12
    pure = density_from_bloch((0.0, 1.0, 0.0))
    assert abs(pure.purity() - 1.0) <= 1e-9


def test_projector_is_rank_one_and_idempotent():
    rng = np.random.default_rng(34)
    for dim in (2, 3, 5):
        psi = random_pure_state(dim, rng)
        rho = projector(psi)
        assert np.abs(rho.matrix @ rho.matrix - rho.matrix).max() <= 1e-10
        assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-12)


def test_channel_completeness_enforced():
    with pytest.raises(InvalidState):
        QuantumChannel((np.eye(2) * 0.5,))
    with pytest.raises(InvalidState):
        QuantumChannel(())
    with pytest.raises(DimensionMismatch):
        QuantumChannel((np.eye(2), np.zeros((3, 3))))


def test_phase_damping_known_kraus():
    ch = phase_damping(0.5)
    assert np.allclose(ch.kraus[0], np.diag([1.0, math.sqrt(0.5)]))
    assert np.allclose(ch.kraus[1], np.diag([0.0, math.sqrt(0.5)]))
    with pytest.raises(ParamOutOfRange):
        phase_damping(-0.1)
    with pytest.raises(ParamOutOfRange):
        phase_damping(1.1)


def test_phase_damping_identity_at_zero():
    ch = phase_damping(0.0)
    rho = density_from_bloch((0.3, 0.4, 0.5))
    assert np.abs(apply_channel(ch, rho).matrix - rho.matrix).max() <= 1e-12


def test_phase_damping_shrinks_transversal_bloch_components():
    rng = np.random.default_rng(35)
    for _ in range(25):
        lam = rng.random()
        v = rng.standard_normal(3)
        v = v / np.linalg.norm(v) * rng.random()
        out = bloch_from_density(apply_channel(phase_damping(lam), density_from_bloch(v)))
        k = math.sqrt(1.0 - lam)
        assert np.abs(out.as_array() - [k * v[0], k * v[1], v[2]]).max() <= 1e-12


def test_apply_channel_dimension_check():
    with pytest.raises(DimensionMismatch):
        apply_channel(phase_damping(0.2), DensityMatrix(np.eye(3) / 3.0))


def test_overlap_values_and_conjugation_order():
    zero = PureState.basis(2, 0)
    plus = PureState(np.array([1.0, 1.0]) / math.sqrt(2.0))
    assert overlap(zero, plus) == pytest.approx(1.0 / math.sqrt(2.0))
    phased = PureState(np.array([1j, 0.0]))
    assert overlap(zero, phased) == pytest.approx(1j)
    assert overlap(phased, zero) == pytest.approx(-1j)
    with pytest.raises(DimensionMismatch):
        overlap(zero, PureState.basis(3, 0))


def test_schmidt_coefficients_known_and_invariant():
    psi = PureState(np.array([0.8, 0.0, 0.0, 0.6]))
    a, b = schmidt_coefficients(psi)
    assert (a, b) == pytest.approx((0.8, 0.6))
    product = PureState(np.array([1.0, 0.0, 0.0, 0.0]))
    assert schmidt_coefficients(product) == pytest.approx((1.0, 0.0))
    rng = np.random.default_rng(36)
    for _ in range(50):
        psi = random_pure_state(4, rng)
        u = random_unitary(2, rng)
        v = random_unitary(2, rng)
        rotated = PureState(np.kron(u, v) @ psi.amplitudes)
        assert np.abs(
            np.array(schmidt_coefficients(rotated)) - np.array(schmidt_coefficients(psi))
        ).max() <= 1e-10
    with pytest.raises(DimensionMismatch):
        schmidt_coefficients(PureState.basis(3, 0))


def test_random_pure_state_is_seeded_and_normalized():
    a = random_pure_state(4, 123)
    b = random_pure_state(4, 123)
    assert np.array_equal(a.amplitudes, b.amplitudes)
    assert np.linalg.norm(a.amplitudes) == pytest.approx(1.0, abs=1e-12)


def test_random_pure_state_mean_projector_approaches_maximally_mixed():
    rng = np.random.default_rng(37)
    n = 10000
    acc = np.zeros((2, 2), dtype=complex)
    for _ in range(n):
        psi = random_pure_state(2, rng)
        acc += np.outer(psi.amplitudes, psi.amplitudes.conj())
    dev = np.abs(acc / n - np.eye(2) / 2.0).max()
    assert dev <= 5.0 / math.sqrt(n)


def test_random_density_matrix_rank_and_validity():
    rng = np.random.default_rng(38)
    for dim, rank in [(2, 1), (3, 2), (4, 4)]:
        rho = random_density_matrix(dim, rank, rng)
        w = rho.eigenvalues()
        assert np.sum(w > 1e-10) == rank
        assert np.trace(rho.matrix).real == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(ParamOutOfRange):
        random_density_matrix(2, 3, rng)
    with pytest.raises(ParamOutOfRange):
        random_density_matrix(2, 0, rng)


def test_random_unitary_is_unitary_and_seeded():
    rng = np.random.default_rng(39)
    for dim in (2, 3, 5):
        u = random_unitary(dim, rng)
        assert np.abs(u.conj().T @ u - np.eye(dim)).max() <= 1e-12
    assert np.array_equal(random_unitary(3, 5), random_unitary(3, 5))
