import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liefrenet.errors import DegenerateSpinorError, InvalidTriadError
from liefrenet.spinor_algebra import (
    SIGMA,
    mate,
    norm,
    sigma_bilinear,
    spinor_to_triad,
    triad_defect,
    triad_to_spinor,
)

finite = st.floats(-10, 10, allow_nan=False)
cplx = st.builds(complex, finite, finite)
spinors = st.tuples(cplx, cplx).map(lambda t: np.array(t, dtype=complex))
nonzero_spinors = spinors.filter(lambda p: norm(p) > 1e-3)


def unit(rng, n):
    phi = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return phi / np.sqrt(norm(phi))[:, None]


def test_sigma_matrices():
    assert np.array_equal(SIGMA[0], np.diag([1, -1]))
    assert np.array_equal(SIGMA[1], 1j * np.eye(2))
    assert np.array_equal(SIGMA[2], [[0, -1], [-1, 0]])
    assert np.array_equal(SIGMA, np.swapaxes(SIGMA, -1, -2))


@pytest.mark.parametrize(
    "phi, expected",
    [((1, 0), (0, 1)), ((0, 1), (-1, 0)), ((1j, 2 - 1j), (-2 - 1j, -1j))],
)
def test_mate_examples(phi, expected):
    assert np.array_equal(mate(phi), np.array(expected, dtype=complex))


def test_mate_involution_example():
    phi = np.array([3 + 4j, 1 - 2j])
    assert np.array_equal(mate(mate(phi)), -phi)


@pytest.mark.parametrize("phi, n", [((1, 0), 1.0), ((1, 1), 2.0), ((3j, 4), 25.0)])
def test_norm(phi, n):
    assert norm(phi) == n


def test_triad_coordinate_spinors():
    assert np.array_equal(spinor_to_triad([1, 0]), np.eye(3))
    t = spinor_to_triad([0, 1])
    assert np.array_equal(t, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]])
    assert np.linalg.det(t) == pytest.approx(1.0)


def test_triad_matches_sigma_route():
    # expanded formulas vs a+ib = phi^t sigma phi and c = -mate(phi)^t sigma phi
    rng = np.random.default_rng(1)
    phi = rng.standard_normal((500, 2)) + 1j * rng.standard_normal((500, 2))
    w = sigma_bilinear(phi, phi)
    c = -sigma_bilinear(mate(phi), phi)
    triad = spinor_to_triad(phi)
    np.testing.assert_allclose(triad[:, 0], w.real, atol=1e-12)
    np.testing.assert_allclose(triad[:, 1], w.imag, atol=1e-12)
    np.testing.assert_allclose(triad[:, 2], c.real, atol=1e-12)
    assert np.max(np.abs(c.imag)) < 1e-12


def test_triad_of_random_unit_spinors_is_orthonormal():
    triads = spinor_to_triad(unit(np.random.default_rng(2), 1000))
    assert np.max(triad_defect(triads)) < 1e-12
    assert np.all(np.linalg.det(triads) > 0)


def test_triad_lengths_equal_norm():
    rng = np.random.default_rng(3)
    phi = 3 * (rng.standard_normal((200, 2)) + 1j * rng.standard_normal((200, 2)))
    lengths = np.linalg.norm(spinor_to_triad(phi), axis=-1)
    np.testing.assert_allclose(lengths, np.repeat(norm(phi)[:, None], 3, axis=1), rtol=1e-13)


def test_zero_spinor_is_degenerate():
    with pytest.raises(DegenerateSpinorError, match="degenerate spinor"):
        spinor_to_triad([0, 0])


def test_triad_to_spinor_identity():
    phi, minus = triad_to_spinor(np.eye(3))
    np.testing.assert_allclose(phi, [1, 0], atol=1e-15)
    np.testing.assert_allclose(minus, [-1, 0], atol=1e-15)


def test_triad_round_trip_up_to_sign():
    phi = unit(np.random.default_rng(4), 1000)
    rec, _ = triad_to_spinor(spinor_to_triad(phi))
    err = np.minimum(np.abs(rec - phi).max(axis=1), np.abs(rec + phi).max(axis=1))
    assert err.max() < 1e-12


@pytest.mark.parametrize(
    "phi",
    [(1, 0), (0, 1), (1e-10, 1), (1, 1e-10j), (np.sqrt(0.5), np.sqrt(0.5) * 1j), (-1j, 0)],
)
def test_round_trip_near_coordinate_spinors(phi):
    phi = np.array(phi, dtype=complex)
    phi /= np.sqrt(norm(phi))
    rec, _ = triad_to_spinor(spinor_to_triad(phi))
    assert min(np.abs(rec - phi).max(), np.abs(rec + phi).max()) < 1e-12


def test_canonical_sign_is_deterministic():
    rng = np.random.default_rng(5)
    phi = unit(rng, 300)
    a, _ = triad_to_spinor(spinor_to_triad(phi))
    b, _ = triad_to_spinor(spinor_to_triad(-phi))
    assert np.array_equal(a, b)
    assert np.all(a[:, 0].real > 0)


def test_negatively_oriented_triad_rejected():
    with pytest.raises(InvalidTriadError, match="invalid triad"):
        triad_to_spinor(np.diag([1.0, 1.0, -1.0]))


def test_non_orthonormal_triad_rejected():
    with pytest.raises(InvalidTriadError, match="invalid triad"):
        triad_to_spinor([[1, 0, 0], [0.1, 1, 0], [0, 0, 1]])
    with pytest.raises(InvalidTriadError):
        triad_to_spinor(2 * np.eye(3))


@given(spinors, spinors, cplx, cplx)
def test_mate_antilinear(psi, phi, a, b):
    lhs = mate(a * psi + b * phi)
    rhs = np.conj(a) * mate(psi) + np.conj(b) * mate(phi)
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)


@given(spinors)
def test_mate_involution_and_norm(phi):
    assert np.array_equal(mate(mate(phi)), -phi)
    assert norm(mate(phi)) == pytest.approx(norm(phi), rel=1e-15, abs=0)


@given(spinors)
def test_mate_orthogonal_to_spinor(phi):
    assert abs(np.vdot(phi, mate(phi))) <= 1e-12 * max(1.0, norm(phi))


@given(spinors, spinors)
def test_sigma_symmetry(psi, phi):
    assert np.array_equal(sigma_bilinear(psi, phi), sigma_bilinear(phi, psi))


@given(spinors, spinors)
def test_conjugation_identity(psi, phi):
    lhs = np.conj(sigma_bilinear(psi, phi))
    rhs = -sigma_bilinear(mate(psi), mate(phi))
    np.testing.assert_allclose(lhs, rhs, atol=1e-10)


@settings(max_examples=200)
@given(nonzero_spinors)
def test_isotropy_and_sign_covariance(phi):
    triad = spinor_to_triad(phi)
    w = triad[0] + 1j * triad[1]
    assert abs(np.sum(w * w)) <= 1e-12 * norm(phi) ** 2
    assert np.array_equal(spinor_to_triad(-phi), triad)
