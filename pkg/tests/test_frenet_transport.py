import numpy as np
import pytest
from scipy.linalg import expm

from liefrenet import lie_group as lg
from liefrenet.errors import InvalidFrameError, ProfileError
from liefrenet.frenet_transport import (
    curve_from_profile,
    frenet_matrix,
    frenet_rhs,
    gram_schmidt,
    integrate_frenet,
)
from liefrenet.lie_group import ABELIAN, S3, SO3, custom
from liefrenet.profiles import ArcGrid, CurvatureProfile

SINE = CurvatureProfile.sinusoidal({"offset": 1.0, "sin": 0.3}, {"cos": 0.5})
I3 = np.eye(3)


def naive_rk4(rhs, y, s, h):
    k1 = rhs(s, y)
    k2 = rhs(s + h / 2, y + h / 2 * k1)
    k3 = rhs(s + h / 2, y + h / 2 * k2)
    k4 = rhs(s + h, y + h * k3)
    return y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def test_rhs_examples():
    d = frenet_rhs(ABELIAN, 1.0, 0.0, I3)
    assert np.array_equal(d, [[0, 1, 0], [-1, 0, 0], [0, 0, 0]])
    d = frenet_rhs(S3, 1.0, 1.0, I3)
    assert np.array_equal(d[1], [-1, 0, 0])
    frame = lg.random_frames(1, np.random.default_rng(0))[0]
    d = frenet_rhs(SO3, 2.0, 0.5, frame)
    assert np.array_equal(d[2], np.zeros(3))
    np.testing.assert_allclose(d[0], 2 * frame[1])


def test_rhs_matrix_is_skew():
    K = frenet_matrix(S3, np.linspace(0.1, 2, 7), np.linspace(-1, 3, 7))
    assert np.array_equal(K, -np.swapaxes(K, -1, -2))


@pytest.mark.parametrize("kind", [ABELIAN, SO3, S3])
def test_propagator_matches_naive_rk4(kind):
    grid = ArcGrid(0.0, 1.0, 0.1)
    res = integrate_frenet(SINE, kind, I3, grid)
    y = I3.copy()
    for s in grid.nodes[:-1]:
        y = naive_rk4(lambda x, f: frenet_rhs(kind, *SINE.sample(x), f), y, s, grid.step)
    np.testing.assert_allclose(res.frames[-1], y, atol=1e-14)


def test_circle_returns_to_start():
    res = integrate_frenet(CurvatureProfile.constant(1.0, 0.0), ABELIAN, I3, ArcGrid(0, 2 * np.pi, 1e-3))
    assert np.max(np.abs(res.frames[-1] - I3)) < 1e-6


@pytest.mark.parametrize("kind", [ABELIAN, SO3, S3, custom(3.0)])
def test_binormal_constant_without_effective_torsion(kind):
    prof = CurvatureProfile.constant(1.7, lg.tau_G(kind))
    f0 = lg.random_frames(1, np.random.default_rng(1))[0]
    res = integrate_frenet(prof, kind, f0, ArcGrid(0, 10, 1e-3))
    assert np.max(np.abs(res.frames[:, 2] - f0[2])) < 1e-9


@pytest.mark.parametrize("kind", [ABELIAN, SO3, S3])
@pytest.mark.parametrize("kappa, tau", [(1.0, 0.5), (2.0, -1.0), (0.3, 2.0)])
def test_constant_profile_matches_matrix_exponential(kind, kappa, tau):
    grid = ArcGrid(0, 10, 1e-3)
    res = integrate_frenet(CurvatureProfile.constant(kappa, tau), kind, I3, grid)
    K = frenet_matrix(kind, kappa, tau)
    for i in (2500, 7000, 10000):
        np.testing.assert_allclose(res.frames[i], expm(grid.nodes[i] * K), atol=1e-10)


def test_zero_kappa_rejected():
    with pytest.raises(ProfileError):
        integrate_frenet(CurvatureProfile.constant(0.0, 1.0), ABELIAN, I3, ArcGrid(0, 1, 0.1))
    dips = CurvatureProfile.sinusoidal({"offset": 0.5, "sin": 1.0}, {})
    with pytest.raises(ProfileError) as info:
        integrate_frenet(dips, ABELIAN, I3, ArcGrid(0, 10, 0.01))
    assert 3.6 < info.value.s < 3.7  # first zero of 0.5 + sin(s) is 7pi/6


def test_invalid_initial_frame():
    with pytest.raises(InvalidFrameError):
        integrate_frenet(SINE, ABELIAN, np.diag([1.0, 1, -1]), ArcGrid(0, 1, 0.1))
    with pytest.raises(ValueError):
        integrate_frenet(SINE, ABELIAN, I3, ArcGrid(0, 1, 0.1), method="euler")


@pytest.mark.parametrize("kind", [ABELIAN, SO3, S3])
def test_orthonormality_drift(kind):
    grid = ArcGrid(0, 10, 1e-3)
    plain = integrate_frenet(SINE, kind, I3, grid)
    renorm = integrate_frenet(SINE, kind, I3, grid, "rk4_renorm")
    assert plain.orthonormality_defect < 1e-8
    assert renorm.orthonormality_defect < 1e-12
    assert np.max(np.abs(plain.frames - renorm.frames)) < 1e-9


def test_gram_schmidt_orientation():
    f = gram_schmidt(I3 + 1e-3 * np.random.default_rng(2).standard_normal((3, 3)))
    lg.check_frame(f, tol=1e-14)


def test_group_covariance():
    grid = ArcGrid(0, 10, 1e-3)
    a = integrate_frenet(SINE, S3, I3, grid)
    b = integrate_frenet(SINE.shifted(-1.0), ABELIAN, I3, grid)
    assert np.max(np.abs(a.frames - b.frames)) < 1e-12
    c = integrate_frenet(SINE, custom(0.0), I3, grid)
    assert np.array_equal(c.frames, integrate_frenet(SINE, ABELIAN, I3, grid).frames)


@pytest.mark.parametrize("kind", [ABELIAN, S3])
def test_fourth_order_convergence(kind):
    ref = integrate_frenet(SINE, kind, I3, ArcGrid(0, 10, 0.1 / 16)).frames[-1]
    e1 = np.max(np.abs(integrate_frenet(SINE, kind, I3, ArcGrid(0, 10, 0.1)).frames[-1] - ref))
    e2 = np.max(np.abs(integrate_frenet(SINE, kind, I3, ArcGrid(0, 10, 0.05)).frames[-1] - ref))
    assert 12 < e1 / e2 < 20


def kasa_circle_fit(xy):
    # x^2 + y^2 = 2 a x + 2 b y + c, solved in least squares
    A = np.column_stack([2 * xy[:, 0], 2 * xy[:, 1], np.ones(len(xy))])
    (a, b, c), *_ = np.linalg.lstsq(A, (xy**2).sum(1), rcond=None)
    return np.array([a, b]), np.sqrt(c + a * a + b * b)


@pytest.mark.parametrize("develop", ["exp_midpoint", "rk4_project"])
def test_abelian_circle(develop):
    res, pos = curve_from_profile(
        CurvatureProfile.constant(1.0, 0.0), ABELIAN, I3, np.zeros(3), ArcGrid(0, 2 * np.pi, 1e-3),
        develop=develop,
    )
    assert np.max(np.abs(pos[:, 2])) == 0.0
    centre, radius = kasa_circle_fit(pos[:, :2])
    assert np.max(np.abs(np.linalg.norm(pos[:, :2] - centre, axis=1) - radius)) < 1e-5
    assert abs(radius - 1.0) < 1e-5
    np.testing.assert_allclose(centre, [0, 1], atol=1e-5)


def helix_parameters(pos, kappa, tau):
    """Radius and axial advance per radian about the closed-form axis from the identity frame."""
    w = np.hypot(kappa, tau)
    axis = np.array([tau, 0.0, kappa]) / w  # Darboux vector direction at s = 0
    centre = np.array([0.0, kappa / w**2, 0.0])  # start + r N0
    rel = pos - centre
    along = rel @ axis
    radial = rel - along[:, None] * axis
    e1 = -radial[0] / np.linalg.norm(radial[0])
    e2 = np.cross(axis, e1)
    angle = np.unwrap(np.arctan2(radial @ e2, radial @ e1))
    return np.linalg.norm(radial, axis=1), np.polyfit(angle, along, 1)[0], angle


def test_abelian_helix():
    kappa, tau = 1.0, 0.5
    _, pos = curve_from_profile(
        CurvatureProfile.constant(kappa, tau), ABELIAN, I3, np.zeros(3), ArcGrid(0, 10, 1e-3)
    )
    radius, pitch, angle = helix_parameters(pos, kappa, tau)
    assert np.max(np.abs(radius - kappa / (kappa**2 + tau**2))) < 1e-5
    assert abs(pitch - tau / (kappa**2 + tau**2)) < 1e-5
    assert angle[-1] > 0


def test_s3_positions_on_sphere():
    _, pos = curve_from_profile(SINE, S3, I3, lg.identity_point(S3), ArcGrid(0, 10, 1e-3))
    assert np.max(np.abs(np.linalg.norm(pos, axis=1) - 1)) < 1e-9


def test_so3_positions_are_rotations():
    _, pos = curve_from_profile(SINE, SO3, I3, np.eye(3), ArcGrid(0, 10, 1e-3))
    assert np.max(lg.point_defect(SO3, pos)) < 1e-9
