"""Randomized property battery and transport checks used by ``liefrenet verify``."""

from dataclasses import asdict, dataclass

import numpy as np

from . import lie_group as lg
from . import spinor_algebra as sa
from .spinor_transport import (
    SIGMA_SIGN,
    derivative_mismatch,
    equivalence_report,
    project_coefficients,
    sign_oracle,
    spinor_from_frame,
    spinor_rhs,
)

EXACT_TOL = 1e-15
IDENTITY_TOL = 1e-12
EQUIVALENCE_TOL = 1e-6
NORM_DRIFT_TOL = 1e-10
ORTHO_DRIFT_TOL = 1e-8
COEFF_TOL = 1e-14
WRONG_SIGN_MIN = 1e-1


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    threshold: float
    relation: str = "<="

    @property
    def passed(self):
        if not np.isfinite(self.value):
            return False
        if self.relation == "<=":
            return self.value <= self.threshold
        return self.value >= self.threshold

    def as_dict(self):
        d = asdict(self)
        d["value"] = float(self.value) if np.isfinite(self.value) else None
        d["passed"] = bool(self.passed)
        return d


def random_spinors(n, rng, unit=True):
    phi = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    if unit:
        phi /= np.sqrt(sa.norm(phi))[:, None]
    return phi


def _max(x):
    return float(np.max(np.abs(x)))


def spinor_algebra_checks(rng, n=1000):
    psi, phi = random_spinors(n, rng), random_spinors(n, rng)
    a = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    b = rng.standard_normal(n) + 1j * rng.standard_normal(n)

    lhs = sa.mate(a[:, None] * psi + b[:, None] * phi)
    rhs = np.conj(a)[:, None] * sa.mate(psi) + np.conj(b)[:, None] * sa.mate(phi)
    triads = sa.spinor_to_triad(phi)
    w = triads[:, 0] + 1j * triads[:, 1]
    recovered = sa.triad_to_spinor(triads)[0]
    round_trip = np.minimum(
        np.max(np.abs(recovered - phi), axis=1), np.max(np.abs(recovered + phi), axis=1)
    )
    return [
        Check("mate_involution", _max(sa.mate(sa.mate(phi)) + phi), EXACT_TOL),
        Check("mate_antilinearity", _max(lhs - rhs), IDENTITY_TOL),
        Check("mate_orthogonality", _max(np.sum(np.conj(phi) * sa.mate(phi), axis=1)), IDENTITY_TOL),
        Check("mate_preserves_norm", _max(sa.norm(sa.mate(psi)) - sa.norm(psi)), IDENTITY_TOL),
        Check("sigma_symmetry", _max(sa.sigma_bilinear(psi, phi) - sa.sigma_bilinear(phi, psi)), EXACT_TOL),
        Check(
            "sigma_conjugation_identity",
            _max(np.conj(sa.sigma_bilinear(psi, phi)) + sa.sigma_bilinear(sa.mate(psi), sa.mate(phi))),
            IDENTITY_TOL,
        ),
        Check("isotropy", _max(np.sum(w * w, axis=1)), IDENTITY_TOL),
        Check("triad_orthonormality", float(np.max(sa.triad_defect(triads))), IDENTITY_TOL),
        Check("triad_orientation", float(np.min(np.linalg.det(triads))), 0.0, ">="),
        Check("triad_sign_covariance", _max(sa.spinor_to_triad(-phi) - triads), EXACT_TOL),
        Check("triad_round_trip", float(np.max(round_trip)), IDENTITY_TOL),
    ]


def group_checks(kind, rng, n=1000):
    frames = lg.random_frames(n, rng)
    T, N, B = frames[:, 0], frames[:, 1], frames[:, 2]
    x, y, z = (rng.uniform(-1, 1, (n, 3)) for _ in range(3))
    tg = lg.tau_G(kind)
    expected = lg.NAMED_TAU_G.get(kind.tag, tg)

    def br(u, v):
        return lg.bracket(kind, u, v)

    dot = np.sum
    jacobi = br(x, br(y, z)) + br(y, br(z, x)) + br(z, br(x, y))
    return [
        Check("tau_G_from_frame", _max(lg.tau_G_from_frame(kind, frames) - expected), IDENTITY_TOL),
        Check("bracket_TN", _max(br(T, N) - 2 * tg * B), IDENTITY_TOL),
        Check("bracket_TB", _max(br(T, B) + 2 * tg * N), IDENTITY_TOL),
        Check("bracket_bi_invariance", _max(dot(x * br(y, z), 1) - dot(br(x, y) * z, 1)), IDENTITY_TOL),
        Check("bracket_antisymmetry", _max(br(x, y) + br(y, x)), IDENTITY_TOL),
        Check("bracket_jacobi", _max(jacobi), IDENTITY_TOL),
    ]


def coefficient_checks(kind, rng, n=1000):
    phi = random_spinors(n, rng)
    kappa = rng.uniform(0.1, 3.0, n)
    tau = rng.uniform(-3.0, 3.0, n)
    dphi = spinor_rhs(kind, kappa[:, None], tau[:, None], phi)
    co = project_coefficients(phi, dphi)
    g_err = _max(co.g - (-0.5j) * (tau - lg.tau_G(kind)))
    h_err = _max(co.h - 0.5 * kappa)
    return [Check("coefficient_extraction", max(g_err, h_err), COEFF_TOL)]


def derivative_slope(kind, rng, steps=(1e-3, 1e-4, 1e-5)):
    """Log-log slope of the forward-difference mismatch against the step size."""
    phi = random_spinors(1, rng)[0]
    kappa, tau = rng.uniform(0.5, 2.0), rng.uniform(-1.0, 1.0)
    err = [derivative_mismatch(kind, kappa, tau, phi, h) for h in steps]
    return float(np.polyfit(np.log(steps), np.log(err), 1)[0])


def transport_checks(profile, kind, f0, grid, method="rk4"):
    """Equivalence, drift, sign-oracle and group-shift checks for one configuration."""
    rep = equivalence_report(profile, kind, f0, grid, method)
    checks = [
        Check("equivalence_max_frame_deviation", rep.max_frame_deviation, EQUIVALENCE_TOL),
        Check("spinor_norm_drift", rep.spinor_norm_defect, NORM_DRIFT_TOL),
        Check("frenet_orthonormality_drift", rep.frenet_orthonormality_defect, ORTHO_DRIFT_TOL),
    ]
    devs = sign_oracle(profile, kind, spinor_from_frame(f0)[0], grid, method)
    checks.append(Check(f"sign_oracle_pass_sigma{SIGMA_SIGN:+d}", devs[SIGMA_SIGN], EQUIVALENCE_TOL))
    checks.append(Check(f"sign_oracle_reject_sigma{-SIGMA_SIGN:+d}", devs[-SIGMA_SIGN], WRONG_SIGN_MIN, ">="))
    shifted = equivalence_report(profile.shifted(-lg.tau_G(kind)), lg.ABELIAN, f0, grid, method)
    checks.append(
        Check(
            "group_shift_reduction",
            max(
                _max(rep.frenet.frames - shifted.frenet.frames),
                _max(rep.spinor.spinors - shifted.spinor.spinors),
            ),
            IDENTITY_TOL,
        )
    )
    return checks, rep


def run_all(profile, kind, f0, grid, method="rk4", seed=0, samples=1000):
    """Full battery for one configuration; returns ``(checks, equivalence_report)``."""
    rng = np.random.default_rng(seed)
    checks = group_checks(kind, rng, samples)
    checks += spinor_algebra_checks(rng, samples)
    checks += coefficient_checks(kind, rng, samples)
    checks.append(Check("derivative_consistency_slope", derivative_slope(kind, rng), 0.9, ">="))
    more, rep = transport_checks(profile, kind, f0, grid, method)
    return checks + more, rep
