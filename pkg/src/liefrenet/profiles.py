"""Curvature profiles and arc-length grids."""

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import polynomial as P

from .errors import GridError, ProfileError


@dataclass(frozen=True)
class ArcGrid:
    """Uniform arc-length grid on ``[s0, s1]`` with step at most ``h``.

    The step is shrunk to ``(s1 - s0) / ceil((s1 - s0) / h)`` so the last node
    lands exactly on ``s1``.
    """

    s0: float
    s1: float
    h: float

    def __post_init__(self):
        if not all(math.isfinite(x) for x in (self.s0, self.s1, self.h)):
            raise GridError("grid endpoints and step must be finite")
        if not self.s1 > self.s0:
            raise GridError(f"grid needs s1 > s0, got [{self.s0}, {self.s1}]")
        if not 0.0 < self.h <= self.s1 - self.s0:
            raise GridError(f"grid step must satisfy 0 < h <= s1 - s0, got h={self.h}")

    @property
    def n_steps(self):
        # the 1e-9 slack keeps e.g. 10 / 1e-3 from rounding up to 10001 steps
        return max(1, math.ceil((self.s1 - self.s0) / self.h - 1e-9))

    @property
    def step(self):
        return (self.s1 - self.s0) / self.n_steps

    @property
    def nodes(self):
        return np.linspace(self.s0, self.s1, self.n_steps + 1)

    def stage_points(self):
        """RK4 abscissae per step, shape (n_steps, 3): start, midpoint, end."""
        s = self.nodes
        return np.stack([s[:-1], 0.5 * (s[:-1] + s[1:]), s[1:]], axis=1)



def _constant(value):
    value = float(value)
    return lambda s: np.full(np.shape(s), value)


def _sinusoid(offset=0.0, sin=0.0, cos=0.0, frequency=1.0):
    return lambda s: offset + sin * np.sin(frequency * s) + cos * np.cos(frequency * s)


@dataclass(frozen=True)
class CurvatureProfile:
    """Curvature ``kappa(s)`` and torsion ``tau(s)`` as vectorized callables.

    ``spec`` is a JSON-friendly description used for config echoes;
    ``spacing`` is set for sampled tables, whose grid step may not exceed it.
    """

    kappa: callable
    tau: callable
    spec: dict = field(default_factory=dict, compare=False)
    spacing: float = None

    @classmethod
    def constant(cls, kappa, tau):
        return cls(_constant(kappa), _constant(tau), {"form": "constant", "kappa": kappa, "tau": tau})

    @classmethod
    def polynomial(cls, kappa, tau):
        """Coefficients in increasing degree order."""
        kc, tc = np.asarray(kappa, dtype=float), np.asarray(tau, dtype=float)
        return cls(
            lambda s: P.polyval(s, kc),
            lambda s: P.polyval(s, tc),
            {"form": "polynomial", "kappa": list(map(float, kc)), "tau": list(map(float, tc))},
        )

    @classmethod
    def sinusoidal(cls, kappa, tau):
        """Each of ``kappa``/``tau`` is a dict with keys offset, sin, cos, frequency.

        The value is ``offset + sin*sin(frequency*s) + cos*cos(frequency*s)``.
        """
        return cls(
            _sinusoid(**kappa),
            _sinusoid(**tau),
            {"form": "sinusoidal", "kappa": dict(kappa), "tau": dict(tau)},
        )

    @classmethod
    def sampled(cls, s, kappa, tau, source=None):
        """Linear interpolation of tabulated values on strictly increasing ``s``."""
        s = np.asarray(s, dtype=float)
        kappa = np.asarray(kappa, dtype=float)
        tau = np.asarray(tau, dtype=float)
        if s.ndim != 1 or s.size < 2 or kappa.shape != s.shape or tau.shape != s.shape:
            raise ProfileError("sampled profile needs matching 1-D arrays with at least 2 rows")
        if np.any(np.diff(s) <= 0):
            raise ProfileError("sampled profile abscissae must be strictly increasing")
        if not (np.all(np.isfinite(kappa)) and np.all(np.isfinite(tau))):
            raise ProfileError("sampled profile values must be finite")
        spec = {"form": "table", "path": source} if source else {"form": "table"}
        return cls(
            lambda x: np.interp(x, s, kappa),
            lambda x: np.interp(x, s, tau),
            spec,
            spacing=float(np.min(np.diff(s))),
        )

    def shifted(self, dtau):
        """Same profile with the torsion offset by ``dtau``."""
        tau = self.tau
        spec = dict(self.spec, tau_shift=self.spec.get("tau_shift", 0.0) + dtau)
        return CurvatureProfile(self.kappa, lambda s: tau(s) + dtau, spec, self.spacing)

    def sample(self, s):
        s = np.asarray(s, dtype=float)
        return np.asarray(self.kappa(s), dtype=float), np.asarray(self.tau(s), dtype=float)


def sample_on_grid(profile, grid, allow_zero_kappa=False):
    """Evaluate a profile at every RK4 stage point of ``grid`` and check it.

    Returns ``(kappa, tau)`` arrays of shape (n_steps, 3).  Raises
    ``ProfileError`` naming the first offending arc length.
    """
    if profile.spacing is not None and grid.step > profile.spacing * (1 + 1e-12):
        raise ProfileError(
            f"grid step {grid.step} exceeds the sampled profile spacing {profile.spacing}"
        )
    stages = grid.stage_points()
    kappa, tau = profile.sample(stages)
    finite = np.isfinite(kappa) & np.isfinite(tau)
    if not finite.all():
        s_bad = float(stages.flat[np.argmin(finite.ravel())])
        raise ProfileError(f"non-finite curvature or torsion at s={s_bad!r}", s_bad)
    bad = kappa < 0 if allow_zero_kappa else kappa <= 0
    if bad.any():
        i = np.argmax(bad.ravel())
        s_bad, k_bad = float(stages.flat[i]), float(kappa.flat[i])
        what = "negative" if allow_zero_kappa else "non-positive"
        raise ProfileError(f"{what} curvature kappa={k_bad!r} at s={s_bad!r}", s_bad)
    return kappa, tau
