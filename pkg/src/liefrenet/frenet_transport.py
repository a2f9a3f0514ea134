"""Frenet frame transport in a bi-invariant 3D Lie group.

A frame is a 3x3 array with rows ``T, N, B``.  Along an arc-length curve the
frame obeys the Frenet system with the torsion replaced by the effective
torsion ``tau - tau_G``::

    T' =  kappa N
    N' = -kappa T + (tau - tau_G) B
    B' =          - (tau - tau_G) N
"""

from dataclasses import dataclass

import numpy as np

from . import _rk4
from .lie_group import check_frame, develop_curve, frame_defect, tau_G
from .profiles import sample_on_grid

METHODS = ("rk4", "rk4_renorm")


@dataclass(frozen=True)
class TransportResult:
    """Samples of one transport run on an arc-length grid.

    Exactly one of ``frames`` (n, 3, 3) and ``spinors`` (n, 2) is the integrated
    state; for spinor runs ``frames`` holds the induced frames.
    """

    s: np.ndarray
    frames: np.ndarray
    spinors: np.ndarray = None
    method: str = "rk4"
    orthonormality_defect: float = 0.0
    norm_defect: float = 0.0

    @property
    def representation(self):
        return "frame" if self.spinors is None else "spinor"


def frenet_matrix(kind, kappa, tau):
    """Coefficient matrix of the Frenet system; broadcasts over array inputs."""
    kappa = np.asarray(kappa, dtype=float)
    theta = np.asarray(tau, dtype=float) - tau_G(kind)
    kappa, theta = np.broadcast_arrays(kappa, theta)
    K = np.zeros(kappa.shape + (3, 3))
    K[..., 0, 1] = kappa
    K[..., 1, 0] = -kappa
    K[..., 1, 2] = theta
    K[..., 2, 1] = -theta
    return K


def frenet_rhs(kind, kappa, tau, frame):
    """Derivative of the frame rows ``(T', N', B')``."""
    return frenet_matrix(kind, kappa, tau) @ np.asarray(frame, dtype=float)


def gram_schmidt(frame):
    T = frame[0] / np.linalg.norm(frame[0])
    N = frame[1] - np.dot(frame[1], T) * T
    N = N / np.linalg.norm(N)
    return np.stack([T, N, np.cross(T, N)])


def frame_diagnostics(frames):
    ortho = float(np.max(frame_defect(frames)))
    unit = float(np.max(np.abs(np.linalg.norm(frames, axis=-1) - 1.0)))
    return ortho, unit


def _transport_frames(profile, kind, f0, grid, method):
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    kappa, tau = sample_on_grid(profile, grid)
    K = frenet_matrix(kind, kappa, tau)
    steps = _rk4.propagators(K[:, 0], K[:, 1], K[:, 2], grid.step)
    project = gram_schmidt if method == "rk4_renorm" else None
    frames = _rk4.run(steps, np.asarray(f0, dtype=float), project)
    ortho, unit = frame_diagnostics(frames)
    return TransportResult(grid.nodes, frames, None, method, ortho, unit)


def integrate_frenet(profile, kind, f0, grid, method="rk4"):
    """Integrate the Frenet system with classical RK4 from a valid initial frame.

    ``rk4_renorm`` re-orthonormalizes (T, then N, then B = T x N) after each step.
    """
    return _transport_frames(profile, kind, check_frame(f0), grid, method)


def curve_from_profile(profile, kind, f0, start, grid, method="rk4", develop="exp_midpoint"):
    """Frames plus the developed group positions of the curve they frame."""
    result = integrate_frenet(profile, kind, f0, grid, method)
    positions = develop_curve(kind, start, result.frames[:, 0, :], result.s, develop)
    return result, positions
