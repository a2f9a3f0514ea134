"""Three-dimensional Lie groups carrying a bi-invariant metric.

Vectors are coefficient 3-vectors in a left-invariant orthonormal basis of the
Lie algebra, with structure constants ``[e_i, e_j] = c * eps_ijk * e_k``.  The
constant ``c`` is 0 for an abelian group, 1 for SO(3) and 2 for S^3, which makes
``tau_G = c / 2`` come out as 0, 1/2 and 1.

Group points are plain arrays: a displacement 3-vector when ``c == 0``, a unit
quaternion ``(w, x, y, z)`` for S^3, and a 3x3 rotation matrix otherwise.
"""

from dataclasses import dataclass

import numpy as np

from .errors import GridError, InvalidFrameError

FRAME_TOL = 1e-9

# published tau_G for the named groups
NAMED_TAU_G = {"abelian": 0.0, "so3": 0.5, "s3": 1.0}
_NAMED_C = {"abelian": 0.0, "so3": 1.0, "s3": 2.0}


@dataclass(frozen=True)
class GroupKind:
    """Which bi-invariant 3D group, plus its structure constant.

    A named tag can be paired with a non-standard ``c``; such a kind is still
    usable but ``is_consistent`` is False and the verifier flags it.
    """

    tag: str
    c: float

    def __post_init__(self):
        if self.tag not in ("abelian", "so3", "s3", "custom"):
            raise ValueError(f"unknown group tag {self.tag!r}")
        if not np.isfinite(self.c) or self.c < 0:
            raise ValueError(f"structure constant must be finite and >= 0, got {self.c}")

    @classmethod
    def named(cls, tag, c=None):
        tag = tag.lower()
        if tag == "custom":
            if c is None:
                raise ValueError("custom group needs a structure constant c")
            return cls("custom", float(c))
        return cls(tag, _NAMED_C[tag] if c is None else float(c))

    @property
    def is_consistent(self):
        return self.tag == "custom" or self.c == _NAMED_C[self.tag]

    @property
    def point_kind(self):
        if self.c == 0.0:
            return "vector"
        return "quaternion" if self.tag == "s3" else "matrix"


ABELIAN = GroupKind("abelian", 0.0)
SO3 = GroupKind("so3", 1.0)
S3 = GroupKind("s3", 2.0)


def custom(c):
    return GroupKind("custom", float(c))


def bracket(kind, w, z):
    """Lie bracket of coefficient vectors: ``c * (w x z)``."""
    return kind.c * np.cross(np.asarray(w, dtype=float), np.asarray(z, dtype=float))


def tau_G(kind):
    return kind.c / 2.0


def frame_defect(frame):
    """Max deviation of ``frame @ frame.T`` from the identity, per batch element."""
    frame = np.asarray(frame, dtype=float)
    gram = frame @ np.swapaxes(frame, -1, -2)
    return np.max(np.abs(gram - np.eye(3)), axis=(-2, -1))


def check_frame(frame, tol=FRAME_TOL):
    """Validate a (batch of) frame(s) with rows T, N, B; return it as an array."""
    frame = np.asarray(frame, dtype=float)
    if frame.shape[-2:] != (3, 3):
        raise InvalidFrameError(f"invalid frame: expected shape (..., 3, 3), got {frame.shape}")
    if not np.all(np.isfinite(frame)):
        raise InvalidFrameError("invalid frame: non-finite components")
    if np.any(frame_defect(frame) > tol):
        raise InvalidFrameError("invalid frame: T, N, B are not orthonormal")
    if np.any(np.abs(np.linalg.det(frame) - 1.0) > tol):
        raise InvalidFrameError("invalid frame: det(T, N, B) != +1 (negatively oriented)")
    return frame


def tau_G_from_frame(kind, frame):
    """``<[T, N], B> / 2`` evaluated on a frame; independent of the frame."""
    frame = check_frame(frame)
    T, N, B = frame[..., 0, :], frame[..., 1, :], frame[..., 2, :]
    return 0.5 * np.sum(bracket(kind, T, N) * B, axis=-1)


def covariant_derivative(kind, t, w, w_dot):
    """Covariant derivative along a curve with tangent ``t``: ``w_dot + [t, w]/2``."""
    return np.asarray(w_dot, dtype=float) + 0.5 * bracket(kind, t, w)


def random_frames(n, rng):
    """``n`` Haar-random positively oriented orthonormal frames, shape (n, 3, 3)."""
    q, r = np.linalg.qr(rng.standard_normal((n, 3, 3)))
    q = q * np.sign(np.diagonal(r, axis1=-2, axis2=-1))[:, None, :]
    q[np.linalg.det(q) < 0, :, 2] *= -1.0
    return np.swapaxes(q, -1, -2)


# --- group points -----------------------------------------------------------


def hat(v):
    """Skew matrix with ``hat(v) @ x == cross(v, x)``."""
    v = np.asarray(v, dtype=float)
    out = np.zeros(v.shape[:-1] + (3, 3))
    out[..., 0, 1], out[..., 0, 2] = -v[..., 2], v[..., 1]
    out[..., 1, 0], out[..., 1, 2] = v[..., 2], -v[..., 0]
    out[..., 2, 0], out[..., 2, 1] = -v[..., 1], v[..., 0]
    return out


def qmul(p, q):
    """Hamilton product of quaternions stored as ``(w, x, y, z)``."""
    p, q = np.asarray(p, dtype=float), np.asarray(q, dtype=float)
    pw, pv = p[..., :1], p[..., 1:]
    qw, qv = q[..., :1], q[..., 1:]
    w = pw * qw - np.sum(pv * qv, axis=-1, keepdims=True)
    v = pw * qv + qw * pv + np.cross(pv, qv)
    return np.concatenate([w, v], axis=-1)


def qexp(v):
    """Exponential of the pure quaternion with vector part ``v``."""
    v = np.asarray(v, dtype=float)
    angle = np.linalg.norm(v, axis=-1, keepdims=True)
    # sin(x)/x via np.sinc, which is sin(pi x)/(pi x)
    return np.concatenate([np.cos(angle), np.sinc(angle / np.pi) * v], axis=-1)


def rotation_exp(v):
    """Rodrigues form of ``expm(hat(v))``."""
    v = np.asarray(v, dtype=float)
    angle = np.linalg.norm(v, axis=-1)[..., None, None]
    K = hat(v)
    a = np.sinc(angle / np.pi)
    # (1 - cos x)/x^2 = sinc(x/2)^2 / 2, stable at 0
    b = 0.5 * np.sinc(angle / (2.0 * np.pi)) ** 2
    return np.eye(3) + a * K + b * (K @ K)


def identity_point(kind):
    if kind.point_kind == "vector":
        return np.zeros(3)
    if kind.point_kind == "quaternion":
        return np.array([1.0, 0.0, 0.0, 0.0])
    return np.eye(3)


def point_defect(kind, points):
    """How far points are from the group: quaternion norm error or orthogonality defect."""
    points = np.asarray(points, dtype=float)
    if kind.point_kind == "vector":
        return np.zeros(points.shape[:-1])
    if kind.point_kind == "quaternion":
        return np.abs(np.linalg.norm(points, axis=-1) - 1.0)
    gram = np.swapaxes(points, -1, -2) @ points
    ortho = np.max(np.abs(gram - np.eye(3)), axis=(-2, -1))
    return np.maximum(ortho, np.abs(np.linalg.det(points) - 1.0))


def check_point(kind, point, tol=FRAME_TOL):
    point = np.asarray(point, dtype=float)
    expected = {"vector": (3,), "quaternion": (4,), "matrix": (3, 3)}[kind.point_kind]
    if point.shape != expected:
        raise ValueError(f"{kind.tag} group point must have shape {expected}, got {point.shape}")
    if not np.all(np.isfinite(point)) or point_defect(kind, point) > tol:
        raise ValueError(f"start point is not on the {kind.tag} group")
    return point


def _algebra_rate(kind, t):
    """Left-invariant velocity in the representation used for group points."""
    if kind.point_kind == "quaternion":
        return t  # basis i, j, k already satisfies [i, j] = 2k
    return kind.c * t


def develop_curve(kind, start, tangents, s, method="exp_midpoint"):
    """Reconstruct group positions from left-invariant unit tangents sampled on ``s``.

    ``exp_midpoint`` multiplies by the group exponential of the averaged
    (renormalized) tangent of each step, which stays on the group exactly and is
    second order.  ``rk4_project`` runs classical RK4 in the ambient space and
    projects back onto the group after every step.
    """
    s = np.asarray(s, dtype=float)
    tangents = np.asarray(tangents, dtype=float)
    if s.ndim != 1 or s.size < 2:
        raise GridError("grid too short: need at least 2 arc-length nodes")
    if np.any(np.diff(s) <= 0.0):
        raise GridError("arc-length grid must be strictly increasing")
    if tangents.shape != (s.size, 3):
        raise ValueError(f"expected tangents of shape ({s.size}, 3), got {tangents.shape}")
    if np.any(np.abs(np.linalg.norm(tangents, axis=1) - 1.0) > 1e-6):
        raise ValueError("tangent samples must be unit vectors")
    start = check_point(kind, start)
    h = np.diff(s)[:, None]
    mid = tangents[:-1] + tangents[1:]
    mid /= np.linalg.norm(mid, axis=1, keepdims=True)

    if method == "exp_midpoint":
        return _develop_exp(kind, start, h * mid)
    if method == "rk4_project":
        return _develop_rk4(kind, start, tangents, mid, h)
    raise ValueError(f"unknown development method {method!r}")


def _develop_exp(kind, start, increments):
    n = increments.shape[0] + 1
    if kind.point_kind == "vector":
        out = np.empty((n, 3))
        out[0] = start
        out[1:] = start + np.cumsum(increments, axis=0)
        return out
    if kind.point_kind == "quaternion":
        steps = qexp(_algebra_rate(kind, increments))
        out = np.empty((n, 4))
        out[0] = start
        for i, step in enumerate(steps):
            q = qmul(out[i], step)
            out[i + 1] = q / np.linalg.norm(q)
        return out
    steps = rotation_exp(_algebra_rate(kind, increments))
    out = np.empty((n, 3, 3))
    out[0] = start
    for i, step in enumerate(steps):
        out[i + 1] = out[i] @ step
    return out


def _develop_rk4(kind, start, tangents, mid, h):
    n = tangents.shape[0]
    if kind.point_kind == "vector":
        incr = h / 6.0 * (tangents[:-1] + 4.0 * mid + tangents[1:])
        return _develop_exp(kind, start, incr)

    if kind.point_kind == "quaternion":
        def rhs(q, t):
            return qmul(q, np.concatenate([[0.0], t]))

        def project(q):
            return q / np.linalg.norm(q)
    else:
        def rhs(R, t):
            return R @ hat(kind.c * t)

        def project(R):
            u, _, vt = np.linalg.svd(R)
            return u @ vt

    out = np.empty((n,) + start.shape)
    out[0] = start
    for i in range(n - 1):
        y, dh = out[i], h[i, 0]
        k1 = rhs(y, tangents[i])
        k2 = rhs(y + 0.5 * dh * k1, mid[i])
        k3 = rhs(y + 0.5 * dh * k2, mid[i])
        k4 = rhs(y + dh * k3, tangents[i + 1])
        out[i + 1] = project(y + dh / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
    return out
