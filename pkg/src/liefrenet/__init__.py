"""Frenet and spinor frame transport in three-dimensional Lie groups."""

from .errors import (
    DegenerateSpinorError,
    GridError,
    InvalidFrameError,
    InvalidTriadError,
    LieFrenetError,
    ProfileError,
)
from .frenet_transport import TransportResult, curve_from_profile, frenet_rhs, integrate_frenet
from .lie_group import (
    ABELIAN,
    S3,
    SO3,
    GroupKind,
    bracket,
    covariant_derivative,
    custom,
    develop_curve,
    tau_G,
    tau_G_from_frame,
)
from .profiles import ArcGrid, CurvatureProfile
from .spinor_algebra import SIGMA, mate, norm, spinor_to_triad, triad_to_spinor
from .spinor_transport import (
    SIGMA_SIGN,
    equivalence_report,
    frame_from_spinor,
    integrate_spinor,
    spinor_from_frame,
    spinor_rhs,
)

__version__ = "0.1.0"
