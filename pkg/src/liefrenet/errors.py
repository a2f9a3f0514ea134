"""Exception hierarchy shared by all modules."""


class LieFrenetError(ValueError):
    """Base class for every error raised by liefrenet."""


class DegenerateSpinorError(LieFrenetError):
    pass


class InvalidTriadError(LieFrenetError):
    pass


class InvalidFrameError(LieFrenetError):
    pass


class GridError(LieFrenetError):
    pass


class ProfileError(LieFrenetError):
    """A curvature profile violates a precondition at arc length ``s``."""

    def __init__(self, message, s=None):
        super().__init__(message)
        self.s = s
