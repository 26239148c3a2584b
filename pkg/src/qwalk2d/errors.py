"""Exception types raised by qwalk2d."""


class QWalkError(ValueError):
    """Base class for all domain errors in this package."""


class NormError(QWalkError):
    def __init__(self, actual_norm: float):
        self.actual_norm = actual_norm
        super().__init__(f"qudit norm squared is {actual_norm!r}, expected 1 within 1e-9")


class DegeneratePoint(QWalkError):
    """Wave number sits where omega is 0 or pi and the gradient is undefined."""


class GridTooSmall(QWalkError):
    pass


class ZeroTime(QWalkError):
    pass


class OutsideDomain(QWalkError):
    """Velocity lies outside the open ellipse vx^2/p + vy^2/q < 1."""


class NegativeMass(QWalkError):
    def __init__(self, delta: float):
        self.delta = delta
        super().__init__(f"localization probability came out negative: {delta!r}")


class PoleOnContour(QWalkError):
    pass
