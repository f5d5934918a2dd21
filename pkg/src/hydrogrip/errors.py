"""Exception types raised by the gripper model."""


class DomainError(ValueError):
    """An argument lies outside the region where the model is defined."""


class CapacityError(DomainError):
    """The reservoir would run out of oil at the requested bend angle."""

    def __init__(self, message, theta_max):
        super().__init__(message)
        self.theta_max = theta_max


class QuadratureError(ArithmeticError):
    """Refined quadrature disagreed with the base evaluation."""


class SingularConfigurationError(ArithmeticError):
    """The horizontal Jacobian term vanishes, so Fx cannot be recovered."""


class UnboundedPayloadError(ArithmeticError):
    """Payload has no finite upper bound (degenerate geometry)."""
