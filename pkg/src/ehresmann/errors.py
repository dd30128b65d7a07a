"""Exception hierarchy shared by the whole package."""


class EhresmannError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(EhresmannError):
    """Malformed expression text. Carries the offset of the offending token."""

    def __init__(self, message, offset):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class EvaluationError(EhresmannError):
    """Evaluation failed (unbound variable)."""


class DomainError(EvaluationError):
    """Evaluation hit a point outside the domain of an elementary function
    (log of a non-positive number, negative base with fractional exponent,
    division by zero)."""


class UnprobeableError(EhresmannError):
    """Probabilistic zero-testing could not find enough valid probe points."""


class ChartError(EhresmannError):
    """Objects on incompatible charts, bad shapes, or bad coordinate names."""


class OutsideChartError(EhresmannError):
    """A numeric path left the declared chart box."""


class NotIntegrableError(EhresmannError):
    """Operation requires a flat (zero-curvature) connection."""


class NotLinearError(EhresmannError):
    """Christoffel extraction requested for a connection that is not
    fiberwise linear."""


class NotSOPDEError(EhresmannError):
    """Operation requires a jet field satisfying the second-order condition."""


class ModelError(EhresmannError):
    """Model file failed validation."""
