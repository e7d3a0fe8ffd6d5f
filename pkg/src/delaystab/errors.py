"""Exception hierarchy for the stability engine."""


class DelayStabError(Exception):
    """Base class for all engine errors."""


class PlantValidationError(DelayStabError):
    """Malformed or physically inadmissible plant description."""


class OrderViolation(DelayStabError):
    """Numerator order too high: no principal term exists (m >= n)."""


class ZeroOnImaginaryAxis(DelayStabError):
    """A plant zero sits on the imaginary axis: C^2 + D^2 = 0 at this y."""


class NoRealBranch(DelayStabError):
    """The tangent-matching function has no real value here (P^2+Q^2 < 1)."""


class ExistenceFail(DelayStabError):
    """Tangent-matching function undefined at y = 0 (sum t_i^2 <= sum z_i^2)."""


class DegenerateCase(DelayStabError):
    """Near-double root or a classification quantity too close to zero."""


class EmptyInterval(DelayStabError):
    """No admissible proportional-gain interval exists."""


class EndpointIsRoot(DelayStabError):
    """Sturm counting endpoint is itself a root of the polynomial."""


class MultipleRootSuspected(DelayStabError):
    """Sturm chain collapsed early: the polynomial likely has multiple roots."""


class ContourHitsZero(DelayStabError):
    """Characteristic function vanishes on the counting contour."""
