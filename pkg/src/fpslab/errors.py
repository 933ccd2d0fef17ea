"""Exception types shared across the package."""


class SeriesLabError(Exception):
    """Base class for every error raised by this package."""


class DivByZero(SeriesLabError):
    """Division by a series that is identically zero up to its order."""


class NonInvertibleLead(SeriesLabError):
    """Leading coefficient of a divisor is not a unit of the ring."""


class InnerConstantTerm(SeriesLabError):
    """Composition attempted with an inner series of valuation zero."""


class NotInvertible(SeriesLabError):
    """Compositional inversion needs valuation 1 and unit leading coefficient."""


class BadConstantTerm(SeriesLabError):
    """log/pow need constant term 1; exp needs valuation at least 1."""


class NonIntegrableTerm(SeriesLabError):
    """Integration hit a nonzero coefficient at exponent -1."""


class NotNormalized(SeriesLabError):
    """Operation requires a series of the form x + x^2 * ring[[x]]."""


class OrderExhausted(SeriesLabError):
    """A coefficient beyond the known truncation order was requested."""


class DegenerateDivisor(SeriesLabError):
    """A recurrence divisor vanished where it provably should not."""


class DegenerateParameter(SeriesLabError):
    """Parameter lies in the degenerate set of a coefficient recurrence."""


class PremiseViolated(SeriesLabError):
    """A conditional identity was invoked with a failing premise."""


class LogDegreeOverflow(SeriesLabError):
    """An operation tried to create a square of the formal logarithm."""


class BadLead(SeriesLabError):
    """Asymptotic logarithm needs leading tail coefficient 1 and no log part."""


class NotMonic(SeriesLabError):
    """Polynomial argument must be monic of the stated degree."""


class DegreeMismatch(SeriesLabError):
    """Polynomial argument has the wrong degree."""


class OutOfRange(SeriesLabError):
    """Index arguments outside the valid range."""


class ConfigError(SeriesLabError):
    """Invalid request/CLI configuration (unknown target, bad parameter)."""
