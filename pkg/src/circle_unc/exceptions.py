"""Exception types raised by circle_unc."""


class CircleDomainError(ValueError):
    """An argument lies outside the domain of a function (z = 0, t <= 0, s <= 0)."""


class DegenerateSuperpositionError(ValueError):
    """A superposition whose norm vanishes (below 1e-10)."""


class TruncationError(RuntimeError):
    """The coefficient window could not be certified within the |m| cap,
    or a reweighted sum overflowed before decaying."""
