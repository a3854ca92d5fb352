"""Exception hierarchy shared by every module."""


class KRLabError(Exception):
    pass


class ConfigurationError(KRLabError, ValueError):
    """Illegal Cartan type, rank, or weight."""


class UsageError(KRLabError, ValueError):
    """Objects from different root systems, wrong dimensions, bad input form."""


class PreconditionError(KRLabError, ValueError):
    pass


class ResourceError(KRLabError, RuntimeError):
    """An enumeration would exceed the configured budget."""


class InvariantViolation(KRLabError, AssertionError):
    """A mathematical invariant failed; this signals a bug, not bad input.

    ``anchor`` names the claim that was violated so reports can point at it.
    """

    def __init__(self, message, anchor=None):
        super().__init__(message if anchor is None else f"{anchor}: {message}")
        self.anchor = anchor
