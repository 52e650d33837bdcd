"""Exception hierarchy shared by all wtchaos modules."""


class ChaosError(Exception):
    """Base class for every error raised by wtchaos."""


class GroupMismatchError(ChaosError, ValueError):
    """Raised when elements of different groups are combined."""


class NumericRangeError(ChaosError, ArithmeticError):
    """Raised when a value leaves the representable range.

    Covers 64-bit overflow of group coordinates and the bit-length cap of
    exact rational products. Callers usually retry in log mode.
    """


class DomainError(ChaosError, ValueError):
    """Raised when an argument lies outside the domain of an operation."""


class PreconditionError(ChaosError, ValueError):
    """Raised when a documented precondition of an operation fails."""


class InvariantViolationError(ChaosError):
    """Raised when a computed value breaks a declared invariant."""


class ConfigError(ChaosError, ValueError):
    """Raised for invalid experiment configuration.

    The offending key is kept in ``key`` so the CLI can name it.
    """

    def __init__(self, msg, key=None):
        super().__init__(msg)
        self.key = key
