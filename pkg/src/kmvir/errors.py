"""Exception hierarchy shared by all modules."""


class KmvirError(Exception):
    pass


class NotSimpleError(KmvirError, ValueError):
    pass


class AlgebraMismatchError(KmvirError, ValueError):
    pass


class PoleError(KmvirError, ZeroDivisionError):
    """A substitution made a denominator vanish.

    ``factor`` holds the irreducible denominator factor that vanished,
    as a :class:`~kmvir.scalars.RationalFunction`.
    """

    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class TruncationError(KmvirError, ValueError):
    pass


class CriticalLevelError(KmvirError, ValueError):
    pass


class DomainError(KmvirError, ValueError):
    pass


class CacheInvalidError(KmvirError):
    pass


class ConfigError(KmvirError, ValueError):
    pass
