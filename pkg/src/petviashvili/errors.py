"""Exception hierarchy shared by all modules."""


class PetviashviliError(Exception):
    """Base class for every error raised by this package."""


# grid / transforms
class NonDivisible(PetviashviliError, ValueError):
    pass


class TooFewPoints(PetviashviliError, ValueError):
    pass


class LengthMismatch(PetviashviliError, ValueError):
    pass


class ImaginaryResidueTooLarge(PetviashviliError, ArithmeticError):
    pass


# models
class InvalidSpeed(PetviashviliError, ValueError):
    pass


class InvalidNonlinearity(PetviashviliError, ValueError):
    pass


# guesses
class FileLengthMismatch(PetviashviliError, ValueError):
    pass


class FileUnreadable(PetviashviliError, OSError):
    pass


# solver
class ZeroDenominator(PetviashviliError, ArithmeticError):
    """An inner product in a stabilizing factor vanished (collapse to zero)."""


class GammaZero(PetviashviliError, ValueError):
    """The two-factor scheme was called with gamma == 0."""


class NumericalFailure(PetviashviliError, ArithmeticError):
    pass


class ConfigError(PetviashviliError, ValueError):
    pass


# analysis
class FlatField(PetviashviliError, ValueError):
    pass


class BadBracket(PetviashviliError, ValueError):
    pass


class TailTooShort(PetviashviliError, ValueError):
    pass


class TailBelowFloor(PetviashviliError, ValueError):
    pass


# io
class MalformedCSV(PetviashviliError, ValueError):
    pass


class NonUniformGrid(PetviashviliError, ValueError):
    pass
