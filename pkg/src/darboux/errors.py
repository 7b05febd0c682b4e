"""Exception hierarchy shared by every module of the package."""


class DarbouxError(Exception):
    """Base class for all errors raised by the package."""


# graded core
class DuplicateName(DarbouxError):
    pass


class PositiveDegree(DarbouxError):
    pass


class InvertibleNonzeroDegree(DarbouxError):
    pass


class SignatureMismatch(DarbouxError):
    pass


class UnknownGenerator(DarbouxError):
    pass


class MissingAssignment(DarbouxError):
    pass


class ZeroForInvertible(DarbouxError):
    pass


class IllFormedMonomial(DarbouxError):
    """An odd generator squared, or a negative power of a non-invertible one."""


# calculus
class InconsistentDifferential(DarbouxError):
    pass


class WeightMismatch(DarbouxError):
    pass


# models
class WrongDegreeH(DarbouxError):
    pass


class MalformedH(DarbouxError):
    pass


class MasterEquationFails(DarbouxError):
    pass


class UnsupportedClass(DarbouxError):
    pass


class DSquaredFailsOnW(DarbouxError):
    pass


class BadMultiplicities(DarbouxError):
    pass


# verifier / symplectification / stacks
class NoPointsGiven(DarbouxError):
    pass


class ContactAxiomsFail(DarbouxError):
    pass


class TZero(DarbouxError):
    pass


class PositiveShift(DarbouxError):
    pass


class TwistNotClosed(DarbouxError):
    pass


# cli
class BadSpecJSON(DarbouxError):
    pass
