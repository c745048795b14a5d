"""Exception hierarchy; every domain error raised by this package derives from CharsumError."""


class CharsumError(Exception):
    """Base class for domain errors (CLI maps these to exit code 1)."""


class NonCoprimeModuli(CharsumError):
    pass


class NotAUnit(CharsumError):
    pass


class NoGenerator(CharsumError):
    pass


class IndexOutOfRange(CharsumError):
    pass


class InvalidSplit(CharsumError):
    pass


class NotSquarefree(CharsumError):
    pass


class LogLogUndefined(CharsumError):
    pass


# Second name used by the bound evaluators' error surface.
UndefinedLogLog = LogLogUndefined


class NotPrimitive(CharsumError):
    pass


class NoSolution(CharsumError):
    pass


class NonIntegralTerm(CharsumError):
    pass


class PoleAtExpansionPoint(CharsumError):
    pass


class BadSplit(CharsumError):
    pass


class NormalizationViolated(CharsumError):
    pass


class ThresholdExceedsModulus(CharsumError):
    pass


class InstanceTooLarge(CharsumError):
    pass


class FixedPointPresent(CharsumError):
    pass


class OddK(CharsumError):
    pass


class NoValidClass(CharsumError):
    pass


class NoAdmissiblePair(CharsumError):
    pass


class PrincipalCharacter(CharsumError):
    pass


class MissingInput(CharsumError):
    pass
