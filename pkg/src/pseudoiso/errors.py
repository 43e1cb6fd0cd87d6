"""Exception hierarchy shared by every module of the package."""


class PseudoIsoError(Exception):
    """Base class for all errors raised by pseudoiso."""


# -- expressions ------------------------------------------------------------


class ParseError(PseudoIsoError):
    """Raised when an expression cannot be parsed.

    ``offset`` is the byte offset into the source text where parsing failed.
    """

    def __init__(self, message, offset=0):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class ExprSyntaxError(ParseError):
    pass


class UnknownIdentifier(ParseError):
    pass


class ArityError(ParseError):
    pass


class DomainError(PseudoIsoError, ValueError):
    """An expression was evaluated outside the domain of one of its nodes."""


# -- vectors ----------------------------------------------------------------


class NotTimelike(PseudoIsoError, ValueError):
    pass


class DifferentCones(PseudoIsoError, ValueError):
    pass


# -- curves -----------------------------------------------------------------


class MixedCausality(PseudoIsoError):
    pass


class Irregular(PseudoIsoError):
    pass


class NotArcLength(PseudoIsoError):
    pass


class NotAdmissible(PseudoIsoError):
    pass


class ZeroCurvature(PseudoIsoError):
    pass


class UnsupportedClass(PseudoIsoError):
    pass


class NotLightlike(PseudoIsoError):
    pass


class NoSuchPlane(PseudoIsoError):
    pass


# -- surfaces ---------------------------------------------------------------


class DegenerateMetric(PseudoIsoError):
    pass


class SingularGraph(PseudoIsoError):
    pass


class EmptyDomain(PseudoIsoError, ValueError):
    pass


class InvalidParams(PseudoIsoError, ValueError):
    pass
