"""
Exception hierarchy. Every error knows the process exit status the command
line reports for it, so front ends never need a lookup table.
"""
import copy


class SignatureError(RuntimeError):
    exit_code = 1

    def __init__(self, message, index=None):
        self.index = index
        if index is not None:
            message = "%s (index %d)" % (message, index)
        super().__init__(message)

    def with_context(self, context):
        """ Same error class, message prefixed with `context`. Used to add scale info. """
        err = copy.copy(self)
        err.args = ("%s: %s" % (context, self),)
        return err


# Input (exit 2)
class InputError(SignatureError):
    exit_code = 2


class InputParseError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)


class UnknownCurve(InputError):
    pass


class InvalidOption(InputError):
    pass


# Geometry (exit 3)
class GeometryError(SignatureError):
    exit_code = 3


class InvalidGeometry(GeometryError):
    pass


class NegativeDiscriminant(GeometryError):
    pass


class NotRealizable(GeometryError):
    pass


class DegenerateBase(GeometryError):
    pass


class DuplicatePoints(GeometryError):
    pass


class DegenerateConfiguration(GeometryError):
    pass


class TooFewPoints(GeometryError):
    pass


class VanishingCurvature(GeometryError):
    pass


# Oracle / parameter domain (exit 4)
class DomainError(SignatureError):
    exit_code = 4


class SingularParametrization(DomainError):
    pass


class InflectionPoint(DomainError):
    pass


class EmptyRange(DomainError):
    pass
