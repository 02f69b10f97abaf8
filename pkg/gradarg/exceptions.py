from __future__ import absolute_import


class GradargError(Exception):
    pass


class InvalidArgument(GradargError, ValueError):
    pass


class UnknownArgument(GradargError, LookupError):
    def __init__(self, name):
        super(UnknownArgument, self).__init__(
            "Unknown argument '{0}'.".format(name))
        self.name = name


class FrameworkSyntaxError(GradargError, ValueError):
    def __init__(self, message, line, column):
        super(FrameworkSyntaxError, self).__init__(
            "{0} (line {1}, column {2})".format(message, line, column))
        self.line = line
        self.column = column


class TupleSyntaxError(GradargError, ValueError):
    pass


class GraphHasCycles(GradargError):
    pass


class EditError(GradargError):
    pass


class InvalidFamily(GradargError, ValueError):
    pass


class ConvergenceError(GradargError):
    pass


class UndecidableLabelling(GradargError):
    pass


class MixedValueKinds(GradargError, TypeError):
    pass


class EnumerationBoundExceeded(GradargError):
    pass
