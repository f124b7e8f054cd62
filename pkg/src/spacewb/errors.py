class WorkbenchError(Exception):
    """Base class for every error raised by the package."""


class FormatError(WorkbenchError):
    def __init__(self, msg, path=None, line=None):
        where = ""
        if path is not None:
            where = f"{path}:{line}: " if line is not None else f"{path}: "
        elif line is not None:
            where = f"line {line}: "
        super().__init__(where + msg)
        self.path = path
        self.line = line


class InvalidMachine(WorkbenchError):
    pass


class BadLetter(WorkbenchError):
    pass


class NotApplicable(WorkbenchError):
    pass


class StepCapExceeded(WorkbenchError):
    pass


class NondeterministicChoice(WorkbenchError):
    pass


class S10Missing(WorkbenchError):
    pass


class NotSymmetric(WorkbenchError):
    pass


class NotOneLetter(WorkbenchError):
    pass


class DomainViolation(NotApplicable):
    pass


class MalformedTrace(WorkbenchError):
    pass


class NotPositive(WorkbenchError):
    pass


class BadL(WorkbenchError):
    pass


class IllegalMove(WorkbenchError):
    pass


class NotAccepting(WorkbenchError):
    pass


class SpaceBoundExceeded(WorkbenchError):
    pass


class BoundTooSmall(WorkbenchError):
    pass
