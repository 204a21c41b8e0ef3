"""Exception hierarchy and the three-valued verdict type."""

import enum


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag):
        return cls.YES if flag else cls.NO

    def __str__(self):
        return self.value


class NetError(Exception):
    """Base class for every error raised by this package."""


class StateBoundExceeded(NetError):
    def __init__(self, bound, what="markings"):
        super().__init__(f"exploration exceeded the bound of {bound} {what}")
        self.bound = bound


class CandidateCapExceeded(NetError):
    def __init__(self, cap, count):
        super().__init__(f"{count} candidate distributions exceed the cap of {cap}")
        self.cap = cap
        self.count = count


class StepNotEnabled(NetError):
    pass


class NotStable(NetError):
    pass


class InvariantViolation(NetError):
    pass


class ParseError(NetError):
    def __init__(self, message, line=None, column=None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column


class DuplicateElement(ParseError):
    pass


class UnknownEndpoint(ParseError):
    pass
