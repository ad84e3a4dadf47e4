"""Exception hierarchy shared by every module."""


class BinsplitError(Exception):
    """Base class for all errors raised by this package."""


class DimensionError(BinsplitError, ValueError):
    pass


class LabelError(BinsplitError, ValueError):
    pass


class StructureError(BinsplitError, ValueError):
    """A graph does not have the shape an operation needs (e.g. disconnected)."""


class DomainError(BinsplitError, ValueError):
    """An argument is outside the operation's domain (e.g. a non-graphic matroid)."""


class ContractError(BinsplitError, ValueError):
    """A documented precondition of a check does not hold."""


class ResourceError(BinsplitError, RuntimeError):
    """A desk-scale guard was tripped."""


class FixtureError(BinsplitError):
    def __init__(self, entry: str, predicate: str, detail: str = ""):
        self.entry = entry
        self.predicate = predicate
        msg = f"fixture {entry!r} failed validation {predicate!r}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class FormatError(BinsplitError, ValueError):
    """Malformed matroid or graph text file."""
