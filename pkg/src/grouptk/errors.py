class GroupToolkitError(Exception):
    pass


class FormatError(GroupToolkitError, ValueError):
    """Malformed group spec, cycle string or catalog entry."""


class RangeError(GroupToolkitError, ValueError):
    """A constructor parameter lies outside its documented range."""


class GuardExceeded(GroupToolkitError):
    """A configured resource guard (order, degree, subgroup count) was hit."""


class NotAnAutomorphism(GroupToolkitError, ValueError):
    pass


class NotNormal(GroupToolkitError, ValueError):
    pass


class NotSubgroup(GroupToolkitError, ValueError):
    pass


class NotAPGroup(GroupToolkitError, ValueError):
    pass


class CoprimalityViolation(GroupToolkitError, ValueError):
    pass


class MissingField(GroupToolkitError, KeyError):
    def __str__(self) -> str:
        return f"missing required field {self.args[0]!r}" if self.args else "missing required field"


class InternalConsistencyError(GroupToolkitError, AssertionError):
    """A structural fact guaranteed by theory failed to materialize."""
