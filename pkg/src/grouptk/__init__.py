"""Finite group toolkit: permutation groups, subgroup structure, Jordan-type
dichotomy verifiers, Heisenberg-type bundle actions and mod-p cohomology."""

from grouptk.config import Guards, default_guards
from grouptk.errors import (
    CoprimalityViolation,
    FormatError,
    GroupToolkitError,
    GuardExceeded,
    InternalConsistencyError,
    MissingField,
    NotAnAutomorphism,
    NotAPGroup,
    NotNormal,
    NotSubgroup,
    RangeError,
)
from grouptk.perm import PermGroup, Permutation, group_from_spec

__all__ = [
    "CoprimalityViolation",
    "FormatError",
    "GroupToolkitError",
    "Guards",
    "GuardExceeded",
    "InternalConsistencyError",
    "MissingField",
    "NotAPGroup",
    "NotAnAutomorphism",
    "NotNormal",
    "NotSubgroup",
    "PermGroup",
    "Permutation",
    "RangeError",
    "default_guards",
    "group_from_spec",
]
