"""Exact evaluation of the explicit numeric bounds used in the Jordan-type arguments.

Formula ids:

=========  ==============================  ============
id         value                           fields
=========  ==============================  ============
thm2-8     (T!)^r                          T, r
lem2-15    t^(4 log t)                     t
lem2-16    t^(2r)                          t, r
lem5-2     C(d + r, r)^2                   d, r
cor2-17    T^(16 r^2 log T)                T, r
=========  ==============================  ============

"log" is taken base 2.  When the logarithm is not an integer the value is
reported symbolically and evaluated with the logarithm rounded up, which can
only overestimate.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

from grouptk.errors import FormatError, GuardExceeded, MissingField, RangeError

MAX_BITS = 1 << 26

FORMULAS = {
    "thm2-8": ("T", "r"),
    "lem2-15": ("t",),
    "lem2-16": ("t", "r"),
    "lem5-2": ("d", "r"),
    "cor2-17": ("T", "r"),
}


@dataclass(frozen=True)
class BoundInputs:
    r: int | None = None
    T: int | None = None
    d: int | None = None
    B: int | None = None
    t: int | None = None
    tau: int | None = None

    def require(self, *names: str) -> list[int]:
        out = []
        for name in names:
            v = getattr(self, name)
            if v is None:
                raise MissingField(name)
            if not isinstance(v, int) or v < 0:
                raise RangeError(f"{name} must be a non-negative integer, got {v!r}")
            out.append(v)
        return out

    def given(self) -> dict[str, int]:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass(frozen=True)
class BoundValue:
    formula: str
    inputs: dict
    value: int
    exact: bool
    symbolic: str | None = None
    log_base: int | None = None

    def to_dict(self) -> dict:
        out = {"formula": self.formula, "inputs": self.inputs}
        if self.exact:
            out["value"] = self.value
        else:
            out["symbolic"] = self.symbolic
            out["value_upper"] = self.value
        if self.log_base is not None:
            out["log_base"] = self.log_base
        return out


def _ilog2(x: int) -> tuple[int, bool]:
    """(ceil(log2 x), exact) for x >= 1."""
    c = (x - 1).bit_length()
    return c, x == 1 << c


def _power(base: int, exp: int) -> int:
    if base > 1 and exp * base.bit_length() > MAX_BITS:
        raise GuardExceeded(f"{base}^{exp} is too large to evaluate")
    return base**exp


def paper_constants(inputs: BoundInputs, which: str) -> BoundValue:
    if which not in FORMULAS:
        raise FormatError(f"unknown formula {which!r}; expected one of {sorted(FORMULAS)}")
    given = {k: getattr(inputs, k) for k in FORMULAS[which]}
    if which == "thm2-8":
        T, r = inputs.require("T", "r")
        f = math.factorial(T)
        return BoundValue(which, given, _power(f, r), True)
    if which == "lem2-16":
        t, r = inputs.require("t", "r")
        return BoundValue(which, given, _power(t, 2 * r), True)
    if which == "lem5-2":
        d, r = inputs.require("d", "r")
        return BoundValue(which, given, math.comb(d + r, r) ** 2, True)
    if which == "lem2-15":
        (t,) = inputs.require("t")
        if t == 0:
            raise RangeError("log 0 is undefined")
        lg, exact = _ilog2(t)
        return BoundValue(which, given, _power(t, 4 * lg), exact,
                          None if exact else f"{t}^(4*log2({t}))", 2)
    (T, r) = inputs.require("T", "r")
    if T == 0:
        raise RangeError("log 0 is undefined")
    lg, exact = _ilog2(T)
    return BoundValue(which, given, _power(T, 16 * r * r * lg), exact,
                      None if exact else f"{T}^(16*{r}^2*log2({T}))", 2)


def all_constants(inputs: BoundInputs) -> list[BoundValue]:
    """Every formula whose required fields are present."""
    out = []
    for which, names in FORMULAS.items():
        if all(getattr(inputs, n) is not None for n in names):
            out.append(paper_constants(inputs, which))
    return out
