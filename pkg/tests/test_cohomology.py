from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grouptk import group_from_spec
from grouptk.bounds import FORMULAS, BoundInputs, all_constants, paper_constants
from grouptk.cohomology import (
    FpCochainComplex,
    bar_cohomology_dims,
    check_exact,
    cochains_from_resolution,
    cyclic_cohomology_dims,
    cyclic_resolution,
    elementary_abelian_cohomology_dim,
    elementary_abelian_dims_by_kunneth,
    elementary_abelian_dims_by_resolution,
    kunneth_dims,
    product_resolution,
)
from grouptk.errors import FormatError, GuardExceeded, InternalConsistencyError, MissingField, RangeError

dims_list = st.lists(st.integers(0, 6), min_size=1, max_size=6)


# -- complexes and resolutions -------------------------------------------------------------------


def test_cochain_complex_rejects_nonzero_square():
    d0 = np.array([[1]])
    d1 = np.array([[1]])
    with pytest.raises(InternalConsistencyError):
        FpCochainComplex(2, [d0, d1])


def test_cochain_complex_dims():
    # C^0 = F_3 -> C^1 = F_3^2 -> C^2 = F_3
    d0 = np.array([[1], [1]])
    d1 = np.array([[1, 2]])
    assert FpCochainComplex(3, [d0, d1]).dims() == [0, 0]
    with pytest.raises(RangeError):
        FpCochainComplex(4, [d0])


@pytest.mark.parametrize("m, p", [(3, 3), (4, 2), (6, 2), (6, 3), (5, 5), (5, 2), (9, 3)])
def test_cyclic_resolution_is_exact(m, p):
    action, bd = cyclic_resolution(m, p, 6)
    assert check_exact(bd, p, np.ones((1, m), dtype=np.int64))
    assert all((a == action[0]).all() for a in action)


def test_check_exact_detects_breakage():
    _, bd = cyclic_resolution(3, 3, 4)
    bd[2] = bd[1]  # two copies of t - 1 in a row
    assert not check_exact(bd, 3, np.ones((1, 3), dtype=np.int64))


@pytest.mark.parametrize("m, p, expected", [
    (3, 3, [1] * 7),
    (3, 2, [1, 0, 0, 0, 0, 0, 0]),
    (4, 2, [1] * 7),
    (6, 3, [1] * 7),
    (5, 3, [1, 0, 0, 0, 0, 0, 0]),
])
def test_cyclic_dims(m, p, expected):
    assert cyclic_cohomology_dims(m, p, 6) == expected


def test_cyclic_dims_input_errors():
    with pytest.raises(RangeError):
        cyclic_cohomology_dims(3, 6, 2)
    with pytest.raises(RangeError):
        cyclic_cohomology_dims(0, 2, 2)
    with pytest.raises(GuardExceeded):
        cyclic_cohomology_dims(2, 2, 10_000)


def test_cochains_from_resolution_klein_two_generators():
    # The product resolution of Z_2 x Z_2 has free modules of rank d + 1, so
    # Hom_G gives the known dims without using the augmentation shortcut.
    R = product_resolution(2, 2, 5)
    n = R.group_order
    gens = [R._regular({(1, 0): 1}), R._regular({(0, 1): 1})]
    action = [[np.kron(np.eye(k, dtype=np.int64), g) for g in gens] for k in R.ranks()]
    cx = cochains_from_resolution(2, action, [R.dense_boundary(d) for d in range(5)])
    assert cx.dims() == [1, 2, 3, 4, 5]
    assert n == 4


# -- bar complex oracle ------------------------------------------------------------------------------


@pytest.mark.parametrize("spec, p, deg, expected", [
    ("cyclic:2", 2, 4, [1, 1, 1, 1, 1]),
    ("cyclic:3", 3, 4, [1, 1, 1, 1, 1]),
    ("cyclic:3", 2, 3, [1, 0, 0, 0]),
    ("elem_abelian:2:2", 2, 4, [1, 2, 3, 4, 5]),
    ("sym:3", 2, 3, [1, 1, 1, 1]),
    ("sym:3", 3, 3, [1, 0, 0, 1]),
    ("dihedral:4", 2, 3, [1, 2, 3, 4]),
    ("alt:4", 2, 2, [1, 0, 1]),
])
def test_bar_complex(spec, p, deg, expected):
    assert bar_cohomology_dims(group_from_spec(spec), p, deg) == expected


def test_bar_complex_guard():
    with pytest.raises(GuardExceeded):
        bar_cohomology_dims(group_from_spec("sym:4"), 2, 2)


def test_resolution_matches_bar_oracle():
    for p, spec in [(2, "cyclic:2"), (3, "cyclic:3"), (2, "elem_abelian:2:2")]:
        r = 1 if spec.startswith("cyclic") else 2
        assert elementary_abelian_dims_by_resolution(p, r, 3) == bar_cohomology_dims(group_from_spec(spec), p, 3)


# -- elementary abelian groups ----------------------------------------------------------------------


def test_closed_form_examples():
    assert [elementary_abelian_cohomology_dim(3, 2, d) for d in range(4)] == [1, 2, 3, 4]
    assert [elementary_abelian_cohomology_dim(2, 0, d) for d in range(3)] == [1, 0, 0]
    assert elementary_abelian_cohomology_dim(5, 3, 8) == 45
    with pytest.raises(RangeError):
        elementary_abelian_cohomology_dim(2, -1, 0)
    with pytest.raises(RangeError):
        elementary_abelian_cohomology_dim(9, 1, 0)


@pytest.mark.parametrize("p, r", [(2, 1), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2)])
def test_product_resolution_exact(p, r):
    assert product_resolution(p, r, 6).check_exact(max_dim=700) >= 2


def test_product_resolution_sign_error_is_caught():
    R = product_resolution(3, 2, 3)
    key = next(k for k, e in R.boundaries[1].items() if len(e) == 2)
    R.boundaries[1][key] = {k: (-v) % 3 for k, v in R.boundaries[1][key].items()}
    with pytest.raises(InternalConsistencyError):
        R.check_exact()


@given(st.sampled_from([2, 3, 5]), st.integers(0, 3), st.integers(0, 8))
def test_three_routes_agree(p, r, d):
    formula = [elementary_abelian_cohomology_dim(p, r, k) for k in range(d + 1)]
    assert elementary_abelian_dims_by_resolution(p, r, d) == formula
    assert elementary_abelian_dims_by_kunneth(p, r, d) == formula


@given(dims_list, dims_list)
def test_kunneth_commutative(a, b):
    assert kunneth_dims(a, b) == kunneth_dims(b, a)


@given(dims_list, dims_list, dims_list)
def test_kunneth_associative(a, b, c):
    assert kunneth_dims(kunneth_dims(a, b), c) == kunneth_dims(a, kunneth_dims(b, c))


def test_kunneth_unit():
    assert kunneth_dims([1, 0, 0], [3, 1, 4]) == [3, 1, 4]


# -- bounds ---------------------------------------------------------------------------------------------


@pytest.mark.parametrize("formula, inputs, value", [
    ("thm2-8", {"T": 3, "r": 2}, 36),
    ("thm2-8", {"T": 5, "r": 0}, 1),
    ("lem2-16", {"t": 2, "r": 3}, 64),
    ("lem5-2", {"d": 3, "r": 2}, 100),
    ("lem2-15", {"t": 4}, 4**8),
    ("cor2-17", {"T": 4, "r": 1}, 2**64),
    ("cor2-17", {"T": 1, "r": 3}, 1),
])
def test_exact_bounds(formula, inputs, value):
    v = paper_constants(BoundInputs(**inputs), formula)
    assert v.exact and v.value == value
    assert v.to_dict()["value"] == value


def test_symbolic_bound():
    d = paper_constants(BoundInputs(t=3), "lem2-15").to_dict()
    assert d["symbolic"] == "3^(4*log2(3))" and d["value_upper"] == 3**8 and "value" not in d


def test_bound_errors():
    with pytest.raises(MissingField) as exc:
        paper_constants(BoundInputs(T=3), "thm2-8")
    assert str(exc.value) == "missing required field 'r'"
    with pytest.raises(RangeError):
        paper_constants(BoundInputs(t=0), "lem2-15")
    with pytest.raises(RangeError):
        paper_constants(BoundInputs(T=-1, r=1), "thm2-8")
    with pytest.raises(FormatError):
        paper_constants(BoundInputs(T=1, r=1), "thm9-9")
    with pytest.raises(GuardExceeded):
        paper_constants(BoundInputs(T=1000, r=1000), "cor2-17")


def test_all_constants_selects_by_fields():
    got = {v.formula for v in all_constants(BoundInputs(T=3, r=2))}
    assert got == {"thm2-8", "cor2-17"}
    assert len(all_constants(BoundInputs(T=3, r=2, t=2, d=1))) == len(FORMULAS)


@given(st.sampled_from(sorted(FORMULAS)), st.integers(1, 6), st.integers(1, 4))
def test_bounds_monotone(formula, a, r):
    def val(x, rr):
        return paper_constants(BoundInputs(T=x, t=x, d=x, r=rr), formula).value

    assert val(a, r) <= val(a + 1, r)
    assert val(a, r) <= val(a, r + 1)
