from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from grouptk import FormatError, GuardExceeded, Guards, PermGroup, Permutation, group_from_spec
from grouptk.errors import NotAnAutomorphism, NotNormal, NotSubgroup, RangeError
from grouptk.oracles import naive_elements
from grouptk.perm import (
    alternating,
    cyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    quotient_group,
    semidirect_product,
    symmetric,
    trivial_group,
)


def perms(max_degree=7):
    return st.integers(1, max_degree).flatmap(
        lambda n: st.permutations(list(range(n))).map(lambda p: Permutation(tuple(p)))
    )


# -- Permutation -------------------------------------------------------------------------


def test_cycle_parsing_is_one_based():
    p = Permutation.from_cycles("(1 2 3)", 4)
    assert p.images == (1, 2, 0, 3)
    assert p.to_cycles() == "(1 2 3)"
    assert Permutation.from_cycles("()", 3).images == (0, 1, 2)


def test_composition_is_left_to_right():
    a = Permutation.from_cycles("(1 2)", 3)
    b = Permutation.from_cycles("(2 3)", 3)
    # apply a first: 1 -> 2 -> 3
    assert (a * b).images[0] == 2
    assert (a * b).to_cycles() == "(1 3 2)"


@pytest.mark.parametrize("text", ["(1 2", "(1 1)", "(0 1)", "(1 5)", "(a b)", "(1 2)(2 3)"])
def test_bad_cycle_strings(text):
    with pytest.raises(FormatError):
        Permutation.from_cycles(text, 4)


@given(perms(), st.data())
def test_group_axioms(p, data):
    n = len(p.images)
    q = data.draw(st.permutations(list(range(n))).map(lambda x: Permutation(tuple(x))))
    r = data.draw(st.permutations(list(range(n))).map(lambda x: Permutation(tuple(x))))
    e = Permutation.identity(n)
    assert (p * q) * r == p * (q * r)
    assert p * p.inverse() == e == p.inverse() * p
    assert p ** p.order() == e
    assert Permutation.from_cycles(p.to_cycles(), n) == p


# -- BSGS ----------------------------------------------------------------------------------


@pytest.mark.parametrize(
    "G, order",
    [
        (trivial_group(), 1),
        (cyclic(12), 12),
        (elementary_abelian(3, 3), 27),
        (dihedral(7), 14),
        (symmetric(5), 120),
        (alternating(5), 60),
        (symmetric(7), 5040),
        (alternating(8), 20160),
    ],
)
def test_named_orders(G, order):
    assert G.order() == order


@given(st.integers(2, 6).flatmap(lambda n: st.lists(st.permutations(list(range(n))), min_size=1, max_size=3)))
def test_bsgs_order_matches_naive_closure(raw):
    n = len(raw[0])
    G = PermGroup(n, [Permutation(tuple(p)) for p in raw])
    elems = naive_elements(G)
    assert G.order() == len(elems)
    assert {g.images for g in G.elements()} == elems
    for x in elems:
        assert Permutation(x) in G


def test_membership_rejects_outsiders():
    A5 = alternating(5)
    assert Permutation.from_cycles("(1 2)", 5) not in A5
    assert Permutation.from_cycles("(1 2)(3 4)", 5) in A5


def test_order_guard():
    with pytest.raises(GuardExceeded):
        PermGroup(6, symmetric(6).generators, guards=Guards(max_order=100))


@pytest.mark.parametrize("bad", [lambda: cyclic(0), lambda: dihedral(2), lambda: elementary_abelian(4, 2)])
def test_constructor_ranges(bad):
    with pytest.raises(RangeError):
        bad()


# -- products and quotients -------------------------------------------------------------------


def test_semidirect_inversion_gives_dihedral():
    G = semidirect_product(cyclic(5), cyclic(2), "inversion")
    assert G.order() == 10
    assert not G.is_abelian()


def test_semidirect_rejects_non_automorphism():
    N = elementary_abelian(2, 2)
    a, b = N.generators
    with pytest.raises(NotAnAutomorphism):
        semidirect_product(N, cyclic(3), [[a, a]])


def test_semidirect_rejects_action_breaking_relations():
    # x -> x^2 has order 2 on Z_3, incompatible with a generator of order 3
    with pytest.raises(NotAnAutomorphism):
        group_from_spec({"construct": "semidirect", "N": "cyclic:3", "H": "cyclic:3", "action": [{"power": 2}]})


def test_semidirect_words_form_builds_a4():
    A4 = group_from_spec(
        {"construct": "semidirect", "N": "elem_abelian:2:2", "H": "cyclic:3",
         "action": [{"words": [[[1, 1]], [[0, 1], [1, 1]]]}]}
    )
    assert A4.order() == 12
    from grouptk.structure import center, fitting_subgroup

    assert center(A4).order() == 1
    assert fitting_subgroup(A4).order() == 4


def test_direct_product_and_quotient():
    G = direct_product(symmetric(3), cyclic(2))
    assert G.order() == 12
    S4 = symmetric(4)
    V4 = S4.subgroup([Permutation.from_cycles(c, 4) for c in ("(1 2)(3 4)", "(1 3)(2 4)")])
    Q = quotient_group(S4, V4)
    assert Q.order() == 6 and not Q.is_abelian()


def test_quotient_requires_normal_subgroup():
    S3 = symmetric(3)
    H = S3.subgroup([Permutation.from_cycles("(1 2)", 3)])
    with pytest.raises(NotNormal):
        quotient_group(S3, H)
    with pytest.raises(NotSubgroup):
        quotient_group(S3, cyclic(4))


# -- group specs -------------------------------------------------------------------------------


def test_spec_forms_agree():
    q8 = {"name": "Q8", "degree": 8, "generators": ["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"]}
    assert group_from_spec(q8).order() == 8
    assert group_from_spec(json.dumps(q8)).order() == 8
    assert group_from_spec({"construct": "sym:4"}).order() == 24
    assert group_from_spec({"semidirect": {"N": "cyclic:7", "H": "cyclic:3", "action": [{"power": 2}]}}).order() == 21
    assert group_from_spec({"construct": "direct", "factors": ["cyclic:2", "cyclic:3"]}).order() == 6
    assert group_from_spec("heisenberg:3").order() == 27


@pytest.mark.parametrize(
    "spec",
    ["cyclic", "cyclic:x", "nosuch:3", "{not json", {"degree": 3}, {"degree": 0, "generators": []},
     {"degree": 3, "generators": [1]}, {"construct": "direct", "factors": []}, 42],
)
def test_malformed_specs(spec):
    with pytest.raises((FormatError, RangeError)):
        group_from_spec(spec)


def test_elements_are_sorted_and_unique():
    G = dihedral(6)
    els = list(G.elements())
    assert len(els) == len(set(els)) == 12
    keys = [tuple(g.images[b] for b in G.base) for g in els]
    assert keys == sorted(keys)
