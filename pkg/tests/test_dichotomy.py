from __future__ import annotations

import json
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from grouptk import group_from_spec
from grouptk.catalog import default_catalog
from grouptk.dichotomy import (
    FpHModule,
    affine_cyclic_sections,
    maschke_decomposition,
    min_index_nilpotent_normal,
    random_fp_module,
    special_by_cyclic_witness,
    verify_jordan_trichotomy,
    verify_reduction_theorem,
)
from grouptk.errors import CoprimalityViolation, FormatError
from grouptk.structure import all_subgroups

CATALOG = default_catalog()


def G(spec):
    if spec in CATALOG.labels():
        return CATALOG.get(spec).build()
    return group_from_spec(spec)


# -- sections ---------------------------------------------------------------------------------


@pytest.mark.parametrize("spec", ["cyclic:12", "heisenberg:3", "dihedral:8", "Q8xZ2", "elem_abelian:2:3"])
def test_nilpotent_groups_have_no_sections(spec):
    assert affine_cyclic_sections(G(spec), 2) == []


def test_s3_has_one_section():
    secs = affine_cyclic_sections(G("sym:3"), 2)
    assert [(s.e_order, s.c_order, s.host.bit_count(), s.kernel.bit_count()) for s in secs] == [(3, 2, 6, 1)]
    assert secs[0].reverify() == []


def test_a4_section():
    secs = affine_cyclic_sections(G("alt:4"), 3)
    assert [(s.e_order, s.c_order, s.p, s.q) for s in secs] == [(4, 3, 2, 3)]


def test_sections_of_s4():
    secs = affine_cyclic_sections(G("sym:4"), 2)
    # E⋊C types: S3 (x4 subgroups), S4/V4, A4, and the D8 quotients by V4-type kernels are 2-groups
    shapes = sorted((s.host.bit_count(), s.kernel.bit_count(), s.e_order, s.c_order) for s in secs)
    assert (24, 4, 3, 2) in shapes and (12, 1, 4, 3) in shapes and (6, 1, 3, 2) in shapes
    assert max(s.c_order for s in secs) == 3
    for s in secs:
        assert s.reverify() == []


def test_section_reverify_catches_tampering():
    (sec,) = affine_cyclic_sections(G("sym:3"), 2)
    sec.complement_generator = 0
    assert sec.reverify()


# -- special-by-cyclic witnesses ----------------------------------------------------------------------


def test_abelian_groups_have_no_witness():
    for spec in ("cyclic:30", "elem_abelian:5:2"):
        assert special_by_cyclic_witness(G(spec), 2) is None


def test_s3_witness():
    w = special_by_cyclic_witness(G("sym:3"), 2)
    d = w.to_dict()
    assert (d["P_order"], d["p"], d["q"], d["C_order"], d["aut_image_order"]) == (3, 3, 2, 2, 2)
    assert d["special_branch"] == "elementary_abelian"
    assert w.reverify() == []


def test_heisenberg_extension_witness():
    X = group_from_spec({"construct": "semidirect", "N": "heisenberg:3", "H": "cyclic:2", "action": "inversion"})
    w = special_by_cyclic_witness(X, 2)
    assert w.p_order == 27 and w.special_branch == "phi=z=derived" and w.aut_image_order == 2
    assert w.reverify() == []


def test_witness_reverify_catches_wrong_image():
    w = special_by_cyclic_witness(G("Z7:Z3"), 3)
    w.aut_image_order = 9
    assert any("aut image" in m for m in w.reverify())


# -- min index ----------------------------------------------------------------------------------------


@pytest.mark.parametrize("spec, idx", [("heisenberg:4", 1), ("sym:3", 2), ("sym:4", 6), ("alt:5", 60),
                                       ("Z13:Z12", 12), ("S3xS3", 4)])
def test_min_index_nilpotent_normal(spec, idx):
    X = G(spec)
    assert min_index_nilpotent_normal(X) == idx
    lat = all_subgroups(X)
    assert idx == X.order() // lat.table.fitting().bit_count()


# -- reports ---------------------------------------------------------------------------------------------


def test_nilpotent_report():
    r = verify_reduction_theorem(G("heisenberg:3"), 5)
    assert r.branch_satisfied == "a" and r.nilpotent_index == 1 and r.consistent


def test_s4_report():
    r = verify_reduction_theorem(G("sym:4"), 2)
    assert r.nilpotent_index == 6
    assert r.branch_satisfied == "b"
    assert r.best_special_witness["aut_image_order"] == 3
    assert r.best_special_witness["P_order"] == 4
    assert r.consistent


def test_s3_large_threshold():
    r = verify_reduction_theorem(G("sym:3"), 7)
    assert r.branch_satisfied == "a" and r.nilpotent_index == 2 and r.best_special_witness is None


def test_report_json_roundtrip():
    d = verify_reduction_theorem(G("Z2^3:Z7"), 4).to_dict()
    assert json.loads(json.dumps(d)) == d
    assert {"group", "T", "nilpotent_index", "best_special_witness", "branch_satisfied", "checks"} <= set(d)


def test_trichotomy_examples():
    r = verify_jordan_trichotomy(G("cyclic:6"), 3)
    assert "a" in r.satisfied and r.min_abelian_normal_index == 1
    r = verify_jordan_trichotomy(G("sym:3"), 1)
    assert "b" in r.satisfied
    b = r.witnesses["b"]
    assert (b["P_order"], b["C_order"]) == (3, 2)
    r = verify_jordan_trichotomy(G("dihedral:8"), 1)
    assert r.satisfied and r.consistent
    assert r.witnesses["c"]["min_abelian_normal_index"] == 2


def test_trichotomy_fallback_checks_run():
    r = verify_jordan_trichotomy(G("SL(2,3)"), 2)
    assert r.satisfied == ["a"] and r.min_abelian_normal_index == 12
    assert {"p_subgroups_abelian_for_p_gt_T", "special_images_bounded",
            "fitting_sylows_abelian_by_bounded"} <= set(r.checks)
    assert r.consistent


@given(st.sampled_from(["sym:4", "Z5:Z4", "Z2^4:Z5", "S3xS3", "A4xZ2", "Z3^2:Z8", "Heis3:Z2", "dihedral:12"]),
       st.integers(1, 10))
def test_reports_consistent_for_any_threshold(label, T):
    X = G(label)
    r = verify_reduction_theorem(X, T)
    assert r.consistent, r.checks
    assert r.branch_b == (r.max_special_image >= T)
    tr = verify_jordan_trichotomy(X, T)
    assert tr.consistent and tr.satisfied


# -- Maschke -----------------------------------------------------------------------------------------------


def test_maschke_trivial_action():
    D = maschke_decomposition(FpHModule(5, [np.eye(3, dtype=np.int64)], 3, "cyclic"))
    assert D.fixed.shape == (3, 3) and D.complement.shape[0] == 0
    assert all(D.verify().values())


def test_maschke_negation():
    D = maschke_decomposition(FpHModule(3, [[[2]]], 2, "cyclic"))
    assert D.fixed.shape[0] == 0 and D.complement.shape[0] == 1


def test_maschke_cyclic_permutation():
    P = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    D = maschke_decomposition(FpHModule(2, [P], 3, "cyclic"))
    assert D.fixed.tolist() == [[1, 1, 1]]
    assert D.complement.shape[0] == 2
    assert all(D.verify().values())


def test_maschke_preconditions():
    with pytest.raises(CoprimalityViolation):
        FpHModule(2, [[[1]]], 2)
    with pytest.raises(FormatError):
        FpHModule(3, [[[0]]], 2)  # singular
    with pytest.raises(FormatError):
        FpHModule(5, [[[2]]], 2, "cyclic")  # 2 has order 4 mod 5


@given(st.integers(0, 10**6), st.sampled_from([2, 3, 5, 7]), st.integers(1, 5))
def test_maschke_random(seed, p, r):
    rng = random.Random(seed)
    kind = "cyclic" if p == 2 else rng.choice(["cyclic", "klein"])
    D = maschke_decomposition(random_fp_module(rng, p, r, kind))
    assert all(D.verify().values())
