"""Named per-group invariant checks shared by the CLI scanner and the test suite.

Every check takes (G, T) and returns (status, details) with status "pass",
"fail" or "inconclusive".  A failing check always puts a counterexample under
details["counterexample"].  Checks that do not apply to G pass with
details["applicable"] = False.
"""

from __future__ import annotations

import math
from typing import Callable

from grouptk.dichotomy import (
    max_section_c,
    min_index_nilpotent_normal,
    verify_jordan_trichotomy,
    verify_reduction_theorem,
)
from grouptk.errors import GuardExceeded, InternalConsistencyError
from grouptk.oracles import naive_elements, naive_subgroups
from grouptk.perm import PermGroup, quotient_group
from grouptk.structure import (
    all_subgroups,
    burnside_miller_check,
    chermak_delgado_mask,
    chermak_delgado_violations,
    frattini_mask,
    gillam_check,
    is_metabelian,
    min_generators,
    rank,
    table_of,
)
from grouptk.table import prime_power

CheckResult = tuple[str, dict]

NAIVE_ORDER_CAP = 5000
NAIVE_LATTICE_CAP = 64


def _na() -> CheckResult:
    return "pass", {"applicable": False}


def check_bsgs_order(G: PermGroup, T: int) -> CheckResult:
    if G.order() > NAIVE_ORDER_CAP:
        raise GuardExceeded(f"naive enumeration limited to order {NAIVE_ORDER_CAP}")
    n = len(naive_elements(G, NAIVE_ORDER_CAP))
    d = {"bsgs_order": G.order(), "naive_order": n}
    if n != G.order():
        return "fail", {**d, "counterexample": d}
    return "pass", d


def check_subgroup_count(G: PermGroup, T: int) -> CheckResult:
    if G.order() > NAIVE_LATTICE_CAP:
        return _na()
    lat = all_subgroups(G)
    t = lat.table
    naive = naive_subgroups(G, NAIVE_LATTICE_CAP)
    ours = {frozenset(t.elements[i] for i in t.members(r.mask)) for r in lat}
    d = {"lattice": len(lat), "naive": len(naive)}
    if ours != naive:
        extra = sorted(len(s) for s in ours - naive)
        missing = sorted(len(s) for s in naive - ours)
        return "fail", {**d, "counterexample": {"extra_orders": extra, "missing_orders": missing}}
    return "pass", d


def check_fitting_dominance(G: PermGroup, T: int) -> CheckResult:
    lat = all_subgroups(G)
    t = lat.table
    F = t.fitting()
    bad = [r for r in lat if r.is_normal and r.is_nilpotent and r.mask & F != r.mask]
    d = {"fitting_order": F.bit_count(), "nilpotent_normal_subgroups": sum(
        1 for r in lat if r.is_normal and r.is_nilpotent)}
    brute = min_index_nilpotent_normal(G)
    d["fitting_index"] = G.order() // F.bit_count()
    d["brute_force_min_index"] = brute
    if bad or brute != d["fitting_index"] or not t.is_nilpotent(F) or not t.is_normal(F, t.full):
        ce = {"orders_not_in_F": [r.order for r in bad], "brute_force_min_index": brute}
        return "fail", {**d, "counterexample": ce}
    return "pass", d


def check_frattini_nilpotent(G: PermGroup, T: int) -> CheckResult:
    try:
        phi = frattini_mask(G)
    except InternalConsistencyError as exc:
        return "fail", {"counterexample": str(exc)}
    t = table_of(G)
    d = {"frattini_order": phi.bit_count(), "class": t.nilpotency_class(phi)}
    return "pass", d


def check_rank_monotone(G: PermGroup, T: int) -> CheckResult:
    """rank(H) <= rank(G) for maximal H and rank(G/N) <= rank(G), each on its own lattice."""
    r = rank(G)
    lat = all_subgroups(G)
    bad = []
    for rec in lat.maximal_subgroups():
        rh = rank(lat.perm_group(rec))
        if rh > r:
            bad.append({"subgroup_order": rec.order, "rank": rh})
    for rec in lat:
        if rec.is_normal and 1 < rec.order < G.order():
            Q = quotient_group(G, lat.perm_group(rec))
            rq = rank(Q)
            if rq > r:
                bad.append({"quotient_by_order": rec.order, "rank": rq})
    if bad:
        return "fail", {"rank": r, "counterexample": bad}
    return "pass", {"rank": r}


def check_p_group_generators(G: PermGroup, T: int) -> CheckResult:
    pp = prime_power(G.order())
    if pp is None:
        return _na()
    p = pp[0]
    phi = frattini_mask(G)
    dim = round(math.log(G.order() // phi.bit_count(), p))
    lattice_level = all_subgroups(G)[table_of(G).full].min_generators
    d = {"min_generators": min_generators(G), "frattini_quotient_dim": dim, "lattice_level": lattice_level}
    if not d["min_generators"] == dim == lattice_level:
        return "fail", {**d, "counterexample": d}
    return "pass", d


def check_chermak_delgado(G: PermGroup, T: int) -> CheckResult:
    N, measure = chermak_delgado_mask(G)
    v = chermak_delgado_violations(G, N)
    d = {"order": N.bit_count(), "index": G.order() // N.bit_count(), "measure": measure}
    if v:
        return "fail", {**d, "counterexample": v}
    return "pass", d


def check_burnside_miller(G: PermGroup, T: int) -> CheckResult:
    if G.order() == 1 or prime_power(G.order()) is None:
        return _na()
    d = burnside_miller_check(G)
    return ("pass" if d["ok"] else "fail"), (d if d["ok"] else {**d, "counterexample": d})


def check_gillam(G: PermGroup, T: int) -> CheckResult:
    if G.order() == 1 or prime_power(G.order()) is None or not is_metabelian(G):
        return _na()
    d = gillam_check(G)
    return ("pass" if d["ok"] else "fail"), (d if d["ok"] else {**d, "counterexample": d})


def check_section_vs_index(G: PermGroup, T: int) -> CheckResult:
    c, sec = max_section_c(G)
    idx = min_index_nilpotent_normal(G)
    d = {"max_section_C": c, "nilpotent_index": idx}
    if c > idx:
        return "fail", {**d, "counterexample": sec.to_dict()}
    if sec is not None:
        problems = sec.reverify()
        if problems:
            return "fail", {**d, "counterexample": {"section": sec.to_dict(), "problems": problems}}
    return "pass", d


def check_dichotomy(G: PermGroup, T: int) -> CheckResult:
    rep = verify_reduction_theorem(G, T).to_dict()
    if not rep["consistent"]:
        failed = [k for k, v in rep["checks"].items() if not v]
        return "fail", {**rep, "counterexample": {"failed": failed, "flags": rep["flags"]}}
    return "pass", rep


def check_trichotomy(G: PermGroup, T: int) -> CheckResult:
    rep = verify_jordan_trichotomy(G, T).to_dict()
    if not rep["consistent"]:
        failed = [k for k, v in rep["checks"].items() if not v]
        return "fail", {**rep, "counterexample": {"failed": failed}}
    return "pass", rep


CHECKS: dict[str, Callable[[PermGroup, int], CheckResult]] = {
    "bsgs-order": check_bsgs_order,
    "subgroup-count": check_subgroup_count,
    "fitting-dominance": check_fitting_dominance,
    "frattini-nilpotent": check_frattini_nilpotent,
    "rank-monotone": check_rank_monotone,
    "p-group-generators": check_p_group_generators,
    "chermak-delgado": check_chermak_delgado,
    "burnside-miller": check_burnside_miller,
    "gillam": check_gillam,
    "section-vs-index": check_section_vs_index,
    "dichotomy": check_dichotomy,
    "trichotomy": check_trichotomy,
}


def run_check(name: str, G: PermGroup, T: int) -> CheckResult:
    """Run one check, mapping guard hits to "skipped:guard"."""
    try:
        return CHECKS[name](G, T)
    except GuardExceeded as exc:
        return "skipped:guard", {"reason": str(exc)}
