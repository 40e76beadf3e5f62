"""grouptk command line.

Exit codes: 0 ok, 1 an asserted invariant failed, 2 bad input, 3 a guard was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from grouptk.bounds import FORMULAS, BoundInputs, all_constants, paper_constants
from grouptk.catalog import CatalogEntry, load_catalog
from grouptk.checks import CHECKS, run_check
from grouptk.cohomology import (
    cyclic_cohomology_dims,
    elementary_abelian_cohomology_dim,
    elementary_abelian_dims_by_kunneth,
    elementary_abelian_dims_by_resolution,
    product_resolution,
)
from grouptk.config import Guards, default_guards
from grouptk.errors import GroupToolkitError, GuardExceeded, InternalConsistencyError
from grouptk.perm import group_from_spec

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(obj, pretty: bool) -> str:
    return json.dumps(obj, indent=2 if pretty else None, sort_keys=False)


def _guards(args) -> Guards:
    g = default_guards()
    order = getattr(args, "guard_order", None)
    if order is not None:
        g = g.with_overrides(max_order=order, max_lattice_order=min(g.max_lattice_order, order))
    subs = getattr(args, "guard_subgroups", None)
    if subs is not None:
        g = g.with_overrides(max_subgroups=subs)
    return g


def _parse_checks(raw: str | None) -> list[str]:
    if raw is None:
        return list(CHECKS)
    names = [c.strip() for c in raw.split(",") if c.strip()]
    unknown = [c for c in names if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check(s) {unknown}; available: {', '.join(CHECKS)}")
    return names


# -- analyze ----------------------------------------------------------------------------


def cmd_analyze(args, out) -> int:
    from grouptk.dichotomy import verify_jordan_trichotomy, verify_reduction_theorem
    from grouptk.structure import structure_report

    guards = _guards(args)
    G = group_from_spec(args.group, guards)
    checks = _parse_checks(args.checks)
    doc = {
        "group": G.name or args.group,
        "T": args.T,
        "structure": structure_report(G).to_dict(),
        "dichotomy": verify_reduction_theorem(G, args.T).to_dict(),
        "trichotomy": verify_jordan_trichotomy(G, args.T).to_dict(),
        "checks": {},
    }
    failed = False
    for name in checks:
        status, details = run_check(name, G, args.T)
        doc["checks"][name] = status
        if status == "fail":
            failed = True
            doc.setdefault("counterexamples", {})[name] = details.get("counterexample")
    failed = failed or not doc["dichotomy"]["consistent"] or not doc["trichotomy"]["consistent"]
    out.write(_dump(doc, args.json) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


# -- scan -------------------------------------------------------------------------------


def _scan_entry(job: tuple[CatalogEntry, list[str], int, Guards, bool]) -> list[dict]:
    entry, checks, T, guards, timing = job
    rows = []
    try:
        G = entry.build(guards)
    except GuardExceeded as exc:
        return [{"label": entry.label, "check": c, "status": "skipped:guard",
                 "details": {"reason": str(exc)}} for c in checks]
    expected = entry.order
    for c in checks:
        t0 = time.perf_counter()
        if expected is not None and G.order() != expected:
            status, details = "fail", {"counterexample": {"expected_order": expected, "order": G.order()}}
        else:
            status, details = run_check(c, G, T)
        row = {"label": entry.label, "check": c, "status": status, "details": details}
        if timing:
            row["wall_time"] = round(time.perf_counter() - t0, 6)
        rows.append(row)
    return rows


def cmd_scan(args, out) -> int:
    guards = _guards(args)
    catalog = load_catalog(args.catalog)
    checks = _parse_checks(args.checks)
    if not checks:
        return EXIT_OK
    jobs = [(e, checks, args.T, guards, args.timing) for e in catalog]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = pool.map(_scan_entry, jobs)
            batches = list(results)
    else:
        batches = [_scan_entry(j) for j in jobs]
    failed = False
    for rows in batches:
        for row in rows:
            failed = failed or row["status"] == "fail"
            out.write(json.dumps(row) + "\n")
    return EXIT_FAIL if failed else EXIT_OK


# -- heisenberg -------------------------------------------------------------------------


def cmd_heisenberg(args, out) -> int:
    from grouptk.errors import RangeError
    from grouptk.heisenberg import (
        min_abelian_index,
        sample_points,
        verify_free_action_s3_model,
        verify_phi_action,
        verify_psi_is_effective_action,
    )

    n = args.n
    if n < 2:
        raise RangeError("n must be at least 2")
    wanted = {
        "abelian-index": args.abelian_index,
        "verify-actions": args.verify_actions,
        "verify-free": args.verify_free,
    }
    if not any(wanted.values()):
        wanted = dict.fromkeys(wanted, True)
    reports = []
    if wanted["abelian-index"]:
        reports.append(min_abelian_index(n, max_n=args.max_n).to_dict())
    if wanted["verify-actions"]:
        if n > args.max_n:
            raise GuardExceeded(f"action verification limited to n <= {args.max_n}")
        pts = sample_points(n, seed=args.seed)
        reports.append(verify_phi_action(n, pts))
        reports.append(verify_psi_is_effective_action(n, pts, seed=args.seed))
    if wanted["verify-free"]:
        rep = verify_free_action_s3_model(n, seed=args.seed)
        if not args.verbose:
            rep = {k: v for k, v in rep.items() if k != "derivations"}
        reports.append(rep)
    ok = all(r["status"] == "pass" for r in reports)
    out.write(_dump({"n": n, "status": "pass" if ok else "fail", "reports": reports}, args.json) + "\n")
    return EXIT_OK if ok else EXIT_FAIL


# -- cohomology / bounds ---------------------------------------------------------------------


def cmd_cohomology(args, out) -> int:
    from grouptk.errors import RangeError

    if args.r < 0 or args.max_deg < 0:
        raise RangeError("r and max-deg must be non-negative")
    guards = _guards(args)
    if args.max_deg > guards.max_cohomology_degree:
        raise GuardExceeded(f"degree {args.max_deg} exceeds guard {guards.max_cohomology_degree}")
    formula = [elementary_abelian_cohomology_dim(args.p, args.r, d) for d in range(args.max_deg + 1)]
    computed = elementary_abelian_dims_by_resolution(args.p, args.r, args.max_deg, guards)
    kunneth = elementary_abelian_dims_by_kunneth(args.p, args.r, args.max_deg)
    doc = {
        "p": args.p,
        "r": args.r,
        "max_deg": args.max_deg,
        "dims": computed,
        "formula": formula,
        "kunneth_dims": kunneth,
        "cyclic_dims": cyclic_cohomology_dims(args.p, args.p, args.max_deg),
        "exactness_verified_through": product_resolution(args.p, args.r, args.max_deg + 1).check_exact(),
        "match": computed == formula == kunneth,
    }
    out.write(_dump(doc, args.json) + "\n")
    return EXIT_OK if doc["match"] else EXIT_FAIL


def cmd_bounds(args, out) -> int:
    inputs = BoundInputs(r=args.r, T=args.T, d=args.d, B=args.B, t=args.t, tau=args.tau)
    if args.formula == "all":
        rows = [v.to_dict() for v in all_constants(inputs)]
    else:
        rows = [paper_constants(inputs, args.formula).to_dict()]
    out.write(_dump(rows, args.json) + "\n")
    return EXIT_OK


# -- parser -----------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="grouptk", description="Finite group structure and Jordan-type verification toolkit.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, group=True):
        if group:
            sp.add_argument("--guard-order", type=int, default=None, help="maximum group order")
            sp.add_argument("--guard-subgroups", type=int, default=None, help="maximum subgroup count")
        sp.add_argument("--json", action="store_true", help="pretty-print JSON output")
        sp.add_argument("--seed", type=int, default=0)

    a = sub.add_parser("analyze", help="structure + dichotomy report for one group")
    a.add_argument("--group", required=True, help="named spec (e.g. sym:4) or JSON text")
    a.add_argument("--T", type=int, default=2)
    a.add_argument("--checks", default=None, help="comma separated check ids (default: all)")
    common(a)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("scan", help="run checks over a catalog, one JSON line per (group, check)")
    s.add_argument("--catalog", default=None, help="path, inline JSON or 'default'")
    s.add_argument("--checks", default=None, help="comma separated check ids (default: all)")
    s.add_argument("--T", type=int, default=2)
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--timing", action="store_true", help="add wall_time to each line")
    common(s)
    s.set_defaults(func=cmd_scan)

    h = sub.add_parser("heisenberg", help="checks on the groups G_n and their bundle actions")
    h.add_argument("--n", type=int, required=True)
    h.add_argument("--abelian-index", action="store_true")
    h.add_argument("--verify-actions", action="store_true")
    h.add_argument("--verify-free", action="store_true")
    h.add_argument("--max-n", type=int, default=6)
    h.add_argument("--verbose", action="store_true", help="include per-element derivations")
    common(h, group=False)
    h.set_defaults(func=cmd_heisenberg)

    c = sub.add_parser("cohomology", help="dim H^d((Z_p)^r; F_p), resolution vs closed form")
    c.add_argument("--p", type=int, required=True)
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--max-deg", type=int, default=8)
    common(c)
    c.set_defaults(func=cmd_cohomology)

    b = sub.add_parser("bounds", help="evaluate explicit bound formulas exactly")
    b.add_argument("formula", choices=sorted(FORMULAS) + ["all"])
    for name in ("r", "T", "d", "B", "t", "tau"):
        b.add_argument(f"--{name}", type=int, default=None)
    common(b, group=False)
    b.set_defaults(func=cmd_bounds)
    return p


def main(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        err.write(f"grouptk: error: {exc}\n")
        return EXIT_INPUT
    except GuardExceeded as exc:
        err.write(f"grouptk: guard exceeded: {exc}\n")
        return EXIT_GUARD
    except InternalConsistencyError as exc:
        err.write(f"grouptk: invariant failed: {exc}\n")
        return EXIT_FAIL
    except (GroupToolkitError, ValueError, KeyError) as exc:
        err.write(f"grouptk: invalid input: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
