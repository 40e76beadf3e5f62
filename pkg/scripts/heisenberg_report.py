"""Abelian-index minima, action verification and freeness for the groups G_n."""

from __future__ import annotations

import argparse
import time

from grouptk.heisenberg import (
    min_abelian_index,
    sample_points,
    verify_free_action_s3_model,
    verify_phi_action,
    verify_psi_is_effective_action,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    ap.add_argument("--actions-up-to", type=int, default=4, help="largest n for the |G|^2 action grid")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>3}{'|G_n|':>7}{'min |G:A|':>11}{'abelian subgroups':>19}{'actions':>10}{'free':>7}{'secs':>8}")
    for n in args.n:
        t0 = time.perf_counter()
        idx = min_abelian_index(n)
        acts = "-"
        if n <= args.actions_up_to:
            pts = sample_points(n, seed=args.seed)
            ok = verify_phi_action(n, pts)["status"] == "pass"
            ok = ok and verify_psi_is_effective_action(n, pts, seed=args.seed)["status"] == "pass"
            acts = "pass" if ok else "FAIL"
        free = verify_free_action_s3_model(n, seed=args.seed)["status"]
        print(f"{n:>3}{n**3:>7}{idx.min_index:>11}{idx.abelian_subgroups:>19}{acts:>10}{free:>7}"
              f"{time.perf_counter() - t0:>8.2f}")


if __name__ == "__main__":
    main()
