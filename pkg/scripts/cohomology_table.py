"""Table of dim H^d((Z_p)^r; F_p): product resolution, Künneth product and closed form."""

from __future__ import annotations

import argparse

from grouptk.cohomology import (
    elementary_abelian_cohomology_dim,
    elementary_abelian_dims_by_kunneth,
    elementary_abelian_dims_by_resolution,
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    ap.add_argument("--max-r", type=int, default=3)
    ap.add_argument("--max-deg", type=int, default=8)
    args = ap.parse_args()

    mismatches = 0
    for p in args.primes:
        for r in range(args.max_r + 1):
            res = elementary_abelian_dims_by_resolution(p, r, args.max_deg)
            kun = elementary_abelian_dims_by_kunneth(p, r, args.max_deg)
            closed = [elementary_abelian_cohomology_dim(p, r, d) for d in range(args.max_deg + 1)]
            flag = "ok" if res == kun == closed else "MISMATCH"
            mismatches += flag != "ok"
            print(f"p={p} r={r}: {' '.join(f'{v:>3}' for v in res)}   {flag}")
    print(f"{mismatches} mismatching rows")


if __name__ == "__main__":
    main()
