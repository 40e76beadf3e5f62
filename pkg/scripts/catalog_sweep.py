"""Dichotomy/trichotomy sweep over the default catalog for a range of thresholds.

Prints a table of nilpotent index, largest affine-cyclic section and largest
special-by-cyclic image per group, followed by which branches hold at each T.
"""

from __future__ import annotations

import argparse
import json

from grouptk.catalog import load_catalog
from grouptk.dichotomy import max_section_c, max_special_image, verify_jordan_trichotomy, verify_reduction_theorem


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--catalog", default=None)
    ap.add_argument("--T", type=int, nargs="+", default=[1, 2, 3, 5, 8])
    ap.add_argument("--json", action="store_true", help="emit JSON lines instead of a table")
    args = ap.parse_args()

    cat = load_catalog(args.catalog)
    if not args.json:
        head = f"{'group':<18}{'|G|':>5}{'|G:F|':>7}{'maxC':>6}{'img':>5}  " + " ".join(f"T={t:<6}" for t in args.T)
        print(head)
        print("-" * len(head))
    for entry in cat:
        G = entry.build()
        row = {"group": entry.label, "order": G.order(), "section_C": max_section_c(G)[0],
               "special_image": max_special_image(G), "by_T": {}}
        for T in args.T:
            d = verify_reduction_theorem(G, T)
            t = verify_jordan_trichotomy(G, T)
            row["nilpotent_index"] = d.nilpotent_index
            row["by_T"][T] = {"dichotomy": d.branch_satisfied, "trichotomy": "".join(t.satisfied),
                              "consistent": d.consistent and t.consistent}
        if args.json:
            print(json.dumps(row))
            continue
        cells = " ".join(f"{v['dichotomy'] + '/' + v['trichotomy']:<8}" for v in row["by_T"].values())
        print(f"{entry.label:<18}{row['order']:>5}{row['nilpotent_index']:>7}{row['section_C']:>6}"
              f"{row['special_image']:>5}  {cells}")


if __name__ == "__main__":
    main()
