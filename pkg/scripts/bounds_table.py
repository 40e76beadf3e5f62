"""Exact values of the explicit bound formulas on a small grid of inputs."""

from __future__ import annotations

import argparse

from grouptk.bounds import FORMULAS, BoundInputs, paper_constants
from grouptk.errors import GuardExceeded


def _fmt(v) -> str:
    text = str(v.value)
    if len(text) > 24:
        text = f"~2^{v.value.bit_length() - 1} ({len(text)} digits)"
    return text if v.exact else f"<= {text}  [{v.symbolic}]"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--values", type=int, nargs="+", default=[1, 2, 3, 4, 5])
    ap.add_argument("--r", type=int, nargs="+", default=[1, 2, 3])
    args = ap.parse_args()

    for formula, fields in FORMULAS.items():
        print(f"{formula}  ({', '.join(fields)})")
        for x in args.values:
            for r in args.r if "r" in fields else [None]:
                inputs = BoundInputs(r=r, T=x, t=x, d=x)
                label = f"  {fields[0]}={x}" + (f" r={r}" if r is not None else "")
                try:
                    print(f"{label:<16}{_fmt(paper_constants(inputs, formula))}")
                except GuardExceeded as exc:
                    print(f"{label:<16}guard: {exc}")


if __name__ == "__main__":
    main()
