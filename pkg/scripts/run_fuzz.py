#!/usr/bin/env python3
"""Fuzz the theorem checks and print a synthetic assumption table.

    python scripts/run_fuzz.py --cases 1000 --seed 42
"""
import argparse
import json
import time

from senselab.reports import fmt_tenths, tenths
from senselab.assumptions import FLAGS
from senselab.theorem_lab import FuzzTemplate, default_template, fuzz


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--template", help="template JSON (default: bundled)")
    ap.add_argument("--population", choices=("all_words", "eligible_words"), default="eligible_words")
    args = ap.parse_args()

    if args.template:
        with open(args.template, encoding="utf-8") as f:
            template = FuzzTemplate.from_dict(json.load(f))
    else:
        template = default_template()

    start = time.perf_counter()
    report = fuzz(template, args.cases, args.seed)
    elapsed = time.perf_counter() - start
    print(f"{args.cases} cases from seed {args.seed} in {elapsed:.1f} s; "
          f"{report.total_violations} violations")
    for theorem, n in sorted(report.violations.items()):
        print(f"  {theorem}: {n}")
    if report.first_witness:
        print("first witness:", json.dumps(report.first_witness, sort_keys=True))

    directions = sorted(report.satisfaction)
    print()
    print("flag   " + "".join(f"{d:>9}" for d in directions))
    for flag in FLAGS:
        cells = []
        for d in directions:
            c = report.satisfaction[d][args.population]
            cells.append(fmt_tenths(tenths(c[flag], c["words"])) if c["words"] else "-")
        print(f"{flag:<7}" + "".join(f"{c:>9}" for c in cells))
    words = [report.satisfaction[d][args.population]["words"] for d in directions]
    print("words  " + "".join(f"{n:>9}" for n in words))
    return 1 if report.total_violations else 0


if __name__ == "__main__":
    raise SystemExit(main())
