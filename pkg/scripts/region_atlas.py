#!/usr/bin/env python3
"""Sweep antenna configurations and tabulate region classifications.

Walks every interference configuration (M1, M2, N1, N2) in [1, limit]^4,
classifies each into its case, and writes one JSON document per config to a
JSONL file. Prints a census at the end: how many configs land in each case,
how many have a known region, and how many match the CSIT region exactly.

Example:
    python3 scripts/region_atlas.py --limit 4 --out atlas.jsonl
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from collections import Counter
from pathlib import Path

from mimodof import IcConfig, case_partition_check, ic_classify


def classify_row(config: IcConfig) -> dict:
    result = ic_classify(config)
    doc = result.to_dict()
    doc["antennas"] = [config.M1, config.M2, config.N1, config.N2]
    return doc


def census_key(label: dict) -> str:
    return f"{label['table']}/case-{label['case_id']}"


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--limit", type=int, default=4,
                        help="sweep antenna counts 1..limit on all four nodes")
    parser.add_argument("--out", type=Path, default=None,
                        help="JSONL output path (omit to skip writing)")
    parser.add_argument("--check", action="store_true",
                        help="also run the exhaustive partition/sandwich check")
    args = parser.parse_args(argv)
    if args.limit < 1:
        parser.error("--limit must be >= 1")

    if args.check:
        case_partition_check(args.limit)
        print(f"partition check passed on [1, {args.limit}]^4")

    cases = Counter()
    known = 0
    csit_equal = 0
    rows = []
    span = range(1, args.limit + 1)
    for m1, m2, n1, n2 in itertools.product(span, span, span, span):
        doc = classify_row(IcConfig(m1, m2, n1, n2))
        cases[census_key(doc["label"])] += 1
        known += doc["label"]["region_known"]
        csit_equal += doc["label"]["csit_equal"]
        rows.append(doc)

    if args.out is not None:
        with args.out.open("w") as fh:
            for doc in rows:
                fh.write(json.dumps(doc, sort_keys=True) + "\n")
        print(f"wrote {len(rows)} configs to {args.out}")

    total = len(rows)
    print(f"swept {total} configs on [1, {args.limit}]^4")
    for key, count in sorted(cases.items()):
        print(f"  {key:<18} {count:5d}  ({100.0 * count / total:5.1f}%)")
    print(f"region known: {known}/{total}  csit-equal: {csit_equal}/{total}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
