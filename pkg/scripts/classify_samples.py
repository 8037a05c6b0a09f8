#!/usr/bin/env python3
"""Run the full verdict pipeline over every bundled sample problem and
print a one-line summary per instance."""

from __future__ import annotations

import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from deligne_simpson import classify, is_good
from deligne_simpson.cli import parse_problem
from deligne_simpson.criteria import rigidity_report

SAMPLES = Path(__file__).resolve().parent.parent / "sample_problems"


def main() -> int:
    width = max(len(p.stem) for p in SAMPLES.glob("*.json"))
    for path in sorted(SAMPLES.glob("*.json")):
        doc = json.loads(path.read_text())
        if "classes" not in doc:
            continue  # witness documents
        problem = parse_problem(doc)
        verdict = classify(problem)
        rep = rigidity_report(problem.shapes)
        good = is_good(problem.shapes).good
        rules = ",".join(r.name for r in verdict.justification) or "-"
        print(
            f"{path.stem:<{width}}  n={problem.n}  kappa={rep.kappa:>2}  "
            f"good={str(good):<5}  dsp={verdict.dsp:<10}  "
            f"weak={verdict.weak_dsp:<10}  rules={rules}"
        )
    return 0


if __name__ == "__main__":
    sys.exit(main())
