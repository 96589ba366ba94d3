"""Run the condition battery over the builtin catalog and print a summary table.

Usage: python3 scripts/run_catalog.py [--family NAME] [--out DIR]
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from lieform.obstruction import CONDITIONS
from lieform.report import document, dumps, markdown, run_catalog, select_pairs


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--family")
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    names = select_pairs(args.family)
    start = time.perf_counter()
    entries = run_catalog(names)
    elapsed = time.perf_counter() - start
    doc = document(entries, {"conditions": list(CONDITIONS), "cap": None, "selector": args.family or "all"})
    print(markdown(doc))
    for e in doc["pairs"]:
        cohom = e.get("cohomology", {}).get("relative")
        print(f"{e['name']:>14}  H(g,h) = {cohom}")
    print(f"\n{len(names)} pairs in {elapsed:.2f}s")
    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        (args.out / "report.json").write_text(dumps(doc), encoding="utf-8")
        (args.out / "report.md").write_text(markdown(doc), encoding="utf-8")


if __name__ == "__main__":
    main()
