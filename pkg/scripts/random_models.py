"""Check the relative-model identities and spectral sequence on random instances.

Usage: python3 scripts/random_models.py [--count N] [--seed S] [--max-cap C]
"""

from __future__ import annotations

import argparse
import random
import time
from collections import Counter

from lieform.sullivan import check_model, random_model, spectral_sequence


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--count", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-cap", type=int, default=12)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    tally: Counter = Counter()
    bad = []
    start = time.perf_counter()
    for i in range(args.count):
        model = random_model(rng, cap=rng.randint(4, args.max_cap))
        checks = check_model(model)
        ss = spectral_sequence(model)
        ok = checks.all_ok() and ss.converges() and ss.edge_ok() and ss.e2_matches_formula()
        tally["ok" if ok else "failed"] += 1
        tally["collapsing" if ss.collapses() else "non-collapsing"] += 1
        if not ok:
            bad.append((i, checks))
    print(f"{args.count} instances in {time.perf_counter() - start:.1f}s: {dict(sorted(tally.items()))}")
    for i, checks in bad:
        print(f"instance {i}: {checks}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
