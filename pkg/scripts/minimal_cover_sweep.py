"""Sweep (graph, demand, cover) triples and report minimal covers with rho > -1.

    python scripts/minimal_cover_sweep.py --max-n 4 --full
"""

import argparse
import json
import time
from dataclasses import asdict

from dpcrit.critical import check_minimal_covers, sample_minimal_covers


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--mode", choices=["gauge", "maximal", "all"], default="gauge")
    p.add_argument("--full", action="store_true",
                   help="enumerate covers even for pairs whose potential is already <= -1")
    p.add_argument("--sample-n", type=int, default=5)
    p.add_argument("--sample-pairs", type=int, default=300)
    p.add_argument("--covers-per-pair", type=int, default=30)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--json", action="store_true")
    args = p.parse_args()
    rows = {}
    for n in range(1, args.max_n + 1):
        t = time.perf_counter()
        r = check_minimal_covers(n, args.mode, full=args.full)
        rows[str(n)] = asdict(r) | {"seconds": round(time.perf_counter() - t, 2)}
    if args.sample_pairs:
        t = time.perf_counter()
        r = sample_minimal_covers(args.sample_n, args.sample_pairs, covers_per_pair=args.covers_per_pair,
                             full=True, seed=args.seed)
        rows[f"{args.sample_n}-sampled"] = asdict(r) | {"seconds": round(time.perf_counter() - t, 2)}
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        for key, r in rows.items():
            print(f"n={key}: pairs {r['pairs']}, covers {r['covers']}, minimal {r['minimal']}, "
                  f"violations {len(r['violations'])}, {r['seconds']}s")


if __name__ == "__main__":
    main()
