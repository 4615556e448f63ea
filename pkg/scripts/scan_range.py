"""Run the DP 4-critical scan for a range of orders and save one JSON report per order.

    python scripts/scan_range.py --from 4 --to 7 --out results/
"""

import argparse
import json
from dataclasses import asdict
from pathlib import Path

from dpcrit.cli import default_jobs
from dpcrit.critical import list_critical_spot_check, scan_critical
from dpcrit.graph_io import decode


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--from", dest="lo", type=int, default=4)
    p.add_argument("--to", dest="hi", type=int, default=7)
    p.add_argument("--jobs", type=int, default=None)
    p.add_argument("--list-check", action="store_true",
                   help="also test list-criticality of hits (slow beyond 6 vertices)")
    p.add_argument("--out", default="results")
    args = p.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    jobs = args.jobs or default_jobs()
    for n in range(args.lo, args.hi + 1):
        report = scan_critical(n, jobs=jobs)
        data = asdict(report)
        if args.list_check:
            data["list_spot_check"] = list_critical_spot_check([decode(g) for g in report.critical_hits])
        (out / f"scan-{n}.json").write_text(json.dumps(data, indent=2, sort_keys=True))
        print(f"n={n}: {report.candidates} candidates, {len(report.critical_hits)} hits, "
              f"outcomes {report.dichotomy_outcomes}, {report.runtimes['total']}s")


if __name__ == "__main__":
    main()
