"""``dpcrit`` command line.

Exit codes: 0 when the claim checked holds (verified / true), 1 when it is
falsified (a witness file path is printed), 2 on usage or input errors.
Graphs are read as graph6 / sparse6 lines from a file or stdin.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import asdict
from pathlib import Path

from .cover import CoverError, dump_cover, load_cover
from .graph_io import FormatError, encode, read_graphs
from .multigraph import GraphError, MultiGraph

JOBS_ENV = "DPCRIT_JOBS"

EXIT_OK, EXIT_FALSIFIED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# argument helpers ------------------------------------------------------------------

def default_jobs() -> int:
    raw = os.environ.get(JOBS_ENV)
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise UsageError(f"{JOBS_ENV} must be an integer, got {raw!r}")
    return os.cpu_count() or 1


def parse_h(text: str, n: int) -> tuple[int, ...]:
    """``"3"`` for a constant demand, or ``"v0=2,v1=3,..."`` naming every vertex."""
    text = text.strip()
    if text.isdigit():
        return (int(text),) * n
    values: dict[int, int] = {}
    for item in text.split(","):
        key, sep, val = item.strip().partition("=")
        key = key.strip().lstrip("v")
        if not sep or not key.isdigit() or not val.strip().isdigit():
            raise UsageError(f"bad demand entry {item!r}; use 3 or v0=2,v1=3")
        values[int(key)] = int(val)
    missing = [v for v in range(n) if v not in values]
    extra = [v for v in values if v >= n]
    if missing or extra:
        raise UsageError(f"demands must name vertices 0..{n - 1} exactly "
                         f"(missing {missing}, unknown {extra})")
    return tuple(values[v] for v in range(n))


def parse_subset(text: str, n: int) -> list[int]:
    try:
        out = sorted({int(x.strip().lstrip("v")) for x in text.split(",") if x.strip()})
    except ValueError:
        raise UsageError(f"bad subset {text!r}; use 0,1,2")
    if any(v < 0 or v >= n for v in out):
        raise UsageError(f"subset {out} not inside 0..{n - 1}")
    return out


def load_graphs(path: str | None) -> list[MultiGraph]:
    if path is None or path == "-":
        graphs = list(read_graphs(sys.stdin.buffer))
    else:
        if not Path(path).exists():
            raise UsageError(f"no such file: {path}")
        graphs = list(read_graphs(path))
    if not graphs:
        raise UsageError("no graphs in input")
    return graphs


def one_graph(path: str | None) -> MultiGraph:
    graphs = load_graphs(path)
    if len(graphs) != 1:
        raise UsageError(f"expected one graph, got {len(graphs)}")
    return graphs[0]


def witness_path(args, stem: str, suffix: str) -> Path:
    folder = Path(args.witness_dir)
    folder.mkdir(parents=True, exist_ok=True)
    return folder / f"{stem}{suffix}"


def write_report(args, stem: str, payload) -> Path:
    path = witness_path(args, stem, ".json")
    path.write_text(json.dumps(payload, indent=2, sort_keys=True, default=str) + "\n")
    return path


def emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, sort_keys=True, default=str))
    else:
        print(text)


def g6(g: MultiGraph) -> str:
    return encode(g).decode()


# subcommands ---------------------------------------------------------------------

def cmd_chidp(args) -> int:
    from .solver import chi_dp
    rows = [{"graph": g6(g), "chi_dp": chi_dp(g)} for g in load_graphs(args.input)]
    emit(args, {"results": rows}, "\n".join(str(r["chi_dp"]) for r in rows))
    return EXIT_OK


def cmd_solve(args) -> int:
    from .solver import find_transversal, is_dp_colorable
    if args.cover:
        g, c = load_cover(Path(args.cover).read_text())
        f = find_transversal(g, c)
        payload = {"graph": g6(g), "colorable": f is not None,
                   "coloring": list(f) if f is not None else None}
        if f is None:
            emit(args, payload | {"witness": args.cover},
                 f"not colourable; witness {args.cover}")
            return EXIT_FALSIFIED
        emit(args, payload, "colourable: " + " ".join(map(str, f)))
        return EXIT_OK
    g = one_graph(args.input)
    if args.h is None:
        raise UsageError("solve needs --h or --cover")
    h = parse_h(args.h, g.n)
    v = is_dp_colorable(g, h, method=args.method)
    payload = {"graph": g6(g), "h": list(h), "colorable": v.colorable, "method": v.method,
               "space_size": v.space_size}
    if v.colorable:
        emit(args, payload, f"DP colourable for h={list(h)} ({v.method})")
        return EXIT_OK
    path = witness_path(args, f"witness-{g.n}v", ".dpcover")
    path.write_text(dump_cover(g, v.witness, [f"h {' '.join(map(str, h))}",
                                              f"found by {v.method}"]))
    emit(args, payload | {"witness": str(path)},
         f"not DP colourable for h={list(h)}; witness {path}")
    return EXIT_FALSIFIED


def cmd_replay(args) -> int:
    from .solver import replay
    g, c = load_cover(Path(args.witness).read_text())
    ok = replay(g, c, None if args.h is None else parse_h(args.h, g.n))
    emit(args, {"graph": g6(g), "witness": args.witness, "verified": ok},
         "witness verified: no independent transversal" if ok
         else "witness rejected: cover is colourable or lists too small")
    return EXIT_OK if ok else EXIT_FALSIFIED


def cmd_gen_ore(args) -> int:
    from .ore import generate_4ore, write_atlas
    from .potential import rho
    t0 = time.perf_counter()
    atlas = generate_4ore(args.max_vertices)
    runtime = time.perf_counter() - t0
    bad = []
    for g, cert in atlas:
        s = (g.n - 1) // 3
        if not (g.n == 3 * s + 1 and g.num_edges == 5 * s + 1 and rho(g, (3,) * g.n) == 3 - s
                and cert.replay() == g):
            bad.append(g6(g))
    if args.atlas:
        write_atlas(atlas, args.atlas)
    counts = {str(n): c for n, c in atlas.counts().items()}
    payload = {"max_vertices": args.max_vertices, "counts": counts,
               "identity_failures": bad, "runtime": round(runtime, 3),
               "atlas": args.atlas}
    text = "\n".join(f"n={n}: {c} classes" for n, c in counts.items())
    emit(args, payload, text + (f"\nidentity failures: {bad}" if bad else "\nidentities hold"))
    if bad:
        print(f"witness: {write_report(args, 'gen-ore-failures', payload)}")
        return EXIT_FALSIFIED
    return EXIT_OK


def cmd_verify_critical(args) -> int:
    from .critical import NotCritical, check_theorem_bound, is_dp_k_critical
    rows = []
    for g in load_graphs(args.input):
        crit = is_dp_k_critical(g, args.k)
        row = {"graph": g6(g), "critical": crit}
        if crit and args.k == 4:
            try:
                row["dichotomy"] = check_theorem_bound(g, verified=True)
            except (AssertionError, NotCritical):
                row["dichotomy"] = "neither"
        rows.append(row)
    failed = [r for r in rows if not r["critical"] or r.get("dichotomy") == "neither"]
    text = "\n".join(f"{r['graph']}: {'critical' if r['critical'] else 'not critical'}"
                     + (f" ({r['dichotomy']})" if "dichotomy" in r else "") for r in rows)
    emit(args, {"k": args.k, "results": rows}, text)
    if failed:
        print(f"witness: {write_report(args, 'verify-critical-failures', failed)}")
        return EXIT_FALSIFIED
    return EXIT_OK


def cmd_scan(args) -> int:
    from .critical import scan_critical
    jobs = args.jobs if args.jobs is not None else default_jobs()
    report = scan_critical(args.n, max_edges=args.max_edges, jobs=jobs)
    if args.json:
        print(report.to_json())
    else:
        print(f"n={report.n}: {report.candidates} candidates, "
              f"{len(report.critical_hits)} DP 4-critical, min edges {report.min_edges}")
        for d in report.hit_details:
            print(f"  {d['graph6']}  edges={d['edges']}  {d['outcome']}")
    if not report.ok:
        print(f"witness: {write_report(args, f'scan-{args.n}', asdict(report))}")
        return EXIT_FALSIFIED
    return EXIT_OK


def cmd_potential(args) -> int:
    from .potential import rho_set
    g = one_graph(args.input)
    h = parse_h(args.h, g.n)
    subset = parse_subset(args.subset, g.n) if args.subset else list(range(g.n))
    value = rho_set(g, h, subset)
    emit(args, {"graph": g6(g), "h": list(h), "subset": subset, "rho": value}, str(value))
    return EXIT_OK


def cmd_discharge(args) -> int:
    from .discharge import audit_charges, run_discharge
    g = one_graph(args.input)
    if not g.is_connected:
        raise UsageError("discharging needs a connected graph")
    h = parse_h(args.h, g.n)
    cs = run_discharge(g, h)
    audit = audit_charges(g, h, cs)
    st = cs.structure
    payload = {
        "graph": g6(g), "h": list(h), "S0": sorted(st.s0), "low_in_S0": sorted(st.low_in_s0),
        "x0": st.x0, "y0": st.y0, "degenerate": st.degenerate,
        "charges_doubled": {name: list(v) for name, (v, _) in cs.snapshots.items()},
        "conservation": audit.conservation, "pairs_zero_after_R2": audit.pairs_zero_after_r2,
        "S0_identity": audit.s0_identity, "S0_charge": audit.s0_charge_doubled / 2,
        "closed_forms": audit.closed_forms, "low_trees": audit.low_trees,
        "flags": audit.flags, "ok": audit.ok,
    }
    text = [f"S0 = {sorted(st.s0)}" + (f" via cut edge {st.x0}-{st.y0}" if st.x0 is not None
                                        else " (no cut edge)"),
            "final charges: " + " ".join(f"{x / 2:g}" for x in cs.snapshots['R3'][0]),
            f"ch*(S0) = {audit.s0_charge_doubled / 2:g}, expected "
            f"{audit.s0_expected_doubled / 2:g}",
            "audit " + ("passed" if audit.ok else "FAILED")]
    text += [f"note: {f}" for f in audit.flags]
    emit(args, payload, "\n".join(text))
    if not audit.ok:
        print(f"witness: {write_report(args, 'discharge-audit', payload)}")
        return EXIT_FALSIFIED
    return EXIT_OK


def _lemma_cycle_cover(args):
    from .critical import check_cycle_covers
    reports = [check_cycle_covers(n, args.mode) for n in range(3, args.max_length + 1)]
    return all(r.ok for r in reports), {"cycles": [asdict(r) | {"ok": r.ok} for r in reports]}


def _lemma_ore_subsets(args):
    from .ore import _cached_atlas, check_subset_inequalities
    reports = [check_subset_inequalities(f) for f, _ in _cached_atlas(args.max_vertices)]
    rows = [{"n": r.n, "subsets": r.subsets_checked, "ok": r.ok,
             "count_violations": r.count_violations[:10],
             "potential_violations": r.potential_violations[:10]} for r in reports]
    return all(r.ok for r in reports), {"max_vertices": args.max_vertices, "graphs": rows}


def _lemma_moser(args):
    from .ore import check_moser_extension
    r = check_moser_extension()
    hits = r.branch_hits()
    ok = r.ok and r.consistent and all(hits.values())
    return ok, {"cases": len(r.cases), "branch_hits": hits, "consistent": r.consistent,
                "failures": [asdict(c) for c in r.cases if not c.ok]}


def _lemma_submodularity(args):
    from .potential import check_submodularity
    r = check_submodularity(args.instances, args.exhaustive_n, seed=args.seed)
    return r.ok, {"random": r.random_instances, "exhaustive": r.exhaustive_instances,
                  "max_abs_residual": r.max_abs_residual, "failures": r.failures[:10]}


def _lemma_theorem51(args):
    from .critical import MinimalCoverReport, check_minimal_covers
    total = MinimalCoverReport()
    per_n = {}
    for n in range(1, args.max_vertices + 1):
        r = check_minimal_covers(n, mode=args.mode, max_mult=args.max_mult)
        per_n[str(n)] = asdict(r)
        total.merge(r)
    if args.sample:
        r = check_minimal_covers(5, sample_pairs=args.sample, covers_per_pair=20, seed=args.seed)
        per_n["5-sampled"] = asdict(r)
        total.merge(r)
    return total.ok, {"per_n": per_n, "violations": total.violations}


def _lemma_theorem_bound(args):
    from .critical import NotCritical, check_theorem_bound
    rows = []
    for g in load_graphs(args.input):
        try:
            outcome = check_theorem_bound(g)
        except NotCritical:
            outcome = "not-critical"
        except AssertionError:
            outcome = "neither"
        rows.append({"graph": g6(g), "outcome": outcome})
    return all(r["outcome"] != "neither" for r in rows), {"results": rows}


LEMMAS = {
    "cycle-cover": _lemma_cycle_cover,
    "ore-subsets": _lemma_ore_subsets,
    "moser-extension": _lemma_moser,
    "submodularity": _lemma_submodularity,
    "theorem51": _lemma_theorem51,
    "theorem-bound": _lemma_theorem_bound,
}


def cmd_check_lemma(args) -> int:
    if args.lemma == "ore-subsets" and args.max_vertices is None:
        args.max_vertices = 13
    if args.lemma == "theorem51" and args.max_vertices is None:
        args.max_vertices = 3
    if args.lemma == "ore-subsets" and args.max_vertices > 13:
        raise UsageError("--max-vertices is at most 13")
    ok, payload = LEMMAS[args.lemma](args)
    payload = {"lemma": args.lemma, "ok": ok} | payload
    emit(args, payload, f"{args.lemma}: {'holds' if ok else 'FAILS'}")
    if not ok:
        print(f"witness: {write_report(args, f'check-{args.lemma}', payload)}")
        return EXIT_FALSIFIED
    return EXIT_OK


# parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--witness-dir", default=".",
                        help="where witness and failure files are written")

    p = argparse.ArgumentParser(prog="dpcrit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("chidp", parents=[common], help="DP chromatic number of each graph")
    s.add_argument("input", nargs="?")
    s.set_defaults(func=cmd_chidp)

    s = sub.add_parser("solve", parents=[common],
                       help="decide DP h-colourability, or colour one stored cover")
    s.add_argument("input", nargs="?")
    s.add_argument("--h", help="3 or v0=2,v1=3,...")
    s.add_argument("--cover", help="cover file to colour instead of searching")
    s.add_argument("--method", choices=["auto", "exhaustive"], default="auto")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("replay", parents=[common], help="re-verify a failing-cover witness")
    s.add_argument("witness")
    s.add_argument("--h", help="also check the lists against these demands")
    s.set_defaults(func=cmd_replay)

    s = sub.add_parser("gen-ore", parents=[common], help="generate the 4-Ore atlas")
    s.add_argument("--max-vertices", type=int, default=13)
    s.add_argument("--atlas", help="write graph6 here and certificates to <atlas>.cert")
    s.set_defaults(func=cmd_gen_ore)

    s = sub.add_parser("verify-critical", parents=[common], help="check DP k-criticality")
    s.add_argument("input", nargs="?")
    s.add_argument("--k", type=int, default=4)
    s.set_defaults(func=cmd_verify_critical)

    s = sub.add_parser("scan", parents=[common], help="find all DP 4-critical graphs on n vertices")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--max-edges", type=int)
    s.add_argument("--jobs", type=int, help=f"worker processes (default ${JOBS_ENV} or CPU count)")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("potential", parents=[common], help="potential of a graph or subset")
    s.add_argument("input", nargs="?")
    s.add_argument("--h", default="3")
    s.add_argument("--subset", help="comma-separated vertices")
    s.set_defaults(func=cmd_potential)

    s = sub.add_parser("discharge", parents=[common], help="run and audit the discharging")
    s.add_argument("input", nargs="?")
    s.add_argument("--h", default="3")
    s.set_defaults(func=cmd_discharge)

    s = sub.add_parser("check-lemma", parents=[common], help="run one of the property sweeps")
    s.add_argument("lemma", choices=sorted(LEMMAS))
    s.add_argument("input", nargs="?", help="graphs for theorem-bound")
    s.add_argument("--max-vertices", type=int,
                   help="ore-subsets: atlas size (13); theorem51: exhaustive up to (3)")
    s.add_argument("--max-length", type=int, default=6, help="cycle-cover: longest cycle")
    s.add_argument("--mode", choices=["gauge", "maximal", "all"], default="gauge")
    s.add_argument("--max-mult", type=int, default=3)
    s.add_argument("--sample", type=int, default=0, help="theorem51: sampled pairs at n=5")
    s.add_argument("--instances", type=int, default=10_000, help="submodularity: random cases")
    s.add_argument("--exhaustive-n", type=int, default=5)
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_check_lemma)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits with 2 on bad usage already
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, FormatError, GraphError, CoverError, OSError, ValueError) as exc:
        print(f"dpcrit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
