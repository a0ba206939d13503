"""Command-line front end: ``mlstp {gen,solve,exact,bench,compare}``.

Exit codes: 0 success, 1 usage or I/O error, 2 infeasible solver result.
"""

from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import benchmark, stats
from .exact import PilotConfig, astar, pilot
from .graph import DisconnectedError
from .heuristics import VARIANTS, mvca_original, mvca_revised, solve_variant
from .instances import InstanceSpec, generate, read_instance, write_instance, write_optimum

EXIT_OK, EXIT_ERROR, EXIT_INFEASIBLE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for infeasibility here
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _float_list(text: str) -> List[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def cmd_gen(args) -> int:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    l = args.l if args.l is not None else args.n
    manifest = []
    for i in range(1, args.count + 1):
        spec = InstanceSpec(args.n, l, args.d, args.seed, i)
        g = generate(spec)
        path = out / f"{spec.name}.mlst"
        write_instance(g, path)
        manifest.append(str(path))
        print(f"{path}\tn={g.n}\tm={g.m}\tl={g.l}")
    # merged and sorted so that repeated runs leave the manifest unchanged
    mf = out / "manifest.txt"
    known = set(mf.read_text().splitlines()) if mf.exists() else set()
    mf.write_text("".join(p + "\n" for p in sorted(known | set(manifest)) if p))
    return EXIT_OK


def cmd_solve(args) -> int:
    g = read_instance(args.instance)
    algo = args.algo
    start = time.perf_counter()
    if algo == "mvca":
        res = mvca_original(g)
        colors, feasible = res.colors, res.feasible
    elif algo == "mvca-rev":
        colors, feasible = mvca_revised(g).colors, True
    elif algo in VARIANTS:
        colors, feasible = solve_variant(g, VARIANTS[algo], args.seed).colors, True
    elif algo.startswith("pilot"):
        cfg = PilotConfig.parse(algo.partition(":")[2])
        colors, feasible = pilot(g, cfg, seed=args.seed)[0], True
    else:
        raise UsageError(f"unknown algorithm {algo!r}")
    ms = (time.perf_counter() - start) * 1000
    print(
        f"objective={len(colors)} colors={','.join(map(str, sorted(colors)))} "
        f"feasible={'yes' if feasible else 'no'} ms={ms:.3f}"
    )
    return EXIT_OK if feasible else EXIT_INFEASIBLE


def cmd_exact(args) -> int:
    g = read_instance(args.instance)
    colors, st = astar(g, heuristic_bound=args.ub_from == "mvca-rev", frequency_prune=not args.no_freq_prune)
    print(
        f"objective={len(colors)} colors={','.join(map(str, sorted(colors)))} "
        f"nodes_expanded={st.nodes_expanded} pruned_by_bound={st.pruned_by_bound} "
        f"pruned_by_frequency={st.pruned_by_frequency} ms={st.elapsed * 1000:.3f}"
    )
    if args.annotate:
        write_optimum(args.instance, len(colors))
    return EXIT_OK


def _manifest_paths(path) -> List[str]:
    base = Path(path).parent
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.split("\t")[0].strip()
        if line and not line.startswith("#"):
            p = Path(line)
            out.append(str(p if p.is_absolute() or p.exists() else base / p))
    return list(dict.fromkeys(out))


def _exact_caps(items: List[str]):
    caps = {}
    for item in items:
        d, sep, n = item.partition(":")
        if not sep:
            raise UsageError(f"--exact-max-n expects DENSITY:N, got {item!r}")
        caps[float(d)] = int(n)
    return caps


def cmd_bench(args) -> int:
    entries = [benchmark.InstanceEntry.from_path(p) for p in _manifest_paths(args.manifest)]
    if not entries:
        raise UsageError(f"manifest {args.manifest} lists no instances")
    cfg = benchmark.SuiteConfig(
        instances=entries,
        algorithms=[a.strip() for a in args.algos.split(";" if ";" in args.algos else ",") if a.strip()],
        repetitions=args.reps,
        base_seed=args.seed,
        compute_optimum=args.with_optimum,
        exact_max_n=_exact_caps(args.exact_max_n),
        jobs=args.jobs,
    )
    records = benchmark.run_suite(cfg)
    csv_path, json_path = benchmark.write_outputs(records, args.out, timing=not args.no_timing)
    print(f"{len(records)} rows -> {csv_path} {json_path}")
    return EXIT_OK


def cmd_compare(args) -> int:
    m = stats.matrix_from_bench_csv(args.bench_csv, column=args.column, drop_incomplete=args.drop_incomplete)
    report = stats.compare_report(m, alphas=args.alphas)
    sys.stdout.write(report.to_text())
    out = Path(args.json) if args.json else Path(args.bench_csv).with_name("compare.json")
    out.write_text(report.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mlstp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="generate random connected instances")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--l", type=int, help="number of labels (default: n)")
    g.add_argument("--d", type=float, required=True, help="density m / (n(n-1)/2)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--count", type=int, default=1)
    g.add_argument("--out-dir", default=".")
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="run one heuristic on an instance")
    s.add_argument("--instance", required=True)
    s.add_argument("--algo", required=True, help="mvca | mvca-rev | A | A1 | A2 | A12 | pilot:<cfg>")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_solve)

    e = sub.add_parser("exact", help="solve an instance to optimality")
    e.add_argument("--instance", required=True)
    e.add_argument("--no-freq-prune", action="store_true")
    e.add_argument("--ub-from", choices=("none", "mvca-rev"), default="mvca-rev")
    e.add_argument("--annotate", action="store_true", help="write <instance>.opt")
    e.set_defaults(func=cmd_exact)

    b = sub.add_parser("bench", help="multi-start experiment over a manifest of instances")
    b.add_argument("--manifest", required=True, help="text file with one instance path per line")
    b.add_argument("--algos", default="A*,A,A1,A2,A12", help="comma-separated ids (';' if pilot configs are used)")
    b.add_argument("--reps", type=int, default=100)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--with-optimum", action="store_true", help="compute missing optima with A*")
    b.add_argument("--exact-max-n", action="append", default=[], metavar="D:N",
                   help="skip A* for density D when n > N (repeatable)")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--no-timing", action="store_true", help="leave ms_total empty for byte-stable output")
    b.add_argument("--out", default="bench-out")
    b.set_defaults(func=cmd_bench)

    c = sub.add_parser("compare", help="non-parametric comparison of a bench CSV")
    c.add_argument("--bench-csv", required=True)
    c.add_argument("--alphas", type=_float_list, default=[0.05, 0.01])
    c.add_argument("--column", default="mean", choices=("mean", "best"))
    c.add_argument("--drop-incomplete", action="store_true",
                   help="ignore instances lacking some algorithm instead of failing")
    c.add_argument("--json", help="report JSON path (default: compare.json next to the CSV)")
    c.set_defaults(func=cmd_compare)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, OSError, ValueError, KeyError, RuntimeError, DisconnectedError) as exc:
        print(f"mlstp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
