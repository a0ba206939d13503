"""Multi-start experiment runner.

Every (instance, algorithm) cell is run ``reps`` times. Repetition ``r`` on an
instance uses ``derive_seed(base_seed, instance_name, r)`` for every
algorithm, so A and A1 (and A2 and A12) see the same random choices and
their per-seed objectives can be compared directly.
"""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .exact import PilotConfig, astar, pilot
from .graph import LabeledGraph
from .heuristics import VARIANTS, mvca_original, mvca_revised, solve_variant
from .instances import InstanceSpec, generate, read_instance, read_optimum
from .seeding import derive_seed

CSV_COLUMNS = ("n", "d", "index", "algorithm", "reps", "optimum", "mean", "best", "optima_hits", "ms_total")
EXACT = "A*"


class InstanceLoadError(RuntimeError):
    """An instance of a suite could not be read or generated."""


def _run_variant(name):
    v = VARIANTS[name]
    return lambda g, seed: solve_variant(g, v, seed)


def _run_exact(g, seed):
    return astar(g)[0], True


def _run_pilot(cfg):
    return lambda g, seed: (pilot(g, cfg)[0], True)


def _result_pair(fn):
    def run(g, seed):
        res = fn(g, seed)
        return res.colors, res.feasible

    return run


def resolve_algorithm(name: str) -> Tuple[Callable, bool]:
    """Map an algorithm id to ``(run(g, seed) -> (colors, feasible), deterministic)``.

    Ids: ``mvca``, ``mvca-rev``, ``A``, ``A1``, ``A2``, ``A12``, ``A*`` and
    ``pilot:<cfg>`` with ``<cfg>`` as accepted by :meth:`PilotConfig.parse`.
    """
    if name in VARIANTS:
        return _result_pair(_run_variant(name)), False
    if name == "mvca":
        return _result_pair(lambda g, seed: mvca_original(g)), True
    if name == "mvca-rev":
        return _result_pair(lambda g, seed: mvca_revised(g)), True
    if name == EXACT:
        return _run_exact, True
    if name.startswith("pilot"):
        _, _, spec = name.partition(":")
        return _run_pilot(PilotConfig.parse(spec)), True
    raise ValueError(f"unknown algorithm {name!r}")


@dataclass
class RunRecord:
    instance: str
    algorithm: str
    reps: int
    objectives: List[int]
    optimum: Optional[int] = None
    total_elapsed: float = 0.0
    feasible_runs: int = 0
    n: int = 0
    d: float = 0.0
    index: int = 0

    @property
    def mean_objective(self) -> Fraction:
        return Fraction(sum(self.objectives), len(self.objectives))

    @property
    def best_objective(self) -> int:
        return min(self.objectives)

    @property
    def optima_hits(self) -> Optional[int]:
        if self.optimum is None:
            return None
        return sum(1 for x in self.objectives if x == self.optimum)

    def row(self, timing: bool = True) -> Dict[str, str]:
        return {
            "n": str(self.n),
            "d": f"{self.d:g}",
            "index": str(self.index),
            "algorithm": self.algorithm,
            "reps": str(self.reps),
            "optimum": "" if self.optimum is None else str(self.optimum),
            "mean": f"{float(self.mean_objective):.4f}",
            "best": str(self.best_objective),
            "optima_hits": "" if self.optima_hits is None else str(self.optima_hits),
            "ms_total": f"{self.total_elapsed * 1000:.3f}" if timing else "",
        }


def multi_start(
    g: LabeledGraph,
    algorithm: str,
    reps: int,
    base_seed: int = 0,
    optimum: Optional[int] = None,
    instance: str = "",
) -> RunRecord:
    """Run ``algorithm`` ``reps`` times with the documented seed schedule.

    Deterministic algorithms are executed once and their objective repeated;
    ``total_elapsed`` then reflects that single execution.
    """
    if reps < 1:
        raise ValueError("reps must be >= 1")
    run, deterministic = resolve_algorithm(algorithm)
    objectives: List[int] = []
    feasible = 0
    start = time.perf_counter()
    for r in range(1 if deterministic else reps):
        colors, ok = run(g, derive_seed(base_seed, instance, r))
        objectives.append(len(colors))
        feasible += ok
    elapsed = time.perf_counter() - start
    if deterministic:
        objectives *= reps
        feasible *= reps
    return RunRecord(instance, algorithm, reps, objectives, optimum, elapsed, feasible)


@dataclass
class InstanceEntry:
    """One suite instance, given in memory, by file path, or by generator spec."""

    name: str
    n: int
    d: float
    index: int
    graph: Optional[LabeledGraph] = None
    path: Optional[str] = None
    spec: Optional[InstanceSpec] = None
    optimum: Optional[int] = None

    @classmethod
    def from_spec(cls, spec: InstanceSpec) -> "InstanceEntry":
        return cls(spec.name, spec.n, spec.d, spec.index, spec=spec)

    @classmethod
    def from_path(cls, path) -> "InstanceEntry":
        """Read ``n``, ``d`` and ``index`` from a ``<n>_<d>_<i>.mlst`` file name when possible."""
        p = Path(path)
        parts = p.stem.split("_")
        try:
            n, d, index = int(parts[0]), float(parts[1]), int(parts[2])
        except (IndexError, ValueError):
            n, d, index = 0, 0.0, 0
        return cls(p.stem, n, d, index, path=str(p), optimum=read_optimum(p))

    def load(self) -> LabeledGraph:
        if self.graph is None:
            try:
                if self.path is not None:
                    self.graph = read_instance(self.path)
                elif self.spec is not None:
                    self.graph = generate(self.spec)
                else:
                    raise ValueError("no graph, path or spec given")
            except (OSError, ValueError, RuntimeError) as exc:
                raise InstanceLoadError(f"instance {self.name}: {exc}") from exc
            if not self.n:
                self.n = self.graph.n
        return self.graph


@dataclass
class SuiteConfig:
    instances: List[InstanceEntry]
    algorithms: List[str]
    repetitions: int = 100
    base_seed: int = 0
    compute_optimum: bool = False
    exact_max_n: Dict[float, int] = field(default_factory=dict)
    jobs: int = 1

    def __post_init__(self):
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")
        for a in self.algorithms:
            resolve_algorithm(a)

    def exact_allowed(self, entry: InstanceEntry) -> bool:
        """``exact_max_n`` maps a density to the largest n solved exactly."""
        limit = self.exact_max_n.get(entry.d)
        return limit is None or entry.n <= limit


def _instance_records(cfg: SuiteConfig, entry: InstanceEntry) -> List[RunRecord]:
    g = entry.load()
    optimum = entry.optimum
    exact_ok = cfg.exact_allowed(entry)
    exact_record = None
    if exact_ok and (EXACT in cfg.algorithms or (cfg.compute_optimum and optimum is None)):
        exact_record = multi_start(g, EXACT, cfg.repetitions, cfg.base_seed, None, entry.name)
        if optimum is None and cfg.compute_optimum:
            optimum = exact_record.best_objective
        exact_record.optimum = optimum
    out = []
    for a in cfg.algorithms:
        if a == EXACT:
            if exact_record is None:
                continue
            rec = exact_record
        else:
            rec = multi_start(g, a, cfg.repetitions, cfg.base_seed, optimum, entry.name)
        rec.n, rec.d, rec.index = entry.n, entry.d, entry.index
        out.append(rec)
    return out


def run_suite(cfg: SuiteConfig) -> List[RunRecord]:
    """One RunRecord per (instance, algorithm), sorted by (n, d, index, roster position).

    Instances excluded from exact solving by ``exact_max_n`` have no ``A*``
    row and no computed optimum.
    """
    if cfg.jobs > 1:
        with ProcessPoolExecutor(cfg.jobs) as pool:
            chunks = list(pool.map(_instance_records, [cfg] * len(cfg.instances), cfg.instances))
    else:
        chunks = [_instance_records(cfg, e) for e in cfg.instances]
    pos = {a: i for i, a in enumerate(cfg.algorithms)}
    records = [r for chunk in chunks for r in chunk]
    records.sort(key=lambda r: (r.n, r.d, r.index, r.instance, pos[r.algorithm]))
    return records


def records_to_csv(records: Sequence[RunRecord], timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r.row(timing))
    return buf.getvalue()


def records_to_json(records: Sequence[RunRecord], timing: bool = True) -> str:
    rows = []
    for r in records:
        row = r.row(timing)
        rows.append(
            {
                "n": r.n,
                "d": r.d,
                "index": r.index,
                "algorithm": r.algorithm,
                "reps": r.reps,
                "optimum": r.optimum,
                "mean": float(row["mean"]),
                "best": r.best_objective,
                "optima_hits": r.optima_hits,
                "ms_total": float(row["ms_total"]) if timing else None,
            }
        )
    return json.dumps(rows, indent=1) + "\n"


def write_outputs(records: Sequence[RunRecord], out_dir, timing: bool = True) -> Tuple[Path, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path, json_path = out / "bench.csv", out / "bench.json"
    csv_path.write_text(records_to_csv(records, timing))
    json_path.write_text(records_to_json(records, timing))
    return csv_path, json_path
