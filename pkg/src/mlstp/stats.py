"""Non-parametric comparison of several algorithms over a set of instances.

Follows the usual protocol for comparing classifiers/solvers over many
datasets: per-instance ranks with midranks for ties, the Friedman test in its
Iman-Davenport F form, Nemenyi critical differences on mean ranks, and the
sign test with a normal-approximation win threshold.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from itertools import combinations
from statistics import NormalDist
from typing import Dict, List, Mapping, Optional, Sequence

import numpy as np
from scipy.special import betainc
from scipy.stats import rankdata

# Studentized range quantiles q(alpha; k, inf) for k = 2..10.
STUDENTIZED_RANGE = {
    0.10: (2.326, 2.902, 3.240, 3.478, 3.661, 3.808, 3.931, 4.037, 4.129),
    0.05: (2.772, 3.314, 3.633, 3.858, 4.030, 4.170, 4.286, 4.387, 4.474),
    0.01: (3.643, 4.120, 4.403, 4.603, 4.757, 4.882, 4.987, 5.078, 5.157),
}


class StatsInputError(ValueError):
    """Raised for matrices or CSV files that cannot be compared."""


@dataclass
class RankMatrix:
    """``values[i, j]``: score of algorithm ``j`` on instance ``i``."""

    values: np.ndarray
    names: List[str]
    lower_is_better: bool = True
    instances: Optional[List[str]] = None

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.values.ndim != 2:
            raise StatsInputError("values must be a 2-D table")
        N, k = self.values.shape
        if N < 2 or k < 2:
            raise StatsInputError(f"need at least 2 instances and 2 algorithms, got {N}x{k}")
        if len(self.names) != k:
            raise StatsInputError(f"{len(self.names)} names for {k} columns")
        if np.isnan(self.values).any():
            raise StatsInputError("matrix has missing cells")

    @property
    def shape(self):
        return self.values.shape

    def ranks(self) -> np.ndarray:
        """Per-row ranks, 1 = best, ties share their average rank."""
        v = self.values if self.lower_is_better else -self.values
        return rankdata(v, axis=1, method="average")


def mean_ranks(m: RankMatrix) -> np.ndarray:
    return m.ranks().mean(axis=0)


def f_sf(x: float, d1: float, d2: float) -> float:
    """Upper tail ``P(F > x)`` of the F distribution via the regularized incomplete beta."""
    if x <= 0:
        return 1.0
    return float(betainc(d2 / 2.0, d1 / 2.0, d2 / (d2 + d1 * x)))


@dataclass
class FriedmanResult:
    chi_square: float
    iman_davenport_F: float
    df1: int
    df2: int
    p_value: float
    degenerate: bool = False


def friedman(m: RankMatrix) -> FriedmanResult:
    """Friedman statistic from mean ranks and its Iman-Davenport F refinement.

    When every instance ranks the algorithms identically with no ties the F
    denominator vanishes; the result then carries ``degenerate=True``,
    ``F = inf`` and ``p = 0``.
    """
    N, k = m.shape
    R = mean_ranks(m)
    chi2 = 12.0 * N / (k * (k + 1)) * (float(np.sum(R**2)) - k * (k + 1) ** 2 / 4.0)
    chi2 = max(chi2, 0.0)  # rounding can leave -1e-15 for identical columns
    df1, df2 = k - 1, (k - 1) * (N - 1)
    denom = N * (k - 1) - chi2
    if denom <= 1e-12 * N * k:
        return FriedmanResult(chi2, math.inf, df1, df2, 0.0, degenerate=True)
    F = (N - 1) * chi2 / denom
    return FriedmanResult(chi2, F, df1, df2, f_sf(F, df1, df2))


def nemenyi_se(k: int, N: int) -> float:
    """Standard error of a mean-rank difference, ``sqrt(k(k+1) / (6N))``."""
    return math.sqrt(k * (k + 1) / (6.0 * N))


def nemenyi_cd(k: int, N: int, q_alpha: float) -> float:
    """Critical difference ``q_alpha / sqrt(2) * SE`` for two mean ranks."""
    if q_alpha <= 0:
        raise ValueError("q_alpha must be positive")
    return q_alpha / math.sqrt(2.0) * nemenyi_se(k, N)


def studentized_range_q(k: int, alpha: float) -> float:
    try:
        return STUDENTIZED_RANGE[alpha][k - 2]
    except (KeyError, IndexError):
        raise KeyError(
            f"no embedded studentized range quantile for k={k}, alpha={alpha}; pass q_table explicitly"
        ) from None


def normal_z(alpha: float) -> float:
    """Two-sided standard normal critical value."""
    return NormalDist().inv_cdf(1.0 - alpha / 2.0)


def sign_test_threshold(N: int, z: float) -> int:
    """Smallest win count ``w >= N/2 + z*sqrt(N)/2`` that is significant."""
    if N < 1 or z <= 0:
        raise ValueError("need N >= 1 and z > 0")
    bound = N / 2.0 + z * math.sqrt(N) / 2.0
    w = math.ceil(bound - 1e-12)
    return max(w, math.ceil(N / 2))


@dataclass
class PairComparison:
    better: str
    worse: str
    rank_gap: float
    wins: int
    losses: int
    ties: int
    nemenyi: Dict[str, bool] = field(default_factory=dict)
    sign: Dict[str, bool] = field(default_factory=dict)

    @property
    def sign_score(self) -> int:
        # ties are split evenly; an odd one out is dropped
        return self.wins + self.ties // 2


@dataclass
class CompareReport:
    names: List[str]
    mean_ranks: Dict[str, float]
    friedman: FriedmanResult
    N: int
    k: int
    critical_differences: Dict[str, float]
    sign_thresholds: Dict[str, int]
    adjacent: List[PairComparison]
    pairs: List[PairComparison]

    def ordering(self) -> List[str]:
        return sorted(self.names, key=lambda a: (self.mean_ranks[a], self.names.index(a)))

    def significant_pairs(self, alpha) -> List[PairComparison]:
        key = _alpha_key(alpha)
        return [p for p in self.pairs if p.nemenyi.get(key)]

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "mean_ranks": {a: self.mean_ranks[a] for a in self.ordering()},
            "friedman": asdict(self.friedman),
            "critical_differences": self.critical_differences,
            "sign_thresholds": self.sign_thresholds,
            "adjacent": [_pair_dict(p) for p in self.adjacent],
            "pairs": [_pair_dict(p) for p in self.pairs],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False, default=_json_default) + "\n"

    def to_text(self) -> str:
        order = self.ordering()
        width = max(len(a) for a in order) + 2
        fr = self.friedman
        out = [f"instances N={self.N}  algorithms k={self.k}", "", "mean ranks (lower is better)"]
        out += [f"  {a:<{width}}{self.mean_ranks[a]:8.3f}" for a in order]
        out += [
            "",
            f"Friedman chi2 = {fr.chi_square:.3f}   Iman-Davenport F({fr.df1}, {fr.df2}) = {fr.iman_davenport_F:.3f}"
            f"   p = {fr.p_value:.3g}" + ("   [degenerate: saturated ranks]" if fr.degenerate else ""),
            "",
            "Nemenyi critical differences: "
            + "  ".join(f"alpha={a}: {cd:.4f}" for a, cd in self.critical_differences.items()),
            "adjacent rank gaps",
        ]
        for p in self.adjacent:
            flags = "  ".join(f"{a}:{'*' if s else '-'}" for a, s in p.nemenyi.items())
            out.append(f"  {p.worse + ' - ' + p.better:<{2 * width + 3}}{p.rank_gap:8.3f}   {flags}")
        out += [
            "",
            "sign test win thresholds: "
            + "  ".join(f"alpha={a}: {w}" for a, w in self.sign_thresholds.items()),
            "pairwise (better vs worse by mean rank): gap, wins/losses/ties, Nemenyi, sign",
        ]
        for p in self.pairs:
            nem = "".join("*" if s else "-" for s in p.nemenyi.values())
            sig = "".join("*" if s else "-" for s in p.sign.values())
            wlt = f"{p.wins}/{p.losses}/{p.ties}"
            out.append(
                f"  {p.better:<{width}}vs {p.worse:<{width}}{p.rank_gap:7.3f}  {wlt:>14}  {nem:>4}  {sig:>4}"
            )
        if not any(any(p.nemenyi.values()) or any(p.sign.values()) for p in self.pairs):
            out += ["", "no significant differences"]
        return "\n".join(out) + "\n"


def _alpha_key(alpha) -> str:
    return f"{float(alpha):g}"


def _pair_dict(p: PairComparison) -> dict:
    d = asdict(p)
    d["sign_score"] = p.sign_score
    return d


def _json_default(x):
    if isinstance(x, (np.floating, np.integer)):
        return x.item()
    raise TypeError(f"cannot serialise {type(x).__name__}")


def compare_report(
    m: RankMatrix,
    alphas: Sequence[float] = (0.05, 0.01),
    q_table: Optional[Mapping[float, float]] = None,
    z_table: Optional[Mapping[float, float]] = None,
) -> CompareReport:
    """Full comparison: ranks, Friedman, Nemenyi and sign tests at each alpha.

    ``q_table`` maps alpha to the studentized range quantile for ``k``
    groups (defaults to the embedded table); ``z_table`` maps alpha to the
    normal critical value (defaults to the two-sided normal quantile).
    """
    N, k = m.shape
    R = mean_ranks(m)
    ranks = dict(zip(m.names, (float(r) for r in R)))
    q_table = {a: (q_table or {}).get(a) or studentized_range_q(k, a) for a in alphas}
    z_table = {a: (z_table or {}).get(a) or normal_z(a) for a in alphas}
    cds = {_alpha_key(a): nemenyi_cd(k, N, q_table[a]) for a in alphas}
    thresholds = {_alpha_key(a): sign_test_threshold(N, z_table[a]) for a in alphas}

    v = m.values if m.lower_is_better else -m.values
    col = {a: j for j, a in enumerate(m.names)}

    def pair(better, worse):
        a, b = v[:, col[better]], v[:, col[worse]]
        p = PairComparison(
            better=better,
            worse=worse,
            rank_gap=ranks[worse] - ranks[better],
            wins=int(np.sum(a < b)),
            losses=int(np.sum(a > b)),
            ties=int(np.sum(a == b)),
        )
        p.nemenyi = {key: p.rank_gap > cd for key, cd in cds.items()}
        p.sign = {key: p.sign_score >= w for key, w in thresholds.items()}
        return p

    order = sorted(m.names, key=lambda a: (ranks[a], m.names.index(a)))
    adjacent = [pair(order[i], order[i + 1]) for i in range(k - 1)]
    pairs = [pair(x, y) for x, y in combinations(order, 2)]
    return CompareReport(
        names=list(m.names),
        mean_ranks=ranks,
        friedman=friedman(m),
        N=N,
        k=k,
        critical_differences=cds,
        sign_thresholds=thresholds,
        adjacent=adjacent,
        pairs=pairs,
    )


def matrix_from_bench_csv(
    path,
    column: str = "mean",
    algorithms: Optional[Sequence[str]] = None,
    drop_incomplete: bool = False,
) -> RankMatrix:
    """Pivot a benchmark CSV (one row per instance and algorithm) into a RankMatrix.

    Missing cells raise :class:`StatsInputError` unless ``drop_incomplete``
    is set, in which case instances lacking any algorithm are left out.
    """
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    required = {"n", "d", "index", "algorithm", column}
    if not rows or not required <= set(rows[0]):
        raise StatsInputError(f"{path}: expected columns {sorted(required)}")
    table: Dict[str, Dict[str, float]] = {}
    names: List[str] = []
    for r in rows:
        inst = f"{r['n']}_{r['d']}_{r['index']}"
        try:
            table.setdefault(inst, {})[r["algorithm"]] = float(r[column])
        except ValueError:
            raise StatsInputError(f"{path}: bad {column!r} value {r[column]!r} for {inst}") from None
        if r["algorithm"] not in names:
            names.append(r["algorithm"])
    if algorithms:
        names = list(algorithms)
    missing = [(i, a) for i in table for a in names if a not in table[i]]
    if missing and drop_incomplete:
        for i, _ in missing:
            table.pop(i, None)
    elif missing:
        i, a = missing[0]
        raise StatsInputError(f"{path}: {len(missing)} missing cells, e.g. algorithm {a!r} on {i}")
    insts = list(table)
    values = [[table[i][a] for a in names] for i in insts]
    return RankMatrix(np.array(values), names, instances=insts)
