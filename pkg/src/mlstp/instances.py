"""Random instance generation and the plain-text instance file format.

File layout, LF line endings, 0-based ids::

    n m l
    u v label      (m lines)

An optional companion ``<name>.opt`` holds the known optimum as one integer.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Union

from .graph import LabeledGraph, build_graph, InvalidGraphError
from .seeding import derive_seed

PathLike = Union[str, "os.PathLike[str]"]

GRID_SIZES = (20, 30, 40, 50)
GRID_DENSITIES = (0.8, 0.5, 0.2)
GRID_INDICES = range(1, 11)
MAX_ATTEMPTS = 1000


class InstanceFormatError(ValueError):
    """Raised for malformed instance or optimum files."""


def edge_count(n: int, d: float) -> int:
    """``floor(d * n(n-1)/2)``, evaluated exactly on the decimal value of ``d``."""
    return int(Fraction(str(d)) * n * (n - 1) / 2)


@dataclass(frozen=True)
class InstanceSpec:
    n: int
    l: int
    d: float
    seed: int = 0
    index: int = 1

    @property
    def m(self) -> int:
        return edge_count(self.n, self.d)

    @property
    def name(self) -> str:
        return f"{self.n}_{self.d:g}_{self.index}"

    def validate(self) -> None:
        if self.n < 2 or self.l < 1:
            raise ValueError(f"need n >= 2 and l >= 1, got n={self.n}, l={self.l}")
        if not 0 < self.d <= 1:
            raise ValueError(f"density must be in (0, 1], got {self.d}")
        if self.m < self.n - 1:
            raise ValueError(
                f"m = floor({self.d} * {self.n}*{self.n - 1}/2) = {self.m} < n-1 = {self.n - 1}; "
                "cannot be connected"
            )


def generate(spec: InstanceSpec) -> LabeledGraph:
    """Random connected instance with exactly ``spec.m`` distinct vertex pairs.

    Pairs are sampled uniformly without replacement and labels uniformly per
    edge. Disconnected draws are rejected and redrawn from a derived seed.
    """
    spec.validate()
    pairs = [(u, v) for u in range(spec.n) for v in range(u + 1, spec.n)]
    for attempt in range(MAX_ATTEMPTS):
        rng = random.Random(derive_seed(spec.seed, spec.n, spec.l, spec.d, spec.index, attempt))
        chosen = rng.sample(pairs, spec.m)
        edges = [(u, v, rng.randrange(spec.l)) for u, v in chosen]
        g = build_graph(spec.n, spec.l, edges, require_connected=False)
        if g.is_connected():
            return g
    raise RuntimeError(f"no connected draw for {spec} after {MAX_ATTEMPTS} attempts")


def benchmark_grid(seed: int = 0, sizes=GRID_SIZES, densities=GRID_DENSITIES, indices=GRID_INDICES) -> List[InstanceSpec]:
    """The n = l in {20..50} x d in {0.8, 0.5, 0.2} x 10 instance classes."""
    return [InstanceSpec(n, n, d, seed, i) for n in sizes for d in densities for i in indices]


def format_instance(g: LabeledGraph) -> str:
    lines = [f"{g.n} {g.m} {g.l}"]
    lines.extend(f"{u} {v} {c}" for u, v, c in g.edges)
    return "\n".join(lines) + "\n"


def parse_instance(text: str, require_connected: bool = True) -> LabeledGraph:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows:
        raise InstanceFormatError("empty instance file")
    try:
        n, m, l = (int(x) for x in rows[0])
    except ValueError:
        raise InstanceFormatError(f"header must be 'n m l', got {' '.join(rows[0])!r}") from None
    body = rows[1:]
    if len(body) != m:
        raise InstanceFormatError(f"header declares m={m} edges but {len(body)} edge lines follow")
    edges = []
    for k, row in enumerate(body, start=2):
        if len(row) != 3:
            raise InstanceFormatError(f"line {k}: expected 'u v label', got {' '.join(row)!r}")
        try:
            edges.append(tuple(int(x) for x in row))
        except ValueError:
            raise InstanceFormatError(f"line {k}: non-integer field in {' '.join(row)!r}") from None
    try:
        return build_graph(n, l, edges, require_connected=require_connected)
    except InvalidGraphError as exc:
        raise InstanceFormatError(str(exc)) from exc


def write_instance(g: LabeledGraph, path: PathLike) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write(format_instance(g))


def read_instance(path: PathLike, require_connected: bool = True) -> LabeledGraph:
    with open(path) as fh:
        text = fh.read()
    try:
        return parse_instance(text, require_connected)
    except InstanceFormatError as exc:
        raise InstanceFormatError(f"{path}: {exc}") from exc


def optimum_path(path: PathLike) -> Path:
    return Path(path).with_suffix(".opt")


def write_optimum(path: PathLike, value: int) -> Path:
    out = optimum_path(path)
    out.write_text(f"{value}\n")
    return out


def read_optimum(path: PathLike) -> Optional[int]:
    """Optimum stored next to an instance file, or ``None`` if there is none."""
    opt = optimum_path(path)
    if not opt.exists():
        return None
    try:
        return int(opt.read_text().strip())
    except ValueError:
        raise InstanceFormatError(f"{opt}: expected a single integer") from None


# Small instance on which the vertex-covering greedy stalls disconnected while
# the component-minimizing greedy needs 3 labels and the optimum is {1, 2}.
# Found by random search against the brute-force oracle (see tests).
GREEDY_TRAP_EDGES = (
    (0, 1, 1), (0, 2, 2), (0, 6, 0), (1, 2, 0), (2, 3, 1),
    (2, 6, 2), (3, 5, 0), (4, 5, 2), (5, 6, 1),
)


def greedy_trap() -> LabeledGraph:
    return build_graph(7, 3, GREEDY_TRAP_EDGES)
