"""Constructive heuristics: MVCA, the Krumke-Wirth revision and its randomized variants.

The randomized family is parameterised by two switches:

========  ==================  =============
variant   random first color  post-optimize
========  ==================  =============
A         no                  no
A1        no                  yes
A2        yes                 no
A12       yes                 yes
========  ==================  =============

Within one seed, A and A1 (and A2 and A12) share the same construction, since
post-optimization draws no random numbers. Hence A1 <= A and A12 <= A2 hold
run by run.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from enum import Enum
from typing import List, Optional, Tuple

from .graph import (
    ColorSet,
    ComponentLabeling,
    DisconnectedError,
    Edge,
    LabeledGraph,
    restricted_components,
    spanning_tree,
    uncovered_gain,
)


class TieBreak(Enum):
    FIRST_FOUND = "first_found"
    UNIFORM_RANDOM = "uniform_random"


@dataclass(frozen=True)
class Variant:
    random_first_color: bool
    post_optimize: bool

    @property
    def name(self) -> str:
        suffix = ("1" if self.post_optimize else "") + ("2" if self.random_first_color else "")
        return "A" + suffix

    @classmethod
    def from_name(cls, name: str) -> "Variant":
        try:
            return VARIANTS[name]
        except KeyError:
            raise ValueError(f"unknown variant {name!r}; expected one of {sorted(VARIANTS)}") from None


A = Variant(random_first_color=False, post_optimize=False)
A1 = Variant(random_first_color=False, post_optimize=True)
A2 = Variant(random_first_color=True, post_optimize=False)
A12 = Variant(random_first_color=True, post_optimize=True)
VARIANTS = {v.name: v for v in (A, A1, A2, A12)}


@dataclass
class SolveResult:
    """Outcome of one heuristic run.

    ``trace`` lists ``(label, components_after)`` for every label added during
    construction, in order. Labels dropped by post-optimization show up as the
    difference between the trace and ``colors``.
    """

    colors: ColorSet
    feasible: bool
    tree: Optional[List[Edge]] = None
    seed: int = 0
    elapsed: float = 0.0
    trace: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def objective(self) -> int:
        return len(self.colors)


def _finish(g, colors, start, seed, trace) -> SolveResult:
    colors = frozenset(colors)
    try:
        tree = spanning_tree(g, colors)
    except DisconnectedError:
        tree = None
    return SolveResult(
        colors=colors,
        feasible=tree is not None,
        tree=tree,
        seed=seed,
        elapsed=time.perf_counter() - start,
        trace=trace,
    )


def mvca_original(g: LabeledGraph) -> SolveResult:
    """Chang and Leu's maximum vertex covering greedy.

    Adds the label covering most still-uncovered vertices (lowest id on ties)
    and stops as soon as no label covers anything new. The covered subgraph
    may then be disconnected, in which case the result is infeasible.
    """
    start = time.perf_counter()
    chosen: set = set()
    covered: set = set()
    lab = ComponentLabeling.singletons(g.n)
    trace = []
    while len(covered) < g.n:
        best, best_gain = None, 0
        for c in range(g.l):
            if c in chosen:
                continue
            gain = uncovered_gain(g, covered, c)
            if gain > best_gain:
                best, best_gain = c, gain
        if best is None:
            break
        chosen.add(best)
        for u, v in g.by_label[best]:
            covered.add(u)
            covered.add(v)
        trace.append((best, lab.add_label(g, best)))
    return _finish(g, chosen, start, 0, trace)


def _minimizers(g: LabeledGraph, lab: ComponentLabeling, chosen) -> List[int]:
    # only labels that actually merge something qualify
    best = lab.count
    out: List[int] = []
    for c in range(g.l):
        if c in chosen or not g.by_label[c]:
            continue
        k = lab.count_with(g, c)
        if k < best:
            best, out = k, [c]
        elif out and k == best:
            out.append(c)
    return out


def greedy_complete(
    g: LabeledGraph,
    chosen: set,
    lab: ComponentLabeling,
    rng: Optional[random.Random] = None,
    trace: Optional[list] = None,
) -> set:
    """Extend ``chosen`` in place with the Krumke-Wirth rule until connected.

    With ``rng=None`` the lowest-id minimizer is taken, otherwise one chosen
    uniformly at random from all minimizers.
    """
    while lab.count > 1:
        cands = _minimizers(g, lab, chosen)
        if not cands:
            raise DisconnectedError("no label reduces the component count; graph disconnected")
        c = cands[0] if rng is None else rng.choice(cands)
        chosen.add(c)
        lab.add_label(g, c)
        if trace is not None:
            trace.append((c, lab.count))
    return chosen


def mvca_revised(g: LabeledGraph, tie: TieBreak = TieBreak.FIRST_FOUND, seed: int = 0) -> SolveResult:
    """Revised MVCA: repeatedly add the label minimizing ``Comp(C | {c})``."""
    start = time.perf_counter()
    rng = random.Random(seed) if tie is TieBreak.UNIFORM_RANDOM else None
    trace: list = []
    chosen = greedy_complete(g, set(), ComponentLabeling.singletons(g.n), rng, trace)
    return _finish(g, chosen, start, seed, trace)


def is_removable(g: LabeledGraph, colors, c: int) -> bool:
    return restricted_components(g, [x for x in colors if x != c]).count == 1


def post_optimize(g: LabeledGraph, colors) -> ColorSet:
    """Drop labels one at a time while the remaining ones stay connected.

    Colors are scanned by ascending id; after each removal the scan restarts.
    The result is inclusion-minimal.

    Raises
    ------
    DisconnectedError
        If ``colors`` is not feasible to begin with.
    """
    current = sorted(set(colors))
    if restricted_components(g, current).count != 1:
        raise DisconnectedError(f"post-optimization needs a feasible set, got {current}")
    while True:
        for c in current:
            if is_removable(g, current, c):
                current.remove(c)
                break
        else:
            return frozenset(current)


def solve_variant(g: LabeledGraph, v: Variant, seed: int) -> SolveResult:
    """Run one of the randomized variants A, A1, A2, A12 with a given seed."""
    start = time.perf_counter()
    rng = random.Random(seed)
    chosen: set = set()
    lab = ComponentLabeling.singletons(g.n)
    trace: list = []
    if v.random_first_color:
        c = rng.randrange(g.l)
        chosen.add(c)
        trace.append((c, lab.add_label(g, c)))
    greedy_complete(g, chosen, lab, rng, trace)
    if v.post_optimize:
        chosen = post_optimize(g, chosen)
    return _finish(g, chosen, start, seed, trace)
