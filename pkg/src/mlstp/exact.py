"""Exact branch-and-bound over label subsets, the pilot method, and a brute-force oracle."""

from __future__ import annotations

import itertools
import math
import random
import re
import time
from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple, Union

from .graph import (
    ColorSet,
    ComponentLabeling,
    DisconnectedError,
    LabeledGraph,
    bfs_component_count,
    label_frequencies,
    restricted_components,
)
from .heuristics import TieBreak, greedy_complete, mvca_revised

BRUTE_FORCE_MAX_LABELS = 20


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    pruned_by_bound: int = 0
    pruned_by_frequency: int = 0
    elapsed: float = 0.0


def branching_order(g: LabeledGraph) -> List[int]:
    """Labels by descending frequency, ascending id on ties."""
    freq = label_frequencies(g)
    return sorted(range(g.l), key=lambda c: (-freq[c], c))


def astar(
    g: LabeledGraph,
    initial_upper_bound: Optional[Iterable[int]] = None,
    *,
    heuristic_bound: bool = True,
    frequency_prune: bool = True,
) -> Tuple[ColorSet, SearchStats]:
    """Depth-first branch and bound returning a minimum feasible label set.

    Parameters
    ----------
    g : LabeledGraph
        Connected input graph.
    initial_upper_bound : iterable of int, optional
        A feasible label set used as the first incumbent. When omitted the
        incumbent comes from the revised MVCA, or is the full label set if
        ``heuristic_bound`` is false.
    frequency_prune : bool
        Skip, two levels above the incumbent size, labels with fewer edges
        than needed to join the remaining components in one step.

    Notes
    -----
    Each subset is generated once: children of a node only add labels that
    come later in :func:`branching_order` than the last label added. A node
    is expanded only while it is smaller than the incumbent, and branched on
    only while it is smaller than the incumbent minus one.
    """
    start = time.perf_counter()
    stats = SearchStats()
    if initial_upper_bound is not None:
        best = frozenset(initial_upper_bound)
        if restricted_components(g, best).count != 1:
            raise DisconnectedError(f"initial upper bound {sorted(best)} is not feasible")
    elif heuristic_bound:
        best = mvca_revised(g).colors
    else:
        best = frozenset(range(g.l))

    order = branching_order(g)
    freq = label_frequencies(g)
    root = ComponentLabeling.singletons(g.n)
    stats.nodes_expanded += 1
    if root.count == 1:
        best = frozenset()
    # stack entries: (parent labeling, parent labels, position of the label to add)
    stack = []
    if len(best) > 1:
        stack.extend((root, (), pos) for pos in reversed(range(g.l)))
    while stack:
        parent, labels, pos = stack.pop()
        size = len(labels) + 1
        if size >= len(best):
            stats.pruned_by_bound += 1
            continue
        c = order[pos]
        if frequency_prune and size == len(best) - 1 and freq[c] < parent.count - 1:
            stats.pruned_by_frequency += 1
            continue
        stats.nodes_expanded += 1
        if size == len(best) - 1:
            # leaf: it either connects or cannot be branched further
            if parent.count_with(g, c) == 1:
                best = frozenset(labels + (c,))
            continue
        lab = parent.with_label(g, c)
        if lab.count == 1:
            best = frozenset(labels + (c,))
            continue
        child_labels = labels + (c,)
        stack.extend((lab, child_labels, p) for p in reversed(range(pos + 1, g.l)))
    stats.elapsed = time.perf_counter() - start
    return best, stats


@dataclass(frozen=True)
class PilotConfig:
    """Which first labels the pilot tries and how each one is completed.

    ``first_stage`` is ``"all_labels"``, ``"comp_minimizers"`` or
    ``"top_fraction"`` (with ``fraction`` in (0, 1]). ``recursion`` is
    ``"single_greedy"`` or ``"all_minimizers"``.
    """

    first_stage: str = "all_labels"
    recursion: str = "single_greedy"
    fraction: float = 1.0

    def __post_init__(self):
        if self.first_stage not in ("all_labels", "comp_minimizers", "top_fraction"):
            raise ValueError(f"unknown first stage {self.first_stage!r}")
        if self.recursion not in ("single_greedy", "all_minimizers"):
            raise ValueError(f"unknown recursion {self.recursion!r}")
        if not 0 < self.fraction <= 1:
            raise ValueError(f"fraction must be in (0, 1], got {self.fraction}")

    @classmethod
    def parse(cls, text: str) -> "PilotConfig":
        """Parse ``first=<all|minimizers|fracF>,rec=<greedy|all>``; either key may be omitted."""
        first, rec, frac = "all_labels", "single_greedy", 1.0
        for item in filter(None, text.split(",")):
            key, _, value = item.partition("=")
            key, value = key.strip(), value.strip()
            if key == "first":
                m = re.fullmatch(r"frac(\d*\.?\d+)", value)
                if value == "all":
                    first = "all_labels"
                elif value == "minimizers":
                    first = "comp_minimizers"
                elif m:
                    first, frac = "top_fraction", float(m.group(1))
                else:
                    raise ValueError(f"bad pilot first stage {value!r}")
            elif key == "rec":
                if value not in ("greedy", "all"):
                    raise ValueError(f"bad pilot recursion {value!r}")
                rec = "single_greedy" if value == "greedy" else "all_minimizers"
            else:
                raise ValueError(f"unknown pilot option {key!r}")
        return cls(first, rec, frac)

    def __str__(self) -> str:
        first = {"all_labels": "all", "comp_minimizers": "minimizers"}.get(
            self.first_stage, f"frac{self.fraction:g}"
        )
        rec = "greedy" if self.recursion == "single_greedy" else "all"
        return f"first={first},rec={rec}"


def first_stage_labels(g: LabeledGraph, cfg: PilotConfig) -> List[int]:
    if cfg.first_stage == "all_labels":
        return list(range(g.l))
    if cfg.first_stage == "top_fraction":
        k = math.ceil(cfg.fraction * g.l - 1e-9)
        return sorted(branching_order(g)[:k])
    root = ComponentLabeling.singletons(g.n)
    counts = [root.count_with(g, c) for c in range(g.l)]
    low = min(counts)
    return [c for c in range(g.l) if counts[c] == low]


def pilot(
    g: LabeledGraph,
    cfg: PilotConfig = PilotConfig(),
    tie: TieBreak = TieBreak.FIRST_FOUND,
    seed: int = 0,
) -> Tuple[ColorSet, SearchStats]:
    """Pilot method: try several first labels, complete each greedily, keep the best.

    With ``single_greedy`` each first label gets one revised-MVCA completion;
    ties between completions go to the smallest first label. With
    ``all_minimizers`` every branch allowed by the minimum-components rule is
    explored under the incumbent bound.
    """
    start = time.perf_counter()
    stats = SearchStats()
    firsts = first_stage_labels(g, cfg)
    best: ColorSet = frozenset(range(g.l))
    if cfg.recursion == "single_greedy":
        rng = random.Random(seed) if tie is TieBreak.UNIFORM_RANDOM else None
        for c in firsts:
            lab = ComponentLabeling.singletons(g.n)
            lab.add_label(g, c)
            chosen = greedy_complete(g, {c}, lab, rng)
            stats.nodes_expanded += len(chosen)
            if len(chosen) < len(best):
                best = frozenset(chosen)
    else:
        best = _pilot_all_minimizers(g, firsts, best, stats)
    stats.elapsed = time.perf_counter() - start
    return best, stats


def _pilot_all_minimizers(g, firsts, best, stats) -> ColorSet:
    seen = set()
    root = ComponentLabeling.singletons(g.n)
    stack = [(root, frozenset(), c) for c in reversed(firsts)]
    while stack:
        parent, labels, c = stack.pop()
        cur = labels | {c}
        if len(cur) >= len(best):
            stats.pruned_by_bound += 1
            continue
        if cur in seen:
            continue
        seen.add(cur)
        stats.nodes_expanded += 1
        lab = parent.with_label(g, c)
        if lab.count == 1:
            best = cur
            continue
        if len(cur) >= len(best) - 1:
            stats.pruned_by_bound += 1
            continue
        counts = {x: lab.count_with(g, x) for x in range(g.l) if x not in cur}
        low = min(counts.values())
        stack.extend((lab, cur, x) for x in sorted(counts, reverse=True) if counts[x] == low)
    return best


def brute_force(g: LabeledGraph) -> ColorSet:
    """Smallest feasible label set by enumeration in increasing size.

    Uses a separate BFS connectivity check, so it is independent of the
    component labeling used by the solvers.
    """
    if g.l > BRUTE_FORCE_MAX_LABELS:
        raise ValueError(f"brute force limited to {BRUTE_FORCE_MAX_LABELS} labels, got {g.l}")
    if g.n == 1:
        return frozenset()
    for k in range(1, g.l + 1):
        for subset in itertools.combinations(range(g.l), k):
            if bfs_component_count(g, set(subset)) == 1:
                return frozenset(subset)
    raise DisconnectedError("graph is disconnected even with every label")
