"""Edge-labelled graphs and component counting on label-restricted subgraphs.

A solution to the MLST problem is a set of labels (colors). Everything the
solvers need reduces to one question: how many connected components does the
subgraph made of the edges carrying those labels have? :class:`ComponentLabeling`
answers it and supports cheap "what if I add label c" queries.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import AbstractSet, FrozenSet, Iterable, List, Sequence, Tuple

Edge = Tuple[int, int, int]
ColorSet = FrozenSet[int]


class InvalidGraphError(ValueError):
    """Raised when edges, endpoints or labels violate the graph invariants."""


class DisconnectedError(ValueError):
    """Raised when a connected (restricted) graph is required but not given."""


@dataclass(frozen=True)
class LabeledGraph:
    """Undirected multigraph whose every edge carries one label in ``[0, l)``.

    Build instances through :func:`build_graph`, which validates the input.
    """

    n: int
    l: int
    edges: Tuple[Edge, ...]
    by_label: Tuple[Tuple[Tuple[int, int], ...], ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        return restricted_components(self, range(self.l)).count == 1


def build_graph(n: int, l: int, edges: Iterable[Sequence[int]], require_connected: bool = True) -> LabeledGraph:
    """Validate an edge list and return a :class:`LabeledGraph`.

    Parameters
    ----------
    n, l : int
        Number of vertices and labels, both at least one.
    edges : iterable of (u, v, label)
        Endpoints in ``[0, n)``, label in ``[0, l)``. Parallel edges are allowed.
    require_connected : bool
        Reject inputs whose full graph is disconnected. Solvers assume this;
        pass ``False`` only to build deliberately infeasible test graphs.
    """
    if n < 1 or l < 1:
        raise InvalidGraphError(f"need n >= 1 and l >= 1, got n={n}, l={l}")
    checked: List[Edge] = []
    by_label: List[List[Tuple[int, int]]] = [[] for _ in range(l)]
    for k, e in enumerate(edges):
        if len(e) != 3:
            raise InvalidGraphError(f"edge #{k} must be (u, v, label), got {e!r}")
        u, v, c = (int(x) for x in e)
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidGraphError(f"edge #{k} endpoint out of range [0, {n}): {e!r}")
        if not 0 <= c < l:
            raise InvalidGraphError(f"edge #{k} label out of range [0, {l}): {e!r}")
        if u == v:
            raise InvalidGraphError(f"edge #{k} is a self-loop: {e!r}")
        checked.append((u, v, c))
        by_label[c].append((u, v))
    g = LabeledGraph(n, l, tuple(checked), tuple(tuple(b) for b in by_label))
    if require_connected and not g.is_connected():
        raise DisconnectedError(f"graph with n={n} is not connected using all {l} labels")
    return g


def _merges(comp: Sequence[int], pairs: Iterable[Tuple[int, int]]) -> int:
    """Count successful unions among component ids joined by ``pairs``."""
    parent = {}

    def find(x):
        root = x
        while parent.get(root, root) != root:
            root = parent[root]
        while x != root:
            parent[x], x = root, parent[x]
        return root

    merged = 0
    for u, v in pairs:
        a, b = find(comp[u]), find(comp[v])
        if a != b:
            parent[a] = b
            merged += 1
    return merged


class ComponentLabeling:
    """Component id of every vertex in the subgraph restricted to some labels.

    Ids are contiguous in ``[0, count)`` and numbered by first appearance when
    scanning vertices in order, so equal label sets always produce equal
    labelings. Instances are single-owner scratch objects: :meth:`add_label`
    mutates in place, :meth:`with_label` returns a new labeling.
    """

    __slots__ = ("component_of", "count")

    def __init__(self, component_of: List[int], count: int):
        self.component_of = component_of
        self.count = count

    @classmethod
    def singletons(cls, n: int) -> "ComponentLabeling":
        return cls(list(range(n)), n)

    @property
    def component_count(self) -> int:
        return self.count

    def copy(self) -> "ComponentLabeling":
        return ComponentLabeling(list(self.component_of), self.count)

    def count_with(self, g: LabeledGraph, c: int) -> int:
        return self.count - _merges(self.component_of, g.by_label[c])

    def add_label(self, g: LabeledGraph, c: int) -> int:
        """Merge the edges of label ``c`` into this labeling; return the new count."""
        pairs = g.by_label[c]
        if not pairs or self.count == 1:
            return self.count
        comp = self.component_of
        parent = list(range(self.count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        merged = 0
        for u, v in pairs:
            a, b = find(comp[u]), find(comp[v])
            if a != b:
                parent[a] = b
                merged += 1
        if merged:
            renumber = {}
            for i, x in enumerate(comp):
                r = find(x)
                comp[i] = renumber.setdefault(r, len(renumber))
            self.count -= merged
        return self.count

    def with_label(self, g: LabeledGraph, c: int) -> "ComponentLabeling":
        out = self.copy()
        out.add_label(g, c)
        return out

    def __repr__(self) -> str:
        return f"ComponentLabeling(count={self.count}, component_of={self.component_of})"


def restricted_components(g: LabeledGraph, colors: Iterable[int]) -> ComponentLabeling:
    """Label the components of ``H = (V, E(C))`` from scratch."""
    lab = ComponentLabeling.singletons(g.n)
    for c in sorted(set(colors)):
        if lab.count == 1:
            break
        lab.add_label(g, c)
    return lab


def components_with_extra(base: ComponentLabeling, g: LabeledGraph, c: int) -> int:
    """``Comp(C | {c})`` computed from the labeling of ``C`` without mutating it."""
    return base.count_with(g, c)


def spanning_tree(g: LabeledGraph, colors: AbstractSet[int]) -> List[Edge]:
    """Spanning tree of the restricted subgraph, scanning edges in input order.

    Raises
    ------
    DisconnectedError
        If the edges with labels in ``colors`` do not connect every vertex.
    """
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree: List[Edge] = []
    for u, v, c in g.edges:
        if c not in colors:
            continue
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
            tree.append((u, v, c))
            if len(tree) == g.n - 1:
                break
    if len(tree) != g.n - 1:
        raise DisconnectedError(
            f"labels {sorted(colors)} leave {g.n - len(tree)} components; no spanning tree"
        )
    return tree


def label_frequencies(g: LabeledGraph) -> List[int]:
    return [len(pairs) for pairs in g.by_label]


def uncovered_gain(g: LabeledGraph, covered: AbstractSet[int], c: int) -> int:
    """Number of vertices touched by label ``c`` that are not yet covered."""
    touched = set()
    for u, v in g.by_label[c]:
        touched.add(u)
        touched.add(v)
    return len(touched - set(covered))


def bfs_component_count(g: LabeledGraph, colors: AbstractSet[int]) -> int:
    """Plain BFS component count; an independent check on the labeling code."""
    adj: List[List[int]] = [[] for _ in range(g.n)]
    for u, v, c in g.edges:
        if c in colors:
            adj[u].append(v)
            adj[v].append(u)
    seen = [False] * g.n
    count = 0
    for s in range(g.n):
        if seen[s]:
            continue
        count += 1
        seen[s] = True
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    queue.append(y)
    return count
