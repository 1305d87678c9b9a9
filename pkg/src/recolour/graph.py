"""Graphs, colourings, instances and recolouring sequences.

Vertices are ``0..n-1`` everywhere in the library; the text formats in
:mod:`recolour.io` are 1-based.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from itertools import chain

import numpy as np

# above this many edges, bulk checks go through numpy
BULK_EDGES = 2048


class GraphError(ValueError):
    """Malformed graph (self-loop, vertex out of range)."""


class ColouringError(ValueError):
    """Colouring of the wrong length, out of palette, or not proper."""


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[tuple[int, ...], ...]
    m: int

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield every edge once as ``(u, v)`` with ``u < v``."""
        for u, nbrs in enumerate(self.adj):
            for v in nbrs:
                if u < v:
                    yield u, v

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    @cached_property
    def arcs(self) -> tuple[np.ndarray, np.ndarray]:
        """Both orientations of every edge as ``(tail, head)`` index arrays."""
        deg = np.fromiter((len(a) for a in self.adj), dtype=np.int64, count=self.n)
        tail = np.repeat(np.arange(self.n, dtype=np.int64), deg)
        head = np.fromiter(chain.from_iterable(self.adj), dtype=np.int64, count=int(deg.sum()))
        return tail, head


def new_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    adj = tuple(tuple(sorted(s)) for s in nbrs)
    m = sum(len(a) for a in adj) // 2
    return Graph(n, adj, m)


@dataclass(frozen=True)
class Colouring(Sequence[int]):
    """A total map vertex -> colour in ``1..k``."""

    colours: tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ColouringError(f"palette size must be >= 1, got {self.k}")
        for v, c in enumerate(self.colours):
            if not 1 <= c <= self.k:
                raise ColouringError(f"vertex {v} has colour {c} outside 1..{self.k}")

    @classmethod
    def of(cls, colours: Iterable[int], k: int) -> Colouring:
        return cls(tuple(colours), k)

    def __getitem__(self, v):  # type: ignore[override]
        return self.colours[v]

    def __len__(self) -> int:
        return len(self.colours)

    def __iter__(self) -> Iterator[int]:
        return iter(self.colours)

    def recoloured(self, v: int, colour: int) -> Colouring:
        cs = list(self.colours)
        cs[v] = colour
        return Colouring(tuple(cs), self.k)


def is_proper(g: Graph, c: Sequence[int]) -> bool:
    if len(c) != g.n:
        raise ColouringError(f"colouring has {len(c)} entries for {g.n} vertices")
    if g.m > BULK_EDGES:
        tail, head = g.arcs
        col = np.asarray(c)
        return bool((col[tail] != col[head]).all())
    for u, nbrs in enumerate(g.adj):
        cu = c[u]
        for v in nbrs:
            if c[v] == cu:
                return False
    return True


@dataclass(frozen=True)
class RecolouringSequence:
    """Ordered ``(vertex, new colour)`` steps. No-op steps are never stored."""

    steps: tuple[tuple[int, int], ...] = ()

    @classmethod
    def of(cls, steps: Iterable[tuple[int, int]]) -> RecolouringSequence:
        return cls(tuple((int(v), int(c)) for v, c in steps))

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.steps)

    def vertices(self) -> set[int]:
        return {v for v, _ in self.steps}

    def colourings(self, start: Sequence[int]) -> Iterator[tuple[int, ...]]:
        """Yield the colouring after each prefix, starting with ``start`` itself."""
        cur = list(start)
        yield tuple(cur)
        for v, c in self.steps:
            cur[v] = c
            yield tuple(cur)


@dataclass(frozen=True)
class ReconfigInstance:
    graph: Graph
    k: int
    alpha: Colouring
    beta: Colouring
    ell: int

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ColouringError(f"palette size must be >= 1, got {self.k}")
        if self.ell < 0:
            raise ValueError(f"budget must be non-negative, got {self.ell}")
        for name in ("alpha", "beta"):
            c = getattr(self, name)
            if not isinstance(c, Colouring) or c.k != self.k:
                object.__setattr__(self, name, Colouring.of(c, self.k))
            if not is_proper(self.graph, getattr(self, name)):
                raise ColouringError(f"{name} is not a proper colouring")


@dataclass(frozen=True)
class SpanningTree:
    root: int
    parent: dict[int, int]
    order: tuple[int, ...] = field(default=())

    def __contains__(self, v: int) -> bool:
        return v in self.parent

    def path_from_root(self, v: int) -> list[int]:
        path = [v]
        while path[-1] != self.root:
            path.append(self.parent[path[-1]])
        path.reverse()
        return path


def components(g: Graph) -> list[list[int]]:
    """Connected components, each sorted, ordered by smallest vertex."""
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comp.sort()
        out.append(comp)
    return out


def bfs_spanning_tree(g: Graph, root: int) -> SpanningTree:
    if not 0 <= root < g.n:
        raise GraphError(f"root {root} not in graph")
    parent = {root: root}
    order = [root]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in parent:
                parent[w] = u
                order.append(w)
                queue.append(w)
    return SpanningTree(root, parent, tuple(order))


@dataclass(frozen=True)
class Verification:
    ok: bool
    step: int | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_recolouring(
    g: Graph,
    k: int,
    alpha: Sequence[int],
    beta: Sequence[int],
    seq: Iterable[tuple[int, int]],
) -> Verification:
    """Replay ``seq`` from ``alpha`` and check it is a valid route to ``beta``.

    Steps are numbered from 1 in the report; a step that does not change the
    colour of its vertex is rejected since sequences never store no-ops.
    """
    cur = list(alpha)
    for i, (v, c) in enumerate(seq, start=1):
        if not 0 <= v < g.n:
            return Verification(False, i, f"vertex {v} out of range")
        if not 1 <= c <= k:
            return Verification(False, i, f"colour {c} outside 1..{k}")
        if cur[v] == c:
            return Verification(False, i, f"no-op step on vertex {v}")
        for w in g.adj[v]:
            if cur[w] == c:
                return Verification(False, i, f"edge ({v}, {w}) becomes monochromatic")
        cur[v] = c
    if cur != list(beta):
        return Verification(False, None, "final mismatch")
    return Verification(True)
