"""Shared helpers for the test suite: graph corpora, colouring enumeration,
random instances and an independent height reference."""

from __future__ import annotations

import random
from collections import deque
from collections.abc import Iterator, Sequence

import networkx as nx
from hypothesis import strategies as st

from recolour import Graph, new_graph

# (criterion number, passed, detail) collected by the acceptance suite
ACCEPTANCE: list[tuple[int, bool, str]] = []


def record(criterion: int, passed: bool, detail: str) -> None:
    ACCEPTANCE.append((criterion, passed, detail))
    print(f"criterion {criterion}: {'PASS' if passed else 'FAIL'} {detail}")


def atlas_graphs(max_n: int, connected: bool = False, min_n: int = 1) -> Iterator[Graph]:
    """Every graph up to isomorphism with ``min_n..max_n`` vertices (max 7)."""
    for G in nx.graph_atlas_g()[1:]:
        n = G.number_of_nodes()
        if n > max_n:
            break
        if n < min_n or (connected and not nx.is_connected(G)):
            continue
        yield new_graph(n, G.edges())


def proper_colourings(g: Graph, k: int = 3) -> list[tuple[int, ...]]:
    """All proper k-colourings, lexicographic."""
    out: list[tuple[int, ...]] = []
    cur = [0] * g.n

    def go(v: int) -> None:
        if v == g.n:
            out.append(tuple(cur))
            return
        used = {cur[w] for w in g.adj[v] if w < v}
        for c in range(1, k + 1):
            if c not in used:
                cur[v] = c
                go(v + 1)
        cur[v] = 0

    go(0)
    return out


def random_coloured_graph(rng: random.Random, n: int, k: int = 3, p: float = 0.5) -> tuple[Graph, list[int]]:
    """A random graph built around a hidden proper colouring, which is returned."""
    col = [rng.randint(1, k) for _ in range(n)]
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if col[u] != col[v] and rng.random() < p]
    return new_graph(n, edges), col


def random_walk(g: Graph, k: int, start: Sequence[int], steps: int, rng: random.Random) -> list[int]:
    cur = list(start)
    for _ in range(steps):
        v = rng.randrange(g.n)
        opts = [c for c in range(1, k + 1) if c != cur[v] and all(cur[w] != c for w in g.adj[v])]
        if opts:
            cur[v] = rng.choice(opts)
    return cur


def w(cu: int, cv: int) -> int:
    return 1 if (cv - cu) % 3 == 1 else -1


def ref_heights(g: Graph, alpha: Sequence[int], c: Sequence[int], root: int) -> dict[int, int]:
    """Tree-path weight under ``c`` minus under ``alpha`` from ``root``, on a BFS tree."""
    h = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for x in g.adj[u]:
            if x not in h:
                h[x] = h[u] + w(c[u], c[x]) - w(alpha[u], alpha[x])
                queue.append(x)
    return h


@st.composite
def coloured_pairs(draw: st.DrawFn, max_n: int = 8, k: int = 3) -> tuple[Graph, list[int], list[int]]:
    """A graph with two proper k-colourings: edges only where both colourings differ."""
    n = draw(st.integers(min_value=1, max_value=max_n))
    a = draw(st.lists(st.integers(1, k), min_size=n, max_size=n))
    b = draw(st.lists(st.integers(1, k), min_size=n, max_size=n))
    ok = [(u, v) for u in range(n) for v in range(u + 1, n) if a[u] != a[v] and b[u] != b[v]]
    chosen = draw(st.lists(st.sampled_from(ok), unique=True)) if ok else []
    return new_graph(n, chosen), a, b
