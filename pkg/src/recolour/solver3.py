"""Exact shortest recolouring distance for 3-colourings, plus the k <= 2 cases.

Terminology used below:

* weight of an oriented edge ``u -> v``: +1 if the colour steps up by one
  (mod 3) from ``u`` to ``v``, -1 if it steps down.
* relative height of ``v``: weight of the tree path root -> v under the target
  colouring minus the same under the start colouring.
* absolute height: starts at 0 for every vertex and moves by -2 / +2 each time
  the vertex's colour goes up / down by one mod 3.

Everything is computed per connected component; the distance of a
disconnected graph is the sum over its components.
"""

from __future__ import annotations

import heapq
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np

from .graph import (
    BULK_EDGES,
    ColouringError,
    Graph,
    ReconfigInstance,
    RecolouringSequence,
    SpanningTree,
    bfs_spanning_tree,
    components,
    is_proper,
)


class ConditionError(ValueError):
    """Raised when a routine needs the start and target to be mutually reachable."""


@dataclass(frozen=True)
class FixedSet:
    fixed: frozenset[int]
    by_colour: dict[int, frozenset[int]]

    def __contains__(self, v: int) -> bool:
        return v in self.fixed


@dataclass(frozen=True)
class HeightProfile:
    tree: SpanningTree
    base: int
    h: dict[int, int]


@dataclass(frozen=True)
class ConditionReport:
    a1_holds: bool
    a2_holds: bool
    failing_witness: int | tuple[int, int] | None = None
    component: int | None = None

    @property
    def ok(self) -> bool:
        return self.a1_holds and self.a2_holds


@dataclass(frozen=True)
class ComponentResult:
    vertices: tuple[int, ...]
    reachable: bool
    distance: int | None
    report: ConditionReport
    focal: int | None = None
    focal_fixed: bool = False
    offset: int | None = None


@dataclass(frozen=True)
class Distance3Result:
    reachable: bool
    distance: int | None
    per_component: list[ComponentResult] = field(default_factory=list)


@dataclass(frozen=True)
class SmallKResult:
    decision: bool
    reachable: bool
    distance: int | None
    witness: RecolouringSequence | None


def _w(cu: int, cv: int) -> int:
    return 1 if (cv - cu) % 3 == 1 else -1


# _W[a][b] = weight of an edge coloured a -> b; 0 where undefined
_W = [[0] * 4 for _ in range(4)]
for _a in (1, 2, 3):
    for _b in (1, 2, 3):
        if _a != _b:
            _W[_a][_b] = _w(_a, _b)


def edge_weight(c: Sequence[int], u: int, v: int) -> int:
    if c[u] == c[v]:
        raise ColouringError(f"edge ({u}, {v}) is monochromatic; weight undefined")
    return _w(c[u], c[v])


def walk_weight(g: Graph, c: Sequence[int], walk: Sequence[int]) -> int:
    total = 0
    for u, v in zip(walk, walk[1:]):
        if not g.has_edge(u, v):
            raise ValueError(f"walk step ({u}, {v}) is not an edge")
        total += edge_weight(c, u, v)
    return total


def _check3(g: Graph, *cols: Sequence[int]) -> None:
    for c in cols:
        k = getattr(c, "k", 3)
        if k != 3:
            raise ColouringError(f"expected a 3-colouring, got palette size {k}")
        if len(c) != g.n or not set(c) <= {1, 2, 3}:
            raise ColouringError("colouring does not map every vertex into 1..3")
        if not is_proper(g, c):
            raise ColouringError("colouring is not proper")


def _fixed(g: Graph, c: Sequence[int]) -> list[bool]:
    # count[v][i]: neighbours of v still in S coloured i, or -1 for i == c(v)
    n = g.n
    if g.m > BULK_EDGES:
        tail, head = g.arcs
        col = np.asarray(c, dtype=np.int64)
        table = np.bincount(tail * 4 + col[head], minlength=4 * n).reshape(n, 4)
        table[np.arange(n), col] = -1
        count = table.tolist()
    else:
        count = []
        for v, nbrs in enumerate(g.adj):
            cs = [c[w] for w in nbrs]
            cnt = [0, cs.count(1), cs.count(2), cs.count(3)]
            cnt[c[v]] = -1
            count.append(cnt)
    alive = [True] * n
    waiting = [v for v in range(n) if 0 in count[v][1:]]
    queued = [False] * n
    for v in waiting:
        queued[v] = True
    while waiting:
        v = waiting.pop()
        alive[v] = False
        cv = c[v]
        for w in g.adj[v]:
            cnt = count[w]
            if cnt[cv] > 0:
                cnt[cv] -= 1
                if cnt[cv] == 0 and not queued[w]:
                    queued[w] = True
                    waiting.append(w)
    return alive


def fixed_vertices(g: Graph, c: Sequence[int]) -> FixedSet:
    """Vertices that keep their colour in every colouring reachable from ``c``.

    Peels away any vertex that is missing one of the two other colours among
    its surviving neighbours; whatever is left is frozen.  O(n + m).
    """
    _check3(g, c)
    alive = _fixed(g, c)
    fixed = frozenset(v for v in range(g.n) if alive[v])
    by_colour = {i: frozenset(v for v in fixed if c[v] == i) for i in (1, 2, 3)}
    return FixedSet(fixed, by_colour)


def _heights(g: Graph, tree: SpanningTree, alpha: Sequence[int], c: Sequence[int]) -> dict[int, int]:
    h = {tree.root: 0}
    parent = tree.parent
    for v in tree.order[1:]:
        p = parent[v]
        h[v] = h[p] + _w(c[p], c[v]) - _w(alpha[p], alpha[v])
    return h


def relative_heights(g: Graph, tree: SpanningTree, alpha: Sequence[int], c: Sequence[int]) -> HeightProfile:
    for col in (alpha, c):
        for p, v in tree.parent.items():
            if p != v and col[p] == col[v]:
                raise ColouringError(f"tree edge ({v}, {p}) is monochromatic")
    return HeightProfile(tree, tree.root, _heights(g, tree, alpha, c))


@dataclass
class _Analysis:
    """Everything the distance and witness routines need about one component."""

    comp: list[int]
    report: ConditionReport
    heights: dict[int, int] | None = None  # relative to the focal vertex
    focal: int | None = None
    focal_fixed: bool = False
    offset: int | None = None  # the k added to every relative height
    distance: int | None = None


def _forest_heights(g: Graph, alpha: Sequence[int], beta: Sequence[int]) -> tuple[list[list[int]], list[int]]:
    """Components plus relative heights, each component rooted at its smallest vertex.

    Same trees as :func:`bfs_spanning_tree` (ascending neighbour order), built
    for all components in one array-based pass.
    """
    n = g.n
    adj = g.adj
    h = [0] * n
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        i = 0
        while i < len(comp):
            u = comp[i]
            i += 1
            hu, wa, wb = h[u], _W[alpha[u]], _W[beta[u]]
            for x in adj[u]:
                if not seen[x]:
                    seen[x] = True
                    h[x] = hu + wb[beta[x]] - wa[alpha[x]]
                    comp.append(x)
        comp.sort()
        comps.append(comp)
    return comps, h


def _analyse(
    g: Graph,
    alpha: Sequence[int],
    beta: Sequence[int],
    comp: list[int],
    h: list[int],
    fixed_a: list[bool],
    fixed_b: list[bool],
    index: int | None = None,
) -> _Analysis:
    for v in comp:
        if fixed_a[v] != fixed_b[v] or (fixed_a[v] and alpha[v] != beta[v]):
            return _Analysis(comp, ConditionReport(False, True, v, index))

    adj = g.adj
    for v in comp:
        hv, wa, wb = h[v], _W[alpha[v]], _W[beta[v]]
        for x in adj[v]:
            if v < x and hv - h[x] + wb[beta[x]] != wa[alpha[x]]:
                return _Analysis(comp, ConditionReport(True, False, (v, x), index))
    report = ConditionReport(True, True, None, index)

    focal = next((v for v in comp if fixed_b[v]), None)
    focal_fixed = focal is not None
    if focal is None:
        order = sorted(comp, key=lambda v: (h[v], v))
        focal = order[(len(order) - 1) // 2]
    shift = h[focal]
    hs = {v: h[v] - shift for v in comp}

    if focal_fixed:
        offset = 0
        total = sum(map(abs, hs.values()))
    else:
        k1 = (2 * (alpha[focal] - beta[focal])) % 6
        k2 = k1 - 6 if k1 else 0
        j1 = sum(abs(k1 + x) for x in hs.values())
        j2 = sum(abs(k2 + x) for x in hs.values())
        offset, total = (k1, j1) if j1 <= j2 else (k2, j2)
    return _Analysis(comp, report, hs, focal, focal_fixed, offset, total // 2)


def _analyse_all(g: Graph, alpha: Sequence[int], beta: Sequence[int]) -> list[_Analysis]:
    _check3(g, alpha, beta)
    alpha, beta = tuple(alpha), tuple(beta)
    fa, fb = _fixed(g, alpha), _fixed(g, beta)
    comps, h = _forest_heights(g, alpha, beta)
    return [_analyse(g, alpha, beta, comp, h, fa, fb, i) for i, comp in enumerate(comps)]


def _component_analysis(g: Graph, alpha: Sequence[int], beta: Sequence[int], component: Sequence[int]) -> _Analysis:
    _check3(g, alpha, beta)
    alpha, beta = tuple(alpha), tuple(beta)
    comp = sorted(component)
    if not comp:
        raise ValueError("empty component")
    comps, h = _forest_heights(g, alpha, beta)
    if comp not in comps:
        raise ValueError("vertex set is not a connected component")
    return _analyse(g, alpha, beta, comp, h, _fixed(g, alpha), _fixed(g, beta))


def check_necessary_conditions(g: Graph, alpha: Sequence[int], beta: Sequence[int]) -> ConditionReport:
    """Both reachability conditions on every component; first failure wins."""
    for a in _analyse_all(g, alpha, beta):
        if not a.report.ok:
            return a.report
    return ConditionReport(True, True)


def focal_vertex(g: Graph, alpha: Sequence[int], beta: Sequence[int], component: Sequence[int]) -> int:
    """Smallest fixed vertex of the component, else the lower median by relative height.

    Falls back to the median rule even when the conditions fail, so the
    answer is always defined.
    """
    a = _component_analysis(g, alpha, beta, component)
    if a.focal is not None:
        return a.focal
    fb = _fixed(g, beta)
    fixed = [v for v in a.comp if fb[v]]
    if fixed:
        return fixed[0]
    tree = bfs_spanning_tree(g, a.comp[0])
    h = _heights(g, tree, alpha, beta)
    order = sorted(a.comp, key=lambda v: (h[v], v))
    return order[(len(order) - 1) // 2]


def min_total_height(g: Graph, alpha: Sequence[int], beta: Sequence[int], component: Sequence[int]) -> int:
    a = _component_analysis(g, alpha, beta, component)
    if a.distance is None:
        raise ConditionError(f"component {a.comp} fails the reachability conditions: {a.report}")
    return a.distance


def distance3(g: Graph, alpha: Sequence[int], beta: Sequence[int]) -> Distance3Result:
    parts = []
    for a in _analyse_all(g, alpha, beta):
        parts.append(
            ComponentResult(
                tuple(a.comp), a.distance is not None, a.distance, a.report, a.focal, a.focal_fixed, a.offset
            )
        )
    reachable = all(p.reachable for p in parts)
    total = sum(p.distance for p in parts) if reachable else None  # type: ignore[misc]
    return Distance3Result(reachable, total, parts)


def witness3(g: Graph, alpha: Sequence[int], beta: Sequence[int]) -> RecolouringSequence:
    """A shortest recolouring from ``alpha`` to ``beta``.

    Every vertex gets a target absolute height.  Repeatedly take the vertex
    furthest from its target (smallest index on ties).  If it sits above its
    target, walk a maximal path along which colours step up by one mod 3,
    otherwise one along which they step down, and recolour the path's end
    in the same direction; that moves the end two units toward its own
    target.  The path is kept between steps: every vertex on it shares the
    maximum deficit, so each is recoloured in turn.
    """
    analyses = _analyse_all(g, alpha, beta)
    target = [0] * g.n
    for a in analyses:
        if a.heights is None:
            raise ConditionError(f"component {a.comp} fails the reachability conditions: {a.report}")
        for v, x in a.heights.items():
            target[v] = a.offset + x  # type: ignore[operator]
    expected = sum(a.distance for a in analyses)  # type: ignore[misc]

    col = list(alpha)
    height = [0] * g.n
    adj = g.adj
    heap = [(-abs(t), v) for v, t in enumerate(target) if t]
    heapq.heapify(heap)
    steps: list[tuple[int, int]] = []
    path: list[int] = []
    on_path = [False] * g.n

    while True:
        if not path:
            while heap:
                key, x = heapq.heappop(heap)
                if -key == abs(target[x] - height[x]) and key:
                    break
            else:
                break
            path.append(x)
            on_path[x] = True
        top = path[-1]
        # deficit < 0: height must drop, so the colour must go up
        step = 1 if target[top] - height[top] < 0 else -1
        want = (col[top] + step - 1) % 3 + 1
        nxt = next((w for w in adj[top] if col[w] == want), None)
        if nxt is not None:
            if on_path[nxt]:
                raise ConditionError(f"path from {path[0]} closed a cycle at {nxt}")
            path.append(nxt)
            on_path[nxt] = True
            continue
        col[top] = want
        height[top] -= 2 * step
        steps.append((top, want))
        path.pop()
        on_path[top] = False
        d = target[top] - height[top]
        if d:
            heapq.heappush(heap, (-abs(d), top))
        if len(steps) > expected:
            raise ConditionError("witness construction overran the predicted length")

    if col != list(beta) or len(steps) != expected:
        raise ConditionError("witness construction did not reach the target colouring")
    return RecolouringSequence(tuple(steps))


def solve_small_k(inst: ReconfigInstance) -> SmallKResult:
    """k = 1: only the identity.  k = 2: a vertex with any neighbour is frozen."""
    g, a, b = inst.graph, inst.alpha, inst.beta
    if inst.k > 2:
        raise ValueError(f"solve_small_k handles k <= 2, got k={inst.k}")
    if any(a[v] != b[v] and g.adj[v] for v in range(g.n)):
        return SmallKResult(False, False, None, None)
    steps = tuple((v, b[v]) for v in range(g.n) if a[v] != b[v])
    return SmallKResult(len(steps) <= inst.ell, True, len(steps), RecolouringSequence(steps))
