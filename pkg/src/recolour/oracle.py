"""Brute-force breadth-first search over the k-colouring reconfiguration graph.

Intentionally naive: it is the ground truth the real solvers are checked
against, so it only ever does the obvious thing.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator, Sequence
from dataclasses import dataclass

from .graph import Graph, ReconfigInstance, RecolouringSequence

DEFAULT_MAX_STATES = 10**7


class StateLimitExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class StateSpaceLimits:
    max_states: int = DEFAULT_MAX_STATES
    max_depth: int | None = None

    def __post_init__(self) -> None:
        if self.max_states < 1:
            raise ValueError("max_states must be >= 1")
        if self.max_depth is not None and self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")


@dataclass(frozen=True)
class OracleResult:
    distance: int | None
    witness: RecolouringSequence | None
    exhausted: bool
    # True when the state cap stopped the search; a depth cut alone leaves it False
    state_capped: bool = False

    @property
    def reachable(self) -> bool | None:
        """True/False when decided, None when the search was cut short."""
        if self.distance is not None:
            return True
        return False if self.exhausted else None


def _moves(g: Graph, k: int, state: bytes) -> Iterator[tuple[int, int]]:
    # vertices ascending, colours ascending
    for v in range(g.n):
        cv = state[v]
        blocked = {state[w] for w in g.adj[v]}
        for c in range(1, k + 1):
            if c != cv and c not in blocked:
                yield v, c


def _step(state: bytes, v: int, c: int) -> bytes:
    return state[:v] + bytes((c,)) + state[v + 1 :]


def _bfs(
    g: Graph,
    k: int,
    start: Sequence[int],
    limits: StateSpaceLimits,
    target: bytes | None = None,
) -> tuple[dict[bytes, tuple[bytes | None, int, int, int]], bool]:
    """Return ``(parents, exhausted)``.

    ``parents`` maps each discovered state to ``(prev, v, c, depth)``.  When
    ``target`` is discovered the search stops early with ``exhausted=False``.
    """
    root = bytes(start)
    parents: dict[bytes, tuple[bytes | None, int, int, int]] = {root: (None, -1, -1, 0)}
    if root == target:
        return parents, False
    queue = deque([root])
    depth_capped = False
    while queue:
        state = queue.popleft()
        depth = parents[state][3]
        if limits.max_depth is not None and depth >= limits.max_depth:
            depth_capped = True
            continue
        for v, c in _moves(g, k, state):
            nxt = _step(state, v, c)
            if nxt in parents:
                continue
            if len(parents) >= limits.max_states:
                raise StateLimitExceeded(f"more than {limits.max_states} states")
            parents[nxt] = (state, v, c, depth + 1)
            if nxt == target:
                return parents, False
            queue.append(nxt)
    return parents, not depth_capped


def _trace(parents: dict[bytes, tuple[bytes | None, int, int, int]], state: bytes) -> RecolouringSequence:
    steps = []
    while True:
        prev, v, c, _ = parents[state]
        if prev is None:
            break
        steps.append((v, c))
        state = prev
    steps.reverse()
    return RecolouringSequence(tuple(steps))


def oracle_distance(inst: ReconfigInstance, limits: StateSpaceLimits | None = None) -> OracleResult:
    limits = limits or StateSpaceLimits()
    target = bytes(inst.beta)
    try:
        parents, exhausted = _bfs(inst.graph, inst.k, inst.alpha, limits, target)
    except StateLimitExceeded:
        return OracleResult(None, None, False, state_capped=True)
    if target in parents:
        witness = _trace(parents, target)
        return OracleResult(len(witness), witness, exhausted)
    return OracleResult(None, None, exhausted)


def oracle_distances(
    g: Graph, k: int, start: Sequence[int], limits: StateSpaceLimits | None = None
) -> dict[tuple[int, ...], int]:
    """Exact distance from ``start`` to every colouring in its component.

    Raises :class:`StateLimitExceeded` if the component does not fit.
    """
    parents, _ = _bfs(g, k, start, limits or StateSpaceLimits())
    return {tuple(s): rec[3] for s, rec in parents.items()}


def oracle_shortest_paths(
    g: Graph, k: int, start: Sequence[int], limits: StateSpaceLimits | None = None
) -> dict[tuple[int, ...], RecolouringSequence]:
    """A shortest witness from ``start`` to every colouring in its component."""
    parents, _ = _bfs(g, k, start, limits or StateSpaceLimits())
    return {tuple(s): _trace(parents, s) for s in parents}


def oracle_component(inst: ReconfigInstance, limits: StateSpaceLimits | None = None) -> list[tuple[int, ...]]:
    """All colourings reachable from ``inst.alpha``, in BFS discovery order."""
    limits = limits or StateSpaceLimits()
    if limits.max_depth is not None:
        limits = StateSpaceLimits(limits.max_states)
    parents, _ = _bfs(inst.graph, inst.k, inst.alpha, limits)
    return [tuple(s) for s in parents]


def oracle_fixed_vertices(
    g: Graph, c: Sequence[int], limits: StateSpaceLimits | None = None, k: int = 3
) -> set[int]:
    limits = limits or StateSpaceLimits()
    parents, _ = _bfs(g, k, c, StateSpaceLimits(limits.max_states))
    fixed = set(range(g.n))
    for state in parents:
        fixed -= {v for v in list(fixed) if state[v] != c[v]}
        if not fixed:
            break
    return fixed
