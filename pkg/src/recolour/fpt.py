"""Bounded search for k >= 4, parameterised by the budget ``ell``.

Only vertices in a small candidate set can appear in a minimum-length
recolouring, so the search branches over (candidate vertex, colour) pairs.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .graph import Graph, ReconfigInstance, RecolouringSequence


@dataclass(frozen=True)
class CandidateSet:
    layers: tuple[frozenset[int], ...]
    union: frozenset[int]

    def __contains__(self, v: int) -> bool:
        return v in self.union

    def __len__(self) -> int:
        return len(self.union)


@dataclass(frozen=True)
class FptOutcome:
    decision: bool
    witness: RecolouringSequence | None
    explored: int
    candidates: CandidateSet | None = None


def disagreement_set(alpha: Sequence[int], beta: Sequence[int]) -> set[int]:
    if len(alpha) != len(beta):
        raise ValueError("colourings have different lengths")
    return {v for v, (a, b) in enumerate(zip(alpha, beta)) if a != b}


def compute_candidate_set(
    g: Graph, alpha: Sequence[int], beta: Sequence[int], ell: int, k: int | None = None
) -> CandidateSet:
    """Layers ``A_0 .. A_{ell-1}``.

    ``A_0`` is the disagreement set; a neighbour ``v`` of some ``u`` in the
    previous layer joins the next one when at most ``ell`` neighbours of ``u``
    share ``v``'s start colour.  ``k`` only matters for the size bound and is
    accepted for symmetry with the other solvers.
    """
    if ell <= 0:
        return CandidateSet((), frozenset())
    layers = [frozenset(disagreement_set(alpha, beta))]
    for _ in range(1, ell):
        nxt: set[int] = set()
        for u in layers[-1]:
            classes: dict[int, list[int]] = {}
            for w in g.adj[u]:
                classes.setdefault(alpha[w], []).append(w)
            for members in classes.values():
                if len(members) <= ell:
                    nxt.update(members)
        layers.append(frozenset(nxt))
    return CandidateSet(tuple(layers), frozenset().union(*layers))


def candidate_bound(k: int, ell: int) -> int:
    return ell * (k * ell) ** ell


def fpt_solve(inst: ReconfigInstance) -> FptOutcome:
    """Depth-first search for a recolouring of length <= ell.

    Moves are tried vertex-ascending then colour-ascending and only kept when
    the colouring stays proper.  Prunes: recolouring a vertex to its current
    colour, immediately undoing the previous move, more disagreeing vertices
    than budget left, and revisiting a colouring with no more budget than the
    last visit had.
    """
    g, k, ell = inst.graph, inst.k, inst.ell
    alpha, beta = list(inst.alpha), list(inst.beta)
    if alpha == beta:
        return FptOutcome(True, RecolouringSequence(), 1, compute_candidate_set(g, alpha, beta, ell, k))
    cands = compute_candidate_set(g, alpha, beta, ell, k)
    if len(disagreement_set(alpha, beta)) > ell:
        return FptOutcome(False, None, 0, cands)

    order = sorted(cands.union)
    adj = g.adj
    cur = list(alpha)
    mismatch = sum(1 for a, b in zip(alpha, beta) if a != b)
    best_left: dict[tuple[int, ...], int] = {}
    steps: list[tuple[int, int]] = []
    explored = 0

    def dfs(left: int, last_v: int, last_from: int) -> bool:
        nonlocal explored, mismatch
        explored += 1
        if mismatch == 0:
            return True
        if mismatch > left:
            return False
        key = tuple(cur)
        if best_left.get(key, -1) >= left:
            return False
        best_left[key] = left
        for v in order:
            cv = cur[v]
            blocked = {cur[w] for w in adj[v]}
            for c in range(1, k + 1):
                if c == cv or c in blocked or (v == last_v and c == last_from):
                    continue
                delta = (c != beta[v]) - (cv != beta[v])
                cur[v] = c
                mismatch += delta
                steps.append((v, c))
                if dfs(left - 1, v, cv):
                    return True
                steps.pop()
                mismatch -= delta
                cur[v] = cv
        return False

    found = dfs(ell, -1, -1)
    witness = RecolouringSequence(tuple(steps)) if found else None
    return FptOutcome(found, witness, explored, cands)


def prefix_disagreement_check(alpha: Sequence[int], seq: RecolouringSequence) -> bool:
    """At every prefix length q, at most q vertices differ from ``alpha``."""
    return all(
        sum(1 for a, x in zip(alpha, col) if a != x) <= q for q, col in enumerate(seq.colourings(alpha))
    )
