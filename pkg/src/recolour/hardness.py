"""Hitting Set -> k-colouring reconfiguration instance generator.

Layout of the generated graph (0-based vertex ids, in this order):

    s, t, clique u_1..u_k, element vertices v_1..v_n,
    then one claw (a, b, c, d) per (set F, level x, position y)

Allowed colours are enforced only through adjacency to the clique, so the
output is an ordinary :class:`ReconfigInstance`.  Each set owns a complete
binary tree of claws of depth ``r = log2 n``; its leaves touch the element
vertices, and the root's ``d`` touches ``t``.  Swapping ``s`` and ``t``
needs ``t`` to pass through colour 4, which needs every tree root recoloured,
which in turn needs a hitting set of element vertices recoloured first.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .graph import Colouring, ReconfigInstance, RecolouringSequence, new_graph


class HittingSetError(ValueError):
    pass


@dataclass(frozen=True)
class HittingSetInstance:
    universe_size: int
    family: tuple[frozenset[int], ...]
    budget: int
    # processed element j (1-based) -> the original elements it stands for;
    # empty for padding, None when the instance was never preprocessed
    origin: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self) -> None:
        if self.universe_size < 0 or self.budget < 0:
            raise HittingSetError("universe size and budget must be non-negative")
        fam = tuple(frozenset(f) for f in self.family)
        object.__setattr__(self, "family", fam)
        for i, f in enumerate(fam):
            if not f:
                raise HittingSetError(f"set {i + 1} is empty")
            if not all(1 <= e <= self.universe_size for e in f):
                raise HittingSetError(f"set {i + 1} has elements outside 1..{self.universe_size}")

    @property
    def m(self) -> int:
        return len(self.family)

    def hits(self, chosen: Iterable[int]) -> bool:
        s = set(chosen)
        return all(f & s for f in self.family)

    def to_processed(self, elements: Iterable[int]) -> set[int]:
        """Map original element ids to the processed elements representing them."""
        if self.origin is None:
            return set(elements)
        rep = {o: j for j, group in enumerate(self.origin, start=1) for o in group}
        return {rep[e] for e in elements if e in rep}


def preprocess(hs: HittingSetInstance) -> HittingSetInstance:
    """Drop elements with a duplicate membership signature, pad to a power of two (>= 2)."""
    if not hs.family:
        raise HittingSetError("empty family; the reduction needs at least one set")
    groups: dict[frozenset[int], list[int]] = {}
    for e in range(1, hs.universe_size + 1):
        sig = frozenset(i for i, f in enumerate(hs.family) if e in f)
        groups.setdefault(sig, []).append(e)
    keep = [members[0] for members in groups.values()]
    n = 2
    while n < len(keep):
        n *= 2
    base = hs.origin
    origin: list[tuple[int, ...]] = []
    for members in groups.values():
        orig = [o for e in members for o in base[e - 1]] if base else members
        origin.append(tuple(sorted(orig)))
    origin += [()] * (n - len(keep))
    renum = {e: j for j, e in enumerate(keep, start=1)}
    # a dropped element shares its sets with a kept one, so no set empties
    family = tuple(frozenset(renum[e] for e in f if e in renum) for f in hs.family)
    return HittingSetInstance(n, family, hs.budget, tuple(origin))


def brute_force_hitting_set(hs: HittingSetInstance, max_subsets: int = 10**6) -> frozenset[int] | None:
    """Lexicographically least minimum hitting set of size <= budget, else None."""
    n = hs.universe_size
    limit = min(hs.budget, n)
    total = sum(comb(n, s) for s in range(limit + 1))
    if total > max_subsets:
        raise HittingSetError(f"{total} subsets exceed the cap of {max_subsets}")
    for size in range(limit + 1):
        for cand in combinations(range(1, n + 1), size):
            if hs.hits(cand):
                return frozenset(cand)
    return None


@dataclass(frozen=True)
class GadgetInstance:
    instance: ReconfigInstance
    roles: dict[int, str]
    r: int
    hs: HittingSetInstance
    index: dict[str, int] = field(default_factory=dict)

    def vertex(self, label: str) -> int:
        return self.index[label]


def claw_label(part: str, f: int, x: int, y: int) -> str:
    """Role label of a claw vertex; ``f`` is the 1-based set index."""
    return f"{part}({f},{x},{y})"


def budget_for(hs: HittingSetInstance, r: int) -> int:
    return 3 + 2 * hs.budget + 2 * hs.m * 3 * r


def generate(hs: HittingSetInstance, k: int = 4) -> GadgetInstance:
    if k < 4:
        raise HittingSetError(f"the reduction needs k >= 4, got {k}")
    n = hs.universe_size
    if n < 2 or n & (n - 1):
        raise HittingSetError(f"universe size must be a power of two >= 2 (got {n}); run preprocess first")
    if not hs.family:
        raise HittingSetError("empty family")
    r = n.bit_length() - 1

    roles: dict[int, str] = {}
    alpha: list[int] = []
    beta: list[int] = []
    allowed: list[set[int]] = []

    def add(label: str, a: int, b: int, ok: set[int] | None) -> int:
        v = len(alpha)
        roles[v] = label
        alpha.append(a)
        beta.append(b)
        allowed.append(ok if ok is not None else set())
        return v

    s = add("s", 2, 3, {2, 3})
    t = add("t", 3, 2, {2, 3, 4})
    clique = [add(f"u{i}", i, i, None) for i in range(1, k + 1)]
    elem = [add(f"v{j}", 4, 4, {1, 4}) for j in range(1, n + 1)]

    edges: list[tuple[int, int]] = [(s, t)]
    edges += list(combinations(clique, 2))

    claws: dict[tuple[int, int, int], tuple[int, int, int, int]] = {}
    for fi, fset in enumerate(hs.family, start=1):
        for x in range(r):
            for y in range(1, 2**x + 1):
                a_ok, b_ok = {2, 4}, {3, 4}
                if x == r - 1:
                    if 2 * y - 1 not in fset:
                        a_ok = {2}
                    if 2 * y not in fset:
                        b_ok = {3}
                a = add(claw_label("a", fi, x, y), 2, 2, a_ok)
                b = add(claw_label("b", fi, x, y), 3, 3, b_ok)
                c = add(claw_label("c", fi, x, y), 1, 1, {1, 2, 3})
                d = add(claw_label("d", fi, x, y), 4, 4, {1, 4})
                claws[fi, x, y] = (a, b, c, d)
                edges += [(c, a), (c, b), (c, d)]
                if x == 0:
                    edges.append((d, t))
                elif y % 2:
                    edges.append((d, claws[fi, x - 1, (y + 1) // 2][0]))
                else:
                    edges.append((d, claws[fi, x - 1, y // 2][1]))
                if x == r - 1:
                    edges += [(a, elem[2 * y - 2]), (b, elem[2 * y - 1])]

    for v, ok in enumerate(allowed):
        if roles[v].startswith("u"):
            continue
        edges += [(v, clique[i - 1]) for i in range(1, k + 1) if i not in ok]

    g = new_graph(len(alpha), edges)
    inst = ReconfigInstance(g, k, Colouring.of(alpha, k), Colouring.of(beta, k), budget_for(hs, r))
    index = {label: v for v, label in roles.items()}
    return GadgetInstance(inst, roles, r, hs, index)


def constructive_witness(gi: GadgetInstance, hitting_set: Iterable[int]) -> RecolouringSequence:
    """Recolouring schedule that follows a hitting set through every claw tree.

    Select the element vertices, climb each set's tree from a hit leaf to its
    root, swap ``s`` and ``t`` via colour 4 on ``t``, then undo the climbs and
    the selection in reverse.
    """
    hs = gi.hs
    chosen = sorted(set(hitting_set))
    if any(not 1 <= j <= hs.universe_size for j in chosen):
        raise HittingSetError(f"hitting set {chosen} has elements outside 1..{hs.universe_size}")
    if len(chosen) > hs.budget:
        raise HittingSetError(f"hitting set of size {len(chosen)} exceeds budget {hs.budget}")
    if not hs.hits(chosen):
        raise HittingSetError(f"{chosen} does not hit every set")

    v = gi.vertex
    select = [(v(f"v{j}"), 1) for j in chosen]
    climb: list[tuple[int, int]] = []
    for fi, fset in enumerate(hs.family, start=1):
        j = min(fset.intersection(chosen))
        x, y = gi.r - 1, (j + 1) // 2
        part = "a" if j % 2 else "b"
        while x >= 0:
            climb.append((v(claw_label(part, fi, x, y)), 4))
            climb.append((v(claw_label("c", fi, x, y)), 2 if part == "a" else 3))
            climb.append((v(claw_label("d", fi, x, y)), 1))
            part = "a" if y % 2 else "b"
            x, y = x - 1, (y + 1) // 2
    swap = [(v("t"), 4), (v("s"), 3), (v("t"), 2)]

    alpha = gi.instance.alpha
    undo_climb = [(u, alpha[u]) for u, _ in reversed(climb)]
    undo_select = [(u, alpha[u]) for u, _ in reversed(select)]
    return RecolouringSequence(tuple(select + climb + swap + undo_climb + undo_select))


def vertex_count(hs: HittingSetInstance, k: int) -> int:
    n = hs.universe_size
    return 2 + k + n + 4 * hs.m * (n - 1)
