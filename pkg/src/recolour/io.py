"""Line-oriented text formats. Vertices and elements are 1-based on disk.

Instance::

    p recolour <n> <m> <k> <ell>
    e <u> <v>            (m lines)
    a <v> <colour>       (one per vertex)
    b <v> <colour>       (one per vertex)

Witness: ``r <v> <colour>`` per step.  Hitting Set: ``h <n> <m> <p>`` then m
lines ``f <e1> <e2> ...``.  Role map: ``role <v> <label>``.  Blank lines and
``#`` comments are ignored everywhere.
"""

from __future__ import annotations

from collections.abc import Iterator, Mapping
from pathlib import Path

from .graph import ColouringError, Colouring, GraphError, ReconfigInstance, RecolouringSequence, new_graph
from .hardness import HittingSetError, HittingSetInstance


class FormatError(ValueError):
    def __init__(self, lineno: int | None, msg: str) -> None:
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


def _records(text: str) -> Iterator[tuple[int, list[str]]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(lineno: int, fields: list[str], count: int | None = None) -> list[int]:
    if count is not None and len(fields) != count:
        raise FormatError(lineno, f"expected {count} fields after '{fields and fields[0]}', got {len(fields)}")
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise FormatError(lineno, f"non-integer field in {' '.join(fields)!r}") from None


def parse_instance(text: str) -> ReconfigInstance:
    header = None
    edges: list[tuple[int, int]] = []
    colours: dict[str, dict[int, int]] = {"a": {}, "b": {}}
    for lineno, rec in _records(text):
        tag, rest = rec[0], rec[1:]
        if header is None:
            if tag != "p" or len(rest) != 5 or rest[0] != "recolour":
                raise FormatError(lineno, "expected header 'p recolour <n> <m> <k> <ell>'")
            n, m, k, ell = _ints(lineno, rest[1:], 4)
            if n < 0 or m < 0 or k < 1 or ell < 0:
                raise FormatError(lineno, "header values out of range")
            header = (n, m, k, ell)
            continue
        n, m, k, ell = header
        if tag == "p":
            raise FormatError(lineno, "duplicate header")
        elif tag == "e":
            u, v = _ints(lineno, rest, 2)
            if not (1 <= u <= n and 1 <= v <= n):
                raise FormatError(lineno, f"edge endpoint outside 1..{n}")
            if u == v:
                raise FormatError(lineno, f"self-loop at vertex {u}")
            edges.append((u - 1, v - 1))
        elif tag in colours:
            v, c = _ints(lineno, rest, 2)
            if not 1 <= v <= n:
                raise FormatError(lineno, f"vertex {v} outside 1..{n}")
            if not 1 <= c <= k:
                raise FormatError(lineno, f"colour {c} outside 1..{k}")
            if v - 1 in colours[tag]:
                raise FormatError(lineno, f"duplicate '{tag}' assignment for vertex {v}")
            colours[tag][v - 1] = c
        else:
            raise FormatError(lineno, f"unknown record type {tag!r}")
    if header is None:
        raise FormatError(None, "missing header")
    n, m, k, ell = header
    if len(edges) != m:
        raise FormatError(None, f"header declares {m} edges, found {len(edges)}")
    for tag, assigned in colours.items():
        missing = [v + 1 for v in range(n) if v not in assigned]
        if missing:
            raise FormatError(None, f"missing '{tag}' assignment for vertex {missing[0]}")
    try:
        g = new_graph(n, edges)
        alpha = Colouring.of((colours["a"][v] for v in range(n)), k)
        beta = Colouring.of((colours["b"][v] for v in range(n)), k)
        return ReconfigInstance(g, k, alpha, beta, ell)
    except (GraphError, ColouringError) as exc:
        raise FormatError(None, str(exc)) from exc


def format_instance(inst: ReconfigInstance, comment: str | None = None) -> str:
    g = inst.graph
    lines = [f"# {line}" for line in (comment or "").splitlines()]
    lines.append(f"p recolour {g.n} {g.m} {inst.k} {inst.ell}")
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    lines += [f"a {v + 1} {c}" for v, c in enumerate(inst.alpha)]
    lines += [f"b {v + 1} {c}" for v, c in enumerate(inst.beta)]
    return "\n".join(lines) + "\n"


def parse_witness(text: str, n: int | None = None, k: int | None = None) -> RecolouringSequence:
    steps = []
    for lineno, rec in _records(text):
        if rec[0] != "r":
            raise FormatError(lineno, f"expected 'r <v> <colour>', got {rec[0]!r}")
        v, c = _ints(lineno, rec[1:], 2)
        if v < 1 or (n is not None and v > n):
            raise FormatError(lineno, f"vertex {v} out of range")
        if c < 1 or (k is not None and c > k):
            raise FormatError(lineno, f"colour {c} out of range")
        steps.append((v - 1, c))
    return RecolouringSequence(tuple(steps))


def format_witness(seq: RecolouringSequence) -> str:
    return "".join(f"r {v + 1} {c}\n" for v, c in seq)


def parse_hitting_set(text: str) -> HittingSetInstance:
    header = None
    family: list[frozenset[int]] = []
    for lineno, rec in _records(text):
        tag, rest = rec[0], rec[1:]
        if header is None:
            if tag != "h":
                raise FormatError(lineno, "expected header 'h <n> <m> <p>'")
            header = _ints(lineno, rest, 3)
            if min(header) < 0:
                raise FormatError(lineno, "header values must be non-negative")
            continue
        if tag != "f":
            raise FormatError(lineno, f"unknown record type {tag!r}")
        elems = _ints(lineno, rest)
        if not elems:
            raise FormatError(lineno, "empty set")
        bad = [e for e in elems if not 1 <= e <= header[0]]
        if bad:
            raise FormatError(lineno, f"element {bad[0]} outside 1..{header[0]}")
        family.append(frozenset(elems))
    if header is None:
        raise FormatError(None, "missing header")
    n, m, p = header
    if len(family) != m:
        raise FormatError(None, f"header declares {m} sets, found {len(family)}")
    try:
        return HittingSetInstance(n, tuple(family), p)
    except HittingSetError as exc:
        raise FormatError(None, str(exc)) from exc


def format_hitting_set(hs: HittingSetInstance) -> str:
    lines = [f"h {hs.universe_size} {hs.m} {hs.budget}"]
    lines += ["f " + " ".join(str(e) for e in sorted(f)) for f in hs.family]
    return "\n".join(lines) + "\n"


def format_roles(roles: Mapping[int, str]) -> str:
    return "".join(f"role {v + 1} {label}\n" for v, label in sorted(roles.items()))


def parse_roles(text: str) -> dict[int, str]:
    roles = {}
    for lineno, rec in _records(text):
        if rec[0] != "role" or len(rec) != 3:
            raise FormatError(lineno, "expected 'role <v> <label>'")
        (v,) = _ints(lineno, rec[1:2], 1)
        roles[v - 1] = rec[2]
    return roles


def read_instance(path: str | Path) -> ReconfigInstance:
    return parse_instance(Path(path).read_text(encoding="utf-8"))


def write_instance(path: str | Path, inst: ReconfigInstance, comment: str | None = None) -> None:
    Path(path).write_text(format_instance(inst, comment), encoding="utf-8")
