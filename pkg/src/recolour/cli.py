"""``recolour`` command line front end.

Exit codes: 0 yes/accept/ok, 1 no/reject, 2 inconclusive, 3 error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .fpt import fpt_solve
from .graph import ColouringError, ReconfigInstance, RecolouringSequence, verify_recolouring
from .hardness import HittingSetError, generate, preprocess, vertex_count
from .io import (
    FormatError,
    format_instance,
    format_roles,
    format_witness,
    parse_hitting_set,
    parse_witness,
    read_instance,
)
from .oracle import DEFAULT_MAX_STATES, StateSpaceLimits, oracle_distance
from .solver3 import distance3, solve_small_k, witness3

SCHEMA = 1
EXIT = {"yes": 0, "no": 1, "inconclusive": 2}
EXIT_ERROR = 3
SOLVERS = ("exact-small-k", "solver3", "fpt", "oracle")


class CliError(Exception):
    pass


@dataclass
class RunReport:
    decision: str
    solver: str
    distance: int | None = None
    witness_path: str | None = None
    witness_length: int | None = None
    reason: str | None = None
    failing_step: int | None = None
    timings: dict[str, float] = field(default_factory=dict)
    schema: int = SCHEMA

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> RunReport:
        return cls(**json.loads(text))

    def summary(self) -> str:
        parts = [f"decision={self.decision}", f"solver={self.solver}"]
        if self.distance is not None:
            parts.append(f"distance={self.distance}")
        if self.witness_length is not None:
            parts.append(f"witness_length={self.witness_length}")
        if self.witness_path:
            parts.append(f"witness={self.witness_path}")
        if self.failing_step is not None:
            parts.append(f"step={self.failing_step}")
        if self.reason:
            parts.append(f"reason={self.reason!r}")
        return " ".join(parts)


class _Timer:
    def __init__(self) -> None:
        self.timings: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        t0 = time.perf_counter()
        try:
            yield
        finally:
            self.timings[name] = round((time.perf_counter() - t0) * 1000, 3)


def _load(path: str, timer: _Timer) -> ReconfigInstance:
    with timer.phase("parse"):
        return read_instance(path)


def _write_witness(path: str | None, seq: RecolouringSequence | None) -> str | None:
    if path is None or seq is None:
        return None
    Path(path).write_text(format_witness(seq), encoding="utf-8")
    return path


def pick_solver(k: int, forced: str | None) -> str:
    if forced is None:
        return "exact-small-k" if k <= 2 else "solver3" if k == 3 else "fpt"
    if forced == "solver3" and k != 3:
        raise CliError(f"solver3 needs k=3, instance has k={k}")
    if forced == "exact-small-k" and k > 2:
        raise CliError(f"exact-small-k needs k<=2, instance has k={k}")
    return forced


def run_oracle(inst: ReconfigInstance, max_states: int, timer: _Timer) -> tuple[RunReport, RecolouringSequence | None]:
    with timer.phase("oracle"):
        res = oracle_distance(inst, StateSpaceLimits(max_states))
    if res.distance is not None:
        decision = "yes" if res.distance <= inst.ell else "no"
        return RunReport(decision, "oracle", res.distance, witness_length=res.distance), res.witness
    if not res.state_capped:
        return RunReport("no", "oracle", reason="unreachable"), None
    return RunReport("inconclusive", "oracle", reason=f"state cap {max_states} reached"), None


def cmd_solve(args: argparse.Namespace) -> RunReport:
    timer = _Timer()
    inst = _load(args.instance, timer)
    solver = pick_solver(inst.k, args.force_solver)
    witness = None
    if solver == "exact-small-k":
        with timer.phase("solve"):
            res = solve_small_k(inst)
        report = RunReport("yes" if res.decision else "no", solver, res.distance)
        if not res.reachable:
            report.reason = "unreachable"
        witness = res.witness if res.decision else None
    elif solver == "solver3":
        with timer.phase("solve"):
            res3 = distance3(inst.graph, inst.alpha, inst.beta)
        if not res3.reachable:
            report = RunReport("no", solver, reason="unreachable")
        else:
            report = RunReport("yes" if res3.distance <= inst.ell else "no", solver, res3.distance)
            if report.decision == "yes" and args.witness:
                with timer.phase("witness"):
                    witness = witness3(inst.graph, inst.alpha, inst.beta)
    elif solver == "fpt":
        with timer.phase("solve"):
            out = fpt_solve(inst)
        report = RunReport("yes" if out.decision else "no", solver)
        witness = out.witness
    else:
        report, witness = run_oracle(inst, args.max_states, timer)
        if report.decision != "yes":
            witness = None

    if witness is not None:
        report.witness_length = len(witness)
        with timer.phase("verify"):
            check = verify_recolouring(inst.graph, inst.k, inst.alpha, inst.beta, witness)
        if not check.ok:
            raise CliError(f"internal error: {solver} produced an invalid witness ({check.reason})")
        report.witness_path = _write_witness(args.witness, witness)
    report.timings = timer.timings
    return report


def cmd_oracle(args: argparse.Namespace) -> RunReport:
    timer = _Timer()
    inst = _load(args.instance, timer)
    report, witness = run_oracle(inst, args.max_states, timer)
    if report.decision == "yes":
        report.witness_path = _write_witness(args.witness, witness)
    report.timings = timer.timings
    return report


def cmd_verify(args: argparse.Namespace) -> RunReport:
    timer = _Timer()
    inst = _load(args.instance, timer)
    with timer.phase("parse_witness"):
        seq = parse_witness(Path(args.witness_file).read_text(encoding="utf-8"), inst.graph.n)
    with timer.phase("verify"):
        check = verify_recolouring(inst.graph, inst.k, inst.alpha, inst.beta, seq)
    report = RunReport(
        "yes" if check.ok else "no",
        "verify",
        witness_length=len(seq),
        reason=check.reason,
        failing_step=check.step,
    )
    report.timings = timer.timings
    return report


def cmd_gen_hs(args: argparse.Namespace) -> dict:
    if args.k < 4:
        raise CliError(f"-k must be at least 4, got {args.k}")
    hs = parse_hitting_set(Path(args.hs_file).read_text(encoding="utf-8"))
    if not hs.family:
        raise CliError("empty family; nothing to reduce")
    if not args.no_preprocess:
        hs = preprocess(hs)
    gi = generate(hs, args.k)
    inst = gi.instance
    prefix = Path(args.out)
    inst_path = prefix.with_name(prefix.name + ".inst")
    roles_path = prefix.with_name(prefix.name + ".roles")
    comment = f"generated from {Path(args.hs_file).name}: n={hs.universe_size} m={hs.m} p={hs.budget} k={args.k}"
    inst_path.write_text(format_instance(inst, comment), encoding="utf-8")
    roles_path.write_text(format_roles(gi.roles), encoding="utf-8")
    assert inst.graph.n == vertex_count(hs, args.k)
    return {
        "schema": SCHEMA,
        "instance_path": str(inst_path),
        "roles_path": str(roles_path),
        "ell": inst.ell,
        "vertices": inst.graph.n,
        "edges": inst.graph.m,
        "universe_size": hs.universe_size,
        "sets": hs.m,
    }


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # keep exit 2 free for "inconclusive"
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    # SUPPRESS so a subcommand's default never clobbers a flag given before it
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="print a JSON report")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="reserved for random-instance helpers")

    p = _Parser(prog="recolour", description="Shortest recolouring between graph colourings.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", parents=[common], help="decide an instance with the solver matching its k")
    s.add_argument("instance")
    s.add_argument("--witness", metavar="PATH", help="write a witness here when the answer is yes")
    s.add_argument("--force-solver", choices=SOLVERS)
    s.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES, help="cap for --force-solver oracle")
    s.set_defaults(func=cmd_solve)

    o = sub.add_parser("oracle", parents=[common], help="brute-force BFS over the reconfiguration graph")
    o.add_argument("instance")
    o.add_argument("--max-states", type=int, default=DEFAULT_MAX_STATES)
    o.add_argument("--witness", metavar="PATH")
    o.set_defaults(func=cmd_oracle)

    g = sub.add_parser("gen-hs", parents=[common], help="generate a hard instance from a Hitting Set file")
    g.add_argument("hs_file")
    g.add_argument("-k", type=int, default=4)
    g.add_argument("--out", required=True, metavar="PREFIX", help="writes PREFIX.inst and PREFIX.roles")
    g.add_argument("--no-preprocess", action="store_true", help="skip element dedup and padding")
    g.set_defaults(func=cmd_gen_hs)

    v = sub.add_parser("verify", parents=[common], help="check a witness file against an instance")
    v.add_argument("instance")
    v.add_argument("witness_file")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    as_json = getattr(args, "json", False)
    try:
        result = args.func(args)
    except (CliError, FormatError, ColouringError, HittingSetError, OSError) as exc:
        print(f"recolour: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if isinstance(result, dict):
        if as_json:
            print(json.dumps(result, sort_keys=True))
        else:
            print(f"ell={result['ell']} |V|={result['vertices']} |E|={result['edges']}")
            print(f"wrote {result['instance_path']} and {result['roles_path']}")
        return 0
    print(result.to_json() if as_json else result.summary())
    return EXIT[result.decision]


if __name__ == "__main__":
    sys.exit(main())
