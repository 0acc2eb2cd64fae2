"""Command-line front end: parse, kernelize, solve, generate, verify.

Instance file format (1-based vertex indices)::

    p hs <n> <m> <d> <k>
    c optional comment lines
    <v1> <v2> ...            one line per edge, m lines total

Exit codes: 0 = kernel emitted on stdout, 10 = decided yes, 20 = decided no,
1 = usage or format error, 2 = internal consistency error. Kernel text
appears on stdout if and only if the exit code is 0.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .core import Instance, normalize
from .crown import format_crown
from .errors import (
    ContractError,
    FormatError,
    InternalConsistencyError,
    OracleCeilingError,
    UnsupportedParameterError,
)
from .lp import format_lp
from .oracle import GenSpec, decide_brute_force, generate
from .reductions import ReduceResult, RuleOutcome, kernelize, vertex_bound

EXIT_KERNEL = 0
EXIT_YES = 10
EXIT_NO = 20
EXIT_USAGE = 1
EXIT_INTERNAL = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); usage errors are exit 1
        raise _UsageError(message)


def parse_instance(text: str) -> Instance:
    """Parse an instance file; errors report the offending line number."""
    header: tuple[int, int, int, int] | None = None
    comments: list[str] = []
    edge_lines: list[tuple[int, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line[0] == "c":
            comments.append(line[1:].strip())
            continue
        if header is None:
            parts = line.split()
            if len(parts) != 6 or parts[0] != "p" or parts[1] != "hs":
                raise FormatError(f"line {lineno}: expected header 'p hs <n> <m> <d> <k>'")
            try:
                header = tuple(int(x) for x in parts[2:])  # type: ignore[assignment]
            except ValueError:
                raise FormatError(f"line {lineno}: non-integer field in header") from None
            continue
        edge_lines.append((lineno, line))
    if header is None:
        raise FormatError("missing 'p hs' header line")
    n, m, d, k = header
    if n < 0 or m < 0:
        raise FormatError("header counts must be non-negative")
    if len(edge_lines) != m:
        raise FormatError(f"expected {m} edge lines, found {len(edge_lines)}")
    edges: list[list[int]] = []
    for lineno, line in edge_lines:
        try:
            indices = [int(tok) for tok in line.split()]
        except ValueError:
            raise FormatError(f"line {lineno}: non-integer vertex index") from None
        for idx in indices:
            if not (1 <= idx <= n):
                raise FormatError(f"line {lineno}: vertex index {idx} outside 1..{n}")
        if len(set(indices)) > d:
            raise FormatError(
                f"line {lineno}: edge has {len(set(indices))} distinct vertices, bound is {d}"
            )
        edges.append(indices)
    inst = normalize(edges, d, k, labels=range(1, n + 1))
    return Instance(inst.hypergraph, inst.k, labels=inst.labels, comments=tuple(comments))


def write_instance(inst: Instance) -> str:
    """Canonical serialization: dense ids, lexicographically sorted edges,
    1-based indices. ``parse_instance(write_instance(x))`` is structurally
    identical to ``x`` and writing is idempotent."""
    lines = [f"p hs {inst.n} {inst.m} {inst.d} {inst.k}"]
    for comment in inst.comments:
        lines.append(f"c {comment}" if comment else "c")
    for edge in inst.edges:
        lines.append(" ".join(str(v + 1) for v in edge))
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class KernelReport:
    """Flat summary of one kernelization run (stable JSON keys)."""

    verdict: str
    d: int
    n_input: int
    m_input: int
    k_input: int
    k_override: bool
    n_final: int
    m_final: int
    k_final: int
    vertex_bound: int
    rule1_applications: int
    rule2_applications: int
    rule3_applications: int
    rule4_applications: int
    rule5_applications: int
    rule6_applications: int
    passes: int
    wall_time_s: float

    def __post_init__(self) -> None:
        if self.verdict == "kernel" and self.n_final > self.vertex_bound:
            raise InternalConsistencyError("kernel report violates the vertex bound")

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True)


def _build_report(
    original: Instance, result: ReduceResult, k_override: bool, wall: float
) -> KernelReport:
    counts = result.trace.rule_counts()
    final = result.instance
    return KernelReport(
        verdict=result.verdict,
        d=original.d,
        n_input=original.n,
        m_input=original.m,
        k_input=original.k,
        k_override=k_override,
        n_final=final.n,
        m_final=final.m,
        k_final=final.k,
        vertex_bound=vertex_bound(final.d, final.k),
        rule1_applications=counts[1],
        rule2_applications=counts[2],
        rule3_applications=counts[3],
        rule4_applications=counts[4],
        rule5_applications=counts[5],
        rule6_applications=counts[6],
        passes=len(result.trace.steps),
        wall_time_s=round(wall, 6),
    )


def _read_input(path: str | None) -> str:
    if path is None or path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _format_step(rule: int, outcome: RuleOutcome) -> str:
    s = outcome.step
    return (
        f"rule{rule}: -{s.vertices_removed} vertices, -{s.edges_removed}/+{s.edges_added} "
        f"edges, k{s.k_delta:+d}"
    )


def _cmd_kernelize(args: argparse.Namespace) -> int:
    parsed = parse_instance(_read_input(args.file))
    k_override = args.k is not None
    inst = parsed.with_k(args.k) if k_override else parsed

    def observer(rule: int, before: Instance, outcome: RuleOutcome) -> None:
        if args.trace:
            if outcome.verdict_no:
                print(f"rule{rule}: concluded no", file=sys.stderr)
            else:
                print(_format_step(rule, outcome), file=sys.stderr)
            if outcome.crown is not None:
                print(f"  {format_crown(outcome.crown)}", file=sys.stderr)
        if args.dump_lp and outcome.lp_problem is not None:
            print(format_lp(outcome.lp_problem), file=sys.stderr)

    start = time.perf_counter()
    result = kernelize(inst, observer=observer)
    wall = time.perf_counter() - start
    report = _build_report(parsed, result, k_override, wall)
    if args.report_json:
        with open(args.report_json, "w", encoding="utf-8") as handle:
            handle.write(report.to_json() + "\n")
    if result.verdict == "kernel":
        sys.stdout.write(write_instance(result.instance))
        return EXIT_KERNEL
    print(f"decided {result.verdict}", file=sys.stderr)
    return EXIT_YES if result.verdict == "yes" else EXIT_NO


def _cmd_solve(args: argparse.Namespace) -> int:
    inst = parse_instance(_read_input(args.file))
    answer = decide_brute_force(inst)
    print("yes" if answer else "no")
    return EXIT_YES if answer else EXIT_NO


def _cmd_gen(args: argparse.Namespace) -> int:
    spec = GenSpec(seed=args.seed, n=args.n, m=args.m, d=args.d, k=args.k, planted=args.plant)
    sys.stdout.write(write_instance(generate(spec)))
    return EXIT_KERNEL


def _run_trial(spec: GenSpec) -> tuple[GenSpec, bool, str]:
    inst = generate(spec)
    expected = decide_brute_force(inst)
    result = kernelize(inst)
    if result.verdict == "kernel":
        got = decide_brute_force(result.instance)
        description = f"kernel(n={result.instance.n}) -> {'yes' if got else 'no'}"
    else:
        got = result.verdict == "yes"
        description = f"verdict {result.verdict}"
    if expected != got:
        steps = "; ".join(
            f"rule{s.rule}(-{s.vertices_removed}v,-{s.edges_removed}/+{s.edges_added}e,"
            f"k{s.k_delta:+d})"
            for s in result.trace.steps
        )
        description += f" ORACLE {'yes' if expected else 'no'} trace[{steps}]"
    return (spec, expected == got, description)


def _cmd_verify(args: argparse.Namespace) -> int:
    master = random.Random(args.seed)
    specs = []
    for _ in range(args.trials):
        n = master.randint(max(args.d, 4), max(args.d, args.n))
        m = master.randint(1, max(2, 2 * n))
        k = master.randint(1, args.kmax)
        plant = master.choice((None, None, min(k, n)))
        specs.append(GenSpec(seed=master.getrandbits(63), n=n, m=m, d=args.d, k=k, planted=plant))
    with ThreadPoolExecutor(max_workers=4) as pool:
        outcomes = list(pool.map(_run_trial, specs))
    failures = [(spec, desc) for spec, ok, desc in outcomes if not ok]
    agree = len(outcomes) - len(failures)
    print(f"{agree}/{args.trials} agree")
    if failures:
        for spec, desc in failures:
            print(f"DISAGREE seed={spec.seed} spec={spec} kernelizer={desc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_KERNEL


def _build_parser() -> _Parser:
    parser = _Parser(prog="hskernel", description="d-hitting-set kernelization toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_kern = sub.add_parser("kernelize", help="reduce an instance to a kernel or a verdict")
    p_kern.add_argument("file", nargs="?", help="instance file (default: stdin)")
    p_kern.add_argument("--k", type=int, default=None, help="override the header budget")
    p_kern.add_argument("--trace", action="store_true", help="log rule applications to stderr")
    p_kern.add_argument("--report-json", metavar="PATH", help="write the run report as JSON")
    p_kern.add_argument("--dump-lp", action="store_true", help="dump each solved LP to stderr")
    p_kern.set_defaults(func=_cmd_kernelize)

    p_solve = sub.add_parser("solve", help="decide an instance exactly")
    p_solve.add_argument("file", nargs="?", help="instance file (default: stdin)")
    p_solve.set_defaults(func=_cmd_solve)

    p_gen = sub.add_parser("gen", help="generate a random instance")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--m", type=int, required=True)
    p_gen.add_argument("--d", type=int, required=True)
    p_gen.add_argument("--k", type=int, required=True)
    p_gen.add_argument("--plant", type=int, default=None)
    p_gen.set_defaults(func=_cmd_gen)

    p_verify = sub.add_parser("verify", help="differential test: kernelizer vs exact oracle")
    p_verify.add_argument("--trials", type=int, required=True)
    p_verify.add_argument("--seed", type=int, required=True)
    p_verify.add_argument("--n", type=int, required=True)
    p_verify.add_argument("--d", type=int, required=True)
    p_verify.add_argument("--kmax", type=int, required=True)
    p_verify.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (
        FormatError,
        UnsupportedParameterError,
        ContractError,
        OracleCeilingError,
        OSError,
        ValueError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalConsistencyError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


def entry() -> None:
    sys.exit(main())
