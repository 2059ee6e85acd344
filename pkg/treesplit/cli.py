"""
treesplit command-line interface.

Exit codes are a stable contract:
    0  split found (check: the edge is a cut edge; other commands: success)
    3  certified not splittable (check: the edge is not a cut edge)
    2  usage, parse, configuration or verification error
"""

import argparse
import json
import logging
import sys
import time
from pathlib import Path
from typing import List, Optional

import pandas as pd
from pydantic import ValidationError

from . import __version__
from .bench import BenchConfig, run_bench, tree_fingerprint
from .config import settings
from .errors import InvalidBenchConfig, TreeSplitError
from .generators import assign_weights, prufer_random_tree, wilson_spanning_tree
from .result_store import ResultStore
from .schemas import CheckRecord, ResultRecord, TraceRecord, WeightSpec
from .splitter import (
    START_STRATEGIES,
    CutResult,
    Descend,
    Found,
    Split,
    ToleranceWindow,
    choose_start,
    edge_split_weights,
    find_cut_edge,
    find_cut_edge_descent,
    improved_start,
    is_cut_edge,
    is_witness,
    oracle_find_all,
    verify_result,
)
from .tree import Edge, WeightedTree
from .treefile import format_half, format_scaled, parse_epsilon, read_tree, serialize_tree

logger = logging.getLogger("treesplit.cli")

EXIT_SPLIT = 0
EXIT_ERROR = 2
EXIT_NOT_SPLITTABLE = 3


def _start_arg(text: str):
    if text in START_STRATEGIES:
        return text
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"expected one of {', '.join(START_STRATEGIES)} or a vertex id, got {text!r}"
        )


def _csv_arg(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _emit(record, fmt: str, human: str) -> None:
    if fmt == "json":
        print(record.model_dump_json())
    else:
        print(human)


# --- split -------------------------------------------------------------------

def _trace_records(t: WeightedTree, result: CutResult) -> List[TraceRecord]:
    records = []
    d = t.scale_exponent
    for i, step in enumerate(result.trace, start=1):
        cls = step.classification
        if isinstance(cls, Found):
            records.append(TraceRecord(
                iteration=i, vertex=step.vertex, outcome="found",
                anchor=cls.edge.other(step.vertex), component_weight=format_scaled(cls.w_side, d),
            ))
        elif isinstance(cls, Descend):
            records.append(TraceRecord(
                iteration=i, vertex=step.vertex, outcome="descend",
                anchor=cls.next_vertex, component_weight=format_scaled(cls.component_weight, d),
            ))
        else:
            records.append(TraceRecord(iteration=i, vertex=step.vertex, outcome="not_splittable"))
    return records


def _describe_trace(records: List[TraceRecord]) -> List[str]:
    lines = []
    for r in records:
        if r.outcome == "found":
            lines.append(f"  {r.iteration}: vertex {r.vertex} -> cut edge to {r.anchor} (component {r.component_weight})")
        elif r.outcome == "descend":
            lines.append(f"  {r.iteration}: vertex {r.vertex} -> descend to {r.anchor} (component {r.component_weight})")
        else:
            lines.append(f"  {r.iteration}: vertex {r.vertex} -> every component below S/2 - epsilon")
    return lines


def cmd_split(args) -> int:
    tree = read_tree(args.input)
    d = tree.scale_exponent
    win = ToleranceWindow.for_tree(tree, parse_epsilon(args.epsilon, d))

    t0 = time.perf_counter()
    if args.method == "oracle":
        cuts = oracle_find_all(tree, win)
        iterations = tree.vertex_count - 1
        if cuts:
            start = None
            result = CutResult(Split(cuts[0], *edge_split_weights(tree, cuts[0])), ())
        else:
            # the oracle proves absence by exhaustion; the witness comes from the search
            start = improved_start(tree)
            result = find_cut_edge_descent(tree, win, start)
    else:
        start = choose_start(tree, args.start, args.seed)
        result = find_cut_edge(tree, win, args.method, start)
        iterations = result.iterations
    elapsed_ms = (time.perf_counter() - t0) * 1000

    if not verify_result(tree, win, result):
        raise TreeSplitError(f"{args.method} produced a result that fails verification")

    trace = _trace_records(tree, result) if args.trace and result.trace else None
    verdict = result.verdict
    common = dict(
        method=args.method, start=start, total=format_scaled(tree.total, d),
        epsilon=format_half(win.doubled_epsilon, d), scale=d,
        iterations=iterations, elapsed_ms=round(elapsed_ms, 3), trace=trace,
    )
    if isinstance(verdict, Split):
        record = ResultRecord(
            verdict="split", edge=verdict.edge.as_tuple(),
            side_weights=(format_scaled(verdict.w1, d), format_scaled(verdict.w2, d)),
            **common,
        )
        human = [
            f"split: edge ({verdict.edge.u}, {verdict.edge.v}), "
            f"sides {record.side_weights[0]} | {record.side_weights[1]} "
            f"(total {record.total}, epsilon {record.epsilon})"
        ]
        code = EXIT_SPLIT
    else:
        record = ResultRecord(verdict="not_splittable", witness=verdict.witness, **common)
        human = [
            f"not splittable: witness vertex {verdict.witness}, every component of T-{{{verdict.witness}}} "
            f"is below {format_half(tree.total - win.doubled_epsilon, d)} "
            f"(total {record.total}, epsilon {record.epsilon})"
        ]
        code = EXIT_NOT_SPLITTABLE
    human.append(f"method {args.method}, start {start}, {iterations} iteration(s), {record.elapsed_ms} ms")
    if trace:
        human.extend(_describe_trace(trace))

    logger.info(f"{args.input}: {record.verdict} via {args.method} in {iterations} iteration(s)")
    _emit(record, args.format, "\n".join(human))
    return code


# --- check -------------------------------------------------------------------

def cmd_check(args) -> int:
    tree = read_tree(args.input)
    d = tree.scale_exponent
    win = ToleranceWindow.for_tree(tree, parse_epsilon(args.epsilon, d))
    edge = args.edge
    ok = is_cut_edge(tree, edge, win)
    w1, w2 = edge_split_weights(tree, edge)
    canonical = Edge.of(*edge)
    record = CheckRecord(
        edge=canonical.as_tuple(), cut_edge=ok,
        side_weights=(format_scaled(w1, d), format_scaled(w2, d)),
        total=format_scaled(tree.total, d), epsilon=format_half(win.doubled_epsilon, d),
    )
    human = (
        f"edge ({canonical.u}, {canonical.v}) {'is' if ok else 'is not'} a cut edge: "
        f"sides {record.side_weights[0]} | {record.side_weights[1]}, "
        f"window [{format_half(tree.total - win.doubled_epsilon, d)}, "
        f"{format_half(tree.total + win.doubled_epsilon, d)}]"
    )
    _emit(record, args.format, human)
    return EXIT_SPLIT if ok else EXIT_NOT_SPLITTABLE


# --- gen ---------------------------------------------------------------------

def cmd_gen(args) -> int:
    spec = WeightSpec.parse(args.weights, seed=args.seed)
    if args.kind == "prufer":
        if args.n is None:
            raise InvalidBenchConfig("--kind prufer needs --n")
        if args.n < 1:
            raise InvalidBenchConfig(f"--n must be >= 1, got {args.n}")
        topology = prufer_random_tree(args.n, args.seed)
    else:
        if args.width < 1 or args.height < 1:
            raise InvalidBenchConfig(f"grid dimensions must be >= 1, got {args.width}x{args.height}")
        topology = wilson_spanning_tree(args.width, args.height, args.seed)
    if args.scale < 0:
        raise InvalidBenchConfig(f"--scale must be >= 0, got {args.scale}")
    text = serialize_tree(assign_weights(topology, spec, args.scale))

    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
        logger.info(f"Wrote {topology.vertex_count}-vertex tree ({spec.describe()}) to {args.output}")
    return EXIT_SPLIT


# --- bench -------------------------------------------------------------------

def _write_rows(instances: pd.DataFrame, path: str) -> None:
    suffix = Path(path).suffix.lower()
    if suffix == ".csv":
        instances.to_csv(path, index=False)
    elif suffix == ".parquet":
        instances.to_parquet(path, index=False)
    elif suffix == ".jsonl":
        instances.to_json(path, orient="records", lines=True)
    else:
        raise InvalidBenchConfig(f"--rows must end in .csv, .parquet or .jsonl, got {path!r}")


def cmd_bench(args) -> int:
    epsilon = args.epsilon
    if epsilon is None and args.epsilon_fraction is None:
        epsilon = "0"
    try:
        config = BenchConfig(
            source="file" if args.tree else args.kind,
            tree_path=args.tree,
            n=args.n if args.n is not None else 100,
            width=args.width,
            height=args.height,
            weights=args.weights,
            trials=args.trials,
            seed=args.seed,
            epsilon=epsilon,
            epsilon_fraction=args.epsilon_fraction,
            methods=tuple(args.methods),
            starts=tuple(args.starts),
            max_attempts=args.max_attempts if args.max_attempts is not None else settings.default_max_attempts,
        )
    except ValidationError as e:
        raise InvalidBenchConfig(str(e)) from e

    store = ResultStore(enabled=settings.store_enabled and not args.no_store)
    instances, summary, from_store = run_bench(config, store=store)
    if args.rows:
        _write_rows(instances, args.rows)

    if args.format == "json":
        for row in summary:
            print(row.model_dump_json())
    else:
        table = pd.DataFrame([row.model_dump() for row in summary])
        print(table.to_string(index=False, float_format=lambda x: f"{x:.3f}"))
        if from_store:
            print(f"(loaded from store {store.get_store_key(config, tree_fingerprint(config))})")
    return EXIT_SPLIT


# --- verify ------------------------------------------------------------------

def _verify_record(tree: WeightedTree, record: ResultRecord) -> Optional[str]:
    """None when the record holds for the tree, else the reason it does not."""
    d = tree.scale_exponent
    if record.scale != d:
        return f"record scale {record.scale} != file scale {d}"
    if record.total != format_scaled(tree.total, d):
        return f"record total {record.total} != file total {format_scaled(tree.total, d)}"
    win = ToleranceWindow.for_tree(tree, parse_epsilon(record.epsilon, d))
    if record.verdict == "split":
        if record.edge is None or not tree.has_edge(*record.edge):
            return f"edge {record.edge} is not in the tree"
        w1, w2 = edge_split_weights(tree, record.edge)
        if record.side_weights != (format_scaled(w1, d), format_scaled(w2, d)):
            return f"side weights {record.side_weights} do not match the tree"
        if not is_cut_edge(tree, record.edge, win):
            return f"edge {record.edge} is not a cut edge"
        return None
    if record.witness is None or not (0 <= record.witness < tree.vertex_count):
        return f"witness {record.witness} is not a vertex of the tree"
    if not is_witness(tree, record.witness, win):
        return f"vertex {record.witness} has a component of T-{{v}} at or above S/2 - epsilon"
    return None


def cmd_verify(args) -> int:
    tree = read_tree(args.input)
    try:
        text = sys.stdin.read() if args.record == "-" else Path(args.record).read_text(encoding="utf-8")
    except UnicodeDecodeError as e:
        raise TreeSplitError(f"cannot decode {args.record} as UTF-8: {e}") from e
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines:
        raise TreeSplitError("no records to verify")

    failures = 0
    for i, line in enumerate(lines, start=1):
        try:
            record = ResultRecord.model_validate_json(line)
        except ValidationError as e:
            raise TreeSplitError(f"record {i} is not a valid result record: {e}") from e
        reason = _verify_record(tree, record)
        if reason is None:
            print(f"record {i}: ok ({record.verdict})")
        else:
            failures += 1
            print(f"record {i}: FAILED: {reason}")
    return EXIT_SPLIT if failures == 0 else EXIT_ERROR


# --- store -------------------------------------------------------------------

def cmd_store(args) -> int:
    store = ResultStore()
    if args.action == "stats":
        print(json.dumps(store.get_stats()))
    else:
        print(json.dumps({"deleted": store.clear_store()}))
    return EXIT_SPLIT


# --- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="treesplit",
        description="Find a balanced cut edge in a vertex-weighted tree, or certify that none exists.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("split", help="find a cut edge or a witness vertex")
    p.add_argument("input", help="tree file")
    p.add_argument("--epsilon", default="0", help="tolerance (decimal, default 0)")
    p.add_argument("--start", type=_start_arg, default="improved",
                   help="improved (default), min-average, random, or a vertex id")
    p.add_argument("--method", choices=("descent", "literal", "oracle"), default="descent")
    p.add_argument("--seed", type=int, default=0, help="seed for --start random")
    p.add_argument("--trace", action="store_true", help="include the per-iteration classification log")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(handler=cmd_split)

    p = sub.add_parser("check", help="test whether one edge is a cut edge")
    p.add_argument("input", help="tree file")
    p.add_argument("--epsilon", default="0")
    p.add_argument("--edge", type=int, nargs=2, metavar=("U", "W"), required=True)
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(handler=cmd_check)

    p = sub.add_parser("gen", help="generate a random tree file")
    p.add_argument("--kind", choices=("prufer", "grid"), required=True)
    p.add_argument("--n", type=int, help="vertex count (prufer)")
    p.add_argument("--width", type=int, default=1, help="grid width")
    p.add_argument("--height", type=int, default=1, help="grid height")
    p.add_argument("--weights", default="const:1", help="const:<c> or uniform:<lo>:<hi> (scaled units)")
    p.add_argument("--scale", type=int, default=0, help="decimal scale of the written weights")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="output path (default stdout)")
    p.set_defaults(handler=cmd_gen)

    p = sub.add_parser("bench", help="compare descent, literal and random-edge sampling")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--tree", help="benchmark repeated trials of one tree file")
    source.add_argument("--kind", choices=("prufer", "grid"), help="generate one instance per trial")
    p.add_argument("--n", type=int)
    p.add_argument("--width", type=int, default=20)
    p.add_argument("--height", type=int, default=20)
    p.add_argument("--weights", default="const:1")
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--seed", type=int, default=0, help="instance i uses seed + i")
    eps = p.add_mutually_exclusive_group()
    eps.add_argument("--epsilon", help="absolute tolerance (default 0)")
    eps.add_argument("--epsilon-fraction", help="tolerance as a fraction of the total weight")
    p.add_argument("--methods", type=_csv_arg, default=["descent", "literal", "baseline"])
    p.add_argument("--starts", type=_csv_arg, default=["improved", "random"])
    p.add_argument("--max-attempts", type=int, help="baseline give-up threshold")
    p.add_argument("--rows", help="write per-instance rows (.csv, .parquet or .jsonl)")
    p.add_argument("--no-store", action="store_true", help="do not read or write the result store")
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(handler=cmd_bench)

    p = sub.add_parser("verify", help="re-verify result records against a tree file")
    p.add_argument("input", help="tree file")
    p.add_argument("record", help="file with one JSON result record per line, or - for stdin")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("store", help="inspect or clear stored benchmark tables")
    p.add_argument("action", choices=("stats", "clear"))
    p.set_defaults(handler=cmd_store)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except TreeSplitError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR
