"""
Benchmark harness: descent vs literal search vs random-edge sampling.

Each instance i is built from seed base+i and evaluated independently, so
rows are reproducible no matter how instances are scheduled. While measuring,
the harness checks itself: descent and literal must agree on every instance
(same verdict kind, same trace vertices), and whenever the baseline finds an
edge the descent search must report a split.
"""

from __future__ import annotations

import asyncio
import hashlib
import logging
import time
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import List, Literal, Optional, Tuple

import pandas as pd
from pydantic import BaseModel, model_validator

from .baseline import FoundEdge, random_edge_baseline
from .config import settings
from .errors import BenchAgreementError, InvalidBenchConfig
from .generators import assign_weights, prufer_random_tree, wilson_spanning_tree
from .result_store import ResultStore, result_store
from .schemas import BenchInstanceRow, BenchSummaryRow, WeightSpec
from .splitter import (
    START_STRATEGIES,
    CutResult,
    ToleranceWindow,
    choose_start,
    find_cut_edge,
    find_cut_edge_descent,
    improved_start,
)
from .tree import WeightedTree, rescaled
from .treefile import parse_epsilon, read_tree, serialize_tree

logger = logging.getLogger("treesplit.bench")

BENCH_METHODS = ("descent", "literal", "baseline")


class BenchConfig(BaseModel):
    """Everything that determines a benchmark table (elapsed times aside)."""
    source: Literal["file", "prufer", "grid"]
    tree_path: Optional[str] = None
    n: int = 100
    width: int = 20
    height: int = 20
    weights: str = "const:1"
    trials: int = 1
    seed: int = 0
    epsilon: Optional[str] = None
    epsilon_fraction: Optional[str] = None
    methods: Tuple[str, ...] = BENCH_METHODS
    starts: Tuple[str, ...] = ("improved", "random")
    max_attempts: int = 1000

    @model_validator(mode="after")
    def _check(self):
        if self.trials < 1:
            raise ValueError(f"trials must be >= 1, got {self.trials}")
        if self.max_attempts < 1:
            raise ValueError(f"max_attempts must be >= 1, got {self.max_attempts}")
        if self.source == "file" and not self.tree_path:
            raise ValueError("source 'file' needs tree_path")
        if self.source == "prufer" and self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.source == "grid" and (self.width < 1 or self.height < 1):
            raise ValueError(f"grid dimensions must be >= 1, got {self.width}x{self.height}")
        if (self.epsilon is None) == (self.epsilon_fraction is None):
            raise ValueError("give exactly one of epsilon or epsilon_fraction")
        if not self.methods:
            raise ValueError("at least one method is required")
        for m in self.methods:
            if m not in BENCH_METHODS:
                raise ValueError(f"unknown method {m!r}; expected one of {BENCH_METHODS}")
        if not self.starts and any(m != "baseline" for m in self.methods):
            raise ValueError("descent and literal need at least one start strategy")
        for s in self.starts:
            if s not in START_STRATEGIES:
                raise ValueError(f"unknown start strategy {s!r}; expected one of {START_STRATEGIES}")
        return self


def window_for_fraction(t: WeightedTree, fraction: str) -> Tuple[WeightedTree, ToleranceWindow]:
    """
    Tolerance eps = fraction * S, made exact by rescaling the tree.

    The tree gains the fewest decimal digits for which 2*eps is an integer in
    its scaled units; verdicts are unchanged by rescaling.
    """
    try:
        value = Decimal(fraction.strip())
    except InvalidOperation as e:
        raise InvalidBenchConfig(f"not a decimal fraction: {fraction!r}") from e
    if not value.is_finite():
        raise InvalidBenchConfig(f"epsilon fraction must be finite, got {fraction!r}")
    f = Fraction(value)
    if f < 0:
        raise InvalidBenchConfig(f"epsilon fraction must be >= 0, got {fraction}")
    doubled = 2 * f * t.total
    extra = 0
    while (doubled * 10**extra).denominator != 1:
        extra += 1
    t = rescaled(t, extra)
    return t, ToleranceWindow(t.total, int(doubled * 10**extra))


def make_instance(config: BenchConfig, seed: int) -> WeightedTree:
    if config.source == "file":
        return read_tree(config.tree_path)
    spec = WeightSpec.parse(config.weights, seed=seed)
    if config.source == "prufer":
        topology = prufer_random_tree(config.n, seed)
    else:
        topology = wilson_spanning_tree(config.width, config.height, seed)
    return assign_weights(topology, spec)


def tree_fingerprint(config: BenchConfig) -> str:
    """md5 of the canonical tree text for file sources, empty for generated ones."""
    if config.source != "file":
        return ""
    return hashlib.md5(serialize_tree(read_tree(config.tree_path)).encode()).hexdigest()


def resolve_window(config: BenchConfig, t: WeightedTree) -> Tuple[WeightedTree, ToleranceWindow]:
    if config.epsilon is not None:
        return t, ToleranceWindow(t.total, parse_epsilon(config.epsilon, t.scale_exponent))
    return window_for_fraction(t, config.epsilon_fraction)


def _timed(fn, *args):
    t0 = time.perf_counter()
    result = fn(*args)
    return result, (time.perf_counter() - t0) * 1000


def run_instance(config: BenchConfig, index: int) -> List[BenchInstanceRow]:
    """Evaluate every configured method on instance `index`."""
    seed = config.seed + index
    tree, window = resolve_window(config, make_instance(config, seed))

    def row(method, start_strategy, start, verdict, steps, elapsed_ms):
        return BenchInstanceRow(
            instance=index, seed=seed, n=tree.vertex_count, total=tree.total,
            doubled_epsilon=window.doubled_epsilon, method=method,
            start_strategy=start_strategy, start=start, verdict=verdict,
            steps=steps, elapsed_ms=elapsed_ms,
        )

    rows: List[BenchInstanceRow] = []
    reference: Optional[CutResult] = None
    search_methods = [m for m in config.methods if m != "baseline"]

    for strategy in config.starts if search_methods else ():
        start = choose_start(tree, strategy, seed)
        results = {}
        for method in search_methods:
            result, ms = _timed(find_cut_edge, tree, window, method, start)
            results[method] = result
            verdict = "split" if result.is_split else "not_splittable"
            rows.append(row(method, strategy, start, verdict, result.iterations, ms))
        if len(results) == 2:
            d, lit = results["descent"], results["literal"]
            if d.is_split != lit.is_split or d.vertices != lit.vertices:
                raise BenchAgreementError(
                    f"instance {index} (seed {seed}, start {start}): descent and literal disagree"
                )
        if reference is None:
            reference = next(iter(results.values()))

    if "baseline" in config.methods:
        outcome, ms = _timed(random_edge_baseline, tree, window, config.max_attempts, seed)
        found = isinstance(outcome, FoundEdge)
        rows.append(row("baseline", "none", None, "found" if found else "gave_up", outcome.attempts, ms))
        if found:
            if reference is None:
                reference = find_cut_edge_descent(tree, window, improved_start(tree))
            if not reference.is_split:
                raise BenchAgreementError(
                    f"instance {index} (seed {seed}): baseline found {outcome.edge.as_tuple()} "
                    f"but the search reported not splittable"
                )
    return rows


async def run_bench_async(config: BenchConfig) -> pd.DataFrame:
    """Evaluate all instances in the default executor, bounded by settings.bench_workers."""
    semaphore = asyncio.Semaphore(max(1, settings.bench_workers))
    loop = asyncio.get_running_loop()

    async def run_one(index):
        async with semaphore:
            return await loop.run_in_executor(None, run_instance, config, index)

    # gather keeps instance order regardless of completion order
    results = await asyncio.gather(*(run_one(i) for i in range(config.trials)))
    df = pd.DataFrame([r.model_dump() for rows in results for r in rows])
    # baseline rows have no start vertex
    df["start"] = df["start"].astype("Int64")
    return df


def summarize(instances: pd.DataFrame) -> List[BenchSummaryRow]:
    df = instances.assign(
        split=instances["verdict"].eq("split"),
        not_splittable=instances["verdict"].eq("not_splittable"),
        found=instances["verdict"].eq("found"),
        gave_up=instances["verdict"].eq("gave_up"),
    )
    grouped = df.groupby(["method", "start_strategy"], sort=False).agg(
        instances=("instance", "size"),
        split=("split", "sum"),
        not_splittable=("not_splittable", "sum"),
        found=("found", "sum"),
        gave_up=("gave_up", "sum"),
        mean_steps=("steps", "mean"),
        median_steps=("steps", "median"),
        mean_ms=("elapsed_ms", "mean"),
        total_ms=("elapsed_ms", "sum"),
    ).reset_index()
    return [
        BenchSummaryRow(
            method=str(rec["method"]),
            start_strategy=str(rec["start_strategy"]),
            **{k: int(rec[k]) for k in ("instances", "split", "not_splittable", "found", "gave_up")},
            **{k: float(rec[k]) for k in ("mean_steps", "median_steps", "mean_ms", "total_ms")},
        )
        for rec in grouped.to_dict(orient="records")
    ]


def run_bench(
    config: BenchConfig,
    store: Optional[ResultStore] = None,
) -> Tuple[pd.DataFrame, List[BenchSummaryRow], bool]:
    """
    Run (or load) a benchmark.

    Returns:
        (instance rows, summary rows, from_store)
    """
    store = store or result_store
    fingerprint = tree_fingerprint(config)
    cached = store.check_store(config, fingerprint)
    if cached is not None:
        logger.info(f"Loaded {len(cached)} stored rows for {store.get_store_hash(config, fingerprint)}")
        return cached, summarize(cached), True

    t0 = time.perf_counter()
    instances = asyncio.run(run_bench_async(config))
    logger.info(
        f"Benchmarked {config.trials} instances with {', '.join(config.methods)} "
        f"in {time.perf_counter() - t0:.2f}s"
    )
    store.save_store(instances, config, fingerprint)
    return instances, summarize(instances), False
