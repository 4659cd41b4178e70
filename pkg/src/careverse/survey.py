"""Rule-space enumeration, boundary surveys and the tree-vs-table benchmark."""

from __future__ import annotations

import csv
import io
import json
import math
import random
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator, Optional

from .amoroso import decide_injective_table
from .decisions import decide
from .injectivity import decide_injective_global
from .memory import DEFAULT_BUDGET, MIB, MemoryBudgetExceeded, MemoryMeter
from .rules import Rule, RuleError, parse_boundary

ENUMERATION_LIMIT = 2 ** 24

# published counts of surjective p=2 rules: (m, boundary, count)
PUBLISHED_COUNTS = [
    (3, "null", 6),
    (3, "reflective", 2),
    (3, "periodic", 6),
    (4, "null", 34),
    (4, "fixed", 34),
    (4, "reflective", 2),
    (4, "periodic", 16),
]

CSV_FIELDS = ["m", "boundary", "property", "count", "total", "seconds"]


class EnumerationBudgetExceeded(RuntimeError):
    pass


def default_shape(m: int) -> tuple[int, int]:
    """Neighborhood radii used for surveys: ``1+1+1`` for m=3, ``1+1+2`` for m=4."""
    left = (m - 1) // 2
    return left, m - 1 - left


def alternating_fill(left: int, right: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Fills cut from ``...0101 | config | 1010...``."""
    head = tuple((left - i) % 2 for i in range(left))
    tail = tuple((i + 1) % 2 for i in range(right))
    return head, tail


def resolve_boundary(text: str, rule: Rule) -> str:
    if text == "fixed":
        head, tail = alternating_fill(rule.left, rule.right)
        return "fixed:" + "".join(map(str, head)) + ":" + "".join(map(str, tail))
    return text


def count_balanced(m: int, p: int = 2) -> int:
    size, share = p ** m, p ** (m - 1)
    return math.factorial(size) // math.factorial(share) ** p


def _balanced_tables(m: int, p: int) -> Iterator[tuple[int, ...]]:
    size = p ** m
    counts = [p ** (m - 1)] * p
    printed = [0] * size

    def fill(pos: int) -> Iterator[tuple[int, ...]]:
        if pos == size:
            yield tuple(reversed(printed))
            return
        for state in range(p):
            if counts[state]:
                counts[state] -= 1
                printed[pos] = state
                yield from fill(pos + 1)
                counts[state] += 1

    yield from fill(0)


def enumerate_rules(m: int, p: int = 2, balanced_only: bool = False,
                    left: Optional[int] = None) -> Iterator[Rule]:
    """Every rule (or every balanced rule) in ascending Wolfram-number order."""
    if left is None:
        left, right = default_shape(m)
    else:
        right = m - 1 - left
    if right < 0:
        raise RuleError(f"left radius {left} too large for m={m}")
    total = count_balanced(m, p) if balanced_only else p ** (p ** m)
    if total > ENUMERATION_LIMIT:
        raise EnumerationBudgetExceeded(f"{total} rules exceed the enumeration budget")
    if balanced_only:
        for table in _balanced_tables(m, p):
            yield Rule(p, left, right, table)
    else:
        for number in range(total):
            yield Rule.from_number(number, p, left, right)


def sample_balanced(m: int, count: int, seed: int, p: int = 2,
                    left: Optional[int] = None) -> list[Rule]:
    """Uniform balanced rules from a seeded shuffle of the output multiset."""
    if left is None:
        left, right = default_shape(m)
    else:
        right = m - 1 - left
    rng = random.Random(seed)
    outputs = [s for s in range(p) for _ in range(p ** (m - 1))]
    rules = []
    for _ in range(count):
        rng.shuffle(outputs)
        rules.append(Rule(p, left, right, tuple(outputs)))
    return rules


@dataclass
class SurveyRow:
    m: int
    boundary: str
    property: str
    count: int
    total: int
    seconds: float
    shape: tuple[int, int] = (0, 0)
    rules: list[int] = field(default_factory=list)

    def csv_row(self, timing: bool = True) -> dict:
        return {
            "m": self.m,
            "boundary": self.boundary,
            "property": self.property,
            "count": self.count,
            "total": self.total,
            "seconds": f"{self.seconds:.3f}" if timing else "",
        }


def _survey_chunk(args) -> list[int]:
    m, p, left, boundary, prop, short_circuit, numbers = args
    right = m - 1 - left
    hits = []
    for number in numbers:
        rule = Rule.from_number(number, p, left, right)
        verdict = decide(rule, prop, parse_boundary(resolve_boundary(boundary, rule), rule),
                         short_circuit=short_circuit)
        if verdict.holds:
            hits.append(number)
    return hits


def survey_counts(m: int, p: int = 2, boundary: str = "null", prop: str = "surjective",
                  left: Optional[int] = None, workers: int = 1,
                  short_circuit: bool = True) -> SurveyRow:
    """Count the rules of one neighborhood size with ``prop`` under ``boundary``.

    ``boundary`` uses the command-line grammar; ``fixed`` alone means the
    alternating fill.  The qualifying Wolfram numbers come back sorted.
    """
    if left is None:
        left = default_shape(m)[0]
    total = p ** (p ** m)
    if total > ENUMERATION_LIMIT:
        raise EnumerationBudgetExceeded(f"{total} rules exceed the enumeration budget")
    probe = Rule.from_number(0, p, left, m - 1 - left)
    label = resolve_boundary(boundary, probe)
    parse_boundary(label, probe)
    start = time.perf_counter()
    chunk = max(1, total // max(1, workers * 8))
    jobs = [(m, p, left, boundary, prop, short_circuit, range(lo, min(total, lo + chunk)))
            for lo in range(0, total, chunk)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_survey_chunk, jobs))
    else:
        parts = [_survey_chunk(job) for job in jobs]
    hits = sorted(n for part in parts for n in part)
    return SurveyRow(m, label, prop, len(hits), total, time.perf_counter() - start,
                     (left, m - 1 - left), hits)


def rows_to_csv(rows: Iterable[SurveyRow], timing: bool = True) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.csv_row(timing))
    return buffer.getvalue()


# -- benchmark --------------------------------------------------------------

@dataclass
class BenchRecord:
    m: int
    sample: int
    seed: int
    tree_mean_ms: Optional[float]
    tree_median_ms: Optional[float]
    table_mean_ms: Optional[float]
    table_median_ms: Optional[float]
    ratio: Optional[float]
    table_memory_failures: int
    tree_memory_failures: int
    timeouts: int
    disagreements: int
    injective: int
    mean_tuples: float
    mean_expanded: float
    memory_budget_mib: float

    def to_json(self, timing: bool = True) -> dict:
        out = asdict(self)
        if not timing:
            for key in ("tree_mean_ms", "tree_median_ms", "table_mean_ms",
                        "table_median_ms", "ratio"):
                out[key] = None
        return out


def _timed(fn, *args, **kwargs):
    start = time.perf_counter()
    result = fn(*args, **kwargs)
    return result, time.perf_counter() - start


def bench_compare(m: int, p: int = 2, sample: int = 100, seed: int = 0,
                  time_budget: Optional[float] = None,
                  memory_budget: int = DEFAULT_BUDGET, warmup: int = 10) -> BenchRecord:
    """Time the injectivity tree against the sequent table on random balanced rules.

    Each rule is decided from scratch by both algorithms.  Memory failures
    and rules skipped after ``time_budget`` seconds are counted, never raised.
    """
    rules = sample_balanced(m, sample, seed, p)
    for rule in sample_balanced(m, warmup, seed + 1, p):
        decide_injective_global(rule)
        try:
            decide_injective_table(rule, memory_budget=memory_budget)
        except MemoryBudgetExceeded:
            break
    tree_times, table_times = [], []
    tree_failures = table_failures = timeouts = disagreements = injective = 0
    tuples, expanded = [], []
    start = time.perf_counter()
    for rule in rules:
        if time_budget is not None and time.perf_counter() - start > time_budget:
            timeouts += 1
            continue
        try:
            tree, elapsed = _timed(decide_injective_global, rule, meter=MemoryMeter(memory_budget))
        except MemoryBudgetExceeded:
            tree_failures += 1
            tree = None
        else:
            tree_times.append(elapsed)
            tuples.append(tree.stats.get("tuples", 0))
            expanded.append(tree.stats.get("expanded", 0))
            injective += tree.holds
        try:
            table, elapsed = _timed(decide_injective_table, rule, memory_budget=memory_budget)
        except MemoryBudgetExceeded:
            table_failures += 1
            continue
        table_times.append(elapsed)
        if tree is not None and tree.holds != table.holds:
            disagreements += 1

    def ms(values, fn):
        return 1000 * fn(values) if values else None

    tree_mean = ms(tree_times, statistics.fmean)
    table_mean = ms(table_times, statistics.fmean)
    ratio = table_mean / tree_mean if tree_mean and table_mean else None
    return BenchRecord(
        m=m, sample=sample, seed=seed,
        tree_mean_ms=tree_mean, tree_median_ms=ms(tree_times, statistics.median),
        table_mean_ms=table_mean, table_median_ms=ms(table_times, statistics.median),
        ratio=ratio,
        table_memory_failures=table_failures, tree_memory_failures=tree_failures,
        timeouts=timeouts, disagreements=disagreements, injective=injective,
        mean_tuples=statistics.fmean(tuples) if tuples else 0.0,
        mean_expanded=statistics.fmean(expanded) if expanded else 0.0,
        memory_budget_mib=memory_budget / MIB,
    )


@dataclass
class NodeStats:
    m: int
    sample: int
    seed: int
    mean_tuples: float
    mean_expanded: float
    bound: int
    tuples: list[int] = field(default_factory=list)
    expanded: list[int] = field(default_factory=list)

    @property
    def below_bound(self) -> bool:
        return self.mean_tuples < self.bound

    def to_json(self) -> dict:
        out = asdict(self)
        del out["tuples"], out["expanded"]
        out["below_bound"] = self.below_bound
        return out


def node_stats(m: int, p: int = 2, sample: int = 1000, seed: int = 0,
               rules: Optional[list[Rule]] = None) -> NodeStats:
    """Tuples held by the injectivity tree when it stops, against ``2 * p**(2m-2)``."""
    if rules is None:
        rules = sample_balanced(m, sample, seed, p)
    tuples, expanded = [], []
    for rule in rules:
        verdict = decide_injective_global(rule)
        tuples.append(verdict.stats.get("tuples", 0))
        expanded.append(verdict.stats.get("expanded", 0))
    return NodeStats(m, len(rules), seed, statistics.fmean(tuples), statistics.fmean(expanded),
                     2 * p ** (2 * m - 2), tuples, expanded)


def records_to_jsonl(records: Iterable, timing: bool = True) -> str:
    lines = []
    for record in records:
        data = record.to_json(timing) if isinstance(record, BenchRecord) else record.to_json()
        lines.append(json.dumps(data, sort_keys=True))
    return "\n".join(lines) + "\n"
