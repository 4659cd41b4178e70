"""Baseline deciders: the sequent-table injectivity test and the m-tuple surjectivity tree.

Both are kept deliberately close to their textbook form so they can serve
as comparators for the tree algorithms.  The table test works on boxes, one
per unordered pair of distinct ``m``-tuples with the same image; a box's
sequent sets are the boxes reached by extending both tuples one cell to the
right with equal output.
"""

from __future__ import annotations

import random
import sys
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .memory import DEFAULT_BUDGET, MemoryBudgetExceeded, MemoryMeter, int_bytes
from .rules import Boundary, Rule, is_balanced
from .surjectivity import subset_search
from .verdict import INJECTIVE, SURJECTIVE, GardenOfEden, Verdict

__all__ = [
    "ClassPartition",
    "SequentTable",
    "MemoryBudgetExceeded",
    "build_partition",
    "build_sequent_table",
    "delete_crossed_out",
    "assign_weights",
    "decide_injective_table",
    "decide_surjective_unsimplified",
]

_MEASURE_EVERY = 1 << 14


@dataclass
class ClassPartition:
    p: int
    m: int
    classes: list[list[int]]

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes]


@dataclass
class SequentTable:
    rule: Rule
    first: list[int] = field(default_factory=list)
    second: list[int] = field(default_factory=list)
    merged: bytearray = field(default_factory=bytearray)  # the cross-marked boxes
    sequents: list[tuple[int, ...]] = field(default_factory=list)
    crossed: bytearray = field(default_factory=bytearray)
    self_sequent: Optional[int] = None

    def __len__(self) -> int:
        return len(self.first)

    def live(self) -> list[int]:
        return [i for i in range(len(self)) if not self.crossed[i]]


def build_partition(rule: Rule) -> ClassPartition:
    """Group every m-tuple by its output state."""
    classes: list[list[int]] = [[] for _ in range(rule.p)]
    for t, b in enumerate(rule.table):
        classes[b].append(t)
    return ClassPartition(rule.p, rule.m, classes)


class _Measured:
    """Charges the growth of long-lived containers to the meter."""

    def __init__(self, meter: MemoryMeter, *containers):
        self.meter = meter
        self.containers = containers
        self.charged = 0

    def update(self) -> None:
        size = sum(sys.getsizeof(c) for c in self.containers)
        if size > self.charged:
            self.meter.charge(size - self.charged)
            self.charged = size


def build_sequent_table(rule: Rule, meter: Optional[MemoryMeter] = None) -> SequentTable:
    """Boxes, cross marks and right sequent sets for every box.

    The whole table is built even when a self-sequent box turns up; the first
    such box is recorded in ``self_sequent``.
    """
    meter = meter or MemoryMeter(budget=1 << 62)
    p, m, table = rule.p, rule.m, rule.table
    n_tuples = p ** m
    size = p ** (m - 1)
    partition = build_partition(rule)
    sequent_table = SequentTable(rule)
    first, second = sequent_table.first, sequent_table.second
    box_of: dict[int, int] = {}
    tracked = _Measured(meter, box_of, first, second)
    for members in partition.classes:
        for i, alpha in enumerate(members):
            for beta in members[i + 1:]:
                box_of[alpha * n_tuples + beta] = len(first)
                first.append(alpha)
                second.append(beta)
                if len(first) % _MEASURE_EVERY == 0:
                    meter.charge(int_bytes(_MEASURE_EVERY))
                    tracked.update()
    tracked.update()

    merged = sequent_table.merged
    sequents = sequent_table.sequents
    step_cost = sys.getsizeof(()) + int_bytes(0)
    for box in range(len(first)):
        ra, rb = first[box] % size, second[box] % size
        merged.append(ra == rb)
        found = set()
        for j in range(p):
            a2 = ra * p + j
            out = table[a2]
            for k in range(p):
                b2 = rb * p + k
                if a2 == b2 or table[b2] != out:
                    continue
                lo, hi = (a2, b2) if a2 < b2 else (b2, a2)
                found.add(box_of[lo * n_tuples + hi])
        links = tuple(sorted(found))
        sequents.append(links)
        meter.charge(step_cost + sys.getsizeof(links) + 8)
        if box in found and sequent_table.self_sequent is None:
            sequent_table.self_sequent = box
    sequent_table.crossed = bytearray(
        0 if (merged[i] or sequents[i]) else 1 for i in range(len(first))
    )
    meter.charge(len(first))
    return sequent_table


def _citers(sequent_table: SequentTable, meter: MemoryMeter) -> list[list[int]]:
    citers: list[list[int]] = [[] for _ in range(len(sequent_table))]
    for box, links in enumerate(sequent_table.sequents):
        for target in links:
            citers[target].append(box)
    meter.charge(sum(sys.getsizeof(c) for c in citers) + 8 * len(citers))
    return citers


def delete_crossed_out(sequent_table: SequentTable, meter: Optional[MemoryMeter] = None,
                       naive: bool = False, rng: Optional[random.Random] = None) -> None:
    """Iteratively cross out boxes whose sequent sets are all crossed out.

    The default worklist follows a reverse index from each box to the boxes
    citing it.  ``naive`` rescans the whole table until nothing changes.
    ``rng`` shuffles the worklist order (the fixed point does not depend on it).
    """
    crossed, merged, sequents = sequent_table.crossed, sequent_table.merged, sequent_table.sequents
    if naive:
        changed = True
        while changed:
            changed = False
            for box in range(len(sequent_table)):
                if crossed[box] or merged[box]:
                    continue
                if all(crossed[t] for t in sequents[box]):
                    crossed[box] = 1
                    changed = True
        return
    meter = meter or MemoryMeter(budget=1 << 62)
    citers = _citers(sequent_table, meter)
    remaining = [len(links) for links in sequents]
    work = [box for box in range(len(sequent_table)) if crossed[box]]
    if rng is not None:
        rng.shuffle(work)
    while work:
        box = work.pop(rng.randrange(len(work))) if rng is not None else work.pop()
        for citer in citers[box]:
            remaining[citer] -= 1
            if remaining[citer] == 0 and not merged[citer] and not crossed[citer]:
                crossed[citer] = 1
                work.append(citer)


def assign_weights(sequent_table: SequentTable) -> list[Optional[int]]:
    """Weight 0 for cross-marked boxes, else 1 + the maximum over live sequent sets.

    Boxes on or leading into a cycle of sequent sets stay unassigned (None).
    """
    crossed, merged, sequents = sequent_table.crossed, sequent_table.merged, sequent_table.sequents
    count = len(sequent_table)
    weight: list[Optional[int]] = [None] * count
    pending = [0] * count
    citers: list[list[int]] = [[] for _ in range(count)]
    ready = deque()
    for box in range(count):
        if crossed[box]:
            continue
        if merged[box]:
            weight[box] = 0
            ready.append(box)
            continue
        live = [t for t in sequents[box] if not crossed[t]]
        pending[box] = len(live)
        for t in live:
            citers[t].append(box)
    best = [0] * count
    while ready:
        box = ready.popleft()
        for citer in citers[box]:
            if weight[box] > best[citer]:
                best[citer] = weight[box]
            pending[citer] -= 1
            if pending[citer] == 0:
                weight[citer] = 1 + best[citer]
                ready.append(citer)
    return weight


def decide_injective_table(rule: Rule, memory_budget: int = DEFAULT_BUDGET,
                           naive: bool = False,
                           rng: Optional[random.Random] = None) -> Verdict:
    """Six-step table test for global injectivity of a balanced rule.

    Raises :class:`MemoryBudgetExceeded` when the table outgrows
    ``memory_budget`` bytes.
    """
    boundary = Boundary.unbounded()
    if not is_balanced(rule):
        return Verdict(rule, INJECTIVE, boundary, False, note="unbalanced")
    if rule.m == 1:
        return Verdict(rule, INJECTIVE, boundary, True)
    meter = MemoryMeter(memory_budget)
    sequent_table = build_sequent_table(rule, meter)
    stats = {"boxes": len(sequent_table), "bytes": meter.peak}
    if sequent_table.self_sequent is not None:
        return Verdict(rule, INJECTIVE, boundary, False, stats=stats, note="self-sequent box")
    delete_crossed_out(sequent_table, meter, naive=naive, rng=rng)
    weights = assign_weights(sequent_table)
    live = sequent_table.live()
    stats["live"] = len(live)
    stats["bytes"] = meter.peak
    if any(weights[box] is None for box in live):
        return Verdict(rule, INJECTIVE, boundary, False, stats=stats, note="unassigned box")
    prefix = rule.p
    for box in live:
        if sequent_table.first[box] // prefix == sequent_table.second[box] // prefix:
            return Verdict(rule, INJECTIVE, boundary, False, stats=stats,
                           note="live box with equal left part")
    return Verdict(rule, INJECTIVE, boundary, True, stats=stats)


def decide_surjective_unsimplified(rule: Rule) -> Verdict:
    """The original surjectivity tree whose nodes hold full m-cell tuples."""
    boundary = Boundary.unbounded()
    root = (1 << rule.p ** rule.m) - 1
    node, stats = subset_search(rule, rule.m, root, lambda s: s == 0, check_from=0)
    if node is None:
        return Verdict(rule, SURJECTIVE, boundary, True, stats=stats)
    return Verdict(rule, SURJECTIVE, boundary, False, GardenOfEden(node.path()), stats=stats)
