"""Injectivity tree over pairs (initial window, current window).

Each member of a node records the first and the last ``m-1`` cells of a
predecessor of the path word.  A member whose two halves agree closes into a
cycle, so two such members in one node are two distinct periodic
configurations with the same image.  Pair tuples are packed as
``initial * p**(m-1) + current``; node sets are frozensets of those codes.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .memory import MemoryMeter, set_bytes
from .oracle import oracle_injective_bounded
from .rules import (
    FIXED,
    PERIODIC,
    REFLECTIVE,
    UNBOUNDED,
    Boundary,
    Rule,
    RuleError,
    Word,
    apply_global,
    index_word,
    is_balanced,
    local_image,
)
from .surjectivity import decide_surjective_fixed, decide_surjective_reflective
from .verdict import (
    INJECTIVE,
    SURJECTIVE,
    CollidingPair,
    GardenOfEden,
    PeriodicWitness,
    ReplaceableWitness,
    Verdict,
)

EMPTY = "empty"
PERIODIC_PAIR = "periodic"
EXHAUSTED = "exhausted"


@dataclass
class PairNode:
    members: frozenset
    parent: Optional["PairNode"] = None
    label: Optional[int] = None
    depth: int = 0
    periodic: tuple[int, ...] = ()

    def path(self) -> Word:
        labels = []
        node: Optional[PairNode] = self
        while node is not None and node.parent is not None:
            labels.append(node.label)
            node = node.parent
        return tuple(reversed(labels))


@dataclass
class TreeOutcome:
    termination: str
    node: Optional[PairNode]
    stats: dict
    first_periodic: Optional[PairNode] = None


def _transitions(rule: Rule) -> list[tuple[tuple[int, int], ...]]:
    p, table = rule.p, rule.table
    size = p ** (rule.m - 1)
    return [
        tuple((table[c * p + d], (c * p + d) % size) for d in range(p))
        for c in range(size)
    ]


def injectivity_tree(rule: Rule, stop_on_periodic: bool = True,
                     meter: Optional[MemoryMeter] = None) -> TreeOutcome:
    """Breadth-first construction of the pair tree.

    Children are built in output order and tested as soon as they exist: an
    empty child is a Garden-of-Eden, a child holding two or more periodic
    members ends the search unless ``stop_on_periodic`` is off.  Repeated
    sets are not expanded.
    """
    p = rule.p
    size = p ** (rule.m - 1)
    trans = _transitions(rule)
    root = PairNode(frozenset(a * size + a for a in range(size)))
    seen = {root.members}
    queue = deque([root])
    stats = {"nodes": 1, "expanded": 0, "tuples": size}
    if meter is not None:
        meter.charge(set_bytes(root.members))
    first_periodic = None
    while queue:
        node = queue.popleft()
        stats["expanded"] += 1
        children: list[set] = [set() for _ in range(p)]
        periodic: list[set] = [set() for _ in range(p)]
        for code in node.members:
            initial, current = divmod(code, size)
            base = initial * size
            for b, nxt in trans[current]:
                children[b].add(base + nxt)
                if nxt == initial:
                    periodic[b].add(base + nxt)
        depth = node.depth + 1
        for b in range(p):
            members = frozenset(children[b])
            child = PairNode(members, node, b, depth, tuple(sorted(periodic[b])))
            stats["nodes"] += 1
            stats["tuples"] += len(members)
            if not members:
                return TreeOutcome(EMPTY, child, stats, first_periodic)
            if len(child.periodic) >= 2:
                if stop_on_periodic:
                    return TreeOutcome(PERIODIC_PAIR, child, stats, child)
                if first_periodic is None:
                    first_periodic = child
            if members not in seen:
                seen.add(members)
                if meter is not None:
                    meter.charge(set_bytes(members))
                queue.append(child)
    return TreeOutcome(EXHAUSTED, None, stats, first_periodic)


def _cycle_predecessor(rule: Rule, path: Word, start: int) -> Word:
    """A word of length ``len(path)+m-1`` beginning and ending with window ``start``."""
    p, table = rule.p, rule.table
    size = p ** (rule.m - 1)
    layers = [{start: None}]
    for b in path:
        layer = {}
        for window in layers[-1]:
            for d in range(p):
                idx = window * p + d
                if table[idx] == b:
                    layer.setdefault(idx % size, window)
        layers.append(layer)
    if start not in layers[-1]:
        raise ValueError("no cyclic predecessor through the given window")
    windows = [start]
    for layer in reversed(layers[1:]):
        windows.append(layer[windows[-1]])
    windows.reverse()
    digits = list(index_word(start, rule.m - 1, p))
    digits.extend(w % p for w in windows[1:])
    return tuple(digits)


def extract_periodic_witness(node: PairNode, rule: Rule) -> PeriodicWitness:
    """Two distinct cycles of length ``node.depth`` with the same periodic image."""
    if len(node.periodic) < 2:
        raise ValueError("node does not hold two periodic tuples")
    size = rule.p ** (rule.m - 1)
    path = node.path()
    n, left = len(path), rule.left
    cycles = []
    tuples = []
    for code in node.periodic[:2]:
        window = code // size
        word = _cycle_predecessor(rule, path, window)
        cycles.append(word[left:left + n])
        half = index_word(window, rule.m - 1, rule.p)
        tuples.append((half, half))
    image = apply_global(rule, cycles[0], Boundary.periodic())
    return PeriodicWitness(cycles[0], cycles[1], image, path, tuple(tuples))


def _collision_of_permutation(rule: Rule) -> CollidingPair:
    seen: dict[int, int] = {}
    for a, b in enumerate(rule.table):
        if b in seen:
            return CollidingPair((seen[b],), (a,), (b,))
        seen[b] = a
    raise AssertionError("table is a permutation")


def decide_injective_global(rule: Rule, short_circuit: bool = False,
                            meter: Optional[MemoryMeter] = None) -> Verdict:
    """Global injectivity, equivalently reversibility under the periodic boundary.

    With ``short_circuit`` an unbalanced rule is rejected before any tree is
    built (it cannot even be surjective).
    """
    boundary = Boundary.unbounded()
    if rule.m == 1:
        if len(set(rule.table)) == rule.p:
            return Verdict(rule, INJECTIVE, boundary, True)
        return Verdict(rule, INJECTIVE, boundary, False, _collision_of_permutation(rule))
    if short_circuit and not is_balanced(rule):
        return Verdict(rule, INJECTIVE, boundary, False, note="unbalanced")
    outcome = injectivity_tree(rule, meter=meter)
    stats = dict(outcome.stats)
    if meter is not None:
        stats["bytes"] = meter.peak
    if outcome.termination == EXHAUSTED:
        return Verdict(rule, INJECTIVE, boundary, True, stats=stats)
    stats["depth"] = outcome.node.depth
    if outcome.termination == EMPTY:
        return Verdict(rule, INJECTIVE, boundary, False,
                       GardenOfEden(outcome.node.path()), stats=stats, note="garden of eden")
    return Verdict(rule, INJECTIVE, boundary, False,
                   extract_periodic_witness(outcome.node, rule), stats=stats,
                   note="periodic pair")


def decide_surjective_periodic(rule: Rule, continue_past_periodic: bool = False,
                               short_circuit: bool = False) -> Verdict:
    """Surjectivity for every length under the periodic boundary.

    Decided through the injectivity tree: on a finite ring surjective and
    injective coincide, and a colliding pair of cycles at length ``n`` leaves
    some word of length ``n`` unreached.  ``continue_past_periodic`` is a
    diagnostic: it ignores periodic-pair terminations and reports only a
    Garden-of-Eden or exhaustion.
    """
    boundary = Boundary.periodic()
    if not continue_past_periodic:
        verdict = decide_injective_global(rule, short_circuit=short_circuit)
        return Verdict(rule, SURJECTIVE, boundary, verdict.holds, verdict.witness,
                       verdict.stats, verdict.note)
    if rule.m == 1:
        return decide_surjective_periodic(rule)
    outcome = injectivity_tree(rule, stop_on_periodic=False)
    stats = dict(outcome.stats)
    stats["continued"] = True
    if outcome.first_periodic is not None:
        stats["first_periodic_depth"] = outcome.first_periodic.depth
    if outcome.termination == EMPTY:
        return Verdict(rule, SURJECTIVE, boundary, False, GardenOfEden(outcome.node.path()),
                       stats=stats, note="garden of eden")
    return Verdict(rule, SURJECTIVE, boundary, True, stats=stats, note="no garden of eden")


def decide_injective_bounded(rule: Rule, boundary: Boundary) -> Verdict:
    """Injectivity for every length under a finite boundary.

    Finite configurations of one length map into a set of the same size, so
    injective and surjective coincide; the fixed and reflective cases reuse
    the surjectivity trees and turn the unreached word into a collision.
    """
    if boundary.kind in (UNBOUNDED, PERIODIC):
        verdict = decide_injective_global(rule)
        verdict.boundary = boundary
        return verdict
    if boundary.kind == FIXED:
        boundary.check(rule)
        surjective = decide_surjective_fixed(rule, boundary.left_fill, boundary.right_fill)
    elif boundary.kind == REFLECTIVE:
        surjective = decide_surjective_reflective(rule)
    else:
        raise RuleError(f"unsupported boundary {boundary.kind}")
    verdict = Verdict(rule, INJECTIVE, boundary, surjective.holds,
                      stats=surjective.stats, note=surjective.note)
    if not surjective.holds:
        n = len(surjective.witness.word)
        check = oracle_injective_bounded(rule, boundary, n)
        first, second = check.counterexample
        verdict.witness = CollidingPair(first, second, apply_global(rule, first, boundary))
    return verdict


def find_replaceable_pair(rule: Rule) -> Optional[ReplaceableWitness]:
    """Shortest pair of distinct words agreeing on both outer ``m-1`` cells with equal image.

    Exhaustive search over pairs of windows; ``None`` when no such pair
    exists at any length.
    """
    p, m, table = rule.p, rule.m, rule.table
    size = p ** (m - 1)
    parents: dict[tuple, Optional[tuple]] = {}
    queue = deque()
    for s in range(size):
        state = (s, s, False, 0)
        parents[state] = None
        queue.append(state)
    while queue:
        state = queue.popleft()
        x, y, diverged, steps = state
        for d1 in range(p):
            ix = x * p + d1
            for d2 in range(p):
                iy = y * p + d2
                if table[ix] != table[iy]:
                    continue
                nxt = (ix % size, iy % size, diverged or d1 != d2, min(steps + 1, m))
                if nxt in parents:
                    continue
                parents[nxt] = state
                if nxt[2] and nxt[0] == nxt[1] and nxt[3] >= m:
                    return _replaceable_from_states(rule, parents, nxt)
                queue.append(nxt)
    return None


def _replaceable_from_states(rule: Rule, parents: dict, state: tuple) -> ReplaceableWitness:
    chain = []
    while state is not None:
        chain.append(state)
        state = parents[state]
    chain.reverse()
    p, k = rule.p, rule.m - 1
    first = list(index_word(chain[0][0], k, p))
    second = list(index_word(chain[0][1], k, p))
    for x, y, _, _ in chain[1:]:
        first.append(x % p)
        second.append(y % p)
    first_t, second_t = tuple(first), tuple(second)
    return ReplaceableWitness(first_t, second_t, local_image(rule, first_t))


def periodic_from_replaceable(rule: Rule, witness: ReplaceableWitness) -> CollidingPair:
    """Close both replaceable words into cycles; their periodic images agree.

    Every window across the seam lies inside the shared borders, so the two
    cycles differ only where the words do.
    """
    first, second = witness.first, witness.second
    image = apply_global(rule, first, Boundary.periodic())
    return CollidingPair(first, second, image)
