"""Subset-tree surjectivity decisions for the unbounded, fixed and reflective boundaries.

A node of the tree is the set of ``(m-1)``-cell suffixes of every predecessor
of the word spelled by the path from the root.  Sets are bit vectors packed
into Python ints: bit ``t`` is set when the tuple with big-endian index ``t``
is present.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Callable, Iterator, Optional

from .rules import (
    Boundary,
    FIXED,
    REFLECTIVE,
    Rule,
    RuleError,
    Word,
    apply_global,
    extend_to_symmetric,
    index_word,
    word_index,
)
from .verdict import SURJECTIVE, GardenOfEden, Verdict


@dataclass(frozen=True)
class TupleSet:
    """A set of ``width``-cell tuples stored as a ``p**width`` bit vector."""

    width: int
    p: int
    bits: int

    @classmethod
    def from_words(cls, words, width: int, p: int) -> TupleSet:
        bits = 0
        for word in words:
            bits |= 1 << word_index(word, p)
        return cls(width, p, bits)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __iter__(self) -> Iterator[Word]:
        for t in iter_bits(self.bits):
            yield index_word(t, self.width, self.p)

    def __contains__(self, word) -> bool:
        return bool(self.bits >> word_index(word, self.p) & 1)


@dataclass(frozen=True)
class BoundarySets:
    initial: TupleSet
    terminal: TupleSet


@dataclass
class SearchNode:
    members: int
    parent: Optional["SearchNode"] = None
    label: Optional[int] = None
    depth: int = 0

    def path(self) -> Word:
        labels = []
        node: Optional[SearchNode] = self
        while node is not None and node.parent is not None:
            labels.append(node.label)
            node = node.parent
        return tuple(reversed(labels))


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def successor_masks(rule: Rule, width: int) -> list[tuple[int, ...]]:
    """``masks[t][b]``: tuples reachable from tuple ``t`` by emitting ``b``.

    ``width`` is ``m-1`` for the simplified tree; wider tuples keep extra
    leading cells that the rule never reads.
    """
    p, table = rule.p, rule.table
    size = p ** width
    windows = p ** rule.m
    masks = []
    for t in range(size):
        row = [0] * p
        for d in range(p):
            idx = t * p + d
            row[table[idx % windows]] |= 1 << (idx % size)
        masks.append(tuple(row))
    return masks


def subset_search(
    rule: Rule,
    width: int,
    root: int,
    failing: Callable[[int], bool],
    check_from: int = 1,
) -> tuple[Optional[SearchNode], dict[str, int]]:
    """Breadth-first subset construction; returns the first failing node.

    Nodes are tested as they are constructed, children in output order
    ``0..p-1``, so the returned node spells a shortest failing word.  Nodes
    shallower than ``check_from`` are never tested, and the visited set keys
    them apart from deeper nodes holding the same tuples.
    """
    p = rule.p
    masks = successor_masks(rule, width)
    root_node = SearchNode(root)
    stats = {"nodes": 1, "expanded": 0, "tuples": bin(root).count("1")}
    if check_from <= 0 and failing(root):
        return root_node, stats
    seen = {(root, min(0, check_from))}
    queue = deque([root_node])
    while queue:
        node = queue.popleft()
        stats["expanded"] += 1
        children = [0] * p
        for t in iter_bits(node.members):
            row = masks[t]
            for b in range(p):
                children[b] |= row[b]
        depth = node.depth + 1
        for b, members in enumerate(children):
            child = SearchNode(members, node, b, depth)
            stats["nodes"] += 1
            stats["tuples"] += bin(members).count("1")
            if depth >= check_from and failing(members):
                return child, stats
            key = (members, min(depth, check_from))
            if key not in seen:
                seen.add(key)
                queue.append(child)
    return None, stats


def extract_garden_of_eden(node: SearchNode, terminal: Optional[int] = None) -> Word:
    """Path labels of a failing node; these spell a word without predecessor."""
    if terminal is None:
        if node.members:
            raise ValueError("node is not empty; no Garden-of-Eden ends here")
    elif node.members & terminal:
        raise ValueError("node still meets the terminal set")
    return node.path()


def _permutation_verdict(rule: Rule, boundary: Boundary) -> Verdict:
    missing = sorted(set(range(rule.p)) - set(rule.table))
    if not missing:
        return Verdict(rule, SURJECTIVE, boundary, True)
    return Verdict(rule, SURJECTIVE, boundary, False, GardenOfEden((missing[0],)))


def decide_surjective_global(rule: Rule) -> Verdict:
    boundary = Boundary.unbounded()
    if rule.m == 1:
        return _permutation_verdict(rule, boundary)
    width = rule.m - 1
    root = (1 << rule.p ** width) - 1
    node, stats = subset_search(rule, width, root, lambda s: s == 0, check_from=0)
    if node is None:
        return Verdict(rule, SURJECTIVE, boundary, True, stats=stats)
    return Verdict(rule, SURJECTIVE, boundary, False,
                   GardenOfEden(extract_garden_of_eden(node)), stats=stats)


def build_boundary_sets(rule: Rule, boundary: Boundary) -> BoundarySets:
    """Root restriction and terminal condition over ``(L+R)``-cell tuples."""
    p, left, right = rule.p, rule.left, rule.right
    width = left + right
    if boundary.kind == FIXED:
        boundary.check(rule)
        head = word_index(boundary.left_fill, p)
        tail = word_index(boundary.right_fill, p)
        initial = sum(1 << (head * p ** right + x) for x in range(p ** right))
        terminal = sum(1 << (y * p ** right + tail) for y in range(p ** left))
        return BoundarySets(TupleSet(width, p, initial), TupleSet(width, p, terminal))
    if boundary.kind == REFLECTIVE:
        if left != right:
            raise RuleError("reflective boundary sets need L == R; extend the rule first")
        halves = list(itertools.product(range(p), repeat=left))
        initial = TupleSet.from_words((tuple(reversed(u)) + u for u in halves), width, p)
        terminal = TupleSet.from_words((u + tuple(reversed(u)) for u in halves), width, p)
        return BoundarySets(initial, terminal)
    raise RuleError(f"no boundary sets for a {boundary.kind} boundary")


def _first_unreached(rule: Rule, boundary: Boundary, n: int) -> Optional[Word]:
    reached = {apply_global(rule, c, boundary)
               for c in itertools.product(range(rule.p), repeat=n)}
    for word in itertools.product(range(rule.p), repeat=n):
        if word not in reached:
            return word
    return None


def _bounded_decision(rule: Rule, tree_rule: Rule, boundary: Boundary,
                      sets: BoundarySets, first_tree_depth: int) -> Verdict:
    # lengths below the tuple width are enumerated directly
    for n in range(boundary.min_length(rule), tree_rule.m - 1):
        word = _first_unreached(rule, boundary, n)
        if word is not None:
            return Verdict(rule, SURJECTIVE, boundary, False, GardenOfEden(word),
                           stats={"enumerated_up_to": n})
    terminal = sets.terminal.bits
    node, stats = subset_search(
        tree_rule, tree_rule.m - 1, sets.initial.bits,
        lambda s: not s & terminal, check_from=first_tree_depth,
    )
    if node is None:
        return Verdict(rule, SURJECTIVE, boundary, True, stats=stats)
    word = extract_garden_of_eden(node, terminal)
    return Verdict(rule, SURJECTIVE, boundary, False, GardenOfEden(word), stats=stats)


def decide_surjective_fixed(rule: Rule, left_fill, right_fill) -> Verdict:
    """Surjectivity for every configuration length under constant fills."""
    boundary = Boundary.fixed(left_fill, right_fill)
    boundary.check(rule)
    if rule.m == 1:
        return _permutation_verdict(rule, boundary)
    sets = build_boundary_sets(rule, boundary)
    return _bounded_decision(rule, rule, boundary, sets, first_tree_depth=1)


def decide_surjective_reflective(rule: Rule) -> Verdict:
    """Surjectivity for every length the mirror fill is defined for."""
    boundary = Boundary.reflective()
    symmetric = extend_to_symmetric(rule)
    if symmetric.m == 1:
        return _permutation_verdict(rule, boundary)
    sets = build_boundary_sets(symmetric, boundary)
    return _bounded_decision(rule, symmetric, boundary, sets,
                             first_tree_depth=boundary.min_length(rule))
