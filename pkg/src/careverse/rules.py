"""One-dimensional cellular automaton rules: parsing, evaluation, boundaries.

A rule over the alphabet ``{0..p-1}`` with neighborhood shape ``L+1+R`` is a
table of ``p**m`` output states (``m = L+1+R``).  Neighborhood words are
indexed big-endian: the leftmost cell is the most significant digit.  The
printed form lists the table from the highest index down, so rule 102 prints
as ``01100110``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

Word = tuple[int, ...]

_SPEC_RE = re.compile(
    r"^\s*p\s*=\s*(\d+)\s*;\s*L\s*=\s*(\d+)\s*;\s*R\s*=\s*(\d+)\s*;\s*rule\s*=\s*(\S+)\s*$"
)


class RuleError(ValueError):
    """Malformed rule, word or boundary."""


@dataclass(frozen=True)
class Rule:
    """Local map ``f: S^m -> S`` with ``p`` states and radii ``(left, right)``."""

    p: int
    left: int
    right: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.p < 2:
            raise RuleError(f"alphabet size must be >= 2, got {self.p}")
        if self.left < 0 or self.right < 0:
            raise RuleError("radii must be non-negative")
        expected = self.p ** self.m
        if len(self.table) != expected:
            raise RuleError(
                f"table has {len(self.table)} entries, expected p**m = {expected}"
            )
        if any(not 0 <= s < self.p for s in self.table):
            raise RuleError(f"table entries must lie in 0..{self.p - 1}")

    @property
    def m(self) -> int:
        return self.left + 1 + self.right

    @property
    def wolfram(self) -> int:
        """The Wolfram number ``sum(table[t] * p**t)``."""
        number = 0
        for state in reversed(self.table):
            number = number * self.p + state
        return number

    @classmethod
    def from_number(cls, number: int, p: int = 2, left: int = 1, right: int = 1) -> Rule:
        m = left + 1 + right
        size = p ** m
        if number < 0 or number >= p ** size:
            raise RuleError(f"Wolfram number {number} out of range for p={p}, m={m}")
        table = []
        for _ in range(size):
            number, digit = divmod(number, p)
            table.append(digit)
        return cls(p, left, right, tuple(table))

    @classmethod
    def from_digits(cls, digits: str, p: int = 2, left: int = 1, right: int = 1) -> Rule:
        """Build a rule from its printed table (highest neighborhood first)."""
        if p > 10:
            raise RuleError("digit form only supports p <= 10; use the '#' form")
        if not digits.isdigit():
            raise RuleError(f"rule digits contain non-digit characters: {digits!r}")
        table = tuple(int(c) for c in reversed(digits))
        if any(d >= p for d in table):
            raise RuleError(f"rule digit >= p={p} in {digits!r}")
        return cls(p, left, right, table)

    def digits(self) -> str:
        return "".join(str(s) for s in reversed(self.table))

    def __str__(self) -> str:
        return print_rule(self)


def parse_rule(spec: str) -> Rule:
    """Parse ``p=<int>;L=<int>;R=<int>;rule=<digits|#<decimal>>``."""
    match = _SPEC_RE.match(spec)
    if match is None:
        raise RuleError(f"cannot parse rule spec {spec!r}")
    p, left, right = (int(g) for g in match.group(1, 2, 3))
    body = match.group(4)
    if body.startswith("#"):
        number = body[1:]
        if not number.isdigit():
            raise RuleError(f"Wolfram number must be decimal, got {number!r}")
        return Rule.from_number(int(number), p, left, right)
    return Rule.from_digits(body, p, left, right)


def print_rule(rule: Rule, wolfram: bool = False) -> str:
    """Canonical textual form, the inverse of :func:`parse_rule`."""
    head = f"p={rule.p};L={rule.left};R={rule.right};rule="
    if wolfram or rule.p > 10:
        return head + f"#{rule.wolfram}"
    return head + rule.digits()


def word_index(word: Sequence[int], p: int) -> int:
    index = 0
    for digit in word:
        index = index * p + digit
    return index


def index_word(index: int, width: int, p: int) -> Word:
    digits = [0] * width
    for i in range(width - 1, -1, -1):
        index, digits[i] = divmod(index, p)
    return tuple(digits)


def parse_word(text: str, p: int) -> Word:
    if text and not text.isdigit():
        raise RuleError(f"word contains non-digit characters: {text!r}")
    word = tuple(int(c) for c in text)
    if any(d >= p for d in word):
        raise RuleError(f"word digit >= p={p} in {text!r}")
    return word


def format_word(word: Sequence[int]) -> str:
    return "".join(str(d) for d in word)


def evaluate_local(rule: Rule, window: Sequence[int]) -> int:
    if len(window) != rule.m:
        raise RuleError(f"window length {len(window)} != m = {rule.m}")
    return rule.table[word_index(window, rule.p)]


def local_image(rule: Rule, word: Sequence[int]) -> Word:
    """Image of a finite word: one output per full window (length ``n-m+1``)."""
    m, p, table = rule.m, rule.p, rule.table
    return tuple(table[word_index(word[i:i + m], p)] for i in range(len(word) - m + 1))


def is_balanced(rule: Rule) -> bool:
    counts = Counter(rule.table)
    share = rule.p ** (rule.m - 1)
    return all(counts[s] == share for s in range(rule.p))


def _append_ignored_right(rule: Rule) -> Rule:
    # new index = old * p + d; every printed digit is repeated p times
    table = tuple(s for s in rule.table for _ in range(rule.p))
    return Rule(rule.p, rule.left, rule.right + 1, table)


def _prepend_ignored_left(rule: Rule) -> Rule:
    # new index = d * p**m + old; the printed table is repeated p times
    return Rule(rule.p, rule.left + 1, rule.right, rule.table * rule.p)


def extend_to_symmetric(rule: Rule) -> Rule:
    """Pad the shorter side with ignored cells until ``L == R``.

    The extended rule agrees with the original on the embedded window for
    every value of the added cells.
    """
    while rule.left > rule.right:
        rule = _append_ignored_right(rule)
    while rule.right > rule.left:
        rule = _prepend_ignored_left(rule)
    return rule


# -- boundaries -------------------------------------------------------------

UNBOUNDED = "unbounded"
FIXED = "fixed"
PERIODIC = "periodic"
REFLECTIVE = "reflective"


@dataclass(frozen=True)
class Boundary:
    kind: str
    left_fill: Word = ()
    right_fill: Word = ()

    def __post_init__(self) -> None:
        if self.kind not in (UNBOUNDED, FIXED, PERIODIC, REFLECTIVE):
            raise RuleError(f"unknown boundary kind {self.kind!r}")
        if self.kind != FIXED and (self.left_fill or self.right_fill):
            raise RuleError("only fixed boundaries carry fills")

    @classmethod
    def unbounded(cls) -> Boundary:
        return cls(UNBOUNDED)

    @classmethod
    def periodic(cls) -> Boundary:
        return cls(PERIODIC)

    @classmethod
    def reflective(cls) -> Boundary:
        return cls(REFLECTIVE)

    @classmethod
    def fixed(cls, left_fill: Sequence[int], right_fill: Sequence[int]) -> Boundary:
        return cls(FIXED, tuple(left_fill), tuple(right_fill))

    @classmethod
    def null(cls, rule: Rule) -> Boundary:
        return cls(FIXED, (0,) * rule.left, (0,) * rule.right)

    @property
    def is_null(self) -> bool:
        return self.kind == FIXED and not any(self.left_fill) and not any(self.right_fill)

    def check(self, rule: Rule) -> None:
        """Raise unless this boundary fits the rule's radii and alphabet."""
        if self.kind != FIXED:
            return
        if len(self.left_fill) != rule.left or len(self.right_fill) != rule.right:
            raise RuleError(
                f"fill lengths ({len(self.left_fill)}, {len(self.right_fill)}) "
                f"do not match radii ({rule.left}, {rule.right})"
            )
        if any(d >= rule.p for d in self.left_fill + self.right_fill):
            raise RuleError(f"fill digit >= p={rule.p}")

    def min_length(self, rule: Rule) -> int:
        """Smallest configuration length this boundary is defined for."""
        if self.kind == REFLECTIVE:
            return max(1, rule.left, rule.right)
        return 1

    def __str__(self) -> str:
        return format_boundary(self)


def parse_boundary(text: str, rule: Rule | None = None) -> Boundary:
    """Parse ``global | null | fixed:<left>:<right> | periodic | reflective``.

    ``null`` needs the rule to size its zero fills.
    """
    text = text.strip()
    if text == "global":
        return Boundary.unbounded()
    if text == "periodic":
        return Boundary.periodic()
    if text == "reflective":
        return Boundary.reflective()
    if text == "null":
        if rule is None:
            raise RuleError("the null boundary needs a rule to size its fills")
        return Boundary.null(rule)
    if text.startswith("fixed:"):
        parts = text.split(":")
        if len(parts) != 3:
            raise RuleError(f"fixed boundary must be fixed:<left>:<right>, got {text!r}")
        p = rule.p if rule is not None else 10
        boundary = Boundary.fixed(parse_word(parts[1], p), parse_word(parts[2], p))
        if rule is not None:
            boundary.check(rule)
        return boundary
    raise RuleError(f"unknown boundary {text!r}")


def format_boundary(boundary: Boundary) -> str:
    if boundary.kind == UNBOUNDED:
        return "global"
    if boundary.kind == FIXED:
        return f"fixed:{format_word(boundary.left_fill)}:{format_word(boundary.right_fill)}"
    return boundary.kind


def pad_configuration(rule: Rule, config: Sequence[int], boundary: Boundary) -> Word:
    """Extend a finite configuration by ``L`` cells on the left and ``R`` on the right."""
    n = len(config)
    left, right = rule.left, rule.right
    config = tuple(config)
    if boundary.kind == UNBOUNDED:
        raise RuleError("unbounded configurations cannot be materialized")
    if n < 1:
        raise RuleError("configuration must have at least one cell")
    if boundary.kind == FIXED:
        boundary.check(rule)
        return boundary.left_fill + config + boundary.right_fill
    if boundary.kind == PERIODIC:
        head = tuple(config[(i - left) % n] for i in range(left))
        tail = tuple(config[i % n] for i in range(right))
        return head + config + tail
    if n < max(left, right):
        raise RuleError(f"reflective fill needs at least {max(left, right)} cells, got {n}")
    head = tuple(reversed(config[:left]))
    tail = tuple(reversed(config[n - right:])) if right else ()
    return head + config + tail


def apply_global(rule: Rule, config: Sequence[int], boundary: Boundary) -> Word:
    if any(not 0 <= d < rule.p for d in config):
        raise RuleError(f"configuration digit outside 0..{rule.p - 1}")
    return local_image(rule, pad_configuration(rule, config, boundary))
