"""Brute-force ground truth by exhaustive enumeration of configurations.

Deliberately naive: every check enumerates all ``p**n`` configurations (or
all windows for the unbounded case) and compares images.  Nothing here
touches the tree or table deciders.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple, Optional, Union

import numpy as np

from .rules import (
    FIXED,
    PERIODIC,
    REFLECTIVE,
    UNBOUNDED,
    Boundary,
    Rule,
    Word,
    apply_global,
    index_word,
    local_image,
)
from .verdict import (
    SURJECTIVE,
    CollidingPair,
    GardenOfEden,
    PeriodicWitness,
    ReplaceableWitness,
    Verdict,
)

ENUMERATION_LIMIT = 2 ** 24


class BudgetExceeded(RuntimeError):
    pass


class WitnessError(ValueError):
    pass


class Check(NamedTuple):
    holds: bool
    counterexample: Optional[Union[Word, tuple[Word, Word]]] = None


@dataclass
class OracleReport:
    rule: Rule
    boundary: Boundary
    lengths: list[int]
    surjective: dict[int, bool] = field(default_factory=dict)
    injective: dict[int, bool] = field(default_factory=dict)
    counterexamples: dict[int, dict[str, object]] = field(default_factory=dict)


def _guard(p: int, n: int) -> None:
    if p ** n > ENUMERATION_LIMIT:
        raise BudgetExceeded(f"p**n = {p}**{n} exceeds the enumeration budget")


@lru_cache(maxsize=64)
def _cached_configurations(p: int, n: int) -> np.ndarray:
    return _configurations(p, n)


def _configurations(p: int, n: int) -> np.ndarray:
    """All words of length n, one per row, in lexicographic order."""
    codes = np.arange(p ** n, dtype=np.int64)
    out = np.empty((p ** n, n), dtype=np.int64)
    for i in range(n - 1, -1, -1):
        codes, out[:, i] = np.divmod(codes, p)
    return out


def configurations(p: int, n: int) -> np.ndarray:
    _guard(p, n)
    if p ** n <= 2 ** 16:
        return _cached_configurations(p, n)
    return _configurations(p, n)


def _padding_columns(rule: Rule, boundary: Boundary, n: int) -> list[int]:
    """Column of the configuration that feeds each padded position (-1/-2: fills)."""
    left, right = rule.left, rule.right
    if boundary.kind == PERIODIC:
        return [(i - left) % n for i in range(n + left + right)]
    if boundary.kind == REFLECTIVE:
        if n < max(left, right):
            raise ValueError(f"reflective boundary undefined for n={n}")
        head = [left - 1 - i for i in range(left)]
        tail = [n - 1 - j for j in range(right)]
        return head + list(range(n)) + tail
    raise ValueError(boundary.kind)


def image_codes(rule: Rule, configs: np.ndarray, boundary: Boundary) -> np.ndarray:
    """Image of every row of ``configs`` as a big-endian integer code."""
    rows, n = configs.shape
    p, m = rule.p, rule.m
    if boundary.kind == FIXED:
        boundary.check(rule)
        left = np.broadcast_to(np.array(boundary.left_fill, dtype=np.int64), (rows, rule.left))
        right = np.broadcast_to(np.array(boundary.right_fill, dtype=np.int64), (rows, rule.right))
        padded = np.concatenate([left, configs, right], axis=1)
    elif boundary.kind == UNBOUNDED:
        padded = configs
        n = n - m + 1
    else:
        padded = configs[:, _padding_columns(rule, boundary, n)]
    index = np.zeros((rows, n), dtype=np.int64)
    for j in range(m):
        index = index * p + padded[:, j:j + n]
    image = np.asarray(rule.table, dtype=np.int64)[index]
    codes = np.zeros(rows, dtype=np.int64)
    for i in range(n):
        codes = codes * p + image[:, i]
    return codes


def _least_missing(codes: np.ndarray, total: int) -> Optional[int]:
    hit = np.zeros(total, dtype=bool)
    hit[codes] = True
    missing = np.flatnonzero(~hit)
    return int(missing[0]) if missing.size else None


def oracle_surjective_bounded(rule: Rule, boundary: Boundary, n: int) -> Check:
    """Is every word of length ``n`` the image of some configuration?"""
    if boundary.kind == UNBOUNDED:
        raise ValueError("bounded oracle needs a finite boundary")
    codes = image_codes(rule, configurations(rule.p, n), boundary)
    missing = _least_missing(codes, rule.p ** n)
    if missing is None:
        return Check(True)
    return Check(False, index_word(missing, n, rule.p))


def oracle_injective_bounded(rule: Rule, boundary: Boundary, n: int) -> Check:
    """Do distinct configurations of length ``n`` have distinct images?

    The counterexample is the lexicographically first configuration whose
    image repeats, paired with the earliest configuration sharing it.
    """
    if boundary.kind == UNBOUNDED:
        raise ValueError("bounded oracle needs a finite boundary")
    codes = image_codes(rule, configurations(rule.p, n), boundary)
    _, first_rows = np.unique(codes, return_index=True)
    if first_rows.size == codes.size:
        return Check(True)
    repeated = np.ones(codes.size, dtype=bool)
    repeated[first_rows] = False
    row = int(np.flatnonzero(repeated)[0])
    partner = int(np.flatnonzero(codes == codes[row])[0])
    return Check(False, (index_word(partner, n, rule.p), index_word(row, n, rule.p)))


def oracle_globally_surjective_up_to(rule: Rule, k: int) -> Check:
    """Does every word of length <= k occur as the image of a finite window?

    Refutes global surjectivity when it fails; cannot certify it.
    """
    p, m = rule.p, rule.m
    _guard(p, k + m - 1)
    for length in range(1, k + 1):
        codes = image_codes(rule, configurations(p, length + m - 1), Boundary.unbounded())
        missing = _least_missing(codes, p ** length)
        if missing is not None:
            return Check(False, index_word(missing, length, p))
    return Check(True)


def oracle_report(rule: Rule, boundary: Boundary, lengths) -> OracleReport:
    report = OracleReport(rule, boundary, list(lengths))
    for n in report.lengths:
        surjective = oracle_surjective_bounded(rule, boundary, n)
        injective = oracle_injective_bounded(rule, boundary, n)
        report.surjective[n] = surjective.holds
        report.injective[n] = injective.holds
        failures = {}
        if not surjective.holds:
            failures["unreached"] = surjective.counterexample
        if not injective.holds:
            failures["collision"] = injective.counterexample
        if failures:
            report.counterexamples[n] = failures
    return report


def periodic_bijective_up_to(rule: Rule, n_max: int) -> Check:
    """Periodic-boundary bijectivity for every length 1..n_max; returns the first failing n."""
    for n in range(1, n_max + 1):
        if not oracle_injective_bounded(rule, Boundary.periodic(), n).holds:
            return Check(False, (n,))
    return Check(True)


# -- witness verification ---------------------------------------------------

def _verify_goe(verdict: Verdict, word: Word) -> bool:
    rule, boundary = verdict.rule, verdict.boundary
    if not word:
        raise WitnessError("empty Garden-of-Eden word")
    if any(not 0 <= d < rule.p for d in word):
        raise WitnessError("witness digit outside the alphabet")
    target = 0
    for d in word:
        target = target * rule.p + d
    if boundary.kind == UNBOUNDED:
        configs = configurations(rule.p, len(word) + rule.m - 1)
    else:
        if len(word) < boundary.min_length(rule):
            return False
        configs = configurations(rule.p, len(word))
    return not bool(np.any(image_codes(rule, configs, boundary) == target))


def _verify_collision(verdict: Verdict, witness: CollidingPair) -> bool:
    rule = verdict.rule
    boundary = verdict.boundary
    if boundary.kind == UNBOUNDED:
        # a collision only refutes injectivity; interpret the pair as cycles
        if verdict.property == SURJECTIVE:
            return False
        boundary = Boundary.periodic()
    first, second = witness.first, witness.second
    if len(first) != len(second) or first == second or not first:
        return False
    if len(first) < boundary.min_length(rule):
        return False
    if any(not 0 <= d < rule.p for d in first + second):
        return False
    if isinstance(witness, PeriodicWitness):
        for initial, current in witness.tuples:
            if initial != current:
                return False
    image = apply_global(rule, first, boundary)
    return image == apply_global(rule, second, boundary) == witness.image


def verify_replaceable(rule: Rule, witness: ReplaceableWitness) -> bool:
    first, second = witness.first, witness.second
    k = rule.m - 1
    if len(first) != len(second) or len(first) < 2 * rule.m - 1 or first == second:
        return False
    if first[:k] != second[:k] or first[len(first) - k:] != second[len(second) - k:]:
        return False
    image = local_image(rule, first)
    return image == local_image(rule, second) == witness.image


def verify_witness(verdict: Verdict) -> bool:
    """Independently confirm the witness attached to a negative verdict."""
    witness = verdict.witness
    if verdict.holds or witness is None:
        raise WitnessError("verdict carries no witness to verify")
    if isinstance(witness, GardenOfEden):
        return _verify_goe(verdict, witness.word)
    if isinstance(witness, ReplaceableWitness):
        return verdict.boundary.kind == UNBOUNDED and verify_replaceable(verdict.rule, witness)
    if isinstance(witness, CollidingPair):
        return _verify_collision(verdict, witness)
    raise WitnessError(f"unknown witness type {type(witness).__name__}")
