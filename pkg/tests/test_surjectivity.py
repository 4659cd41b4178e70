import itertools
import random

import pytest

from careverse.amoroso import decide_surjective_unsimplified
from careverse.oracle import (
    oracle_globally_surjective_up_to,
    oracle_surjective_bounded,
    verify_witness,
)
from careverse.rules import Boundary, Rule, RuleError, extend_to_symmetric, is_balanced, local_image
from careverse.surjectivity import (
    SearchNode,
    build_boundary_sets,
    decide_surjective_fixed,
    decide_surjective_global,
    decide_surjective_reflective,
    extract_garden_of_eden,
)

from conftest import brute_preimage_exists, eca, random_rule


def words(p, n):
    return list(itertools.product(range(p), repeat=n))


def test_global_examples():
    assert decide_surjective_global(eca(102)).holds
    assert oracle_globally_surjective_up_to(eca(102), 8).holds
    assert decide_surjective_global(eca(204)).holds


def test_rule_4_garden_of_eden_is_11():
    # no 4-cell word maps onto 11, but every 1-cell word has a preimage
    assert not brute_preimage_exists(eca(4), (1, 1))
    assert all(brute_preimage_exists(eca(4), w) for w in words(2, 1))
    verdict = decide_surjective_global(eca(4))
    assert not verdict.holds
    assert verdict.witness.word == (1, 1)
    assert verify_witness(verdict)


def test_constant_rule_garden_of_eden():
    verdict = decide_surjective_global(eca(0))
    assert verdict.witness.word == (1,)


def test_extract_rejects_live_node():
    with pytest.raises(ValueError):
        extract_garden_of_eden(SearchNode(0b11))
    with pytest.raises(ValueError):
        extract_garden_of_eden(SearchNode(0b10), terminal=0b10)


def test_m1_rules():
    swap = Rule(2, 0, 0, (1, 0))
    assert decide_surjective_global(swap).holds
    const = Rule(3, 0, 0, (0, 2, 2))
    verdict = decide_surjective_global(const)
    assert not verdict.holds and verdict.witness.word == (1,)


def _members(tuple_set):
    return {"".join(map(str, w)) for w in tuple_set}


def test_boundary_sets_null():
    sets = build_boundary_sets(eca(0), Boundary.null(eca(0)))
    assert _members(sets.initial) == {"00", "01"}
    assert _members(sets.terminal) == {"00", "10"}


def test_boundary_sets_fixed_two_sided():
    rule = Rule.from_number(0, 2, 2, 2)
    sets = build_boundary_sets(rule, Boundary.fixed((0, 1), (1, 0)))
    assert _members(sets.initial) == {"01" + a + b for a in "01" for b in "01"}
    assert _members(sets.terminal) == {a + b + "10" for a in "01" for b in "01"}


def test_boundary_sets_reflective():
    sets = build_boundary_sets(eca(0), Boundary.reflective())
    assert _members(sets.initial) == {"00", "11"}
    assert _members(sets.terminal) == {"00", "11"}
    wide = build_boundary_sets(Rule.from_number(0, 2, 2, 2), Boundary.reflective())
    assert "1001" in _members(wide.initial) and "0110" in _members(wide.terminal)
    with pytest.raises(RuleError):
        build_boundary_sets(Rule.from_number(0, 2, 1, 2), Boundary.reflective())


def test_fixed_examples():
    assert decide_surjective_fixed(eca(204), (0,), (0,)).holds
    null_hits = [n for n in range(256) if decide_surjective_fixed(eca(n), (0,), (0,)).holds]
    assert null_hits == [51, 60, 102, 153, 195, 204]
    with pytest.raises(RuleError):
        decide_surjective_fixed(eca(204), (2,), (0,))


def test_reflective_examples():
    assert decide_surjective_reflective(eca(204)).holds
    hits = [n for n in range(256) if decide_surjective_reflective(eca(n)).holds]
    assert hits == [51, 204]
    for n in hits:
        assert all(oracle_surjective_bounded(eca(n), Boundary.reflective(), k).holds
                   for k in range(1, 11))


def test_unsimplified_tree_agrees_and_is_larger(all_eca):
    for rule in all_eca:
        simple = decide_surjective_global(rule)
        full = decide_surjective_unsimplified(rule)
        assert simple.holds == full.holds
        assert full.stats["nodes"] >= simple.stats["nodes"]
        if not simple.holds:
            assert full.witness.word == simple.witness.word


def test_surjective_implies_balanced(all_eca):
    for rule in all_eca:
        if decide_surjective_global(rule).holds:
            assert is_balanced(rule)


def test_global_verdicts_against_oracle(all_eca):
    for rule in all_eca:
        verdict = decide_surjective_global(rule)
        if verdict.holds:
            assert oracle_globally_surjective_up_to(rule, 8).holds
        else:
            assert verify_witness(verdict)
            assert not brute_preimage_exists(rule, verdict.witness.word)


@pytest.mark.parametrize("seed", range(4))
def test_bounded_verdicts_against_oracle_mixed_shapes(seed):
    rng = random.Random(seed)
    for _ in range(60):
        rule = random_rule(rng, p=rng.choice((2, 3)), max_radius=2)
        if rule.p ** rule.m > 81:
            continue
        fills = (tuple(rng.randrange(rule.p) for _ in range(rule.left)),
                 tuple(rng.randrange(rule.p) for _ in range(rule.right)))
        cases = [(decide_surjective_fixed(rule, *fills), Boundary.fixed(*fills)),
                 (decide_surjective_reflective(rule), Boundary.reflective())]
        for verdict, boundary in cases:
            lengths = range(boundary.min_length(rule), 7 if rule.p == 2 else 5)
            if verdict.holds:
                assert all(oracle_surjective_bounded(rule, boundary, n).holds for n in lengths)
            else:
                assert verify_witness(verdict)


def test_bounded_witness_is_shortest(all_eca):
    for rule in all_eca[::7]:
        verdict = decide_surjective_fixed(rule, (0,), (0,))
        if verdict.holds:
            continue
        n = len(verdict.witness.word)
        boundary = Boundary.null(rule)
        assert all(oracle_surjective_bounded(rule, boundary, k).holds for k in range(1, n))


def test_determinism():
    rng = random.Random(8)
    for _ in range(50):
        rule = random_rule(rng)
        first = decide_surjective_global(rule)
        second = decide_surjective_global(rule)
        assert (first.holds, first.witness, first.stats) == (second.holds, second.witness, second.stats)


def test_expansions_bounded_by_subset_count():
    rng = random.Random(9)
    for _ in range(100):
        rule = random_rule(rng, max_radius=1)
        verdict = decide_surjective_global(rule)
        if rule.m > 1:
            assert verdict.stats["expanded"] <= 2 ** (rule.p ** (rule.m - 1))


def test_reflective_uses_extended_shape():
    rule = Rule.from_number(0b0110, 2, 1, 0)   # f(x, y) = x xor y
    ext = extend_to_symmetric(rule)
    assert (ext.left, ext.right) == (1, 1)
    verdict = decide_surjective_reflective(rule)
    # the mirror makes the first cell f(x1, x1) = 0, so "1" is never produced there
    assert not verdict.holds and verdict.witness.word == (1,)
    assert verify_witness(verdict)
