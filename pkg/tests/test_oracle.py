import itertools
import random

import numpy as np
import pytest

from careverse.oracle import (
    BudgetExceeded,
    WitnessError,
    configurations,
    image_codes,
    oracle_globally_surjective_up_to,
    oracle_injective_bounded,
    oracle_report,
    oracle_surjective_bounded,
    verify_witness,
)
from careverse.rules import Boundary, Rule, apply_global, word_index
from careverse.verdict import (
    INJECTIVE,
    SURJECTIVE,
    CollidingPair,
    GardenOfEden,
    PeriodicWitness,
    Verdict,
)

from conftest import eca, random_rule


def boundaries_for(rule):
    return [Boundary.null(rule), Boundary.fixed((1,) * rule.left, (1,) * rule.right),
            Boundary.periodic(), Boundary.reflective()]


def mirror(rule: Rule) -> Rule:
    table = [0] * len(rule.table)
    for window in itertools.product(range(rule.p), repeat=rule.m):
        table[word_index(window[::-1], rule.p)] = rule.table[word_index(window, rule.p)]
    return Rule(rule.p, rule.right, rule.left, tuple(table))


def test_numpy_images_match_pure_python():
    rng = random.Random(11)
    for _ in range(40):
        rule = random_rule(rng, p=rng.choice((2, 3)))
        for boundary in boundaries_for(rule):
            n = max(boundary.min_length(rule), rng.randint(1, 5))
            configs = configurations(rule.p, n)
            codes = image_codes(rule, configs, boundary)
            for row in rng.sample(range(len(configs)), min(20, len(configs))):
                image = apply_global(rule, tuple(int(x) for x in configs[row]), boundary)
                assert codes[row] == word_index(image, rule.p)


def test_surjective_bounded_examples():
    assert oracle_surjective_bounded(eca(204), Boundary.periodic(), 5).holds
    check = oracle_surjective_bounded(eca(102), Boundary.periodic(), 2)
    assert not check.holds and check.counterexample == (0, 1)
    assert not oracle_surjective_bounded(eca(4), Boundary.null(eca(4)), 2).holds


def test_injective_bounded_examples():
    check = oracle_injective_bounded(eca(102), Boundary.periodic(), 2)
    assert not check.holds and check.counterexample == ((0, 1), (1, 0))
    assert all(oracle_injective_bounded(eca(170), Boundary.periodic(), n).holds for n in range(1, 11))
    assert oracle_injective_bounded(eca(204), Boundary.reflective(), 4).holds


def test_global_surjectivity_examples():
    assert oracle_globally_surjective_up_to(eca(102), 8).holds
    check = oracle_globally_surjective_up_to(eca(4), 2)
    assert not check.holds and check.counterexample == (1, 1)
    assert oracle_globally_surjective_up_to(eca(204), 6).holds


def test_budget_guard():
    with pytest.raises(BudgetExceeded):
        oracle_surjective_bounded(eca(102), Boundary.periodic(), 25)


@pytest.mark.parametrize("number", [30, 90, 102, 110, 150, 204])
def test_counting_argument(number):
    rule = eca(number)
    for boundary in boundaries_for(rule):
        for n in range(1, 8):
            assert (oracle_surjective_bounded(rule, boundary, n).holds
                    == oracle_injective_bounded(rule, boundary, n).holds)


def test_periodic_verdict_invariant_under_rotation_of_counterexample():
    rule = eca(90)
    check = oracle_injective_bounded(rule, Boundary.periodic(), 4)
    a, b = check.counterexample
    for k in range(4):
        ra, rb = a[k:] + a[:k], b[k:] + b[:k]
        assert apply_global(rule, ra, Boundary.periodic()) == apply_global(rule, rb, Boundary.periodic())


def test_reflective_verdicts_invariant_under_mirroring():
    rng = random.Random(3)
    for _ in range(30):
        rule = random_rule(rng, max_radius=1)
        for n in range(max(1, rule.left, rule.right), 7):
            assert (oracle_surjective_bounded(rule, Boundary.reflective(), n).holds
                    == oracle_surjective_bounded(mirror(rule), Boundary.reflective(), n).holds)


def test_report_collects_counterexamples():
    report = oracle_report(eca(102), Boundary.periodic(), range(1, 5))
    assert report.surjective == {1: False, 2: False, 3: False, 4: False}
    assert report.counterexamples[2]["unreached"] == (0, 1)


def _periodic_102():
    return Verdict(eca(102), INJECTIVE, Boundary.periodic(), False,
                   PeriodicWitness((0,), (1,), (0,), (0,), (((0, 0), (0, 0)), ((1, 1), (1, 1)))))


def test_verify_witness_accepts_and_rejects():
    assert verify_witness(_periodic_102())
    goe = Verdict(eca(4), SURJECTIVE, Boundary.unbounded(), False, GardenOfEden((1, 1)))
    assert verify_witness(goe)
    not_goe = Verdict(eca(4), SURJECTIVE, Boundary.unbounded(), False, GardenOfEden((1, 0)))
    assert not verify_witness(not_goe)
    tampered = Verdict(eca(102), INJECTIVE, Boundary.periodic(), False,
                       CollidingPair((0, 1), (1, 1), (0, 0)))
    assert not verify_witness(tampered)
    collision_for_global_surjectivity = Verdict(eca(102), SURJECTIVE, Boundary.unbounded(), False,
                                                CollidingPair((0,), (1,), (0,)))
    assert not verify_witness(collision_for_global_surjectivity)
    with pytest.raises(WitnessError):
        verify_witness(Verdict(eca(204), SURJECTIVE, Boundary.unbounded(), True))


def test_configurations_are_lexicographic():
    configs = configurations(3, 3)
    assert configs.shape == (27, 3)
    assert [tuple(r) for r in configs] == list(itertools.product(range(3), repeat=3))
    assert np.all(configs[1] == [0, 0, 1])
