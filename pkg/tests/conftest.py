import itertools
import random

import pytest

from careverse.rules import Rule, local_image


def eca(number: int) -> Rule:
    return Rule.from_number(number, 2, 1, 1)


def random_rule(rng: random.Random, p: int = 2, max_radius: int = 2) -> Rule:
    left, right = rng.randint(0, max_radius), rng.randint(0, max_radius)
    size = p ** (left + 1 + right)
    return Rule(p, left, right, tuple(rng.randrange(p) for _ in range(size)))


def brute_preimage_exists(rule: Rule, word) -> bool:
    """Is ``word`` the image of some window of length len(word)+m-1?"""
    length = len(word) + rule.m - 1
    target = tuple(word)
    return any(local_image(rule, u) == target
               for u in itertools.product(range(rule.p), repeat=length))


@pytest.fixture(scope="session")
def all_eca():
    return [eca(n) for n in range(256)]


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
