"""Byte accounting against a configurable budget.

The deciders charge the containers they keep alive, measured with
``sys.getsizeof``, so that an over-budget run fails with a clean verdict
instead of exhausting the process.
"""

from __future__ import annotations

import sys

MIB = 1 << 20
DEFAULT_BUDGET = 512 * MIB

_INT_BYTES = sys.getsizeof(1 << 40)


class MemoryBudgetExceeded(MemoryError):
    pass


class MemoryMeter:
    def __init__(self, budget: int = DEFAULT_BUDGET):
        self.budget = budget
        self.used = 0
        self.peak = 0

    def charge(self, nbytes: int) -> None:
        self.used += nbytes
        if self.used > self.peak:
            self.peak = self.used
        if self.used > self.budget:
            raise MemoryBudgetExceeded(
                f"{self.used / MIB:.1f} MiB charged, budget {self.budget / MIB:.1f} MiB"
            )

    def release(self, nbytes: int) -> None:
        self.used -= nbytes


def set_bytes(members) -> int:
    """Container plus one boxed integer per member."""
    return sys.getsizeof(members) + _INT_BYTES * len(members)


def int_bytes(count: int = 1) -> int:
    return _INT_BYTES * count
