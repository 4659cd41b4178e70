"""Route a (property, boundary) question to the matching decider."""

from __future__ import annotations

from .injectivity import (
    decide_injective_bounded,
    decide_injective_global,
    decide_surjective_periodic,
)
from .rules import FIXED, PERIODIC, REFLECTIVE, UNBOUNDED, Boundary, Rule, RuleError
from .surjectivity import (
    decide_surjective_fixed,
    decide_surjective_global,
    decide_surjective_reflective,
)
from .verdict import INJECTIVE, SURJECTIVE, Verdict

PROPERTIES = (SURJECTIVE, INJECTIVE)


def decide(rule: Rule, prop: str, boundary: Boundary, short_circuit: bool = False) -> Verdict:
    """Decide ``prop`` for ``rule`` under ``boundary``.

    ``short_circuit`` lets the global/periodic injectivity tree reject
    unbalanced rules without building a tree.
    """
    if prop == SURJECTIVE:
        if boundary.kind == UNBOUNDED:
            return decide_surjective_global(rule)
        if boundary.kind == FIXED:
            boundary.check(rule)
            return decide_surjective_fixed(rule, boundary.left_fill, boundary.right_fill)
        if boundary.kind == REFLECTIVE:
            return decide_surjective_reflective(rule)
        if boundary.kind == PERIODIC:
            return decide_surjective_periodic(rule, short_circuit=short_circuit)
    elif prop == INJECTIVE:
        if boundary.kind == UNBOUNDED:
            return decide_injective_global(rule, short_circuit=short_circuit)
        if boundary.kind == PERIODIC:
            verdict = decide_injective_global(rule, short_circuit=short_circuit)
            verdict.boundary = boundary
            return verdict
        return decide_injective_bounded(rule, boundary)
    raise RuleError(f"unknown property {prop!r} or boundary {boundary.kind!r}")
