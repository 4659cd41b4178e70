"""Surjectivity and injectivity deciders for one-dimensional cellular automata."""

from .amoroso import decide_injective_table, decide_surjective_unsimplified
from .decisions import decide
from .injectivity import (
    decide_injective_bounded,
    decide_injective_global,
    decide_surjective_periodic,
    extract_periodic_witness,
    find_replaceable_pair,
)
from .oracle import (
    oracle_globally_surjective_up_to,
    oracle_injective_bounded,
    oracle_surjective_bounded,
    verify_witness,
)
from .rules import (
    Boundary,
    Rule,
    apply_global,
    evaluate_local,
    extend_to_symmetric,
    is_balanced,
    parse_boundary,
    parse_rule,
    print_rule,
)
from .surjectivity import (
    build_boundary_sets,
    decide_surjective_fixed,
    decide_surjective_global,
    decide_surjective_reflective,
)
from .verdict import Verdict

__version__ = "0.1.0"
