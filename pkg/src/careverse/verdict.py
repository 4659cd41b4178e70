"""Verdicts and the machine-checkable witnesses attached to negative ones."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Union

from .rules import (
    Boundary,
    Rule,
    Word,
    format_boundary,
    format_word,
    parse_boundary,
    parse_rule,
    parse_word,
    print_rule,
)

SURJECTIVE = "surjective"
INJECTIVE = "injective"


@dataclass(frozen=True)
class GardenOfEden:
    """A word with no predecessor.

    Under the unbounded boundary no word of length ``len(word) + m - 1`` maps
    onto it; under a finite boundary no configuration of the same length does.
    """

    word: Word


@dataclass(frozen=True)
class CollidingPair:
    """Two distinct configurations with the same image under a finite boundary."""

    first: Word
    second: Word
    image: Word


@dataclass(frozen=True)
class PeriodicWitness(CollidingPair):
    """Colliding cycles read off an injectivity-tree node.

    ``path`` spells the node's successor word and ``tuples`` are the two
    periodic (initial window, current window) members that ended the search.
    """

    path: Word = ()
    tuples: tuple[tuple[Word, Word], ...] = ()


@dataclass(frozen=True)
class ReplaceableWitness:
    """Distinct local configurations sharing both outer ``m-1`` cells and their image."""

    first: Word
    second: Word
    image: Word


Witness = Union[GardenOfEden, CollidingPair, PeriodicWitness, ReplaceableWitness]


@dataclass
class Verdict:
    rule: Rule
    property: str
    boundary: Boundary
    holds: bool
    witness: Optional[Witness] = None
    stats: dict[str, Any] = field(default_factory=dict)
    note: str = ""

    def __bool__(self) -> bool:
        return self.holds

    @property
    def label(self) -> str:
        if self.note == "out of memory":
            return "OutOfMemory"
        name = "Surjective" if self.property == SURJECTIVE else "Injective"
        return name if self.holds else "Not" + name

    def to_json(self) -> dict[str, Any]:
        return {
            "rule": print_rule(self.rule),
            "wolfram": str(self.rule.wolfram),
            "property": self.property,
            "boundary": format_boundary(self.boundary),
            "verdict": self.holds,
            "label": self.label,
            "witness": witness_to_json(self.witness),
            "stats": dict(self.stats),
            "note": self.note,
        }

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> Verdict:
        rule = parse_rule(data["rule"])
        return cls(
            rule=rule,
            property=data["property"],
            boundary=parse_boundary(data["boundary"], rule),
            holds=bool(data["verdict"]),
            witness=witness_from_json(data.get("witness"), rule.p),
            stats=dict(data.get("stats") or {}),
            note=data.get("note", ""),
        )


def witness_to_json(witness: Optional[Witness]) -> Optional[dict[str, Any]]:
    if witness is None:
        return None
    if isinstance(witness, GardenOfEden):
        return {"kind": "garden_of_eden", "word": format_word(witness.word),
                "length": len(witness.word)}
    out: dict[str, Any] = {
        "first": format_word(witness.first),
        "second": format_word(witness.second),
        "image": format_word(witness.image),
    }
    if isinstance(witness, PeriodicWitness):
        out["kind"] = "periodic"
        out["path"] = format_word(witness.path)
        out["tuples"] = [[format_word(a), format_word(b)] for a, b in witness.tuples]
    elif isinstance(witness, ReplaceableWitness):
        out["kind"] = "replaceable"
    else:
        out["kind"] = "collision"
    return out


def witness_from_json(data: Optional[dict[str, Any]], p: int) -> Optional[Witness]:
    if data is None:
        return None
    kind = data.get("kind")
    if kind == "garden_of_eden":
        return GardenOfEden(parse_word(data["word"], p))
    if kind not in ("collision", "periodic", "replaceable"):
        raise ValueError(f"unknown witness kind {kind!r}")
    first, second, image = (parse_word(data[k], p) for k in ("first", "second", "image"))
    if kind == "periodic":
        tuples = tuple((parse_word(a, p), parse_word(b, p)) for a, b in data.get("tuples", []))
        return PeriodicWitness(first, second, image, parse_word(data.get("path", ""), p), tuples)
    if kind == "replaceable":
        return ReplaceableWitness(first, second, image)
    return CollidingPair(first, second, image)
