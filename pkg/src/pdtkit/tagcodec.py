"""Positional morphological tags.

A tag is a string of 15 characters, one per morphological category::

     1 part of speech          9 tense
     2 detailed part of speech 10 degree of comparison
     3 gender                  11 negation
     4 number                  12 voice
     5 case                    13 verbal aspect
     6 possessor's gender      14 aggregate
     7 possessor's number      15 variant, style, abbreviation
     8 person

``-`` means "not applicable" and ``X`` means "any value".  Decoding is purely
structural; whether a character is legal at a position is decided by a
:class:`TagsetSchema` so that corpora using unknown extensions still load.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Mapping

TAG_LENGTH = 15

POSITION_NAMES = (
    "pos",
    "subpos",
    "gender",
    "number",
    "case",
    "possgender",
    "possnumber",
    "person",
    "tense",
    "grade",
    "negation",
    "voice",
    "aspect",
    "aggregate",
    "variant",
)

NOT_APPLICABLE = "-"
ANY = "X"
FOREIGN = "F%"
SEGMENT = "S"

DEFAULT_SCHEMA_RESOURCE = "data/tagset.json"


class TagDecodeError(ValueError):
    """Raised when a string cannot be a positional tag at all."""


class WrongLength(TagDecodeError):
    def __init__(self, text: str):
        self.text = text
        self.length = len(text)
        # first index past the allowed length, or the first missing one
        self.index = min(self.length, TAG_LENGTH) + 1
        super().__init__(
            f"tag {text!r} has {self.length} characters, expected {TAG_LENGTH}"
        )


class IllegalCharacter(TagDecodeError):
    def __init__(self, text: str, index: int):
        self.text = text
        self.index = index
        super().__init__(
            f"tag {text!r} has illegal character {text[index - 1]!r} at position {index}"
        )


class TagKind(str, enum.Enum):
    FOREIGN = "foreign"
    SEGMENT_PREFIXAL = "segment-prefixal"
    SEGMENT_SUFFIXAL = "segment-suffixal"
    REGULAR = "regular"


class Aspect(str, enum.Enum):
    PERFECTIVE = "perfective"
    IMPERFECTIVE = "imperfective"
    BIASPECTUAL = "biaspectual"
    NONE = "none"


class Variant(str, enum.Enum):
    STANDARD = "standard"
    SUBSTANDARD = "substandard"
    ABBREVIATION = "abbreviation"
    NONE = "none"
    # a position-15 value no schema class claims
    UNKNOWN = "unknown"


_ASPECTS = {"P": Aspect.PERFECTIVE, "I": Aspect.IMPERFECTIVE, "B": Aspect.BIASPECTUAL}


@dataclass(frozen=True)
class PosTag:
    """A structurally valid 15-character tag.  Positions are 1-based."""

    raw: str

    def __post_init__(self):
        _check_structure(self.raw)

    def __str__(self):
        return self.raw

    def __getitem__(self, position: int) -> str:
        if not 1 <= position <= TAG_LENGTH:
            raise IndexError(f"tag position {position} out of range 1..{TAG_LENGTH}")
        return self.raw[position - 1]

    @property
    def positions(self) -> tuple[str, ...]:
        return tuple(self.raw)

    pos = property(lambda self: self.raw[0])
    subpos = property(lambda self: self.raw[1])
    gender = property(lambda self: self.raw[2])
    number = property(lambda self: self.raw[3])
    case = property(lambda self: self.raw[4])
    possgender = property(lambda self: self.raw[5])
    possnumber = property(lambda self: self.raw[6])
    person = property(lambda self: self.raw[7])
    tense = property(lambda self: self.raw[8])
    grade = property(lambda self: self.raw[9])
    negation = property(lambda self: self.raw[10])
    voice = property(lambda self: self.raw[11])
    aspect = property(lambda self: self.raw[12])
    aggregate = property(lambda self: self.raw[13])
    variant = property(lambda self: self.raw[14])


def _check_structure(text: str) -> None:
    if not isinstance(text, str):
        raise TypeError(f"tag must be str, not {type(text).__name__}")
    if len(text) != TAG_LENGTH:
        raise WrongLength(text)
    # isprintable() rejects every whitespace character except the plain space
    if text.isprintable() and " " not in text:
        return
    for i, ch in enumerate(text, start=1):
        if not ch.isprintable() or ch.isspace():
            raise IllegalCharacter(text, i)


@lru_cache(maxsize=65536)
def decode(text: str) -> PosTag:
    """Parse *text* into a :class:`PosTag`.

    Raises :class:`WrongLength` or :class:`IllegalCharacter`; both carry the
    offending 1-based ``index``.
    """
    return PosTag(text)


def encode(tag: PosTag) -> str:
    return tag.raw


@dataclass(frozen=True)
class TagsetSchema:
    """Allowed characters per position plus the classification tables."""

    allowed: tuple[frozenset[str], ...]
    segment_prefix: str = "2"
    variant_classes: Mapping[str, Variant] = field(default_factory=dict)

    def __post_init__(self):
        if len(self.allowed) != TAG_LENGTH:
            raise ValueError(f"schema must define {TAG_LENGTH} positions")
        for i, chars in enumerate(self.allowed, start=1):
            if NOT_APPLICABLE not in chars:
                raise ValueError(f"schema position {i} must allow '-'")
            if 3 <= i <= 12 and ANY not in chars:
                raise ValueError(f"schema position {i} must allow 'X'")
        if not {"P", "I", "B"} <= self.allowed[12]:
            raise ValueError("schema position 13 must allow P, I and B")

    @classmethod
    def from_json(cls, data: Mapping) -> "TagsetSchema":
        allowed = []
        for i in range(1, TAG_LENGTH + 1):
            try:
                chars = data[str(i)]
            except KeyError:
                raise ValueError(f"schema lacks position {i}") from None
            if not isinstance(chars, list) or any(
                not isinstance(c, str) or len(c) != 1 for c in chars
            ):
                raise ValueError(f"schema position {i} must be a list of single characters")
            allowed.append(frozenset(chars))
        classes = {}
        for name, chars in data.get("variantClasses", {}).items():
            variant = Variant(name)
            for c in chars:
                classes[c] = variant
        return cls(
            allowed=tuple(allowed),
            segment_prefix=data.get("segmentPrefix", "2"),
            variant_classes=classes,
        )

    @classmethod
    def load(cls, path: str | Path) -> "TagsetSchema":
        with open(path, encoding="utf-8") as f:
            return cls.from_json(json.load(f))


@lru_cache(maxsize=1)
def default_schema() -> TagsetSchema:
    text = resources.files("pdtkit").joinpath(DEFAULT_SCHEMA_RESOURCE).read_text("utf-8")
    return TagsetSchema.from_json(json.loads(text))


@dataclass(frozen=True)
class PositionViolation:
    position: int
    value: str
    allowed: str

    def __str__(self):
        return (
            f"position {self.position} ({POSITION_NAMES[self.position - 1]}): "
            f"{self.value!r} not in {self.allowed!r}"
        )


def validate(tag: PosTag, schema: TagsetSchema | None = None) -> list[PositionViolation]:
    """Positions whose value lies outside the schema; empty means valid."""
    schema = schema or default_schema()
    report = []
    for i, (ch, allowed) in enumerate(zip(tag.raw, schema.allowed), start=1):
        if ch not in allowed:
            report.append(PositionViolation(i, ch, "".join(sorted(allowed))))
    return report


@dataclass(frozen=True)
class TagQueryResult:
    kind: TagKind
    aspect: Aspect
    aggregate: str | None
    variant: Variant

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "aspect": self.aspect.value,
            "aggregate": self.aggregate,
            "variant": self.variant.value,
        }


def classify_variant(value: str, schema: TagsetSchema | None = None) -> Variant:
    if value == NOT_APPLICABLE:
        return Variant.NONE
    schema = schema or default_schema()
    return schema.variant_classes.get(value, Variant.UNKNOWN)


def classify(tag: PosTag, schema: TagsetSchema | None = None) -> TagQueryResult:
    schema = schema or default_schema()
    raw = tag.raw
    if raw[:2] == FOREIGN:
        kind = TagKind.FOREIGN
    elif raw[0] == SEGMENT:
        # every detailed POS other than the prefix code names the POS the
        # suffixal segment belongs to
        if raw[1] == schema.segment_prefix:
            kind = TagKind.SEGMENT_PREFIXAL
        else:
            kind = TagKind.SEGMENT_SUFFIXAL
    else:
        kind = TagKind.REGULAR
    return TagQueryResult(
        kind=kind,
        aspect=_ASPECTS.get(raw[12], Aspect.NONE),
        aggregate=None if raw[13] == NOT_APPLICABLE else raw[13],
        variant=classify_variant(raw[14], schema),
    )

