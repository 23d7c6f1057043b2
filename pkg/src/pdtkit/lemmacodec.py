"""Structured lemma identifiers.

A full lemma such as ``these_,a_^(^DD**teze)`` consists of

* the *lemma proper*: a base form with an optional homonym number
  (``stát-1``, ``stát-2``), and
* a *technical suffix*: ``_``-introduced groups carrying style flags
  (``_,a``) and comments (``_^(...)``).  A comment of the shape
  ``^XY**target`` marks the lemma as a variant of the basic lemma *target*.

Parsing is lossless: ``serialize(parse(s)) == s`` for every accepted ``s``.
Groups the parser does not recognise are kept verbatim.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import NamedTuple, Union

_INDEX_RE = re.compile(r"^(.+)-([1-9][0-9]*)$")
_VARIANT_RE = re.compile(r"^\^(..)\*\*(.+)$", re.DOTALL)
_COMMENT_OPEN = "^("


class LemmaError(ValueError):
    pass


class EmptyLemma(LemmaError):
    def __init__(self, text: str):
        self.text = text
        super().__init__(f"empty lemma in {text!r}")


class UnterminatedComment(LemmaError):
    def __init__(self, text: str, offset: int):
        self.text = text
        self.offset = offset
        super().__init__(f"unterminated comment at offset {offset} in lemma {text!r}")


class LemmaSyntaxError(LemmaError):
    pass


@dataclass(frozen=True)
class LemmaProper:
    base: str
    index: int | None = None

    def __str__(self):
        return self.base if self.index is None else f"{self.base}-{self.index}"


@dataclass(frozen=True)
class VariantRef:
    code: str
    target: str

    @property
    def target_proper(self) -> LemmaProper:
        return _split_index(self.target)


@dataclass(frozen=True)
class Flag:
    marker: str
    code: str

    def __str__(self):
        return f"_{self.marker}{self.code}"


@dataclass(frozen=True)
class Comment:
    raw: str

    def __str__(self):
        return f"_^({self.raw})"

    @cached_property
    def variant_ref(self) -> VariantRef | None:
        m = _VARIANT_RE.match(self.raw)
        return VariantRef(m.group(1), m.group(2)) if m else None


@dataclass(frozen=True)
class RawGroup:
    """Suffix material that is neither a two-character flag nor a comment."""

    text: str

    def __str__(self):
        return f"_{self.text}"


Group = Union[Flag, Comment, RawGroup]


@dataclass(frozen=True)
class Lemma:
    base: str
    index: int | None = None
    groups: tuple[Group, ...] = ()

    def __str__(self):
        return self.text

    @cached_property
    def text(self) -> str:
        return str(self.proper) + self.suffix

    @cached_property
    def suffix(self) -> str:
        return "".join(str(g) for g in self.groups)

    @cached_property
    def proper(self) -> LemmaProper:
        return LemmaProper(self.base, self.index)

    @property
    def flags(self) -> list[Flag]:
        return [g for g in self.groups if isinstance(g, Flag)]

    @property
    def comments(self) -> list[Comment]:
        return [g for g in self.groups if isinstance(g, Comment)]

    @property
    def variant_refs(self) -> list[VariantRef]:
        return [c.variant_ref for c in self.comments if c.variant_ref is not None]


def _split_index(proper: str) -> LemmaProper:
    m = _INDEX_RE.match(proper)
    if m:
        return LemmaProper(m.group(1), int(m.group(2)))
    return LemmaProper(proper)


def _split_groups(text: str, start: int) -> list[Group]:
    """Tokenize the technical suffix beginning at ``text[start] == '_'``."""
    groups: list[Group] = []
    pos = start
    n = len(text)
    while pos < n:
        # text[pos] is always '_' here
        body = pos + 1
        if text.startswith(_COMMENT_OPEN, body):
            depth = 0
            i = body + 1
            while i < n:
                ch = text[i]
                if ch == "(":
                    depth += 1
                elif ch == ")":
                    depth -= 1
                    if depth == 0:
                        break
                i += 1
            if i >= n:
                raise UnterminatedComment(text, pos)
            groups.append(Comment(text[body + 2 : i]))
            pos = i + 1
            if pos < n and text[pos] != "_":
                raise LemmaSyntaxError(
                    f"unexpected {text[pos]!r} after comment at offset {pos} in lemma {text!r}"
                )
            continue
        end = text.find("_", body)
        end = n if end < 0 else end
        chunk = text[body:end]
        if len(chunk) == 2:
            groups.append(Flag(chunk[0], chunk[1]))
        else:
            groups.append(RawGroup(chunk))
        pos = end
    return groups


@lru_cache(maxsize=262144)
def parse(text: str) -> Lemma:
    """Parse a full lemma string.

    >>> parse("stát-1").proper
    LemmaProper(base='stát', index=1)
    """
    if not text:
        raise EmptyLemma(text)
    if any(ch.isspace() for ch in text):
        raise LemmaSyntaxError(f"whitespace in lemma {text!r}")
    cut = text.find("_")
    proper_text = text if cut < 0 else text[:cut]
    if not proper_text:
        raise EmptyLemma(text)
    proper = _split_index(proper_text)
    groups = () if cut < 0 else tuple(_split_groups(text, cut))
    return Lemma(proper.base, proper.index, groups)


def serialize(lemma: Lemma) -> str:
    return lemma.text


def lemma_proper(lemma: Lemma) -> LemmaProper:
    return lemma.proper


class LemmaComparison(NamedTuple):
    same_base: bool
    same_index: bool
    same_proper: bool
    same_technical_suffix: bool


def compare(a: Lemma, b: Lemma) -> LemmaComparison:
    same_base = a.base == b.base
    same_index = a.index == b.index
    return LemmaComparison(
        same_base=same_base,
        same_index=same_index,
        same_proper=same_base and same_index,
        same_technical_suffix=a.suffix == b.suffix,
    )
