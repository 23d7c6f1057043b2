"""Morphological dictionaries of lemma/tag/form triples.

File format: UTF-8, one triple per line, three TAB-separated fields in the
order ``lemma<TAB>tag<TAB>form``; lines starting with ``#`` are comments.
Dictionaries distributed in another column order have to be converted first.

Triples are grouped into paradigms keyed by the full lemma text.  Across
dictionary versions paradigms are aligned by lemma proper (base + homonym
number), so an edit that only touches the technical suffix counts as a
change of one paradigm rather than a removal plus an addition.
"""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from . import lemmacodec, tagcodec
from .lemmacodec import Lemma, LemmaError
from .tagcodec import PosTag, TagDecodeError

log = logging.getLogger(__name__)

Entry = tuple[str, PosTag]
Analysis = tuple[Lemma, PosTag]


class DictionaryError(ValueError):
    pass


class MalformedLine(DictionaryError):
    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class TagLineError(MalformedLine, TagDecodeError):
    """A tag that does not decode, reported with its line number."""


class FrozenDictionary(DictionaryError):
    pass


@dataclass(frozen=True)
class Paradigm:
    lemma: Lemma
    entries: frozenset[Entry]

    def __post_init__(self):
        if not self.entries:
            raise ValueError(f"paradigm {self.lemma} has no entries")

    def triples(self) -> Iterator[tuple[str, str, str]]:
        for form, tag in self.entries:
            yield self.lemma.text, tag.raw, form


class Dictionary:
    """Paradigms plus a form index for analysis lookup.

    Built with :meth:`add`, then :meth:`freeze`-d; only frozen dictionaries
    are handed to queries.
    """

    def __init__(self):
        self._lemmas: dict[str, Lemma] = {}
        self._entries: dict[str, set[Entry]] = {}
        self.form_index: dict[str, set[tuple[str, str]]] = {}
        # form -> analyses with parsed objects, the hot path for auditing
        self._analyses: dict[str, list[Analysis]] = {}
        self.duplicates = 0
        self.frozen = False
        self._paradigms: dict[str, Paradigm] | None = None

    def add(self, lemma: Lemma | str, tag: PosTag | str, form: str) -> bool:
        """Insert one triple; returns False if it was already present."""
        if self.frozen:
            raise FrozenDictionary("dictionary is frozen")
        if isinstance(lemma, str):
            lemma = lemmacodec.parse(lemma)
        if isinstance(tag, str):
            tag = tagcodec.decode(tag)
        key = lemma.text
        entries = self._entries.get(key)
        if entries is None:
            self._lemmas[key] = lemma
            entries = self._entries[key] = set()
        entry = (form, tag)
        if entry in entries:
            self.duplicates += 1
            return False
        entries.add(entry)
        self.form_index.setdefault(form, set()).add((key, tag.raw))
        self._analyses.setdefault(form, []).append((self._lemmas[key], tag))
        return True

    def freeze(self) -> "Dictionary":
        self.frozen = True
        self._paradigms = None
        return self

    @property
    def paradigms(self) -> dict[str, Paradigm]:
        if self._paradigms is None or not self.frozen:
            self._paradigms = {
                key: Paradigm(self._lemmas[key], frozenset(entries))
                for key, entries in self._entries.items()
            }
        return self._paradigms

    def __len__(self):
        return len(self._entries)

    def __contains__(self, lemma: str):
        return lemma in self._entries

    def triples(self) -> Iterator[tuple[str, str, str]]:
        for key, entries in self._entries.items():
            for form, tag in entries:
                yield key, tag.raw, form

    def triple_set(self) -> set[tuple[str, str, str]]:
        return set(self.triples())

    def lookup(self, form: str) -> list[Analysis]:
        return self._analyses.get(form, [])

    def __eq__(self, other):
        if not isinstance(other, Dictionary):
            return NotImplemented
        return self.triple_set() == other.triple_set()

    __hash__ = None


def from_triples(triples: Iterable[tuple[str, str, str]]) -> Dictionary:
    d = Dictionary()
    for lemma, tag, form in triples:
        d.add(lemma, tag, form)
    return d.freeze()


def load(stream: IO[str] | Iterable[str]) -> Dictionary:
    d = Dictionary()
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\r\n")
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 3:
            raise MalformedLine(lineno, f"expected 3 TAB-separated fields, got {len(fields)}")
        lemma_text, tag_text, form = fields
        if not form:
            raise MalformedLine(lineno, "empty form")
        try:
            tag = tagcodec.decode(tag_text)
        except TagDecodeError as e:
            raise TagLineError(lineno, str(e)) from e
        try:
            lemma = lemmacodec.parse(lemma_text)
        except LemmaError as e:
            raise MalformedLine(lineno, str(e)) from e
        d.add(lemma, tag, form)
    if d.duplicates:
        log.warning("collapsed %d duplicate triples", d.duplicates)
    return d.freeze()


def save(d: Dictionary, stream: IO[str]) -> None:
    for lemma, tag, form in sorted(d.triples()):
        stream.write(f"{lemma}\t{tag}\t{form}\n")


def analyses(d: Dictionary, form: str) -> set[Analysis]:
    return set(d.lookup(form))


# --- consistency checks ---------------------------------------------------


@dataclass(frozen=True)
class DuplicateTagForm:
    lemma: str
    tag: str
    forms: tuple[str, ...]

    kind = "duplicate-tag-form"

    def to_json(self):
        return {"kind": self.kind, "lemma": self.lemma, "tag": self.tag, "forms": list(self.forms)}

    def __str__(self):
        return f"{self.lemma}: tag {self.tag} has several forms: {', '.join(self.forms)}"


@dataclass(frozen=True)
class NumberingAdvisory:
    base: str
    lemmas: tuple[str, ...]

    kind = "numbering-advisory"

    def to_json(self):
        return {"kind": self.kind, "base": self.base, "lemmas": list(self.lemmas)}

    def __str__(self):
        return (
            f"{self.base}: {', '.join(self.lemmas)} are numbered apart but share "
            "part of speech, gender and aspect"
        )


def _signature(entries: Iterable[Entry]) -> tuple[frozenset, frozenset, frozenset]:
    pos, gender, aspect = set(), set(), set()
    for _, tag in entries:
        pos.add(tag.raw[0])
        gender.add(tag.raw[2])
        aspect.add(tag.raw[12])
    return frozenset(pos), frozenset(gender), frozenset(aspect)


def check(d: Dictionary, numbering: bool = True) -> list[DuplicateTagForm | NumberingAdvisory]:
    """Paradigms with one tag spelled several ways, and, if *numbering* is
    on, homonym numbers that no tag difference in POS, gender or aspect
    justifies."""
    findings: list[DuplicateTagForm | NumberingAdvisory] = []
    for key, paradigm in sorted(d.paradigms.items()):
        by_tag: dict[str, set[str]] = defaultdict(set)
        for form, tag in paradigm.entries:
            by_tag[tag.raw].add(form)
        for tag, forms in sorted(by_tag.items()):
            if len(forms) > 1:
                findings.append(DuplicateTagForm(key, tag, tuple(sorted(forms))))
    if not numbering:
        return findings

    # base -> index -> entries of every paradigm with that lemma proper
    homonyms: dict[str, dict[int | None, set[Entry]]] = defaultdict(lambda: defaultdict(set))
    for paradigm in d.paradigms.values():
        homonyms[paradigm.lemma.base][paradigm.lemma.index] |= paradigm.entries
    for base in sorted(homonyms):
        numbered = homonyms[base]
        if len(numbered) < 2:
            continue
        classes: dict[tuple, list[int | None]] = defaultdict(list)
        for index, entries in numbered.items():
            classes[_signature(entries)].append(index)
        for indices in classes.values():
            if len(indices) > 1:
                names = sorted(str(lemmacodec.LemmaProper(base, i)) for i in indices)
                findings.append(NumberingAdvisory(base, tuple(names)))
    return findings


# --- versions -------------------------------------------------------------

TABLE_LABELS = {
    "paradigms_old": "Paradigms in original version",
    "paradigms_new": "Paradigms in new version",
    "removed": "Paradigms removed",
    "added": "Paradigms added",
    "changed": "Paradigms changed",
}


@dataclass
class DictDiff:
    paradigms_old: int
    paradigms_new: int
    removed: list[str] = field(default_factory=list)
    added: list[str] = field(default_factory=list)
    changed: list[str] = field(default_factory=list)

    @property
    def is_empty(self) -> bool:
        return not (self.removed or self.added or self.changed)

    def counts(self) -> dict[str, int]:
        return {
            "paradigms_old": self.paradigms_old,
            "paradigms_new": self.paradigms_new,
            "removed": len(self.removed),
            "added": len(self.added),
            "changed": len(self.changed),
        }

    def to_json(self) -> dict:
        out: dict = {"paradigms_old": self.paradigms_old, "paradigms_new": self.paradigms_new}
        for name in ("removed", "added", "changed"):
            keys = getattr(self, name)
            out[name] = {"count": len(keys), "keys": list(keys)}
        return out

    def rows(self) -> list[tuple[str, int]]:
        return [(TABLE_LABELS[k], v) for k, v in self.counts().items()]


def _by_proper(d: Dictionary) -> dict[str, dict[str, frozenset]]:
    grouped: dict[str, dict[str, frozenset]] = defaultdict(dict)
    for key, paradigm in d.paradigms.items():
        entries = frozenset((form, tag.raw) for form, tag in paradigm.entries)
        grouped[str(paradigm.lemma.proper)][key] = entries
    return grouped


def diff(old: Dictionary, new: Dictionary) -> DictDiff:
    a, b = _by_proper(old), _by_proper(new)
    result = DictDiff(len(old), len(new))
    result.removed = sorted(a.keys() - b.keys())
    result.added = sorted(b.keys() - a.keys())
    result.changed = sorted(k for k in a.keys() & b.keys() if a[k] != b[k])
    return result


@dataclass(frozen=True)
class Stats:
    paradigms: int
    forms: int
    triples: int
    duplicates: int = 0

    def to_json(self):
        return {
            "paradigms": self.paradigms,
            "forms": self.forms,
            "triples": self.triples,
            "duplicates": self.duplicates,
        }

    def rows(self) -> list[tuple[str, int]]:
        return [("Paradigms", self.paradigms), ("Forms", self.forms), ("Triples", self.triples)]


def stats(d: Dictionary) -> Stats:
    return Stats(
        paradigms=len(d),
        forms=len(d.form_index),
        triples=sum(len(v) for v in d.form_index.values()),
        duplicates=d.duplicates,
    )
