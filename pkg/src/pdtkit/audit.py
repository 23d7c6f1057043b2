"""Corpus/dictionary consistency audit.

Every corpus token is compared with the dictionary analyses of its form and
put into the first of ten ordered classes that applies.  For a token with
lemma ``L`` and tag ``T`` and a dictionary analysis ``(l, t)``:

* *comment change*: ``t == T``, same lemma proper, different technical suffix
* *sense change*: ``t == T``, same base, different homonym number
* *tag change*: ``l == L`` as full text, ``t != T``

"Unique" classes need exactly one analysis satisfying the relation,
"Multiple" classes at least two.  The two "rest" classes only look at how
many analyses the form has.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from typing import Iterable

from .corpus import Location, TokenAnalysis
from .dictionary import Analysis, Dictionary

DEFAULT_SAMPLES = 20
_CENT = Decimal("0.01")


class InconsistencyClass(enum.IntEnum):
    FULL_MATCH = 1
    UNIQUE_LEMMA_COMMENT_CHANGE = 2
    UNIQUE_LEMMA_SENSE_CHANGE = 3
    UNIQUE_LEMMA_TAG_CHANGE = 4
    UNIQUE_REST = 5
    MULTIPLE_LEMMA_COMMENT_CHANGE = 6
    MULTIPLE_LEMMA_SENSE_CHANGE = 7
    MULTIPLE_LEMMA_TAG_CHANGE = 8
    MULTIPLE_REST = 9
    NO_ANALYSIS = 10

    @property
    def key(self) -> str:
        return self.name.lower()

    @property
    def label(self) -> str:
        return _LABELS[self]


_LABELS = {
    InconsistencyClass.FULL_MATCH: "Full matches",
    InconsistencyClass.UNIQUE_LEMMA_COMMENT_CHANGE: "Unique lemma, comment change",
    InconsistencyClass.UNIQUE_LEMMA_SENSE_CHANGE: "Unique lemma, sense change",
    InconsistencyClass.UNIQUE_LEMMA_TAG_CHANGE: "Unique, tag change",
    InconsistencyClass.UNIQUE_REST: "Unique rest",
    InconsistencyClass.MULTIPLE_LEMMA_COMMENT_CHANGE: "Multiple lemma, comment change",
    InconsistencyClass.MULTIPLE_LEMMA_SENSE_CHANGE: "Multiple lemma, sense change",
    InconsistencyClass.MULTIPLE_LEMMA_TAG_CHANGE: "Multiple, tag change",
    InconsistencyClass.MULTIPLE_REST: "Multiple rest",
    InconsistencyClass.NO_ANALYSIS: "No analysis",
}

IC = InconsistencyClass


def _choose(n_analyses: int, full: int, comment: int, sense: int, tag: int) -> IC:
    if full:
        return IC.FULL_MATCH
    if comment == 1:
        return IC.UNIQUE_LEMMA_COMMENT_CHANGE
    if sense == 1:
        return IC.UNIQUE_LEMMA_SENSE_CHANGE
    if tag == 1:
        return IC.UNIQUE_LEMMA_TAG_CHANGE
    if n_analyses == 1:
        return IC.UNIQUE_REST
    if comment >= 2:
        return IC.MULTIPLE_LEMMA_COMMENT_CHANGE
    if sense >= 2:
        return IC.MULTIPLE_LEMMA_SENSE_CHANGE
    if tag >= 2:
        return IC.MULTIPLE_LEMMA_TAG_CHANGE
    if n_analyses >= 2:
        return IC.MULTIPLE_REST
    return IC.NO_ANALYSIS


def _relations(token: TokenAnalysis, candidates: list[Analysis]):
    lemma, tag = token.lemma, token.tag
    text, base, index = lemma.text, lemma.base, lemma.index
    full, comment, sense, retag = [], [], [], []
    for cand in candidates:
        l, t = cand
        same_tag = t.raw == tag.raw
        if l.text == text:
            (full if same_tag else retag).append(cand)
        elif same_tag and l.base == base:
            if l.index == index:
                comment.append(cand)
            else:
                sense.append(cand)
    return full, comment, sense, retag


def classify(token: TokenAnalysis, d: Dictionary) -> IC:
    candidates = d.lookup(token.form)
    if not candidates:
        return IC.NO_ANALYSIS
    full, comment, sense, retag = _relations(token, candidates)
    return _choose(len(candidates), len(full), len(comment), len(sense), len(retag))


@dataclass(frozen=True)
class Explanation:
    cls: IC
    analyses: int
    full_match: tuple[tuple[str, str], ...]
    comment_change: tuple[tuple[str, str], ...]
    sense_change: tuple[tuple[str, str], ...]
    tag_change: tuple[tuple[str, str], ...]

    def to_json(self) -> dict:
        return {
            "class": self.cls.key,
            "analyses": self.analyses,
            "full_match": [list(a) for a in self.full_match],
            "comment_change": [list(a) for a in self.comment_change],
            "sense_change": [list(a) for a in self.sense_change],
            "tag_change": [list(a) for a in self.tag_change],
        }


def explain(token: TokenAnalysis, d: Dictionary) -> Explanation:
    candidates = d.lookup(token.form)
    rels = _relations(token, candidates)

    def texts(items):
        return tuple(sorted((l.text, t.raw) for l, t in items))

    full, comment, sense, retag = rels
    return Explanation(
        cls=_choose(len(candidates), *map(len, rels)),
        analyses=len(candidates),
        full_match=texts(full),
        comment_change=texts(comment),
        sense_change=texts(sense),
        tag_change=texts(retag),
    )


def percentage(count: int, total: int) -> Decimal:
    if not total:
        return Decimal("0.00")
    return (Decimal(count) * 100 / Decimal(total)).quantize(_CENT, rounding=ROUND_HALF_UP)


@dataclass
class AuditReport:
    counts: dict[IC, int] = field(default_factory=lambda: {c: 0 for c in IC})
    samples: dict[IC, list[tuple[Location, str]]] = field(
        default_factory=lambda: {c: [] for c in IC}
    )
    max_samples: int = DEFAULT_SAMPLES

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def percentages(self) -> dict[IC, Decimal]:
        total = self.total
        return {c: percentage(n, total) for c, n in self.counts.items()}

    @property
    def consistent(self) -> bool:
        return self.counts[IC.FULL_MATCH] == self.total

    def add(self, cls: IC, location: Location, form: str) -> None:
        self.counts[cls] += 1
        bucket = self.samples[cls]
        if len(bucket) < self.max_samples:
            bucket.append((location, form))

    def merge(self, later: "AuditReport") -> "AuditReport":
        """Combine with the report of a later part of the same stream."""
        out = AuditReport(max_samples=self.max_samples)
        for c in IC:
            out.counts[c] = self.counts[c] + later.counts[c]
            out.samples[c] = (self.samples[c] + later.samples[c])[: self.max_samples]
        return out

    def rows(self, include_empty: bool = False) -> list[tuple[str, str, int]]:
        pct = self.percentages
        return [
            (c.label, f"{pct[c]}%", self.counts[c])
            for c in IC
            if include_empty or self.counts[c]
        ]

    def to_json(self) -> dict:
        pct = self.percentages
        return {
            "total": self.total,
            "classes": [
                {
                    "class": c.key,
                    "label": c.label,
                    "count": self.counts[c],
                    "percent": str(pct[c]),
                    "samples": [
                        {"doc": loc.doc, "sent": loc.sent, "token": loc.token, "form": form}
                        for loc, form in self.samples[c]
                    ],
                }
                for c in IC
            ],
        }


def audit_corpus(
    tokens: Iterable[TokenAnalysis], d: Dictionary, max_samples: int = DEFAULT_SAMPLES
) -> AuditReport:
    report = AuditReport(max_samples=max_samples)
    for token in tokens:
        report.add(classify(token, d), token.location, token.form)
    return report
