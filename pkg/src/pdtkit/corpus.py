"""Streaming reader for the vertical corpus format.

::

    #doc id=ln94200_123
    #sent id=s1
    Byl<TAB>být<TAB>VpYS---XR-AAI--
    by<TAB>být<TAB>Vc-------------

A blank line closes the sentence.  Lines starting with ``#`` that contain no
TAB are directives or comments; token lines always have three TAB-separated
fields (form, lemma, tag), so a token whose form is ``#`` is still read as a
token.  Sentences without a ``#sent`` line get running numbers as ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO, Iterable, Iterator, NamedTuple

from . import lemmacodec, tagcodec
from .lemmacodec import Lemma, LemmaError
from .tagcodec import PosTag, TagDecodeError


class Location(NamedTuple):
    doc: str
    sent: str
    token: int

    def __str__(self):
        return f"doc {self.doc!r} sent {self.sent!r} token {self.token}"


@dataclass(frozen=True)
class TokenAnalysis:
    form: str
    lemma: Lemma
    tag: PosTag
    location: Location = Location("", "", 0)

    def __post_init__(self):
        if not self.form:
            raise ValueError("token form must be non-empty")
        if self.location.token < 0:
            raise ValueError("token index must be non-negative")


class CorpusError(ValueError):
    def __init__(self, line: int, location: Location, reason: str):
        self.line = line
        self.location = location
        self.reason = reason
        super().__init__(f"line {line}, {location}: {reason}")


def _directive_id(line: str, prefix: str) -> str | None:
    if not line.startswith(prefix):
        return None
    rest = line[len(prefix):].strip()
    if rest.startswith("id="):
        return rest[3:]
    return rest


def read_vertical(stream: IO[str] | Iterable[str]) -> Iterator[TokenAnalysis]:
    doc = ""
    sent: str | None = None
    auto_sent = 0
    token = 0
    parse_lemma = lemmacodec.parse
    decode = tagcodec.decode
    for lineno, line in enumerate(stream, start=1):
        line = line.rstrip("\r\n")
        if not line:
            sent = None
            continue
        if line[0] == "#" and "\t" not in line:
            doc_id = _directive_id(line, "#doc")
            if doc_id is not None:
                doc, sent, auto_sent = doc_id, None, 0
                continue
            sent_id = _directive_id(line, "#sent")
            if sent_id is not None:
                sent, token = sent_id, 0
            continue
        if sent is None:
            auto_sent += 1
            sent, token = str(auto_sent), 0
        fields = line.split("\t")
        loc = Location(doc, sent, token)
        if len(fields) != 3:
            raise CorpusError(lineno, loc, f"expected 3 TAB-separated fields, got {len(fields)}")
        form, lemma_text, tag_text = fields
        try:
            analysis = TokenAnalysis(form, parse_lemma(lemma_text), decode(tag_text), loc)
        except (TagDecodeError, LemmaError, ValueError) as e:
            raise CorpusError(lineno, loc, str(e)) from e
        yield analysis
        token += 1
