"""Multi-layer treebank documents and their validators.

A document has four layers, each linked to the one below it:

* ``w`` raw tokens ``{"id", "text"}``
* ``m`` morphological tokens ``{"id", "sent", "wRefs", "form", "lemma", "tag"}``
* ``a`` surface-syntax nodes ``{"id", "sent", "mRef", "parentId", "afun", "ord"}``
* ``t`` deep-syntax nodes ``{"id", "sent", "aRefs", "functor", "frameRef",
  "generated", "deepOrd", "attrs"}``

``parentId`` is ``null`` for a root.  The t-layer parent lives in
``attrs["parent"]``; every other attribute in ``attrs`` (coreference,
grammatemes, ...) is carried along untouched.

An m-token may cover no w-token (an inserted word) or several; a w-token may
be split over several m-tokens.  Of the cross-layer references only m->w is
checked while loading, since an m-layer that does not sit on the text is not
a document; dangling a->m and t->a references are reported by
:func:`validate_links`.
"""

from __future__ import annotations

import json
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from importlib import resources
from typing import IO, Any, Iterable, Mapping

from . import lemmacodec, tagcodec
from .lemmacodec import Lemma, LemmaError, LemmaProper
from .tagcodec import PosTag, TagDecodeError

ARGUMENT_FUNCTORS = ("ACT", "PAT", "ADDR", "ORIG", "EFF")


class SchemaError(ValueError):
    def __init__(self, path: str, reason: str):
        self.path = path
        self.reason = reason
        super().__init__(f"{path}: {reason}")


class DuplicateFrameId(SchemaError):
    pass


@dataclass(frozen=True)
class WToken:
    id: str
    text: str


@dataclass(frozen=True)
class MToken:
    id: str
    sent: str
    wRefs: tuple[str, ...]
    form: str
    lemma: Lemma
    tag: PosTag


@dataclass(frozen=True)
class ANode:
    id: str
    sent: str
    mRef: str
    parentId: str | None
    afun: str
    ord: int


@dataclass(frozen=True)
class TNode:
    id: str
    sent: str
    aRefs: tuple[str, ...]
    functor: str
    frameRef: str | None = None
    generated: bool = False
    deepOrd: int = 0
    attrs: Mapping[str, Any] = field(default_factory=dict)

    @property
    def parent(self) -> str | None:
        return self.attrs.get("parent")


@dataclass(frozen=True)
class LayerDocument:
    w: tuple[WToken, ...] = ()
    m: tuple[MToken, ...] = ()
    a: tuple[ANode, ...] = ()
    t: tuple[TNode, ...] = ()
    id: str = ""

    def sentences(self, layer: str) -> dict[str, list]:
        out: dict[str, list] = defaultdict(list)
        for node in getattr(self, layer):
            out[node.sent].append(node)
        return out


@dataclass(frozen=True)
class Violation:
    kind: str
    layer: str
    node: str
    message: str
    sent: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "layer": self.layer,
            "node": self.node,
            "sent": self.sent,
            "message": self.message,
        }

    def __str__(self):
        where = f"{self.layer}:{self.node}" if self.node else self.layer
        if self.sent:
            where += f" (sent {self.sent})"
        return f"{self.kind} at {where}: {self.message}"


# --- loading ----------------------------------------------------------------


def _get(obj: Mapping, key: str, typ, path: str, default=...):
    if key not in obj:
        if default is ...:
            raise SchemaError(f"{path}.{key}", "missing")
        return default
    value = obj[key]
    if typ is int and isinstance(value, bool):
        raise SchemaError(f"{path}.{key}", "expected integer")
    if not isinstance(value, typ):
        names = typ.__name__ if isinstance(typ, type) else "/".join(t.__name__ for t in typ)
        raise SchemaError(f"{path}.{key}", f"expected {names}, got {type(value).__name__}")
    return value


def _str_list(obj: Mapping, key: str, path: str) -> tuple[str, ...]:
    items = _get(obj, key, list, path, [])
    for i, item in enumerate(items):
        if not isinstance(item, str):
            raise SchemaError(f"{path}.{key}[{i}]", "expected string id")
    return tuple(items)


def _layer(data: Mapping, name: str, required: bool) -> list:
    if name not in data:
        if required:
            raise SchemaError(f"$.{name}", "missing layer")
        return []
    nodes = data[name]
    if not isinstance(nodes, list):
        raise SchemaError(f"$.{name}", "layer must be an array")
    for i, node in enumerate(nodes):
        if not isinstance(node, dict):
            raise SchemaError(f"$.{name}[{i}]", "node must be an object")
    return nodes


def document_from_json(data: Any) -> LayerDocument:
    if not isinstance(data, dict):
        raise SchemaError("$", "document must be an object")
    w = []
    for i, node in enumerate(_layer(data, "w", True)):
        path = f"$.w[{i}]"
        w.append(WToken(_get(node, "id", str, path), _get(node, "text", str, path)))
    w_ids = {tok.id for tok in w}

    m = []
    for i, node in enumerate(_layer(data, "m", True)):
        path = f"$.m[{i}]"
        node_id = _get(node, "id", str, path)
        refs = _str_list(node, "wRefs", path)
        for j, ref in enumerate(refs):
            if ref not in w_ids:
                raise SchemaError(f"{path}.wRefs[{j}]", f"m-token {node_id} cites unknown w id {ref!r}")
        lemma_text = _get(node, "lemma", str, path)
        tag_text = _get(node, "tag", str, path)
        try:
            lemma = lemmacodec.parse(lemma_text)
        except LemmaError as e:
            raise SchemaError(f"{path}.lemma", f"m-token {node_id}: {e}") from e
        try:
            tag = tagcodec.decode(tag_text)
        except TagDecodeError as e:
            raise SchemaError(f"{path}.tag", f"m-token {node_id}: {e}") from e
        m.append(MToken(node_id, _get(node, "sent", str, path), refs,
                        _get(node, "form", str, path), lemma, tag))

    a = []
    for i, node in enumerate(_layer(data, "a", False)):
        path = f"$.a[{i}]"
        a.append(ANode(
            id=_get(node, "id", str, path),
            sent=_get(node, "sent", str, path),
            mRef=_get(node, "mRef", str, path),
            parentId=_get(node, "parentId", (str, type(None)), path, None),
            afun=_get(node, "afun", str, path),
            ord=_get(node, "ord", int, path),
        ))

    t = []
    for i, node in enumerate(_layer(data, "t", False)):
        path = f"$.t[{i}]"
        attrs = _get(node, "attrs", dict, path, {})
        parent = attrs.get("parent")
        if parent is not None and not isinstance(parent, str):
            raise SchemaError(f"{path}.attrs.parent", "expected string id or null")
        t.append(TNode(
            id=_get(node, "id", str, path),
            sent=_get(node, "sent", str, path),
            aRefs=_str_list(node, "aRefs", path),
            functor=_get(node, "functor", str, path),
            frameRef=_get(node, "frameRef", (str, type(None)), path, None),
            generated=_get(node, "generated", bool, path, False),
            deepOrd=_get(node, "deepOrd", int, path),
            attrs=dict(attrs),
        ))
    doc_id = data.get("id", "")
    if not isinstance(doc_id, str):
        raise SchemaError("$.id", "expected string")
    return LayerDocument(tuple(w), tuple(m), tuple(a), tuple(t), doc_id)


def load_document(stream: IO[str]) -> LayerDocument:
    try:
        data = json.load(stream)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"invalid JSON: {e}") from e
    return document_from_json(data)


def document_to_json(doc: LayerDocument) -> dict:
    return {
        "id": doc.id,
        "w": [{"id": x.id, "text": x.text} for x in doc.w],
        "m": [
            {"id": x.id, "sent": x.sent, "wRefs": list(x.wRefs), "form": x.form,
             "lemma": x.lemma.text, "tag": x.tag.raw}
            for x in doc.m
        ],
        "a": [
            {"id": x.id, "sent": x.sent, "mRef": x.mRef, "parentId": x.parentId,
             "afun": x.afun, "ord": x.ord}
            for x in doc.a
        ],
        "t": [
            {"id": x.id, "sent": x.sent, "aRefs": list(x.aRefs), "functor": x.functor,
             "frameRef": x.frameRef, "generated": x.generated, "deepOrd": x.deepOrd,
             "attrs": dict(x.attrs)}
            for x in doc.t
        ],
    }


# --- functors and valency -----------------------------------------------------


@dataclass(frozen=True)
class FunctorSchema:
    arguments: frozenset[str]
    adjuncts: frozenset[str]
    other: frozenset[str] = frozenset()

    @property
    def all(self) -> frozenset[str]:
        return self.arguments | self.adjuncts | self.other

    def __contains__(self, functor: str) -> bool:
        return functor in self.arguments or functor in self.adjuncts or functor in self.other

    @classmethod
    def from_json(cls, data: Any) -> "FunctorSchema":
        if not isinstance(data, dict):
            raise SchemaError("$", "functor schema must be an object")
        parts = {}
        for key in ("arguments", "adjuncts", "other"):
            items = data.get(key, [])
            if not isinstance(items, list) or not all(isinstance(x, str) for x in items):
                raise SchemaError(f"$.{key}", "expected an array of functor names")
            parts[key] = frozenset(items)
        return cls(**parts)

    @classmethod
    def load(cls, stream: IO[str]) -> "FunctorSchema":
        return cls.from_json(json.load(stream))


_default_functors: FunctorSchema | None = None


def default_functors() -> FunctorSchema:
    global _default_functors
    if _default_functors is None:
        text = resources.files("pdtkit").joinpath("data/functors.json").read_text("utf-8")
        _default_functors = FunctorSchema.from_json(json.loads(text))
    return _default_functors


@dataclass(frozen=True)
class Slot:
    functor: str
    obligatory: bool = False


@dataclass(frozen=True)
class ValencyFrame:
    id: str
    head: LemmaProper
    slots: tuple[Slot, ...] = ()

    @property
    def obligatory(self) -> frozenset[str]:
        return frozenset(s.functor for s in self.slots if s.obligatory)


class ValencyLexicon:
    def __init__(self, frames: Iterable[ValencyFrame] = ()):
        self.frames: dict[str, ValencyFrame] = {}
        self.by_lemma: dict[LemmaProper, list[ValencyFrame]] = defaultdict(list)
        for frame in frames:
            if frame.id in self.frames:
                raise DuplicateFrameId(f"$[id={frame.id}]", f"duplicate frame id {frame.id!r}")
            self.frames[frame.id] = frame
            self.by_lemma[frame.head].append(frame)

    def __len__(self):
        return len(self.frames)

    def __contains__(self, frame_id: str):
        return frame_id in self.frames

    def get(self, frame_id: str) -> ValencyFrame | None:
        return self.frames.get(frame_id)


def lexicon_from_json(data: Any, functors: FunctorSchema | None = None) -> ValencyLexicon:
    if not isinstance(data, list):
        raise SchemaError("$", "lexicon must be an array of frames")
    frames = []
    seen: dict[str, int] = {}
    for i, obj in enumerate(data):
        path = f"$[{i}]"
        if not isinstance(obj, dict):
            raise SchemaError(path, "frame must be an object")
        frame_id = _get(obj, "id", str, path)
        if frame_id in seen:
            raise DuplicateFrameId(f"{path}.id", f"frame id {frame_id!r} already used at $[{seen[frame_id]}]")
        seen[frame_id] = i
        try:
            head = lemmacodec.parse(_get(obj, "lemma", str, path)).proper
        except LemmaError as e:
            raise SchemaError(f"{path}.lemma", str(e)) from e
        slots = []
        for j, slot in enumerate(_get(obj, "slots", list, path, [])):
            spath = f"{path}.slots[{j}]"
            if not isinstance(slot, dict):
                raise SchemaError(spath, "slot must be an object")
            functor = _get(slot, "functor", str, spath)
            if functors is not None and functor not in functors:
                raise SchemaError(f"{spath}.functor", f"unknown functor {functor!r}")
            slots.append(Slot(functor, _get(slot, "obligatory", bool, spath, False)))
        frames.append(ValencyFrame(frame_id, head, tuple(slots)))
    return ValencyLexicon(frames)


def load_lexicon(stream: IO[str], functors: FunctorSchema | None = None) -> ValencyLexicon:
    try:
        data = json.load(stream)
    except json.JSONDecodeError as e:
        raise SchemaError("$", f"invalid JSON: {e}") from e
    return lexicon_from_json(data, functors)


# --- validators ---------------------------------------------------------------


def validate_links(doc: LayerDocument) -> list[Violation]:
    out: list[Violation] = []
    for layer in ("w", "m", "a", "t"):
        counts = Counter(node.id for node in getattr(doc, layer))
        for node_id, n in counts.items():
            if n > 1:
                out.append(Violation("duplicate-id", layer, node_id, f"id used {n} times"))

    w_ids = {x.id for x in doc.w}
    m_ids = {x.id for x in doc.m}
    a_ids = {x.id for x in doc.a}
    for tok in doc.m:
        for ref in tok.wRefs:
            if ref not in w_ids:
                out.append(Violation("dangling-ref", "m", tok.id, f"w id {ref!r} does not exist", tok.sent))

    users: dict[str, list[str]] = defaultdict(list)
    for node in doc.a:
        if node.mRef not in m_ids:
            out.append(Violation("dangling-ref", "a", node.id, f"m id {node.mRef!r} does not exist", node.sent))
        else:
            users[node.mRef].append(node.id)
    for m_id, nodes in users.items():
        if len(nodes) > 1:
            out.append(Violation("shared-mref", "a", nodes[0],
                                 f"m id {m_id!r} is referenced by a-nodes {', '.join(nodes)}"))

    for node in doc.t:
        for ref in node.aRefs:
            if ref not in a_ids:
                out.append(Violation("dangling-ref", "t", node.id, f"a id {ref!r} does not exist", node.sent))
        if node.generated and node.aRefs:
            out.append(Violation("generated-with-refs", "t", node.id,
                                 "generated node references a-nodes", node.sent))
        elif not node.generated and not node.aRefs:
            out.append(Violation("missing-refs", "t", node.id,
                                 "non-generated node references no a-node", node.sent))
    return out


def _tree_violations(layer: str, sent: str, nodes: list, parent_of, order_of, order_name: str) -> list[Violation]:
    out = []
    ids = [n.id for n in nodes]
    in_sent = set(ids)
    parents = {}
    roots = []
    for n in nodes:
        p = parent_of(n)
        if p is None:
            roots.append(n.id)
        elif p not in in_sent:
            out.append(Violation("bad-parent", layer, n.id, f"parent {p!r} is not in the sentence", sent))
        else:
            parents[n.id] = p
    if len(roots) > 1:
        out.append(Violation("multiple-roots", layer, roots[0], f"roots: {', '.join(roots)}", sent))
    elif not roots and nodes:
        out.append(Violation("no-root", layer, "", "sentence has no root", sent))

    # 1 = on the walk in progress, 2 = finished
    state: dict[str, int] = {}
    for start in ids:
        path = []
        cur = start
        while cur in parents and cur not in state:
            state[cur] = 1
            path.append(cur)
            cur = parents[cur]
        if state.get(cur) == 1:
            cycle = path[path.index(cur):]
            out.append(Violation("cycle", layer, cur, f"cycle through {' -> '.join(cycle)}", sent))
        for node_id in path:
            state[node_id] = 2

    orders = sorted(order_of(n) for n in nodes)
    if orders != list(range(1, len(nodes) + 1)):
        out.append(Violation("order-not-permutation", layer, "",
                             f"{order_name} values {orders} are not a permutation of 1..{len(nodes)}", sent))
    return out


def validate_a_tree(doc: LayerDocument) -> list[Violation]:
    out = []
    for sent, nodes in doc.sentences("a").items():
        out += _tree_violations("a", sent, nodes, lambda n: n.parentId, lambda n: n.ord, "ord")
        for n in nodes:
            if not n.afun:
                out.append(Violation("empty-afun", "a", n.id, "no syntactic function", sent))
    return out


def validate_t_tree(doc: LayerDocument, functors: FunctorSchema | None = None) -> list[Violation]:
    functors = functors or default_functors()
    out = []
    for sent, nodes in doc.sentences("t").items():
        out += _tree_violations("t", sent, nodes, lambda n: n.parent, lambda n: n.deepOrd, "deepOrd")
        for n in nodes:
            if n.functor not in functors:
                out.append(Violation("unknown-functor", "t", n.id, f"functor {n.functor!r} not in schema", sent))
    return out


def missing_obligatory(frame: ValencyFrame, child_functors: Iterable[str]) -> set[str]:
    return set(frame.obligatory) - set(child_functors)


def check_valency(doc: LayerDocument, lexicon: ValencyLexicon) -> list[Violation]:
    a_by_id = {n.id: n for n in doc.a}
    m_by_id = {x.id: x for x in doc.m}
    children: dict[str, list[TNode]] = defaultdict(list)
    for n in doc.t:
        if n.parent is not None:
            children[n.parent].append(n)

    out = []
    for node in doc.t:
        if node.frameRef is None:
            continue
        frame = lexicon.get(node.frameRef)
        if frame is None:
            out.append(Violation("unknown-frame", "t", node.id, f"frame {node.frameRef!r} not in lexicon", node.sent))
            continue
        if not node.generated:
            lemmas = []
            for ref in node.aRefs:
                anode = a_by_id.get(ref)
                mtok = m_by_id.get(anode.mRef) if anode else None
                if mtok is not None:
                    lemmas.append(mtok.lemma.proper)
            # the lexical a-node is among the refs; auxiliaries carry other lemmas
            if lemmas and frame.head not in lemmas:
                found = ", ".join(sorted({str(x) for x in lemmas}))
                out.append(Violation("frame-lemma-mismatch", "t", node.id,
                                     f"frame {frame.id} is for {frame.head}, node has {found}", node.sent))
        for functor in sorted(missing_obligatory(frame, (c.functor for c in children[node.id]))):
            out.append(Violation("missing-obligatory", "t", node.id,
                                 f"frame {frame.id} requires {functor}", node.sent))
    return out


def validate_document(
    doc: LayerDocument,
    functors: FunctorSchema | None = None,
    lexicon: ValencyLexicon | None = None,
) -> list[Violation]:
    out = validate_links(doc) + validate_a_tree(doc) + validate_t_tree(doc, functors)
    if lexicon is not None:
        out += check_valency(doc, lexicon)
    return out
