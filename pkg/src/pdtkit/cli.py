"""Command line front end.

Exit codes are shared by all subcommands: 0 clean, 1 findings, 2 the input
could not be read or loaded.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import contextmanager
from typing import Sequence

from . import audit as audit_mod
from . import corpus, dictionary, layers, tagcodec
from .tagcodec import TagDecodeError

EXIT_CLEAN, EXIT_FINDINGS, EXIT_FAILURE = 0, 1, 2

# The library operations each subcommand exposes.  Every public operation
# belongs to exactly one subcommand.
OPERATIONS = {
    "tags-validate": ["tagcodec.decode", "tagcodec.encode", "tagcodec.validate", "tagcodec.classify"],
    "dict-check": ["dictionary.load", "dictionary.check"],
    "dict-diff": ["dictionary.diff", "lemmacodec.lemma_proper"],
    "dict-stats": ["dictionary.stats"],
    "audit": [
        "corpus.read_vertical",
        "dictionary.analyses",
        "lemmacodec.parse",
        "lemmacodec.compare",
        "audit.classify",
        "audit.explain",
        "audit.audit_corpus",
    ],
    "layers-validate": [
        "layers.load_document",
        "layers.load_lexicon",
        "layers.validate_links",
        "layers.validate_a_tree",
        "layers.validate_t_tree",
        "layers.check_valency",
    ],
}


class Failure(Exception):
    """Operational failure; maps to exit code 2."""


def format_table(header: Sequence[str], rows: Sequence[Sequence], right: Sequence[int] = ()) -> str:
    cells = [list(map(str, header))] + [list(map(str, r)) for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]

    def line(r):
        parts = [c.rjust(w) if i in right else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths))]
        return " | ".join(parts).rstrip()

    rule = "-+-".join("-" * w for w in widths)
    return "\n".join([line(cells[0]), rule] + [line(r) for r in cells[1:]]) + "\n"


def dump_json(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2, sort_keys=True) + "\n"


def _open(path: str):
    try:
        return open(path, encoding="utf-8", newline="")
    except OSError as e:
        raise Failure(f"cannot open {path}: {e.strerror}") from e


def _load_dictionary(path: str) -> dictionary.Dictionary:
    with _open(path) as f:
        try:
            return dictionary.load(f)
        except (dictionary.DictionaryError, UnicodeDecodeError) as e:
            raise Failure(f"{path}: {e}") from e


def _schema(args) -> tagcodec.TagsetSchema:
    if not args.schema:
        return tagcodec.default_schema()
    try:
        return tagcodec.TagsetSchema.load(args.schema)
    except (OSError, ValueError) as e:
        raise Failure(f"cannot load tagset schema {args.schema}: {e}") from e


# --- subcommands --------------------------------------------------------------


def cmd_tags_validate(args, out) -> int:
    schema = _schema(args)
    problems = []
    tags = []
    with _open(args.input) as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\r\n")
            if args.column:
                if not line or (line[0] == "#" and "\t" not in line):
                    continue
                fields = line.split("\t")
                if len(fields) < args.column:
                    problems.append({"line": lineno, "tag": None, "errors": [f"no column {args.column}"]})
                    continue
                text = fields[args.column - 1]
            elif not line:
                continue
            else:
                text = line
            try:
                tag = tagcodec.decode(text)
            except TagDecodeError as e:
                problems.append({"line": lineno, "tag": text, "errors": [str(e)]})
                continue
            violations = tagcodec.validate(tag, schema)
            if violations:
                problems.append({"line": lineno, "tag": text, "errors": [str(v) for v in violations]})
            elif args.classify:
                tags.append({"line": lineno, "tag": tagcodec.encode(tag), **tagcodec.classify(tag, schema).to_json()})

    if args.format == "json":
        report = {"violations": problems}
        if args.classify:
            report["tags"] = tags
        out.write(dump_json(report))
    else:
        if problems:
            rows = [(p["line"], p["tag"] or "", "; ".join(p["errors"])) for p in problems]
            out.write(format_table(["Line", "Tag", "Problem"], rows, right=[0]))
        if args.classify and tags:
            rows = [(t["line"], t["tag"], t["kind"], t["aspect"], t["aggregate"] or "-", t["variant"]) for t in tags]
            out.write(format_table(["Line", "Tag", "Kind", "Aspect", "Aggregate", "Variant"], rows, right=[0]))
        if not problems:
            out.write("no violations\n")
    return EXIT_FINDINGS if problems else EXIT_CLEAN


def cmd_dict_check(args, out) -> int:
    d = _load_dictionary(args.dictionary)
    findings = dictionary.check(d, numbering=not args.no_numbering)
    if args.format == "json":
        out.write(dump_json({"findings": [f.to_json() for f in findings]}))
    elif findings:
        out.write(format_table(["Kind", "Finding"], [(f.kind, str(f)) for f in findings]))
    else:
        out.write("no findings\n")
    return EXIT_FINDINGS if findings else EXIT_CLEAN


def cmd_dict_diff(args, out) -> int:
    old = _load_dictionary(args.old)
    new = _load_dictionary(args.new)
    result = dictionary.diff(old, new)
    if args.format == "json":
        out.write(dump_json(result.to_json()))
    else:
        out.write(format_table(["Description", "Volume"], [(k, f"{v:,}") for k, v in result.rows()], right=[1]))
        if args.list:
            for name in ("removed", "added", "changed"):
                for key in getattr(result, name):
                    out.write(f"{name}\t{key}\n")
    return EXIT_CLEAN if result.is_empty else EXIT_FINDINGS


def cmd_dict_stats(args, out) -> int:
    s = dictionary.stats(_load_dictionary(args.dictionary))
    if args.format == "json":
        out.write(dump_json(s.to_json()))
    else:
        out.write(format_table(["Description", "Volume"], [(k, f"{v:,}") for k, v in s.rows()], right=[1]))
    return EXIT_CLEAN


def cmd_audit(args, out) -> int:
    d = _load_dictionary(args.dictionary)
    with _open(args.corpus) as f:
        try:
            report = audit_mod.audit_corpus(corpus.read_vertical(f), d, max_samples=args.samples)
        except (corpus.CorpusError, UnicodeDecodeError) as e:
            raise Failure(f"{args.corpus}: {e}") from e
    if args.format == "json":
        out.write(dump_json(report.to_json()))
    else:
        rows = [(label, pct, f"{n:,}") for label, pct, n in report.rows(include_empty=args.all_rows)]
        out.write(format_table(["Type of inconsistency", "%", "Forms"], rows, right=[1, 2]))
    return EXIT_CLEAN if report.consistent else EXIT_FINDINGS


def cmd_layers_validate(args, out) -> int:
    with _open(args.document) as f:
        try:
            doc = layers.load_document(f)
        except layers.SchemaError as e:
            raise Failure(f"{args.document}: {e}") from e
    functors = None
    if args.functors:
        with _open(args.functors) as f:
            try:
                functors = layers.FunctorSchema.load(f)
            except (ValueError, layers.SchemaError) as e:
                raise Failure(f"{args.functors}: {e}") from e
    lexicon = None
    if args.lexicon:
        with _open(args.lexicon) as f:
            try:
                lexicon = layers.load_lexicon(f, functors)
            except layers.SchemaError as e:
                raise Failure(f"{args.lexicon}: {e}") from e
    violations = layers.validate_document(doc, functors, lexicon)
    if args.format == "json":
        out.write(dump_json({"document": doc.id, "violations": [v.to_json() for v in violations]}))
    elif violations:
        rows = [(v.kind, f"{v.layer}:{v.node}" if v.node else v.layer, v.sent, v.message) for v in violations]
        out.write(format_table(["Kind", "Node", "Sent", "Message"], rows))
    else:
        out.write("no violations\n")
    return EXIT_FINDINGS if violations else EXIT_CLEAN


# --- parser -------------------------------------------------------------------

_GLOBAL_DEFAULTS = {"format": "table", "schema": None, "samples": audit_mod.DEFAULT_SAMPLES, "output": None}


def _global_options(parser: argparse.ArgumentParser) -> None:
    # SUPPRESS lets the flags appear before or after the subcommand
    g = parser.add_argument_group("global options")
    g.add_argument("--format", choices=["json", "table"], default=argparse.SUPPRESS,
                   help="output format (default: table)")
    g.add_argument("--schema", default=argparse.SUPPRESS, metavar="PATH",
                   help="tagset schema JSON (default: bundled schema)")
    g.add_argument("--samples", type=int, default=argparse.SUPPRESS, metavar="N",
                   help=f"sample locations kept per audit class (default: {audit_mod.DEFAULT_SAMPLES})")
    g.add_argument("--output", default=argparse.SUPPRESS, metavar="PATH",
                   help="write the report here instead of standard output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pdtkit",
        description="Check positional tags, morphological dictionaries, corpus consistency and layered annotation.",
        epilog="Exit status: 0 clean, 1 findings, 2 unreadable or malformed input.",
    )
    _global_options(parser)
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("tags-validate", help="check positional tags against the tagset schema")
    p.add_argument("input", help="file with one tag per line, or a TAB-separated file with --column")
    p.add_argument("--column", type=int, default=0, metavar="N",
                   help="take the tag from TAB field N (3 for corpora, 2 for dictionaries)")
    p.add_argument("--classify", action="store_true", help="also report kind, aspect, aggregate and variant")
    p.set_defaults(func=cmd_tags_validate)

    p = sub.add_parser("dict-check", help="find duplicate tag forms and unjustified homonym numbers")
    p.add_argument("dictionary")
    p.add_argument("--no-numbering", action="store_true", help="skip the homonym numbering advisory")
    p.set_defaults(func=cmd_dict_check)

    p = sub.add_parser("dict-diff", help="compare two dictionary versions")
    p.add_argument("old")
    p.add_argument("new")
    p.add_argument("--list", action="store_true", help="list the removed, added and changed lemmas")
    p.set_defaults(func=cmd_dict_diff)

    p = sub.add_parser("dict-stats", help="count paradigms, forms and triples")
    p.add_argument("dictionary")
    p.set_defaults(func=cmd_dict_stats)

    p = sub.add_parser("audit", help="classify corpus tokens against a dictionary")
    p.add_argument("corpus")
    p.add_argument("dictionary")
    p.add_argument("--all-rows", action="store_true", help="print classes with zero tokens too")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("layers-validate", help="validate a multi-layer document")
    p.add_argument("document")
    p.add_argument("--lexicon", help="valency lexicon JSON")
    p.add_argument("--functors", help="functor schema JSON (default: bundled schema)")
    p.set_defaults(func=cmd_layers_validate)

    for p in sub.choices.values():
        _global_options(p)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    for key, value in _GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    if args.samples < 0:
        print("pdtkit: --samples must be non-negative", file=sys.stderr)
        return EXIT_FAILURE

    @contextmanager
    def output():
        if args.output:
            with open(args.output, "w", encoding="utf-8") as f:
                yield f
        else:
            yield sys.stdout

    try:
        with output() as out:
            return args.func(args, out)
    except Failure as e:
        print(f"pdtkit {args.command}: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except OSError as e:
        print(f"pdtkit {args.command}: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
