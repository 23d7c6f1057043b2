import io

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pdtkit import dictionary
from pdtkit.dictionary import (
    DuplicateTagForm,
    FrozenDictionary,
    MalformedLine,
    NumberingAdvisory,
    TagLineError,
    analyses,
    check,
    diff,
    from_triples,
    load,
    save,
    stats,
)
from pdtkit.lemmacodec import parse
from pdtkit.tagcodec import TagDecodeError, decode

NOUN = "NNFS1-----A----"


def load_text(text):
    return load(io.StringIO(text))


def test_micro_dictionary_one_paradigm():
    d = load_text(
        "teze\tNNFS1-----A----\tteze\n"
        "teze\tNNFS2-----A----\tteze\n"
        "teze\tNNFP1-----A----\tteze\n"
    )
    assert len(d) == 1
    assert len(d.paradigms["teze"].entries) == 3


def test_empty_stream():
    d = load_text("")
    assert len(d) == 0
    assert stats(d).to_json() == {"paradigms": 0, "forms": 0, "triples": 0, "duplicates": 0}


def test_comments_and_blank_lines_skipped():
    d = load_text("# header\n\nteze\tNNFS1-----A----\tteze\n\n")
    assert len(d) == 1


def test_wrong_field_count():
    with pytest.raises(MalformedLine) as e:
        load_text("teze\tNNFS1-----A----\tteze\nteze\tNNFS1\n")
    assert e.value.line == 2


def test_bad_tag_carries_line_number():
    with pytest.raises(TagLineError) as e:
        load_text("teze\tNNFS1-----A----\tteze\n\nteze\tNNFS1\tteze\n")
    assert e.value.line == 3
    assert isinstance(e.value, TagDecodeError)
    assert isinstance(e.value, MalformedLine)


def test_bad_lemma_is_malformed_line():
    with pytest.raises(MalformedLine) as e:
        load_text("x_^(open\tNNFS1-----A----\tx\n")
    assert e.value.line == 1


def test_exact_duplicates_collapse(caplog):
    d = load_text("teze\tNNFS1-----A----\tteze\n" * 3)
    assert d.duplicates == 2
    assert stats(d).triples == 1
    assert "duplicate" in caplog.text


def test_frozen_dictionary_rejects_additions():
    d = load_text("")
    with pytest.raises(FrozenDictionary):
        d.add("teze", NOUN, "teze")


def test_analyses():
    d = from_triples([
        ("stát-1", "Vf--------A-P--", "stát"),
        ("stát-2", "Vf--------A-I--", "stát"),
        ("teze", NOUN, "teze"),
    ])
    assert analyses(d, "teze") == {(parse("teze"), decode(NOUN))}
    found = analyses(d, "stát")
    assert len(found) >= 2
    assert {l.text for l, _ in found} == {"stát-1", "stát-2"}
    assert analyses(d, "nic") == set()


def test_duplicate_tag_form():
    d = from_triples([
        ("orel", "NNMS1-----A----", "orel"),
        ("orel", "NNMP1-----A----", "orli"),
        ("orel", "NNMP1-----A----", "orlové"),
    ])
    assert check(d) == [DuplicateTagForm("orel", "NNMP1-----A----", ("orli", "orlové"))]


def test_variants_marked_at_position_15_are_fine():
    d = from_triples([
        ("orel", "NNMP1-----A---1", "orli"),
        ("orel", "NNMP1-----A---2", "orlové"),
    ])
    assert check(d) == []


def test_pos_difference_justifies_numbering():
    d = from_triples([
        ("růst-1", "NNIS1-----A----", "růst"),
        ("růst-1", "NNIS2-----A----", "růstu"),
        ("růst-2", "Vf--------A-I--", "růst"),
        ("růst-2", "VB-S---3P-AAI--", "roste"),
    ])
    assert check(d) == []


@pytest.mark.parametrize("tags", [
    ("NNIS1-----A----", "NNFS1-----A----"),  # kredenc: gender
    ("Vf--------A-P--", "Vf--------A-I--"),  # stát: aspect
])
def test_gender_or_aspect_justifies_numbering(tags):
    d = from_triples([("x-1", tags[0], "x"), ("x-2", tags[1], "x")])
    assert check(d) == []


def test_unjustified_numbering():
    d = from_triples([
        ("x-1", "NNIS1-----A----", "x"),
        ("x-2", "NNIS1-----A----", "x"),
        ("x-2", "NNIS2-----A----", "xu"),
    ])
    assert check(d) == [NumberingAdvisory("x", ("x-1", "x-2"))]
    assert check(d, numbering=False) == []


def test_numbering_advisory_groups_only_lookalikes():
    d = from_triples([
        ("x-1", "NNIS1-----A----", "x"),
        ("x-2", "NNIS1-----A----", "x"),
        ("x-3", "Vf--------A-I--", "x"),
    ])
    assert check(d) == [NumberingAdvisory("x", ("x-1", "x-2"))]


def test_diff_identity():
    d = from_triples([("teze", NOUN, "teze"), ("stát-1", "Vf--------A-P--", "stát")])
    result = diff(d, d)
    assert result.counts() == {"paradigms_old": 2, "paradigms_new": 2, "removed": 0, "added": 0, "changed": 0}


def test_comment_only_change_is_one_changed_paradigm():
    old = from_triples([("these", NOUN, "these")])
    new = from_triples([("these_,a_^(^DD**teze)", NOUN, "these")])
    result = diff(old, new)
    assert (result.removed, result.added, result.changed) == ([], [], ["these"])


def test_diff_set_algebra():
    old = from_triples([("a", NOUN, "a"), ("b", NOUN, "b")])
    new = from_triples([("b", "NNFS2-----A----", "b"), ("c", NOUN, "c")])
    result = diff(old, new)
    assert (result.removed, result.added, result.changed) == (["a"], ["c"], ["b"])


def test_diff_rows_use_table_labels():
    d = from_triples([("a", NOUN, "a")])
    assert [label for label, _ in diff(d, d).rows()] == [
        "Paradigms in original version",
        "Paradigms in new version",
        "Paradigms removed",
        "Paradigms added",
        "Paradigms changed",
    ]


def test_stats_micro_dictionary(fixtures):
    with open(fixtures / "two_paradigms.dict", encoding="utf-8") as f:
        s = stats(load(f))
    assert (s.paradigms, s.forms, s.triples) == (2, 3, 5)


# --- properties ---------------------------------------------------------------

_lemmas = st.sampled_from(["a", "a-1", "a-2", "a_,a", "b", "b-1_^(^DD**a)", "c"])
_tags = st.sampled_from([NOUN, "NNFS2-----A----", "Vf--------A-I--"])
_forms = st.sampled_from(["x", "y", "z"])
_triples = st.lists(st.tuples(_lemmas, _tags, _forms), max_size=12)


@given(_triples)
def test_index_coherence(triples):
    d = from_triples(triples)
    from_paradigms = sorted(t for p in d.paradigms.values() for t in p.triples())
    from_index = sorted((l, t, form) for form, pairs in d.form_index.items() for l, t in pairs)
    assert from_paradigms == from_index == sorted(set(triples))


@given(_triples)
def test_load_save_identity(triples):
    d = from_triples(triples)
    buf = io.StringIO()
    save(d, buf)
    assert load(io.StringIO(buf.getvalue())) == d


@settings(max_examples=200)
@given(_triples, _triples)
def test_diff_partition_and_antisymmetry(a, b):
    old, new = from_triples(a), from_triples(b)
    forward, backward = diff(old, new), diff(new, old)
    keys_old = {str(p.lemma.proper) for p in old.paradigms.values()}
    keys_new = {str(p.lemma.proper) for p in new.paradigms.values()}
    removed, added, changed = set(forward.removed), set(forward.added), set(forward.changed)
    assert len(removed) == len(forward.removed)
    assert not (removed & added or removed & changed or added & changed)
    unchanged = (keys_old & keys_new) - changed
    assert removed | added | changed | unchanged == keys_old | keys_new
    assert removed == set(backward.added)
    assert added == set(backward.removed)
    assert changed == set(backward.changed)
    assert diff(old, old).is_empty
