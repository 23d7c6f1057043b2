import pytest
from hypothesis import given
from hypothesis import strategies as st

from pdtkit.lemmacodec import (
    Comment,
    EmptyLemma,
    Flag,
    LemmaProper,
    LemmaSyntaxError,
    RawGroup,
    UnterminatedComment,
    VariantRef,
    compare,
    lemma_proper,
    parse,
    serialize,
)


def test_archaic_variant():
    lemma = parse("these_,a_^(^DD**teze)")
    assert lemma.base == "these"
    assert lemma.index is None
    assert lemma.flags == [Flag(",", "a")]
    assert lemma.comments == [Comment("^DD**teze")]
    assert lemma.comments[0].variant_ref == VariantRef("DD", "teze")


def test_nonstandard_variant():
    lemma = parse("téze_,h_^(^GC**teze)")
    assert lemma.base == "téze"
    assert lemma.flags == [Flag(",", "h")]
    assert lemma.variant_refs == [VariantRef("GC", "teze")]


@pytest.mark.parametrize("text,base,index", [
    ("stát-1", "stát", 1),
    ("stát-2", "stát", 2),
    ("jeřáb-2", "jeřáb", 2),
    ("teze", "teze", None),
    ("ka", "ka", None),
    ("česko-ruský", "česko-ruský", None),
    ("a-b-12", "a-b", 12),
])
def test_lemma_proper(text, base, index):
    lemma = parse(text)
    assert (lemma.base, lemma.index) == (base, index)
    assert lemma_proper(lemma) == LemmaProper(base, index)
    assert lemma.flags == [] and lemma.comments == []


@pytest.mark.parametrize("text", [
    "these_,a_^(^DD**teze)", "téze_,h_^(^GC**teze)", "teze", "jeřáb-2", "ka",
    "Praha_;G", "jeřáb-1_^(pták)", "x_^(a(b)c)_;G", "x_^(a_b)", "x_abc", "x_", "x__,a",
    "-", "-1", "x-01", "(", ")",
])
def test_roundtrip(text):
    assert serialize(parse(text)) == text


def test_comment_may_contain_underscores_and_parens():
    lemma = parse("x_^(a_(b)_c)_,a")
    assert lemma.comments == [Comment("a_(b)_c")]
    assert lemma.flags == [Flag(",", "a")]


def test_unrecognised_groups_are_kept():
    lemma = parse("x_abc_;G")
    assert lemma.groups == (RawGroup("abc"), Flag(";", "G"))
    assert lemma.comments == []


def test_comment_without_variant_reference():
    assert parse("jeřáb-1_^(pták)").comments[0].variant_ref is None
    assert parse("x_^(DD**teze)").comments[0].variant_ref is None
    assert parse("x_^(^D**teze)").comments[0].variant_ref is None


def test_variant_target_may_be_numbered():
    ref = parse("stati_,a_^(^DD**stát-2)").variant_refs[0]
    assert ref.target_proper == LemmaProper("stát", 2)


def test_proper_text_form():
    assert str(LemmaProper("stát", 1)) == "stát-1"
    assert str(LemmaProper("teze")) == "teze"


@pytest.mark.parametrize("text", ["", "_,a", "_^(x)"])
def test_empty(text):
    with pytest.raises(EmptyLemma):
        parse(text)


def test_unterminated_comment():
    with pytest.raises(UnterminatedComment):
        parse("x_^(^DD**teze")
    with pytest.raises(UnterminatedComment):
        parse("x_^(a(b)")


def test_whitespace_rejected():
    with pytest.raises(LemmaSyntaxError):
        parse("jít ven")


def test_junk_after_comment_rejected():
    with pytest.raises(LemmaSyntaxError):
        parse("x_^(a)b")


def test_compare_variant_against_basic_spelling():
    facts = compare(parse("these_,a_^(^DD**teze)"), parse("these"))
    assert facts.same_proper and facts.same_base and facts.same_index
    assert not facts.same_technical_suffix


def test_compare_homonyms():
    facts = compare(parse("stát-1"), parse("stát-2"))
    assert facts.same_base
    assert not facts.same_index
    assert not facts.same_proper


def test_compare_reflexive():
    assert all(compare(parse("teze"), parse("teze")))


# grammar-generated lemmas
_base = st.text(alphabet="abcčřéá-.", min_size=1, max_size=6).filter(
    lambda s: not (s.startswith("-") and s[1:].isdigit()))
_index = st.one_of(st.just(""), st.integers(1, 30).map(lambda i: f"-{i}"))
_flag = st.tuples(st.sampled_from(",;:"), st.sampled_from("ahGBtn")).map(lambda t: "_" + "".join(t))
_comment = st.one_of(
    st.tuples(st.sampled_from(["DD", "GC", "XY"]), st.sampled_from(["teze", "stát-2"]))
    .map(lambda t: f"_^(^{t[0]}**{t[1]})"),
    st.text(alphabet="abc_() ^*", max_size=6)
    .filter(lambda s: s.count("(") == s.count(")") and " " not in s and _balanced(s))
    .map(lambda s: f"_^({s})"),
)
_lemma = st.tuples(_base, _index, st.lists(st.one_of(_flag, _comment), max_size=4)).map(
    lambda t: t[0] + t[1] + "".join(t[2]))


def _balanced(s):
    depth = 0
    for ch in s:
        depth += {"(": 1, ")": -1}.get(ch, 0)
        if depth < 0:
            return False
    return depth == 0


@given(_lemma)
def test_lossless(text):
    assert serialize(parse(text)) == text


@given(_base, _index)
def test_proper_idempotent(base, index):
    proper = parse(base + index).proper
    assert parse(str(proper)).proper == proper


@given(_lemma, _lemma, _lemma)
def test_same_proper_is_an_equivalence(a, b, c):
    a, b, c = parse(a), parse(b), parse(c)
    assert compare(a, a).same_proper
    assert compare(a, b).same_proper == compare(b, a).same_proper
    if compare(a, b).same_proper and compare(b, c).same_proper:
        assert compare(a, c).same_proper
