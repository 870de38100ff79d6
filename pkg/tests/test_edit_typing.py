import pytest
from hypothesis import assume, given, strategies as st

from maxmatch.annotations import Edit, EditSet, GoldAlternatives, SHARED_TASK_TYPES
from maxmatch.edit_typing import (
    ARTORDET, BUCKETS, NN, OTHER, PREP, VFORM_SVA, TaggedSentence, attribute_tally, classify_system_edit,
    gold_bucket, parse_tagged_file, remap_gold_type,
)
from maxmatch.errors import ParseError
from maxmatch.scoring import score_corpus
from maxmatch.tally import ScoreTally


def tagged(pairs):
    words, tags = zip(*(p.split("/") for p in pairs.split()))
    return TaggedSentence.from_texts(words, tags)


SENT = tagged("He/PRP prefers/VBZ the/DT device/NN in/IN town/NN")


def test_remap_wcip_preposition():
    out = remap_gold_type(Edit(4, 5, ("for",), "Wcip"), SENT)
    assert out.etype == PREP and out.replacement == ("for",)


def test_remap_rloc_determiner_deletion():
    assert remap_gold_type(Edit(2, 3, (), "Rloc"), SENT).etype == ARTORDET


def test_remap_rloc_preposition_deletion():
    assert remap_gold_type(Edit(4, 5, (), "Rloc"), SENT).etype == PREP


def test_remap_fallthrough():
    s = tagged("make/VB a/DT photo/NN")
    assert remap_gold_type(Edit(0, 3, ("take", "a", "photo"), "Wcip"), s).etype == "Wci"
    assert remap_gold_type(Edit(0, 1, (), "Rloc"), s).etype == "Rloc-"
    # a determiner substitution is not a redundant determiner
    assert remap_gold_type(Edit(1, 2, ("the",), "Rloc"), s).etype == "Rloc-"


def test_remap_insertion_uses_replacement_tags():
    assert remap_gold_type(Edit(4, 4, ("at",), "Wcip"), SENT, ["IN"]).etype == PREP
    assert remap_gold_type(Edit(4, 4, ("at",), "Wcip"), SENT).etype == "Wci"


@pytest.mark.parametrize("etype", SHARED_TASK_TYPES + ("Wci", "Mec"))
def test_remap_identity_on_other_types(etype):
    e = Edit(1, 2, ("x",), etype)
    assert remap_gold_type(e, SENT) is e


@given(st.sampled_from(["Wcip", "Rloc"]), st.integers(0, 6), st.integers(0, 2),
       st.lists(st.sampled_from(["IN", "DT", "NN", "TO", "PDT"]), max_size=2))
def test_remap_never_leaves_legacy_tags(etype, start, width, rtags):
    end = min(6, start + width)
    assume(end > start or rtags)
    out = remap_gold_type(Edit(start, end, ("w",) * len(rtags), etype), SENT, rtags)
    assert out.etype not in ("Wcip", "Rloc")


def test_classify_examples():
    assert classify_system_edit(Edit(2, 2, ("the",)), SENT, ["DT"]) == ARTORDET
    assert classify_system_edit(Edit(3, 4, ("devices",)), SENT, ["NNS"]) == NN
    assert classify_system_edit(Edit(1, 2, ("prefer",)), SENT, ["VBP"]) == VFORM_SVA
    assert classify_system_edit(Edit(4, 5, ("at",)), SENT, ["IN"]) == PREP
    assert classify_system_edit(Edit(0, 1, ("She",)), SENT, ["PRP"]) == OTHER


def test_classify_rule_order():
    # determiner deleted inside a phrase that also changes noun number
    assert classify_system_edit(Edit(2, 4, ("devices",)), SENT, ["NNS"]) == ARTORDET
    # verb and preposition together: preposition rule comes first
    assert classify_system_edit(Edit(1, 2, ("to",)), SENT, ["TO"]) == PREP


def test_classify_adjective_noun_and_context_words():
    s = tagged("very/RB important/JJ thing/NN")
    assert classify_system_edit(Edit(1, 2, ("importance",)), s, ["NN"]) == NN
    # "the" stays unchanged at the front of the phrase, so it does not count
    assert classify_system_edit(Edit(2, 4, ("the", "devices")), SENT, ["DT", "NNS"]) == NN


def test_classify_without_tags_is_other():
    assert classify_system_edit(Edit(0, 1, ("x",)), None, None) == OTHER


@given(st.integers(0, 6), st.integers(0, 2),
       st.lists(st.sampled_from(["IN", "DT", "NN", "NNS", "JJ", "VB", "XX"]), max_size=3))
def test_classify_total(start, width, rtags):
    end = min(6, start + width)
    assume(end > start or rtags)
    e = Edit(start, end, tuple(f"w{k}" for k in range(len(rtags))))
    assert classify_system_edit(e, SENT, rtags) in BUCKETS


def test_gold_bucket():
    assert gold_bucket("SVA") == gold_bucket("Vform") == VFORM_SVA
    assert gold_bucket("Wci") == OTHER and gold_bucket(None) == OTHER


def test_attribute_tally_examples():
    assert attribute_tally(True, "Nn", VFORM_SVA) == {NN: ScoreTally(1, 1, 1)}
    assert attribute_tally(False, None, PREP) == {PREP: ScoreTally(0, 0, 1)}
    assert attribute_tally(False, "SVA", None) == {VFORM_SVA: ScoreTally(0, 1, 0)}
    with pytest.raises(ValueError):
        attribute_tally(True, None, PREP)


def test_bucket_totals_sum_to_overall():
    src = tagged("He/PRP prefers/VBZ the/DT device/NN in/IN town/NN ./.")
    hyp = tagged("He/PRP prefer/VBP a/DT devices/NNS at/IN town/NN ./.")
    gold = EditSet(0, (
        Edit(1, 2, ("prefer",), "SVA"),
        Edit(3, 4, ("devices",), "Nn"),
        Edit(4, 5, (), "Prep"),
        Edit(5, 6, ("towns",), "Wci"),
    ))
    rep = score_corpus([GoldAlternatives((gold,))], [src.texts], [hyp.texts], src_tags=[src], hyp_tags=[hyp])
    total = ScoreTally()
    for b in BUCKETS:
        total = total + rep.per_type[b]
    assert total == rep.tally
    assert rep.per_type[VFORM_SVA] == ScoreTally(1, 1, 1)
    assert rep.per_type[NN] == ScoreTally(1, 1, 1)
    assert rep.per_type[ARTORDET] == ScoreTally(0, 0, 1)
    assert rep.per_type[PREP] == ScoreTally(0, 1, 1)
    assert rep.per_type[OTHER] == ScoreTally(0, 1, 0)


def test_parse_tagged_file():
    text = "S a dog\nT DT NN\nA 0 1|||ArtOrDet|||the|||REQUIRED|||-NONE-|||0\n\nS b\n"
    out = parse_tagged_file(text)
    assert out[0].tags == ("DT", "NN") and out[0].texts == ("a", "dog")
    assert out[1] is None


def test_parse_tagged_file_errors():
    with pytest.raises(ParseError, match="line 2"):
        parse_tagged_file("S a dog\nT DT\n")
    with pytest.raises(ParseError):
        parse_tagged_file("S a\nT DT\nT DT\n")
    with pytest.raises(ValueError):
        TaggedSentence.from_texts(["a"], ["DT", "NN"])
