import pytest
from hypothesis import given, strategies as st

from conftest import SAMPLE_PARAGRAPH
from maxmatch.errors import AlignmentError, SpanError
from maxmatch.text import Document, Sentence, Token, align_tokens_to_raw, map_char_span_to_token_span

SAMPLE_TOKENS = ["From", "past", "to", "the", "present", ",", "many", "important", "innovations", "have", "surfaced", "."]


def sample_sentence():
    return Sentence(tuple(align_tokens_to_raw(SAMPLE_PARAGRAPH, SAMPLE_TOKENS)))


def test_sample_paragraph_offsets():
    tokens = align_tokens_to_raw(SAMPLE_PARAGRAPH, SAMPLE_TOKENS)
    # F-r-o-m = 0..4, space at 4, p-a-s-t = 5..9
    assert (tokens[1].char_start, tokens[1].char_end) == (5, 9)
    assert (tokens[4].char_start, tokens[4].char_end) == (17, 24)
    assert (tokens[5].char_start, tokens[5].char_end) == (24, 25)
    assert [t.text for t in tokens] == SAMPLE_TOKENS


def test_empty_paragraph():
    assert align_tokens_to_raw("", []) == []


def test_double_space():
    a, b = align_tokens_to_raw("a  b", ["a", "b"])
    assert (a.char_start, a.char_end, b.char_start, b.char_end) == (0, 1, 3, 4)


@pytest.mark.parametrize("raw, toks", [
    ("a b", ["a", "c"]),
    ("a b", ["b", "a"]),
    ("a b c", ["a", "b"]),
    ("a xb", ["a", "b"]),
])
def test_alignment_errors(raw, toks):
    with pytest.raises(AlignmentError):
        align_tokens_to_raw(raw, toks)


def test_sample_paragraph_span_maps_to_past():
    assert map_char_span_to_token_span(sample_sentence(), 5, 9) == (1, 2)


def test_insertion_before_first_token():
    assert map_char_span_to_token_span(sample_sentence(), 0, 0) == (0, 0)


def test_partial_overlap_expands():
    s = sample_sentence()
    # "o" of "to" (11) through "th" of "the" (15)
    assert map_char_span_to_token_span(s, 11, 15) == (2, 4)


def test_insertion_inside_token_snaps_to_its_start():
    s = sample_sentence()
    assert map_char_span_to_token_span(s, 6, 6) == (1, 1)
    # in the space between "From" and "past"
    assert map_char_span_to_token_span(s, 4, 4) == (1, 1)
    end = s.tokens[-1].char_end
    assert map_char_span_to_token_span(s, end, end) == (len(s), len(s))


def test_span_errors():
    s = Sentence.from_texts(["a", "b"])
    with pytest.raises(SpanError):
        map_char_span_to_token_span(s, 1, 2)  # only the space
    with pytest.raises(SpanError):
        map_char_span_to_token_span(s, 0, 10)
    with pytest.raises(SpanError):
        map_char_span_to_token_span(s, 2, 1)


def test_type_invariants():
    with pytest.raises(ValueError):
        Token("a b", 0, 3)
    with pytest.raises(ValueError):
        Token("a", 2, 2)
    with pytest.raises(ValueError):
        Sentence((Token("b", 2, 3), Token("a", 0, 1)))
    with pytest.raises(ValueError):
        Document(("x",), (Sentence.from_texts(["x"], paragraph_index=1),))


def test_document_from_tokenized():
    doc = Document.from_tokenized(["A b. C d.", "E."], [[["A", "b", "."], ["C", "d", "."]], [["E", "."]]])
    assert [s.sentence_index for s in doc.sentences] == [0, 1, 2]
    assert [s.paragraph_index for s in doc.sentences] == [0, 0, 1]
    assert doc.sentences[1].char_range == (5, 9)


words = st.text(alphabet="abcxyz,.'", min_size=1, max_size=5)
gaps = st.text(alphabet=" \t", min_size=1, max_size=3)


@given(st.lists(st.tuples(words, gaps), max_size=12), st.text(alphabet=" ", max_size=2))
def test_alignment_invariants(pairs, lead):
    raw = lead + "".join(w + g for w, g in pairs)
    texts = [w for w, _ in pairs]
    tokens = align_tokens_to_raw(raw, texts)
    sent = Sentence(tuple(tokens))
    for i, t in enumerate(tokens):
        assert raw[t.char_start:t.char_end] == t.text
        assert map_char_span_to_token_span(sent, t.char_start, t.char_end) == (i, i + 1)
    assert "".join(texts) == "".join(raw.split())


@given(st.lists(words, min_size=1, max_size=8), st.data())
def test_monotone_start(texts, data):
    sent = Sentence.from_texts(texts)
    lo, hi = sent.char_range
    a = data.draw(st.integers(lo, hi))
    b = data.draw(st.integers(a, hi))
    spans = []
    for start in (a, b):
        try:
            spans.append(map_char_span_to_token_span(sent, start, start))
        except SpanError:
            return
    assert spans[0][0] <= spans[1][0]
