"""Tokenized documents and character-offset to token-span mapping."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import AlignmentError, SpanError


@dataclass(frozen=True)
class Token:
    text: str
    char_start: int
    char_end: int

    def __post_init__(self):
        if not self.text or any(ch.isspace() for ch in self.text):
            raise ValueError(f"invalid token text {self.text!r}")
        if not 0 <= self.char_start < self.char_end:
            raise ValueError(f"invalid token offsets ({self.char_start}, {self.char_end})")


@dataclass(frozen=True)
class Sentence:
    tokens: tuple[Token, ...]
    paragraph_index: int = 0
    sentence_index: int = 0

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple(self.tokens))
        if self.paragraph_index < 0 or self.sentence_index < 0:
            raise ValueError("paragraph and sentence indices must be non-negative")
        for prev, cur in zip(self.tokens, self.tokens[1:]):
            if cur.char_start < prev.char_end:
                raise ValueError(f"tokens {prev.text!r} and {cur.text!r} overlap or are out of order")

    @classmethod
    def from_texts(cls, texts: Iterable[str], paragraph_index: int = 0, sentence_index: int = 0) -> Sentence:
        """Build a sentence whose raw form is the tokens joined by single spaces."""
        texts = list(texts)
        return cls(tuple(align_tokens_to_raw(" ".join(texts), texts)), paragraph_index, sentence_index)

    @property
    def texts(self) -> tuple[str, ...]:
        return tuple(t.text for t in self.tokens)

    @property
    def char_range(self) -> tuple[int, int]:
        if not self.tokens:
            return (0, 0)
        return (self.tokens[0].char_start, self.tokens[-1].char_end)

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class Document:
    paragraphs: tuple[str, ...]
    sentences: tuple[Sentence, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "paragraphs", tuple(self.paragraphs))
        object.__setattr__(self, "sentences", tuple(self.sentences))
        for s in self.sentences:
            if s.paragraph_index >= len(self.paragraphs):
                raise ValueError(
                    f"sentence {s.sentence_index} refers to paragraph {s.paragraph_index}, "
                    f"but the document has {len(self.paragraphs)}"
                )

    @classmethod
    def from_tokenized(cls, paragraphs: Sequence[str], tokenized: Sequence[Sequence[Sequence[str]]]) -> Document:
        """Build a document from raw paragraphs and their tokenized sentences.

        ``tokenized[p]`` lists the sentences of paragraph ``p``, each a list of
        token texts. Sentence indices are assigned corpus-globally in order.
        """
        if len(tokenized) != len(paragraphs):
            raise AlignmentError(
                f"{len(paragraphs)} raw paragraphs but {len(tokenized)} tokenized paragraphs"
            )
        sentences = []
        for p, (raw, sents) in enumerate(zip(paragraphs, tokenized)):
            flat = [tok for sent in sents for tok in sent]
            tokens = align_tokens_to_raw(raw, flat)
            pos = 0
            for sent in sents:
                sentences.append(Sentence(tuple(tokens[pos:pos + len(sent)]), p, len(sentences)))
                pos += len(sent)
        return cls(tuple(paragraphs), tuple(sentences))

    @classmethod
    def from_whitespace(cls, paragraphs: Sequence[str]) -> Document:
        """One sentence per non-empty paragraph, tokenized on whitespace."""
        return cls.from_tokenized(paragraphs, [[p.split()] if p.split() else [] for p in paragraphs])


def align_tokens_to_raw(raw_paragraph: str, token_texts: Sequence[str]) -> list[Token]:
    """Locate each token in ``raw_paragraph`` by a left-to-right scan.

    Only whitespace may separate consecutive tokens; anything else between
    two tokens (or after the last one) is an :class:`AlignmentError`.
    """
    tokens = []
    pos = 0
    n = len(raw_paragraph)
    for text in token_texts:
        while pos < n and raw_paragraph[pos].isspace():
            pos += 1
        if not raw_paragraph.startswith(text, pos):
            found = raw_paragraph.find(text, pos)
            hint = f"next occurrence at {found}" if found >= 0 else "no further occurrence"
            raise AlignmentError(f"token {text!r} not found at offset {pos} ({hint})")
        tokens.append(Token(text, pos, pos + len(text)))
        pos += len(text)
    if raw_paragraph[pos:].strip():
        raise AlignmentError(f"unaligned text after offset {pos}: {raw_paragraph[pos:pos + 20]!r}")
    return tokens


def map_char_span_to_token_span(sentence: Sentence, char_start: int, char_end: int) -> tuple[int, int]:
    """Map the character span ``[char_start, char_end)`` to a token span.

    A non-empty span claims every token it overlaps, even partially. An empty
    span is an insertion point: it maps to ``(i, i)`` where ``i`` is the first
    token that does not end at or before the offset, so offsets inside a
    token snap to that token's start.
    """
    if char_start > char_end:
        raise SpanError(f"span ({char_start}, {char_end}) is reversed")
    tokens = sentence.tokens
    lo, hi = sentence.char_range
    if char_start < lo or char_end > hi:
        raise SpanError(f"span ({char_start}, {char_end}) lies outside sentence range ({lo}, {hi})")
    if char_start == char_end:
        for i, tok in enumerate(tokens):
            if tok.char_end > char_start:
                return (i, i)
        return (len(tokens), len(tokens))
    covered = [i for i, tok in enumerate(tokens) if tok.char_start < char_end and char_start < tok.char_end]
    if not covered:
        raise SpanError(f"span ({char_start}, {char_end}) covers no token")
    return (covered[0], covered[-1] + 1)
