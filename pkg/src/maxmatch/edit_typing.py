"""POS-rule error typing.

Two rule sets live here: remapping the legacy Wcip/Rloc gold tags, and
assigning a reporting bucket to system edits, which carry no annotated type.
POS tags are always supplied by the caller.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .annotations import Edit, iter_blocks
from .errors import ParseError
from .tally import ScoreTally
from .text import Sentence

ARTORDET = "ArtOrDet"
PREP = "Prep"
NN = "Nn"
VFORM_SVA = "Vform/SVA"
OTHER = "Other"
BUCKETS = (ARTORDET, PREP, NN, VFORM_SVA, OTHER)

DET_TAGS = frozenset({"DT", "PDT"})
PREP_TAGS = frozenset({"IN", "TO"})
SINGULAR_NOUN_TAGS = frozenset({"NN", "NNP"})
PLURAL_NOUN_TAGS = frozenset({"NNS", "NNPS"})
NOUN_TAGS = SINGULAR_NOUN_TAGS | PLURAL_NOUN_TAGS
VERB_TAGS = frozenset({"VB", "VBD", "VBG", "VBN", "VBP", "VBZ"})
UNKNOWN_TAG = "Other"


@dataclass(frozen=True)
class TaggedSentence:
    sentence: Sentence
    tags: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "tags", tuple(self.tags))
        if len(self.tags) != len(self.sentence):
            raise ValueError(f"{len(self.tags)} tags for {len(self.sentence)} tokens")
        if not all(self.tags):
            raise ValueError("empty POS tag")

    @classmethod
    def from_texts(cls, texts: Sequence[str], tags: Sequence[str]) -> TaggedSentence:
        return cls(Sentence.from_texts(texts), tuple(tags))

    @property
    def texts(self) -> tuple[str, ...]:
        return self.sentence.texts


def parse_tagged_file(text: str) -> list[TaggedSentence | None]:
    """Read ``S``/``T`` blocks; blocks without a ``T`` line yield ``None``.

    ``A`` lines are skipped, so a tagged gold file can be passed directly.
    """
    out: list[TaggedSentence | None] = []
    for start, lines in iter_blocks(text):
        if lines[0] != "S" and not lines[0].startswith("S "):
            raise ParseError("block must start with an S line", start)
        tokens = lines[0][2:].split()
        tags = None
        for offset, line in enumerate(lines[1:], 1):
            if line == "T" or line.startswith("T "):
                if tags is not None:
                    raise ParseError("duplicate T line", start + offset)
                tags = line[2:].split()
                if len(tags) != len(tokens):
                    raise ParseError(f"{len(tags)} tags for {len(tokens)} tokens", start + offset)
        out.append(None if tags is None else TaggedSentence.from_texts(tokens, tags))
    return out


def gold_bucket(etype: str | None) -> str:
    if etype in ("Vform", "SVA", VFORM_SVA):
        return VFORM_SVA
    if etype in (ARTORDET, PREP, NN):
        return etype
    return OTHER


def _span_tags(src: TaggedSentence | None, start: int, end: int) -> tuple[tuple[str, ...], tuple[str, ...]]:
    if src is None:
        return (("",) * (end - start), (UNKNOWN_TAG,) * (end - start))
    return src.texts[start:end], src.tags[start:end]


def _repl_tags(edit: Edit, repl_tags: Sequence[str] | None) -> tuple[str, ...]:
    if repl_tags is None or len(repl_tags) != len(edit.replacement):
        return (UNKNOWN_TAG,) * len(edit.replacement)
    return tuple(repl_tags)


def remap_gold_type(edit: Edit, src_tags: TaggedSentence | None, repl_tags: Sequence[str] | None = None) -> Edit:
    """Replace a legacy Wcip/Rloc tag by Prep, ArtOrDet, Wci or Rloc-.

    The edit counts as a preposition (or determiner) edit when every source
    token it covers carries a preposition (or determiner) tag. Insertions
    cover no source token and are judged by ``repl_tags`` when given.
    Other tags pass through unchanged.
    """
    if edit.etype not in ("Wcip", "Rloc"):
        return edit
    _, tags = _span_tags(src_tags, edit.tok_start, edit.tok_end)
    if not tags:
        tags = _repl_tags(edit, repl_tags)
    if tags and all(t in PREP_TAGS for t in tags):
        new = PREP
    elif edit.etype == "Rloc" and not edit.replacement and tags and all(t in DET_TAGS for t in tags):
        new = ARTORDET
    else:
        new = "Wci" if edit.etype == "Wcip" else "Rloc-"
    return Edit(edit.tok_start, edit.tok_end, edit.replacement, new)


def changed_tags(edit: Edit, src_tags: TaggedSentence | None, repl_tags: Sequence[str] | None):
    """Tags of the words an edit actually changes.

    Phrase edits may include unchanged context words at either end; tokens
    shared as a common prefix or suffix of the source span and the
    replacement are dropped before the rules look at the tags.
    """
    src_words, src_t = _span_tags(src_tags, edit.tok_start, edit.tok_end)
    rep_words, rep_t = edit.replacement, _repl_tags(edit, repl_tags)
    limit = min(len(src_words), len(rep_words))
    p = 0
    while p < limit and src_words[p] == rep_words[p]:
        p += 1
    s = 0
    while s < limit - p and src_words[-1 - s] == rep_words[-1 - s]:
        s += 1
    return src_t[p:len(src_t) - s], rep_t[p:len(rep_t) - s]


def classify_system_edit(edit: Edit, src_tags: TaggedSentence | None, repl_tags: Sequence[str] | None) -> str:
    """Bucket for a system edit; the first matching rule wins."""
    src, rep = changed_tags(edit, src_tags, repl_tags)
    involved = set(src) | set(rep)
    if involved & DET_TAGS:
        return ARTORDET
    if involved & PREP_TAGS:
        return PREP
    src_set, rep_set = set(src), set(rep)
    if (
        (src_set & SINGULAR_NOUN_TAGS and rep_set & PLURAL_NOUN_TAGS)
        or (src_set & PLURAL_NOUN_TAGS and rep_set & SINGULAR_NOUN_TAGS)
        or ("JJ" in src_set and rep_set & NOUN_TAGS)
        or (src_set & NOUN_TAGS and "JJ" in rep_set)
    ):
        return NN
    if involved & VERB_TAGS:
        return VFORM_SVA
    return OTHER


def attribute_tally(matched: bool, gold_type: str | None, sys_bucket: str | None) -> dict[str, ScoreTally]:
    """Per-bucket increments for one scoring event.

    An event is a matched gold/system pair (``matched``), an unmatched system
    edit (``gold_type`` is None) or an unmatched gold edit (``sys_bucket`` is
    None). A matched system edit is credited to its gold edit's bucket.
    """
    if matched:
        if gold_type is None:
            raise ValueError("a matched edit needs its gold type")
        return {gold_bucket(gold_type): ScoreTally(1, 1, 1)}
    out: dict[str, ScoreTally] = {}
    if gold_type is not None:
        b = gold_bucket(gold_type)
        out[b] = out.get(b, ScoreTally()) + ScoreTally(0, 1, 0)
    if sys_bucket is not None:
        out[sys_bucket] = out.get(sys_bucket, ScoreTally()) + ScoreTally(0, 0, 1)
    return out
