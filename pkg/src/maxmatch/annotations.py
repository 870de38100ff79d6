"""Gold annotation structures and their two file formats.

Two formats are handled here:

* stand-off SGML ``<MISTAKE>`` records addressed by paragraph index and
  character offsets, as distributed with learner corpora;
* the token-level ``S``/``A`` block format consumed by the scorer.
"""

from __future__ import annotations

import bisect
import html
import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import InvariantError, OverlapError, ParseError, SpanError
from .text import Document, Sentence, map_char_span_to_token_span

# Distinguished error tags. The tag set itself is open.
SHARED_TASK_TYPES = ("ArtOrDet", "Prep", "Nn", "Vform", "SVA")
LEGACY_TYPES = ("Wci", "Wcip", "Rloc", "Rloc-")

NOOP_TYPE = "noop"
_SEP = "|||"


def check_error_type(tag: str) -> str:
    if not tag or _SEP in tag or "\n" in tag or "\r" in tag:
        raise ValueError(f"invalid error type tag {tag!r}")
    return tag


@dataclass(frozen=True)
class Edit:
    """Replace source tokens ``[tok_start, tok_end)`` with ``replacement``.

    ``etype`` is ``None`` for system edits, which carry no annotated type.
    """

    tok_start: int
    tok_end: int
    replacement: tuple[str, ...] = ()
    etype: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "replacement", tuple(self.replacement))
        if not 0 <= self.tok_start <= self.tok_end:
            raise ValueError(f"invalid edit span ({self.tok_start}, {self.tok_end})")
        if self.tok_start == self.tok_end and not self.replacement:
            raise ValueError(f"empty insertion at {self.tok_start} is not an edit")
        if self.etype is not None:
            check_error_type(self.etype)

    @property
    def span(self) -> tuple[int, int]:
        return (self.tok_start, self.tok_end)

    @property
    def correction(self) -> str:
        return " ".join(self.replacement)

    def __str__(self):
        return f"{self.tok_start} {self.tok_end} {self.correction!r}" + (f" [{self.etype}]" if self.etype else "")


def _check_edits(edits: Sequence[Edit]) -> None:
    for a, b in zip(edits, edits[1:]):
        if (b.tok_start, b.tok_end) < (a.tok_start, a.tok_end):
            raise InvariantError(f"edits out of order: ({a}) before ({b})")
        if b.tok_start < a.tok_end or (a.tok_start == a.tok_end == b.tok_start == b.tok_end):
            raise OverlapError(f"overlapping edits ({a}) and ({b})")


@dataclass(frozen=True)
class EditSet:
    """One annotator's (or one system's) edits for a single sentence."""

    annotator_id: int = 0
    edits: tuple[Edit, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "edits", tuple(self.edits))
        if self.annotator_id < 0:
            raise InvariantError(f"negative annotator id {self.annotator_id}")
        _check_edits(self.edits)

    @classmethod
    def sorted(cls, annotator_id: int, edits: Iterable[Edit]) -> EditSet:
        return cls(annotator_id, tuple(sorted(edits, key=lambda e: (e.tok_start, e.tok_end))))

    def check_bounds(self, length: int) -> None:
        for e in self.edits:
            if e.tok_end > length:
                raise InvariantError(f"edit ({e}) extends past sentence length {length}")

    def __len__(self):
        return len(self.edits)

    def __iter__(self):
        return iter(self.edits)


@dataclass(frozen=True)
class GoldAlternatives:
    alternatives: tuple[EditSet, ...]

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))
        if not self.alternatives:
            raise InvariantError("a sentence needs at least one gold alternative")
        ids = [a.annotator_id for a in self.alternatives]
        if len(set(ids)) != len(ids):
            raise InvariantError(f"duplicate annotator ids {ids}")

    @classmethod
    def empty(cls) -> GoldAlternatives:
        return cls((EditSet(0, ()),))

    def __len__(self):
        return len(self.alternatives)

    def __iter__(self):
        return iter(self.alternatives)


def apply_edits(tokens: Sequence[str], edits: Iterable[Edit]) -> list[str]:
    """Apply non-overlapping, sorted edits to ``tokens``."""
    out: list[str] = []
    pos = 0
    for e in edits:
        out.extend(tokens[pos:e.tok_start])
        out.extend(e.replacement)
        pos = e.tok_end
    out.extend(tokens[pos:])
    return out


# ---------------------------------------------------------------------------
# Stand-off SGML
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MistakeRecord:
    start_par: int
    start_off: int
    end_par: int
    end_off: int
    type_tag: str
    correction: str

    def __post_init__(self):
        if min(self.start_par, self.start_off, self.end_par, self.end_off) < 0:
            raise ValueError("MISTAKE offsets must be non-negative")
        if (self.start_par, self.start_off) > (self.end_par, self.end_off):
            raise ValueError(
                f"MISTAKE start ({self.start_par}, {self.start_off}) is after end ({self.end_par}, {self.end_off})"
            )


_TAG_RE = re.compile(r"<(/?)([A-Za-z_][\w-]*)((?:\s+[^\s=/>]+\s*=\s*\"[^\"]*\")*)\s*(/?)>")
_ATTR_RE = re.compile(r"([^\s=/>]+)\s*=\s*\"([^\"]*)\"")
_MISTAKE_ATTRS = ("start_par", "start_off", "end_par", "end_off")


class _Locator:
    def __init__(self, text: str):
        self._starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def __call__(self, offset: int) -> tuple[int, int]:
        line = bisect.bisect_right(self._starts, offset)
        return line, offset - self._starts[line - 1] + 1


def parse_sgml_annotations(sgml_text: str) -> list[MistakeRecord]:
    """Parse a flat sequence of ``<MISTAKE>`` elements.

    Each element needs the four offset attributes and exactly one ``TYPE``
    and one ``CORRECTION`` child. Character entities in child text are
    decoded, and the correction is stripped of surrounding whitespace.
    """
    where = _Locator(sgml_text)

    def fail(msg: str, offset: int):
        line, col = where(offset)
        raise ParseError(msg, line, col)

    records = []
    pos = 0
    n = len(sgml_text)
    while True:
        lt = sgml_text.find("<", pos)
        stray = sgml_text[pos:lt if lt >= 0 else n]
        if stray.strip():
            fail(f"unexpected text {stray.strip()[:20]!r} outside MISTAKE", pos + len(stray) - len(stray.lstrip()))
        if lt < 0:
            break
        m = _TAG_RE.match(sgml_text, lt)
        if m is None or m.group(1) or m.group(2) != "MISTAKE" or m.group(4):
            fail("expected <MISTAKE ...>", lt)
        attrs = {}
        for a in _ATTR_RE.finditer(m.group(3)):
            if a.group(1) in attrs:
                fail(f"duplicate attribute {a.group(1)}", lt)
            attrs[a.group(1)] = a.group(2)
        for name in attrs:
            if name not in _MISTAKE_ATTRS:
                fail(f"unknown MISTAKE attribute {name}", lt)
        values = []
        for name in _MISTAKE_ATTRS:
            if name not in attrs:
                fail(f"MISTAKE is missing attribute {name}", lt)
            if not attrs[name].isdigit():
                fail(f"attribute {name} must be a non-negative integer, got {attrs[name]!r}", lt)
            values.append(int(attrs[name]))

        children: dict[str, str] = {}
        pos = m.end()
        while True:
            lt2 = sgml_text.find("<", pos)
            if lt2 < 0:
                fail("unterminated MISTAKE element", lt)
            if sgml_text[pos:lt2].strip():
                fail("unexpected text inside MISTAKE", pos)
            c = _TAG_RE.match(sgml_text, lt2)
            if c is None:
                fail("malformed tag", lt2)
            closing, name, cattrs, selfclose = c.groups()
            if closing:
                if name != "MISTAKE":
                    fail(f"unexpected </{name}>", lt2)
                pos = c.end()
                break
            if name not in ("TYPE", "CORRECTION"):
                fail(f"unexpected <{name}> inside MISTAKE", lt2)
            if cattrs.strip():
                fail(f"<{name}> takes no attributes", lt2)
            if name in children:
                fail(f"duplicate <{name}>", lt2)
            if selfclose:
                children[name] = ""
                pos = c.end()
                continue
            close = f"</{name}>"
            end = sgml_text.find(close, c.end())
            if end < 0:
                fail(f"unterminated <{name}>", lt2)
            body = sgml_text[c.end():end]
            if "<" in body:
                fail(f"markup inside <{name}>", c.end() + body.index("<"))
            children[name] = html.unescape(body)
            pos = end + len(close)
        for name in ("TYPE", "CORRECTION"):
            if name not in children:
                fail(f"MISTAKE is missing <{name}>", lt)
        type_tag = children["TYPE"].strip()
        try:
            check_error_type(type_tag)
            records.append(MistakeRecord(*values, type_tag, children["CORRECTION"].strip()))
        except ValueError as exc:
            fail(str(exc), lt)
    return records


def _sentence_for_span(sentences: Sequence[Sentence], cs: int, ce: int) -> tuple[Sentence, int, int]:
    if cs == ce:
        for s in sentences:
            lo, hi = s.char_range
            if lo <= cs <= hi:
                return s, cs, ce
        for s in sentences:
            if s.char_range[0] > cs:
                lo = s.char_range[0]
                return s, lo, lo
        if sentences:
            hi = sentences[-1].char_range[1]
            return sentences[-1], hi, hi
        raise SpanError(f"insertion at offset {cs} in a paragraph without sentences")
    hits = [s for s in sentences if s.tokens and s.char_range[0] < ce and cs < s.char_range[1]]
    if not hits:
        raise SpanError(f"span ({cs}, {ce}) covers no token")
    if len(hits) > 1:
        raise SpanError(
            f"span ({cs}, {ce}) crosses a sentence boundary (sentences "
            f"{hits[0].sentence_index}..{hits[-1].sentence_index})"
        )
    s = hits[0]
    lo, hi = s.char_range
    return s, max(cs, lo), min(ce, hi)


def mistakes_to_edits(doc: Document, records: Iterable[MistakeRecord], annotator_id: int = 0) -> dict[int, EditSet]:
    """Map character-level records onto token-level edits, grouped by sentence."""
    by_par: dict[int, list[Sentence]] = {}
    for s in doc.sentences:
        by_par.setdefault(s.paragraph_index, []).append(s)
    grouped: dict[int, list[Edit]] = {}
    for k, rec in enumerate(records):
        if rec.start_par != rec.end_par:
            raise SpanError(f"record {k}: span crosses paragraphs {rec.start_par}..{rec.end_par}")
        if rec.start_par >= len(doc.paragraphs):
            raise SpanError(f"record {k}: paragraph {rec.start_par} does not exist")
        try:
            sent, cs, ce = _sentence_for_span(by_par.get(rec.start_par, []), rec.start_off, rec.end_off)
            start, end = map_char_span_to_token_span(sent, cs, ce)
            edit = Edit(start, end, tuple(rec.correction.split()), rec.type_tag)
        except (SpanError, ValueError) as exc:
            raise SpanError(f"record {k} ({rec.start_par}:{rec.start_off}-{rec.end_off}): {exc}") from None
        grouped.setdefault(sent.sentence_index, []).append(edit)
    out = {}
    for idx, edits in grouped.items():
        out[idx] = EditSet.sorted(annotator_id, edits)
    return out


# ---------------------------------------------------------------------------
# Token-level S/A edit file
# ---------------------------------------------------------------------------

class EditBlock(NamedTuple):
    tokens: tuple[str, ...]
    gold: GoldAlternatives


def _edit_line(edit: Edit, annotator_id: int) -> str:
    return f"A {edit.tok_start} {edit.tok_end}{_SEP}{edit.etype}{_SEP}{edit.correction}{_SEP}REQUIRED{_SEP}-NONE-{_SEP}{annotator_id}"


def _noop_line(annotator_id: int) -> str:
    return f"A -1 -1{_SEP}{NOOP_TYPE}{_SEP}-NONE-{_SEP}REQUIRED{_SEP}-NONE-{_SEP}{annotator_id}"


def iter_blocks(text: str):
    """Yield ``(first_line_number, lines)`` for each blank-line separated block."""
    block: list[str] = []
    start = 0
    for lineno, line in enumerate(text.splitlines(), 1):
        if line.strip():
            if not block:
                start = lineno
            block.append(line)
        elif block:
            yield start, block
            block = []
    if block:
        yield start, block


def _parse_int(s: str, lineno: int) -> int:
    try:
        return int(s)
    except ValueError:
        raise ParseError(f"expected an integer, got {s!r}", lineno) from None


def parse_edit_file(text: str) -> list[EditBlock]:
    """Parse S/A blocks into ``(source_tokens, GoldAlternatives)`` entries.

    ``T`` lines (POS tags) are accepted and ignored here; see
    :func:`maxmatch.edit_typing.parse_tagged_file`.
    """
    entries = []
    for start, lines in iter_blocks(text):
        head = lines[0]
        if head != "S" and not head.startswith("S "):
            raise ParseError("block must start with an S line", start)
        tokens = tuple(head[2:].split())
        per_annotator: dict[int, list[Edit]] = {}
        for offset, line in enumerate(lines[1:], 1):
            lineno = start + offset
            if line == "T" or line.startswith("T "):
                continue
            if not line.startswith("A "):
                raise ParseError(f"unexpected line {line[:30]!r}", lineno)
            fields = line[2:].split(_SEP)
            if len(fields) != 6:
                raise ParseError(f"expected 6 '|||'-separated fields, got {len(fields)}", lineno)
            span, etype, correction, _, _, ann = fields
            span_parts = span.split()
            if len(span_parts) != 2:
                raise ParseError(f"malformed span {span!r}", lineno)
            s, e = (_parse_int(p, lineno) for p in span_parts)
            ann_id = _parse_int(ann.strip(), lineno)
            if ann_id < 0:
                raise ParseError(f"negative annotator id {ann_id}", lineno)
            edits = per_annotator.setdefault(ann_id, [])
            if (s, e) == (-1, -1):
                continue
            if not 0 <= s <= e <= len(tokens):
                raise ParseError(f"span ({s}, {e}) outside sentence of {len(tokens)} tokens", lineno)
            try:
                edits.append(Edit(s, e, tuple(correction.split()), check_error_type(etype)))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        if per_annotator:
            try:
                gold = GoldAlternatives(tuple(EditSet(a, tuple(es)) for a, es in per_annotator.items()))
            except InvariantError as exc:
                raise type(exc)(f"block at line {start}: {exc}") from None
        else:
            gold = GoldAlternatives.empty()
        entries.append(EditBlock(tokens, gold))
    return entries


def write_edit_file(entries: Iterable[tuple[Sequence[str], GoldAlternatives]]) -> str:
    blocks = []
    for tokens, gold in entries:
        lines = ["S" + "".join(" " + t for t in tokens)]
        alts = gold.alternatives
        if not (len(alts) == 1 and alts[0].annotator_id == 0 and not alts[0].edits):
            for alt in alts:
                if not alt.edits:
                    lines.append(_noop_line(alt.annotator_id))
                lines.extend(_edit_line(e, alt.annotator_id) for e in alt.edits)
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n" if blocks else ""
