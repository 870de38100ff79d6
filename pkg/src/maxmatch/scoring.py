"""Corpus scoring with maximal matching and alternative gold sets.

For every sentence the system edits are extracted once per gold
alternative, since the best-matching edit set depends on the gold set. The
alternative kept is the one that maximizes cumulative F1 over the sentences
seen so far; ties prefer more matches, then fewer gold+system edits, then
the earlier alternative. Selection is sequential by construction.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .annotations import Edit, EditSet, GoldAlternatives
from .edit_typing import BUCKETS, OTHER, TaggedSentence, attribute_tally, classify_system_edit
from .errors import LengthMismatchError
from .lattice import DEFAULT_PARAMS, MatchParams, build_lattice, count_matches, edits_from_lattice, normalize_replacement
from .tally import PRF, ScoreTally, prf

__all__ = [
    "Extraction",
    "PRF",
    "ScoreReport",
    "ScoreTally",
    "SentenceResult",
    "prf",
    "score_corpus",
    "select_gold_alternative",
]


class Extraction(NamedTuple):
    edits: EditSet
    matches: int


@dataclass(frozen=True)
class SentenceResult:
    index: int
    alternative_index: int
    annotator_id: int
    tally: ScoreTally
    edits: EditSet


@dataclass
class ScoreReport:
    tally: ScoreTally = field(default_factory=ScoreTally)
    per_type: dict[str, ScoreTally] = field(default_factory=lambda: {b: ScoreTally() for b in BUCKETS})
    sentences: list[SentenceResult] = field(default_factory=list)

    @property
    def overall(self) -> PRF:
        return prf(self.tally)

    def type_scores(self) -> dict[str, PRF]:
        return {b: prf(t) for b, t in self.per_type.items()}


def select_gold_alternative(
    alts: GoldAlternatives, sys: Sequence[Extraction], cum: ScoreTally
) -> tuple[int, ScoreTally]:
    """Pick the alternative whose inclusion gives the best cumulative F1."""
    if len(sys) != len(alts.alternatives):
        raise ValueError(f"{len(sys)} extraction results for {len(alts.alternatives)} alternatives")
    best_key = None
    best = (0, cum)
    for i, (gold, ext) in enumerate(zip(alts.alternatives, sys)):
        t = cum + ScoreTally(ext.matches, len(gold.edits), len(ext.edits.edits))
        key = (prf(t).f1, t.matches, -(t.gold_total + t.sys_total))
        if best_key is None or key > best_key:
            best_key, best = key, (i, t)
    return best


def _extract_all(task) -> list[Extraction]:
    src, hyp, alternatives, params = task
    lattice = build_lattice(src, hyp, params)
    out = []
    for gold in alternatives:
        edits = edits_from_lattice(lattice, gold, params)
        out.append(Extraction(edits, count_matches(gold, edits, params)))
    return out


def _default_alternative(gold: GoldAlternatives) -> int:
    for i, alt in enumerate(gold.alternatives):
        if alt.annotator_id == 0:
            return i
    return 0


def _hyp_offsets(edits: Sequence[Edit]) -> list[int]:
    """Start position in the hypothesis of each edit's replacement."""
    shift = 0
    out = []
    for e in edits:
        out.append(e.tok_start + shift)
        shift += len(e.replacement) - (e.tok_end - e.tok_start)
    return out


def _attribute(
    gold: EditSet,
    system: EditSet,
    params: MatchParams,
    src_tags: TaggedSentence | None,
    hyp_tags: TaggedSentence | None,
) -> dict[str, ScoreTally]:
    cs = params.case_sensitive
    by_key = {(g.tok_start, g.tok_end, normalize_replacement(g.replacement, cs)): g for g in gold.edits}
    matched_gold = set()
    totals: dict[str, ScoreTally] = {}

    def add(incr):
        for b, t in incr.items():
            totals[b] = totals.get(b, ScoreTally()) + t

    for e, j in zip(system.edits, _hyp_offsets(system.edits)):
        g = by_key.get((e.tok_start, e.tok_end, normalize_replacement(e.replacement, cs)))
        if g is not None:
            matched_gold.add(id(g))
            add(attribute_tally(True, g.etype or OTHER, None))
        else:
            repl = None if hyp_tags is None else hyp_tags.tags[j:j + len(e.replacement)]
            add(attribute_tally(False, None, classify_system_edit(e, src_tags, repl)))
    for g in gold.edits:
        if id(g) not in matched_gold:
            add(attribute_tally(False, g.etype or OTHER, None))
    return totals


def score_corpus(
    gold: Sequence[GoldAlternatives],
    sources: Sequence[Sequence[str]],
    hypotheses: Sequence[Sequence[str]],
    params: MatchParams = DEFAULT_PARAMS,
    *,
    alternatives: bool = True,
    src_tags: Sequence[TaggedSentence | None] | None = None,
    hyp_tags: Sequence[TaggedSentence | None] | None = None,
    workers: int = 1,
) -> ScoreReport:
    """Score a corpus of hypotheses against (alternative) gold edit sets.

    With ``alternatives=False`` only annotator 0 (or the first listed
    alternative when annotator 0 is absent) is used. ``workers > 1`` runs
    the lattice extraction in a process pool; selection and accumulation
    stay sequential, so the report is identical either way.
    """
    if not len(gold) == len(sources) == len(hypotheses):
        raise LengthMismatchError(
            f"sentence counts differ: gold {len(gold)}, sources {len(sources)}, hypotheses {len(hypotheses)}"
        )
    for name, tags in (("source", src_tags), ("hypothesis", hyp_tags)):
        if tags is not None and len(tags) != len(gold):
            raise LengthMismatchError(f"{len(tags)} {name} tag blocks for {len(gold)} sentences")

    chosen_alts = [
        g if alternatives else GoldAlternatives((g.alternatives[_default_alternative(g)],))
        for g in gold
    ]
    tasks = [
        (tuple(s), tuple(h), alts.alternatives, params)
        for s, h, alts in zip(sources, hypotheses, chosen_alts)
    ]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_extract_all, tasks, chunksize=max(1, len(tasks) // (workers * 8))))
    else:
        results = [_extract_all(t) for t in tasks]

    report = ScoreReport()
    cum = ScoreTally()
    for idx, (alts, exts) in enumerate(zip(chosen_alts, results)):
        choice, cum = select_gold_alternative(alts, exts, cum)
        g = alts.alternatives[choice]
        e = exts[choice]
        listed = choice if alternatives else _default_alternative(gold[idx])
        report.sentences.append(
            SentenceResult(idx, listed, g.annotator_id, ScoreTally(e.matches, len(g.edits), len(e.edits.edits)), e.edits)
        )
        incr = _attribute(
            g, e.edits, params,
            src_tags[idx] if src_tags is not None else None,
            hyp_tags[idx] if hyp_tags is not None else None,
        )
        for b, t in incr.items():
            report.per_type[b] = report.per_type.get(b, ScoreTally()) + t
    report.tally = cum
    return report
