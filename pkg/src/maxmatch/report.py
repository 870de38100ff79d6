"""Text, TSV and JSON rendering of score reports and corpus statistics."""

from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from typing import Iterable, Sequence

from .annotations import SHARED_TASK_TYPES, GoldAlternatives
from .edit_typing import ARTORDET, BUCKETS, NN, PREP, VFORM_SVA
from .scoring import ScoreReport
from .tally import ScoreTally, prf

TABLE_BUCKETS = (ARTORDET, PREP, NN, VFORM_SVA)
FORMATS = ("text", "tsv", "json")


def format_percent(value: Fraction, places: int = 2) -> str:
    """Render ``value`` as a percentage, rounding half away from zero."""
    scaled = Fraction(value) * 100 * 10**places
    sign = "-" if scaled < 0 else ""
    q = int(abs(scaled) + Fraction(1, 2))
    if not places:
        return f"{sign}{q}"
    whole, frac = divmod(q, 10**places)
    return f"{sign}{whole}.{frac:0{places}d}"


def rank(reports: Sequence[tuple[str, ScoreReport]]) -> list[tuple[int, str, ScoreReport]]:
    """Order by F1 descending; equal F1 shares a rank (1, 1, 3, ...)."""
    order = sorted(range(len(reports)), key=lambda i: (-reports[i][1].overall.f1, i))
    out = []
    prev_f1 = None
    current = 0
    for pos, i in enumerate(order, 1):
        name, rep = reports[i]
        if rep.overall.f1 != prev_f1:
            current, prev_f1 = pos, rep.overall.f1
        out.append((current, name, rep))
    return out


def _align(rows: list[list[str]], right_from: int = 0) -> str:
    widths = [max(len(r[c]) for r in rows) for c in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [cell.rjust(w) if c >= right_from else cell.ljust(w) for c, (cell, w) in enumerate(zip(r, widths))]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def _prf_cells(t: ScoreTally) -> list[str]:
    return [format_percent(x) for x in prf(t)]


def _fraction(value: Fraction) -> dict:
    return {"numerator": value.numerator, "denominator": value.denominator, "percent": format_percent(value)}


def _tally_json(t: ScoreTally) -> dict:
    r, p, f = prf(t)
    return {
        "tally": {"matches": t.matches, "gold_total": t.gold_total, "sys_total": t.sys_total},
        "R": _fraction(r),
        "P": _fraction(p),
        "F1": _fraction(f),
    }


def render_scores(
    reports: Sequence[tuple[str, ScoreReport]],
    fmt: str = "text",
    per_type: bool = False,
    per_sentence: bool = False,
) -> str:
    ranked = rank(reports)
    if fmt == "json":
        systems = []
        for r, name, rep in ranked:
            entry = {"rank": r, "team": name, **_tally_json(rep.tally)}
            if per_type:
                entry["per_type"] = {b: _tally_json(rep.per_type[b]) for b in BUCKETS}
            if per_sentence:
                entry["sentences"] = [
                    {
                        "index": s.index,
                        "annotator_id": s.annotator_id,
                        "alternative_index": s.alternative_index,
                        "matches": s.tally.matches,
                        "gold_total": s.tally.gold_total,
                        "sys_total": s.tally.sys_total,
                    }
                    for s in rep.sentences
                ]
            systems.append(entry)
        return json.dumps({"systems": systems}, indent=2) + "\n"

    if fmt == "tsv":
        header = ["Rank", "Team", "R", "P", "F1"]
        if per_type:
            header += [f"{b} {m}" for b in BUCKETS for m in ("R", "P", "F1")]
        lines = ["\t".join(header)]
        for r, name, rep in ranked:
            row = [str(r), name, *_prf_cells(rep.tally)]
            if per_type:
                row += [c for b in BUCKETS for c in _prf_cells(rep.per_type[b])]
            lines.append("\t".join(row))
        return "\n".join(lines) + "\n"

    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    if len(ranked) == 1:
        r, p, f = _prf_cells(ranked[0][2].tally)
        out = f"R {r}  P {p}  F1 {f}\n"
    else:
        rows = [["Rank", "Team", "R", "P", "F1"]]
        rows += [[str(r), name, *_prf_cells(rep.tally)] for r, name, rep in ranked]
        out = _align(rows, right_from=2)
    if per_type:
        rows = [["", *[b if m == "R" else "" for b in TABLE_BUCKETS for m in ("R", "P", "F1")]],
                ["Team", *["R", "P", "F1"] * len(TABLE_BUCKETS)]]
        for _, name, rep in sorted(ranked, key=lambda x: x[1]):
            rows.append([name, *[c for b in TABLE_BUCKETS for c in _prf_cells(rep.per_type[b])]])
        out += "\n" + _align(rows, right_from=1)
    return out


def type_counts(gold: Iterable[GoldAlternatives]) -> Counter:
    """Edit counts per error tag over every annotator's edits."""
    counts: Counter = Counter()
    for alts in gold:
        for alt in alts.alternatives:
            counts.update(e.etype for e in alt.edits)
    return counts


def render_stats(counts: Counter, fmt: str = "text") -> str:
    total = sum(counts.values())
    five = sum(counts[t] for t in SHARED_TASK_TYPES)

    def pct(n: int) -> str:
        return format_percent(Fraction(n, total) if total else Fraction(0), 1)

    rows = [(t, counts[t]) for t in SHARED_TASK_TYPES]
    rows.append(("5 types", five))
    rows += sorted((t, n) for t, n in counts.items() if t not in SHARED_TASK_TYPES)
    rows.append(("all types", total))

    if fmt == "json":
        return json.dumps({"types": [{"type": t, "count": n, "percent": pct(n)} for t, n in rows]}, indent=2) + "\n"
    if fmt == "tsv":
        return "\n".join(["Error tag\tCount\t%", *(f"{t}\t{n}\t{pct(n)}" for t, n in rows)]) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    return _align([["Error tag", "Count", "%"], *([t, str(n), pct(n)] for t, n in rows)], right_from=1)
