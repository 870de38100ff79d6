"""Command-line front end: ``score``, ``stats`` and ``convert``.

Exit codes: 0 on success, 2 for bad input, 1 for internal errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, field

from . import __version__
from .annotations import EditSet, GoldAlternatives, mistakes_to_edits, parse_edit_file, parse_sgml_annotations, write_edit_file
from .edit_typing import parse_tagged_file, remap_gold_type
from .errors import InputError, LengthMismatchError
from .lattice import MatchParams
from .report import FORMATS, render_scores, render_stats, type_counts
from .scoring import score_corpus
from .text import Document


@dataclass
class RunConfig:
    gold_path: str
    system_paths: list[str]
    params: MatchParams = field(default_factory=MatchParams)
    per_type: bool = False
    alternatives: bool = True
    output_format: str = "text"
    tags_paths: list[str] = field(default_factory=list)
    per_sentence: bool = False
    jobs: int = 1

    def __post_init__(self):
        if not self.system_paths:
            raise InputError("at least one system file is required")
        if len(set(self.system_paths)) != len(self.system_paths):
            raise InputError("system paths must be distinct")
        if self.output_format not in FORMATS:
            raise InputError(f"unknown output format {self.output_format!r}")
        if self.tags_paths and len(self.tags_paths) != len(self.system_paths):
            raise InputError(f"{len(self.tags_paths)} --tags files for {len(self.system_paths)} systems")
        if [self.gold_path, *self.system_paths, *self.tags_paths].count("-") > 1:
            raise InputError("standard input can be read only once")


def read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as f:
            return f.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def read_lines(path: str) -> list[str]:
    text = read_text(path)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def team_names(paths: list[str]) -> list[str]:
    names = ["stdin" if p == "-" else os.path.splitext(os.path.basename(p))[0] for p in paths]
    if len(set(names)) != len(names):
        return list(paths)
    return names


def cmd_score(config: RunConfig) -> str:
    gold_text = read_text(config.gold_path)
    entries = parse_edit_file(gold_text)
    gold_tags = parse_tagged_file(gold_text) if config.per_type else None
    if gold_tags is not None and all(t is None for t in gold_tags):
        gold_tags = None
    sources = [e.tokens for e in entries]
    gold = [e.gold for e in entries]

    reports = []
    for k, (path, name) in enumerate(zip(config.system_paths, team_names(config.system_paths))):
        hyps = [line.split() for line in read_lines(path)]
        if len(hyps) != len(gold):
            raise LengthMismatchError(f"gold file has {len(gold)} sentences but system {path} has {len(hyps)}")
        hyp_tags = None
        if config.tags_paths:
            hyp_tags = parse_tagged_file(read_text(config.tags_paths[k]))
            if len(hyp_tags) != len(hyps):
                raise LengthMismatchError(
                    f"tags file {config.tags_paths[k]} has {len(hyp_tags)} sentences but system {path} has {len(hyps)}"
                )
            for i, (tagged, hyp) in enumerate(zip(hyp_tags, hyps)):
                if tagged is not None and list(tagged.texts) != hyp:
                    raise InputError(f"tags file {config.tags_paths[k]}: sentence {i} differs from system output")
        report = score_corpus(
            gold, sources, hyps, config.params,
            alternatives=config.alternatives, src_tags=gold_tags, hyp_tags=hyp_tags, workers=config.jobs,
        )
        reports.append((name, report))
    return render_scores(reports, config.output_format, config.per_type, config.per_sentence)


def cmd_stats(gold_path: str, fmt: str = "text") -> str:
    return render_stats(type_counts(e.gold for e in parse_edit_file(read_text(gold_path))), fmt)


def read_tokenized(text: str) -> list[list[list[str]]]:
    """Paragraphs separated by one blank line, one tokenized sentence per line."""
    text = text.rstrip("\n")
    if not text:
        return []
    return [[line.split() for line in chunk.split("\n") if line.strip()] for chunk in text.split("\n\n")]


def cmd_convert(sgml_path: str, raw_text_path: str, tokenized_path: str | None = None,
                tags_path: str | None = None, remap: bool = False) -> str:
    records = parse_sgml_annotations(read_text(sgml_path))
    paragraphs = read_lines(raw_text_path)
    if tokenized_path:
        doc = Document.from_tokenized(paragraphs, read_tokenized(read_text(tokenized_path)))
    else:
        doc = Document.from_whitespace(paragraphs)
    by_sentence = mistakes_to_edits(doc, records)
    tags = None
    if remap:
        if not tags_path:
            raise InputError("--remap needs --tags with source POS tags")
        tags = parse_tagged_file(read_text(tags_path))
        if len(tags) != len(doc.sentences):
            raise LengthMismatchError(f"tags file has {len(tags)} sentences but the document has {len(doc.sentences)}")
    entries = []
    for s in doc.sentences:
        edits = by_sentence.get(s.sentence_index, EditSet(0, ()))
        if tags is not None:
            tagged = tags[s.sentence_index]
            if tagged is not None and tagged.texts != s.texts:
                raise InputError(f"tags file: sentence {s.sentence_index} tokens differ from the document")
            edits = EditSet(edits.annotator_id, tuple(remap_gold_type(e, tagged) for e in edits.edits))
        entries.append((s.texts, GoldAlternatives((edits,))))
    return write_edit_file(entries)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxmatch", description="MaxMatch evaluation for grammatical error correction.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sc = sub.add_parser("score", help="score one or more system outputs against a gold edit file")
    sc.add_argument("gold", help="gold S/A edit file ('-' for stdin)")
    sc.add_argument("systems", nargs="+", help="system output files, one tokenized sentence per line")
    sc.add_argument("--max-unchanged-words", type=int, default=2, metavar="N",
                    help="max unchanged words inside one phrase edit (default: %(default)s)")
    sc.add_argument("--case-insensitive", action="store_true", help="ignore case when matching corrections")
    sc.add_argument("--per-type", action="store_true", help="add per error type scores")
    sc.add_argument("--per-sentence", action="store_true", help="include per-sentence choices (json only)")
    sc.add_argument("--no-alternatives", action="store_true",
                    help="score against annotator 0 only, ignoring alternative answers")
    sc.add_argument("--format", choices=FORMATS, default="text")
    sc.add_argument("--tags", action="append", default=[], metavar="FILE",
                    help="tagged system output (S/T blocks); give once per system, in order")
    sc.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes for extraction")

    st = sub.add_parser("stats", help="error type distribution of a gold edit file")
    st.add_argument("gold")
    st.add_argument("--format", choices=FORMATS, default="text")

    cv = sub.add_parser("convert", help="convert SGML stand-off annotation to the S/A edit format")
    cv.add_argument("sgml")
    cv.add_argument("raw", help="raw text, one paragraph per line")
    cv.add_argument("--tokenized", metavar="FILE",
                    help="tokenized sentences, one per line, paragraphs separated by a blank line "
                         "(default: one whitespace-tokenized sentence per paragraph)")
    cv.add_argument("--tags", metavar="FILE", help="source POS tags (S/T blocks), needed by --remap")
    cv.add_argument("--remap", action="store_true", help="remap Wcip/Rloc to Prep/ArtOrDet/Wci/Rloc-")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "score":
            if args.jobs < 1:
                raise InputError("--jobs must be at least 1")
            try:
                params = MatchParams(args.max_unchanged_words, not args.case_insensitive)
            except ValueError as exc:
                raise InputError(str(exc)) from None
            config = RunConfig(
                args.gold, args.systems, params, args.per_type, not args.no_alternatives,
                args.format, args.tags, args.per_sentence, args.jobs,
            )
            out = cmd_score(config)
        elif args.command == "stats":
            out = cmd_stats(args.gold, args.format)
        else:
            out = cmd_convert(args.sgml, args.raw, args.tokenized, args.tags, args.remap)
    except InputError as exc:
        print(f"maxmatch: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"maxmatch: internal error: {exc!r}", file=sys.stderr)
        return 1
    sys.stdout.write(out)
    return 0
