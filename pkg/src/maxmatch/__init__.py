"""MaxMatch (M2) evaluation for grammatical error correction."""

__version__ = "0.1.0"

from .annotations import Edit, EditSet, GoldAlternatives, MistakeRecord, apply_edits, parse_edit_file, write_edit_file
from .lattice import MatchParams, build_lattice, diff_edits, edit_matches, extract_system_edits
from .scoring import ScoreReport, ScoreTally, prf, score_corpus, select_gold_alternative

__all__ = [
    "Edit",
    "EditSet",
    "GoldAlternatives",
    "MatchParams",
    "MistakeRecord",
    "ScoreReport",
    "ScoreTally",
    "apply_edits",
    "build_lattice",
    "diff_edits",
    "edit_matches",
    "extract_system_edits",
    "parse_edit_file",
    "prf",
    "score_corpus",
    "select_gold_alternative",
    "write_edit_file",
]
