"""Edit lattice over a source/hypothesis alignment and maximal gold matching.

The lattice is the union of all minimum-cost Levenshtein alignments between
the source and hypothesis tokens (match 0, substitution/insertion/deletion
1), augmented with phrase edges that merge runs of operations. A path from
``(0, 0)`` to ``(len(src), len(hyp))`` induces one system edit per
non-match edge. Picking the path that maximally agrees with a gold edit set
is a shortest-path problem on this DAG.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .annotations import Edit, EditSet
from .errors import SizeError

MATCH = "match"
SUBSTITUTION = "substitution"
DELETION = "deletion"
INSERTION = "insertion"
PHRASE = "phrase"

# Fixed tie-break order among unit operations.
_UNIT_ORDER = {MATCH: 0, SUBSTITUTION: 1, DELETION: 2, INSERTION: 3}

DEFAULT_MAX_CELLS = 10_000_000


@dataclass(frozen=True)
class MatchParams:
    max_unchanged_words: int = 2
    case_sensitive: bool = True
    max_cells: int = DEFAULT_MAX_CELLS

    def __post_init__(self):
        if not 0 <= self.max_unchanged_words <= 10:
            raise ValueError(f"max_unchanged_words must be in [0, 10], got {self.max_unchanged_words}")
        if self.max_cells <= 0:
            raise ValueError("max_cells must be positive")


DEFAULT_PARAMS = MatchParams()


class LatticeEdge(NamedTuple):
    kind: str
    src_start: int
    src_end: int
    hyp_start: int
    hyp_end: int
    cost: int

    @property
    def source(self) -> tuple[int, int]:
        return (self.src_start, self.hyp_start)

    @property
    def target(self) -> tuple[int, int]:
        return (self.src_end, self.hyp_end)

    @property
    def is_edit(self) -> bool:
        return self.kind != MATCH


@dataclass
class AlignmentLattice:
    src: tuple[str, ...]
    hyp: tuple[str, ...]
    distance: int
    nodes: list[tuple[int, int]]
    edges: list[LatticeEdge]
    # node -> indices into ``edges``, in tie-break order
    out: dict[tuple[int, int], list[int]]

    def edit_for(self, edge: LatticeEdge) -> Edit:
        return Edit(edge.src_start, edge.src_end, self.hyp[edge.hyp_start:edge.hyp_end])

    def candidate_edits(self) -> set[Edit]:
        return {self.edit_for(e) for e in self.edges if e.is_edit}


def _tokens(x) -> tuple[str, ...]:
    if hasattr(x, "texts"):
        return tuple(x.texts)
    return tuple(x)


def normalize_replacement(tokens: Sequence[str], case_sensitive: bool = True) -> tuple[str, ...]:
    norm = tuple(" ".join(tokens).split())
    return norm if case_sensitive else tuple(t.casefold() for t in norm)


def edit_matches(g: Edit, e: Edit, params: MatchParams = DEFAULT_PARAMS) -> bool:
    """Span and normalized correction must agree; error types are ignored."""
    return (
        g.tok_start == e.tok_start
        and g.tok_end == e.tok_end
        and normalize_replacement(g.replacement, params.case_sensitive)
        == normalize_replacement(e.replacement, params.case_sensitive)
    )


def count_matches(gold: EditSet, system: EditSet, params: MatchParams = DEFAULT_PARAMS) -> int:
    """Size of the intersection: system edits matched by some gold edit."""
    keys = _gold_keys(gold, params)
    return sum(
        (e.tok_start, e.tok_end, normalize_replacement(e.replacement, params.case_sensitive)) in keys
        for e in system.edits
    )


def _gold_keys(gold: EditSet, params: MatchParams) -> set:
    return {
        (g.tok_start, g.tok_end, normalize_replacement(g.replacement, params.case_sensitive))
        for g in gold.edits
    }


def _distance_table(src: Sequence[str], hyp: Sequence[str]) -> list[list[int]]:
    """Forward Levenshtein table, computed inside a doubling diagonal band.

    Cells with a true prefix distance at most the band width are exact; every
    cell on a minimum-cost alignment qualifies once the band reaches the
    total distance.
    """
    n, m = len(src), len(hyp)
    inf = n + m + 1
    band = max(1, abs(n - m))
    while True:
        table = [[inf] * (m + 1) for _ in range(n + 1)]
        row = table[0]
        for j in range(min(m, band) + 1):
            row[j] = j
        for i in range(1, n + 1):
            prev, row = table[i - 1], table[i]
            s = src[i - 1]
            lo = i - band
            if lo <= 0:
                row[0] = i
                lo = 1
            for j in range(lo, min(m, i + band) + 1):
                best = prev[j - 1] if s == hyp[j - 1] else prev[j - 1] + 1
                d = prev[j] + 1
                if d < best:
                    best = d
                d = row[j - 1] + 1
                if d < best:
                    best = d
                row[j] = best
        if table[n][m] <= band or band >= max(n, m):
            return table
        band *= 2


def _unit_dag(src, hyp, table):
    """Backtrack from the end node over every tight predecessor edge."""
    n, m = len(src), len(hyp)
    preds: dict[tuple[int, int], list[tuple[str, tuple[int, int]]]] = {}
    stack = [(n, m)]
    seen = {(n, m)}
    while stack:
        i, j = node = stack.pop()
        here = table[i][j]
        found = []
        if i and j:
            same = src[i - 1] == hyp[j - 1]
            if table[i - 1][j - 1] + (0 if same else 1) == here:
                found.append((MATCH if same else SUBSTITUTION, (i - 1, j - 1)))
        if i and table[i - 1][j] + 1 == here:
            found.append((DELETION, (i - 1, j)))
        if j and table[i][j - 1] + 1 == here:
            found.append((INSERTION, (i, j - 1)))
        preds[node] = found
        for _, p in found:
            if p not in seen:
                seen.add(p)
                stack.append(p)
    return preds


def build_lattice(src, hyp, params: MatchParams = DEFAULT_PARAMS) -> AlignmentLattice:
    """Build the edit lattice for ``src`` → ``hyp`` (token sequences or Sentences)."""
    src, hyp = _tokens(src), _tokens(hyp)
    n, m = len(src), len(hyp)
    if n * m > params.max_cells:
        raise SizeError(f"alignment table {n}x{m} exceeds the cap of {params.max_cells} cells")
    table = _distance_table(src, hyp)
    preds = _unit_dag(src, hyp, table)
    nodes = sorted(preds)

    succ: dict[tuple[int, int], list[tuple[str, tuple[int, int]]]] = {v: [] for v in nodes}
    for v in nodes:
        for kind, u in preds[v]:
            succ[u].append((kind, v))
    for u in nodes:
        succ[u].sort(key=lambda kv: _UNIT_ORDER[kv[0]])

    edges: list[LatticeEdge] = []
    out: dict[tuple[int, int], list[int]] = {v: [] for v in nodes}
    k = params.max_unchanged_words
    for u in nodes:
        ui, uj = u
        direct = set()
        for kind, v in succ[u]:
            out[u].append(len(edges))
            edges.append(LatticeEdge(kind, ui, v[0], uj, v[1], 0 if kind == MATCH else 1))
            if kind != MATCH:
                direct.add(v)
        # Min number of match edges over paths from u containing at least one
        # non-match edge ("mixed"), and along the all-match path ("pure").
        pure = {u: 0}
        mixed: dict[tuple[int, int], int] = {}
        heap = [u]
        queued = {u}
        while heap:
            w = heapq.heappop(heap)
            p = pure.get(w)
            b = mixed.get(w)
            for kind, v in succ[w]:
                if kind == MATCH:
                    if p is not None and p < k and pure.get(v, k + 1) > p + 1:
                        pure[v] = p + 1
                    cand = b + 1 if b is not None and b < k else None
                else:
                    cand = p if b is None else (b if p is None else min(p, b))
                if cand is not None and mixed.get(v, k + 1) > cand:
                    mixed[v] = cand
                if v not in queued and (v in pure or v in mixed):
                    queued.add(v)
                    heapq.heappush(heap, v)
        ti = table[ui][uj]
        for v in sorted(mixed):
            if v in direct:
                continue
            out[u].append(len(edges))
            edges.append(LatticeEdge(PHRASE, ui, v[0], uj, v[1], table[v[0]][v[1]] - ti))
    return AlignmentLattice(src, hyp, table[n][m], nodes, edges, out)


def best_path(lattice: AlignmentLattice, gold: EditSet, params: MatchParams = DEFAULT_PARAMS) -> list[LatticeEdge]:
    """Path maximizing gold matches, then minimizing edits, then cost.

    The three objectives are packed into one integer weight so a single
    relaxation pass in topological order suffices. Each node is split by
    whether it was entered through an insertion edit, because an edit set
    may not hold two insertions at the same point; such runs are covered by
    phrase edges instead. Remaining ties keep the first path found, which
    makes the result deterministic.
    """
    keys = _gold_keys(gold, params)
    cs = params.case_sensitive
    hyp = lattice.hyp
    big = len(lattice.src) + len(hyp) + 2
    big2 = big * big
    start = ((0, 0), False)
    dist = {start: 0}
    back: dict[tuple[tuple[int, int], bool], tuple[int, bool]] = {}
    edges = lattice.edges
    for u in lattice.nodes:
        for flag in (False, True):
            du = dist.get((u, flag))
            if du is None:
                continue
            for idx in lattice.out[u]:
                e = edges[idx]
                inserts = e.kind != MATCH and e.src_start == e.src_end
                if inserts and flag:
                    continue
                if e.kind == MATCH:
                    w = 0
                else:
                    key = (e.src_start, e.src_end, normalize_replacement(hyp[e.hyp_start:e.hyp_end], cs))
                    w = big + e.cost - (big2 if key in keys else 0)
                state = ((e.src_end, e.hyp_end), inserts)
                dv = dist.get(state)
                if dv is None or du + w < dv:
                    dist[state] = du + w
                    back[state] = (idx, flag)
    end = (len(lattice.src), len(hyp))
    finals = [(dist[(end, f)], f) for f in (False, True) if (end, f) in dist]
    state = (end, min(finals)[1])
    path = []
    while state != start:
        idx, flag = back[state]
        e = edges[idx]
        path.append(e)
        state = (e.source, flag)
    path.reverse()
    return path


def edits_from_lattice(lattice: AlignmentLattice, gold: EditSet, params: MatchParams = DEFAULT_PARAMS) -> EditSet:
    path = best_path(lattice, gold, params)
    return EditSet(gold.annotator_id, tuple(lattice.edit_for(e) for e in path if e.is_edit))


def extract_system_edits(src, hyp, gold: EditSet, params: MatchParams = DEFAULT_PARAMS) -> EditSet:
    """System edits turning ``src`` into ``hyp`` that best match ``gold``."""
    return edits_from_lattice(build_lattice(src, hyp, params), gold, params)


def diff_edits(src, hyp) -> EditSet:
    """Plain word-diff extraction, ignoring any gold annotation.

    Follows a single minimum-cost alignment and turns each maximal run of
    non-match operations into one edit. This is the behaviour of diff-based
    scorers; it is kept as a baseline.
    """
    src, hyp = _tokens(src), _tokens(hyp)
    table = _distance_table(src, hyp)
    ops = []
    i, j = len(src), len(hyp)
    while i or j:
        here = table[i][j]
        if i and j and src[i - 1] == hyp[j - 1] and table[i - 1][j - 1] == here:
            ops.append((MATCH, i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i and j and src[i - 1] != hyp[j - 1] and table[i - 1][j - 1] + 1 == here:
            ops.append((SUBSTITUTION, i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i and table[i - 1][j] + 1 == here:
            ops.append((DELETION, i - 1, j))
            i -= 1
        else:
            ops.append((INSERTION, i, j - 1))
            j -= 1
    ops.reverse()
    edits = []
    run = None
    i = j = 0
    for kind, _, _ in ops + [(MATCH, None, None)]:
        if kind == MATCH:
            if run is not None:
                edits.append(Edit(run[0], i, hyp[run[1]:j]))
                run = None
            i, j = i + 1, j + 1
            continue
        if run is None:
            run = (i, j)
        if kind in (SUBSTITUTION, DELETION):
            i += 1
        if kind in (SUBSTITUTION, INSERTION):
            j += 1
    return EditSet(0, tuple(edits))
