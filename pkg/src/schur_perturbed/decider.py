"""Decide 2-Schur-Ramsey-ness of a finite set by backtracking search.

The search looks for a Schur-free red/blue coloring. Branching goes over
elements in ascending order, red first; the very first branch is fixed to red
because colorings are closed under swapping colors. After each assignment,
unit propagation applies the forcing rule: when two distinct entries of a
triple share a color, the remaining entry takes the other color (for
``(a, a, 2a)`` a colored ``a`` forces ``2a`` to the opposite color).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .core import (
    Color,
    IntegerSet,
    TriplePolicy,
    TwoColoring,
    enumerate_schur_triples,
    verify_coloring,
)

_UNSET = -1
_RED, _BLUE = 0, 1


@dataclass
class SearchStats:
    nodes_expanded: int = 0
    propagations: int = 0
    max_depth: int = 0

    def to_json(self) -> dict:
        return {
            "nodes_expanded": self.nodes_expanded,
            "propagations": self.propagations,
            "max_depth": self.max_depth,
        }


class Verdict(enum.Enum):
    RAMSEY = "ramsey"
    NOT_RAMSEY = "not-ramsey"
    BUDGET_EXCEEDED = "budget-exceeded"


@dataclass(frozen=True)
class Decision:
    verdict: Verdict
    witness: TwoColoring | None = None
    stats: SearchStats = field(default_factory=SearchStats)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": None if self.witness is None else self.witness.to_json(),
            "stats": self.stats.to_json(),
        }


class _Exhausted(Exception):
    pass


class _Search:
    def __init__(self, S: IntegerSet, policy: TriplePolicy, node_budget: int | None) -> None:
        self.elems = S.elements
        index = {e: i for i, e in enumerate(self.elems)}
        # each triple as distinct element indices; length 2 for (a, a, 2a)
        self.triples: list[tuple[int, ...]] = []
        self.watch: list[list[int]] = [[] for _ in self.elems]
        for t in enumerate_schur_triples(S, policy):
            idx = tuple(sorted({index[v] for v in t}))
            tid = len(self.triples)
            self.triples.append(idx)
            for i in idx:
                self.watch[i].append(tid)
        self.color = [_UNSET] * len(self.elems)
        self.trail: list[int] = []
        self.budget = node_budget
        # the root of the search tree counts as one node
        self.stats = SearchStats(nodes_expanded=1)

    def _assign(self, i: int, c: int, queue: list[int]) -> None:
        self.color[i] = c
        self.trail.append(i)
        queue.append(i)

    def _propagate(self, queue: list[int]) -> bool:
        color = self.color
        while queue:
            i = queue.pop()
            for tid in self.watch[i]:
                t = self.triples[tid]
                if len(t) == 2:
                    u, v = t
                    cu, cv = color[u], color[v]
                    if cu == _UNSET or cv == _UNSET:
                        j, cj = (u, cv) if cu == _UNSET else (v, cu)
                        self._assign(j, 1 - cj, queue)
                        self.stats.propagations += 1
                    elif cu == cv:
                        return False
                    continue
                u, v, w = t
                cu, cv, cw = color[u], color[v], color[w]
                unset = (cu == _UNSET) + (cv == _UNSET) + (cw == _UNSET)
                if unset == 0:
                    if cu == cv == cw:
                        return False
                elif unset == 1:
                    if cu == _UNSET and cv == cw:
                        self._assign(u, 1 - cv, queue)
                    elif cv == _UNSET and cu == cw:
                        self._assign(v, 1 - cu, queue)
                    elif cw == _UNSET and cu == cv:
                        self._assign(w, 1 - cu, queue)
                    else:
                        continue
                    self.stats.propagations += 1
        return True

    def _undo(self, trail_len: int) -> None:
        while len(self.trail) > trail_len:
            self.color[self.trail.pop()] = _UNSET

    def _try(self, i: int, c: int) -> bool:
        self.stats.nodes_expanded += 1
        if self.budget is not None and self.stats.nodes_expanded > self.budget:
            self.stats.nodes_expanded = self.budget
            raise _Exhausted(self.stats)
        queue: list[int] = []
        self._assign(i, c, queue)
        return self._propagate(queue)

    def run(self) -> list[int] | None:
        # frame: (element index, trail length before, alternative colors left)
        frames: list[tuple[int, int, list[int]]] = []
        nxt = 0
        while True:
            while nxt < len(self.elems) and self.color[nxt] != _UNSET:
                nxt += 1
            if nxt == len(self.elems):
                return list(self.color)
            alternatives = [] if not frames else [_BLUE]
            frames.append((nxt, len(self.trail), alternatives))
            self.stats.max_depth = max(self.stats.max_depth, len(frames))
            ok = self._try(nxt, _RED)
            while not ok:
                while frames and not frames[-1][2]:
                    frames.pop()
                if not frames:
                    return None
                i, mark, alts = frames[-1]
                self._undo(mark)
                ok = self._try(i, alts.pop(0))
                nxt = i


def _run(S: IntegerSet, policy: TriplePolicy, node_budget: int | None):
    search = _Search(S, policy, node_budget)
    colors = search.run()
    if colors is None:
        return None, search.stats
    col = TwoColoring(
        {e: Color.RED if c == _RED else Color.BLUE for e, c in zip(search.elems, colors)}
    )
    return col, search.stats


def find_schur_free_coloring(
    S: IntegerSet, policy: TriplePolicy = TriplePolicy.SCHUR
) -> tuple[TwoColoring | None, SearchStats]:
    """Return a Schur-free total coloring of ``S`` (or ``None``) and search stats."""
    col, stats = _run(S, policy, None)
    if col is not None:
        assert verify_coloring(S, col, policy) is None
    return col, stats


def is_two_schur_ramsey(S: IntegerSet, policy: TriplePolicy = TriplePolicy.SCHUR) -> bool:
    return find_schur_free_coloring(S, policy)[0] is None


def smallest_ramsey_prefix(policy: TriplePolicy, n_max: int) -> int | None:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    for n in range(1, n_max + 1):
        if is_two_schur_ramsey(IntegerSet.full(n), policy):
            return n
    return None


def decide_with_budget(
    S: IntegerSet, policy: TriplePolicy = TriplePolicy.SCHUR, node_budget: int = 10**6
) -> Decision:
    if node_budget < 1:
        raise ValueError("node_budget must be >= 1")
    try:
        col, stats = _run(S, policy, node_budget)
    except _Exhausted as exc:
        return Decision(Verdict.BUDGET_EXCEEDED, None, exc.args[0])
    if col is None:
        return Decision(Verdict.RAMSEY, None, stats)
    if verify_coloring(S, col, policy) is not None:
        raise AssertionError("decider produced an invalid witness")
    return Decision(Verdict.NOT_RAMSEY, col, stats)
