"""Popular common steps and the Schur-triple family built from pairs of 4APs.

For a popular step ``d`` and two distinct 4APs ``(x-d, x, x+d, x+2d)`` and
``(y'-d, y', y'+d, y'+2d)`` of ``A`` with ``y' > x``, put ``y = y' + d``; the
pair contributes the triple ``(d, y-x-d, y-x)``. A triple therefore depends
only on the step ``d`` and the gap ``g = y' - x``: it is ``(d, g, d + g)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational

import numpy as np

from .core import BudgetExceeded, IntegerSet, SchurTriple, ap_starts, count_4aps_by_step
from .gadget import GadgetSpec, build_gadget


def as_fraction(value) -> Fraction:
    """Exact rational from a ``Fraction``, int, decimal string or float (via its repr)."""
    if isinstance(value, (Fraction, int, Rational)):
        return Fraction(value)
    return Fraction(str(value).strip())


def _check_epsilon(epsilon) -> Fraction:
    eps = as_fraction(epsilon)
    if not 0 < eps <= 1:
        raise ValueError(f"epsilon must lie in (0, 1], got {epsilon}")
    return eps


@dataclass(frozen=True)
class PopularSteps:
    epsilon: Fraction
    n: int
    steps: tuple[int, ...]
    per_step_counts: dict[int, int]

    @property
    def threshold(self) -> Fraction:
        return self.epsilon * self.n

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "epsilon": str(self.epsilon),
            "threshold": str(self.threshold),
            "steps": list(self.steps),
            "per_step_counts": {str(d): c for d, c in sorted(self.per_step_counts.items())},
        }


def popular_steps(A: IntegerSet, epsilon) -> PopularSteps:
    """Steps ``d`` carrying at least ``epsilon * n`` 4APs of ``A`` (ties included)."""
    eps = _check_epsilon(epsilon)
    counts = count_4aps_by_step(A)
    threshold = eps * A.n
    steps = tuple(d for d in sorted(counts) if counts[d] >= threshold)
    return PopularSteps(eps, A.n, steps, counts)


@dataclass(frozen=True)
class TripleFamily:
    """Canonical triples with lazily materialized witness lists.

    ``seconds[d]`` holds, for each popular step ``d``, a boolean mask over
    ``0..n`` marking the second terms ``x`` of 4APs of step ``d`` in ``A``.
    """

    A: IntegerSet
    popular: PopularSteps
    triples: tuple[SchurTriple, ...]
    seconds: dict[int, np.ndarray] = field(repr=False)

    @property
    def n(self) -> int:
        return self.A.n

    @property
    def epsilon(self) -> Fraction:
        return self.popular.epsilon

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self):
        return iter(self.triples)

    def __contains__(self, t) -> bool:
        return tuple(t) in self._index

    @cached_property
    def _index(self) -> frozenset[tuple[int, int, int]]:
        return frozenset(self.triples)

    @cached_property
    def array(self) -> np.ndarray:
        """Triples as an ``(m, 3)`` int64 array, rows in sorted order."""
        if not self.triples:
            return np.empty((0, 3), dtype=np.int64)
        return np.asarray(self.triples, dtype=np.int64)

    def witnesses(self, t) -> list[tuple[int, int, int]]:
        """All ``(x, y, d)`` parameterizations producing ``t``, sorted by ``d`` then ``x``."""
        a, b, c = t
        out = []
        for d in sorted({a, b}):
            X = self.seconds.get(d)
            if X is None:
                continue
            g = c - d
            hits = np.flatnonzero(X[: len(X) - g] & X[g:])
            out.extend((int(x), int(x) + g + d, d) for x in hits)
        return out

    def witness_count(self, t) -> int:
        return len(self.witnesses(t))

    def witness_map(self) -> dict[SchurTriple, list[tuple[int, int, int]]]:
        return {t: self.witnesses(t) for t in self.triples}


def _gaps(X: np.ndarray) -> np.ndarray:
    """Positive differences ``y' - x`` realised by two marked positions."""
    pos = np.flatnonzero(X)
    if pos.size < 2:
        return np.empty(0, dtype=np.int64)
    window = X[pos[0] : pos[-1] + 1].astype(np.int32)
    corr = np.correlate(window, window, mode="full")[len(window) :]
    return np.flatnonzero(corr) + 1


def build_triple_family(A: IntegerSet, epsilon) -> TripleFamily:
    pop = popular_steps(A, epsilon)
    n = A.n
    seconds: dict[int, np.ndarray] = {}
    found: set[tuple[int, int, int]] = set()
    for d in pop.steps:
        X = np.zeros(n + 1, dtype=bool)
        X[ap_starts(A, d) + d] = True
        X.flags.writeable = False
        seconds[d] = X
        for g in _gaps(X).tolist():
            found.add((d, g, d + g) if d <= g else (g, d, d + g))
    triples = tuple(SchurTriple(*t) for t in sorted(found))
    return TripleFamily(A, pop, triples, seconds)


@dataclass(frozen=True)
class BoundCheck:
    holds_hypothesis: bool
    family_size: int
    bound: Fraction
    popular_count: int

    @property
    def bound_met(self) -> bool:
        return self.family_size >= self.bound

    def to_json(self) -> dict:
        return {
            "holds_hypothesis": self.holds_hypothesis,
            "family_size": self.family_size,
            "bound": str(self.bound),
            "bound_met": self.bound_met,
            "popular_count": self.popular_count,
        }


def family_size_bound_check(A: IntegerSet, epsilon, family: TripleFamily | None = None) -> BoundCheck:
    """Compare ``|T|`` with ``eps**2 n**2 / 4``; the hypothesis is ``|D_eps(A)| >= eps n``."""
    fam = family if family is not None else build_triple_family(A, epsilon)
    eps = fam.epsilon
    n = A.n
    return BoundCheck(
        holds_hypothesis=len(fam.popular.steps) >= eps * n,
        family_size=len(fam),
        bound=eps * eps * n * n / 4,
        popular_count=len(fam.popular.steps),
    )


def capture_count(family: TripleFamily, R: IntegerSet) -> int:
    """Number of family triples with all values in ``R``."""
    arr = family.array
    if arr.size == 0:
        return 0
    m = R.mask
    return int(np.count_nonzero(m[arr[:, 0]] & m[arr[:, 1]] & m[arr[:, 2]]))


def find_gadget_in_perturbed(
    A: IntegerSet,
    U: IntegerSet,
    epsilon,
    work_budget: int | None = None,
    family: TripleFamily | None = None,
) -> GadgetSpec | None:
    """First gadget whose two APs come from ``A`` and whose Schur part lies in ``U``.

    Search order is ascending ``d``, then ``x``, then ``y``. One unit of work
    is one candidate Schur part ``(d, g, d + g)`` with all three values in
    ``U``; it settles every witness sharing that Schur part at once. Raises
    :class:`BudgetExceeded` when ``work_budget`` runs out before the witness
    space is exhausted; ``None`` means no gadget exists.
    """
    if A.n != U.n:
        raise ValueError(f"ground size mismatch: {A.n} vs {U.n}")
    if not A.issubset(U):
        raise ValueError("A must be contained in U")
    fam = family if family is not None else build_triple_family(A, epsilon)
    n = U.n
    um = U.mask
    work = 0
    for d in fam.popular.steps:
        if not um[d]:
            continue
        X = fam.seconds[d]
        pos = np.flatnonzero(X)
        if pos.size < 2:
            continue
        max_gap = int(pos[-1] - pos[0])
        gs = np.flatnonzero(um[1 : n + 1 - d] & um[1 + d :]) + 1
        gs = gs[gs <= max_gap]
        best: tuple[int, int] | None = None
        for g in gs.tolist():
            work += 1
            if work_budget is not None and work > work_budget:
                raise BudgetExceeded(f"gadget search stopped after {work_budget} candidates", work_budget)
            hits = np.flatnonzero(X[: n + 1 - g] & X[g:])
            if hits.size and (best is None or int(hits[0]) < best[0]):
                best = (int(hits[0]), g)
        if best is not None:
            x, g = best
            gadget = build_gadget(x, x + g + d, d, n)
            assert {gadget.tuple[i] for i in range(7)} <= A.members
            assert set(gadget.schur_part) <= U.members
            return gadget
    return None
