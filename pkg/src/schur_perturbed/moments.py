"""Exact second-moment numbers for the number ``X`` of family triples inside ``[n]_p``.

``X = sum_t X_t`` where ``X_t`` indicates that every value of ``t`` was
sampled. Pairs with disjoint value sets are independent, so

    Pr[X = 0] <= Var X / (E X)**2 <= 1 / E X + sum_{t ~ t'} E[X_t X_t'] / (E X)**2

where ``t ~ t'`` runs over ordered pairs of distinct triples sharing a value.
``E[X_t X_t'] = p ** |values(t) | values(t')|``, using distinct values so that
triples like ``(a, a, 2a)`` are handled exactly.

Pass ``p`` as a :class:`~fractions.Fraction` to get exact rational output.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

import numpy as np

from .family import TripleFamily


class DegenerateFamily(ValueError):
    """The family has zero expected capture count."""


def _values(t) -> tuple[int, ...]:
    return tuple(sorted(set(t)))


def _power_sum(terms: Iterable[tuple[int, int]], p):
    """``sum(count * p**k)`` exactly for Fractions, compensated for floats."""
    if isinstance(p, Fraction):
        return sum((Fraction(c) * p**k for k, c in terms), Fraction(0))
    return math.fsum(c * float(p) ** k for k, c in terms)


def expected_capture(T, p):
    """``E[X] = sum_t p ** (#distinct values of t)``."""
    sizes = Counter(len(_values(t)) for t in T)
    return _power_sum(sorted(sizes.items()), p)


class OverlapProfile(NamedTuple):
    pairs_share1: int
    pairs_share2: int


@dataclass(frozen=True)
class PairHistogram:
    """Unordered overlapping pairs, keyed by ``(shared values, union size)``."""

    counts: dict[tuple[int, int], int]

    @property
    def profile(self) -> OverlapProfile:
        s1 = sum(c for (s, _), c in self.counts.items() if s == 1)
        s2 = sum(c for (s, _), c in self.counts.items() if s == 2)
        return OverlapProfile(s1, s2)

    def by_union_size(self) -> list[tuple[int, int]]:
        out: Counter[int] = Counter()
        for (_, u), c in self.counts.items():
            out[u] += c
        return sorted(out.items())


def pair_histogram_pairwise(T, block: int = 128) -> PairHistogram:
    """Brute force over all unordered pairs, vectorised in row blocks."""
    rows = [_values(t) for t in T]
    m = len(rows)
    if m < 2:
        return PairHistogram({})
    # pad 2-value triples with a sentinel that never matches a value
    V = np.array([r + (-1,) * (3 - len(r)) for r in rows], dtype=np.int64)
    size = np.array([len(r) for r in rows], dtype=np.int64)
    counts: Counter[tuple[int, int]] = Counter()
    for lo in range(0, m, block):
        hi = min(lo + block, m)
        Bi = V[lo:hi]
        rest = V[lo:]
        shared = np.zeros((hi - lo, m - lo), dtype=np.int64)
        for k in range(3):
            col = Bi[:, k : k + 1]
            hit = (rest[None, :, 0] == col) | (rest[None, :, 1] == col) | (rest[None, :, 2] == col)
            shared += hit & (col >= 1)
        # keep strictly-upper pairs only
        ii, jj = np.nonzero(shared)
        keep = jj > ii
        ii, jj = ii[keep], jj[keep]
        s = shared[ii, jj]
        u = size[lo + ii] + size[lo + jj] - s
        for (sv, uv), c in Counter(zip(s.tolist(), u.tolist())).items():
            counts[(sv, uv)] += c
    return PairHistogram(dict(counts))


def pair_histogram_buckets(T) -> PairHistogram:
    """Same histogram from value- and value-pair-indexed buckets, in linear time.

    Distinct triples share at most two values. A pair sharing two values is
    found once per common 2-subset bucket; a pair sharing one value once per
    common value bucket, after discounting the two-value pairs (counted twice
    there).
    """
    rows = [_values(t) for t in T]
    by_value: dict[int, Counter[int]] = {}
    by_pair: dict[tuple[int, int], list[int]] = {}
    for r in rows:
        k = len(r)
        for v in r:
            by_value.setdefault(v, Counter())[k] += 1
        for i in range(k):
            for j in range(i + 1, k):
                by_pair.setdefault((r[i], r[j]), []).append(k)
    # pairs sharing >= 1 value, with multiplicity = #shared values, by size class
    multi: Counter[tuple[int, int]] = Counter()
    for sizes in by_value.values():
        c2, c3 = sizes[2], sizes[3]
        multi[(2, 2)] += c2 * (c2 - 1) // 2
        multi[(3, 3)] += c3 * (c3 - 1) // 2
        multi[(2, 3)] += c2 * c3
    two: Counter[tuple[int, int]] = Counter()
    for sizes in by_pair.values():
        for i in range(len(sizes)):
            for j in range(i + 1, len(sizes)):
                two[tuple(sorted((sizes[i], sizes[j])))] += 1
    counts: Counter[tuple[int, int]] = Counter()
    for cls in set(multi) | set(two):
        k1, k2 = cls
        if two[cls]:
            counts[(2, k1 + k2 - 2)] += two[cls]
        one = multi[cls] - 2 * two[cls]
        if one:
            counts[(1, k1 + k2 - 1)] += one
    return PairHistogram({k: v for k, v in counts.items() if v})


def overlap_profile(T, method: str = "pairwise") -> OverlapProfile:
    if method == "pairwise":
        return pair_histogram_pairwise(T).profile
    if method == "buckets":
        return pair_histogram_buckets(T).profile
    raise ValueError(f"unknown method {method!r}")


def pair_overlap_caps(n: int) -> tuple[int, int]:
    """Caps on pairs sharing one value (``3 n**3``) and two values (``2 n**2``)."""
    return 3 * n**3, 2 * n**2


@dataclass(frozen=True)
class MomentReport:
    n: int
    p: float | Fraction
    family_size: int
    expected: float | Fraction
    pairs_share1: int
    pairs_share2: int
    cross_term: float | Fraction
    cheb_bound: float | Fraction
    asymptotic_expected: float | Fraction | None = None

    def to_json(self) -> dict:
        def num(v):
            if v is None:
                return None
            return str(v) if isinstance(v, Fraction) else float(v)

        return {
            "n": self.n,
            "p": num(self.p),
            "family_size": self.family_size,
            "expected": num(self.expected),
            "pairs_share1": self.pairs_share1,
            "pairs_share2": self.pairs_share2,
            "cross_term": num(self.cross_term),
            "cheb_bound": num(self.cheb_bound),
            "asymptotic_expected": num(self.asymptotic_expected),
        }


def chebyshev_zero_bound(T, p, n: int | None = None, histogram: PairHistogram | None = None) -> MomentReport:
    """Upper bound on ``Pr[X = 0]`` with every intermediate quantity.

    ``asymptotic_expected`` is the comparison value ``eps**2 p**3 n**2 / 4``
    when ``T`` is a :class:`TripleFamily`; it is reported, never used.
    """
    if not 0 <= p <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if isinstance(T, TripleFamily):
        n = T.n if n is None else n
    expected = expected_capture(T, p)
    if expected == 0:
        raise DegenerateFamily("expected capture count is zero")
    hist = histogram if histogram is not None else pair_histogram_buckets(T)
    cross = 2 * _power_sum(hist.by_union_size(), p)
    bound = 1 / expected + cross / (expected * expected)
    prof = hist.profile
    asym = None
    if isinstance(T, TripleFamily):
        eps = T.epsilon if isinstance(p, Fraction) else float(T.epsilon)
        asym = eps * eps * p**3 * T.n**2 / 4
    return MomentReport(
        n=n if n is not None else 0,
        p=p,
        family_size=len(T),
        expected=expected,
        pairs_share1=prof.pairs_share1,
        pairs_share2=prof.pairs_share2,
        cross_term=cross,
        cheb_bound=bound,
        asymptotic_expected=asym,
    )
