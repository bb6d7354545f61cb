import itertools
import random
from fractions import Fraction

import numpy as np
import pytest

from schur_perturbed.core import IntegerSet, SchurTriple
from schur_perturbed.family import build_triple_family
from schur_perturbed.moments import (
    DegenerateFamily,
    chebyshev_zero_bound,
    expected_capture,
    overlap_profile,
    pair_histogram_buckets,
    pair_histogram_pairwise,
    pair_overlap_caps,
)
from schur_perturbed.perturb import sample_masks

T = SchurTriple


def naive_histogram(triples):
    out = {}
    for s, t in itertools.combinations(triples, 2):
        a, b = set(s), set(t)
        k = len(a & b)
        if k:
            key = (k, len(a | b))
            out[key] = out.get(key, 0) + 1
    return out


def test_expected_capture_examples():
    assert expected_capture([T(1, 15, 16)], Fraction(1, 2)) == Fraction(1, 8)
    assert expected_capture([T(1, 1, 2)], Fraction(1, 2)) == Fraction(1, 4)
    assert expected_capture([], 0.3) == 0


def test_overlap_examples():
    assert overlap_profile([T(1, 2, 3), T(1, 4, 5)]) == (1, 0)
    assert overlap_profile([T(1, 2, 3), T(2, 3, 5)]) == (0, 1)
    assert overlap_profile([T(1, 2, 3), T(2, 3, 5)], method="buckets") == (0, 1)
    with pytest.raises(ValueError):
        overlap_profile([], method="magic")


def test_histograms_match_naive_on_random_triples():
    rng = random.Random(0)
    for _ in range(40):
        pool = {T.of(rng.randint(1, 15), rng.randint(1, 15)) for _ in range(rng.randint(0, 60))}
        triples = sorted(pool)
        expected = naive_histogram(triples)
        assert pair_histogram_pairwise(triples, block=7).counts == expected
        assert pair_histogram_buckets(triples).counts == expected


def test_histograms_on_family_sixty():
    fam = build_triple_family(IntegerSet.full(60), "0.1")
    a = pair_histogram_pairwise(fam)
    b = pair_histogram_buckets(fam)
    assert a.counts == b.counts == naive_histogram(list(fam.triples))
    s1, s2 = a.profile
    c1, c2 = pair_overlap_caps(60)
    assert s1 <= c1 and s2 <= c2


def test_profile_order_independent():
    fam = build_triple_family(IntegerSet.full(40), "0.1")
    shuffled = list(fam.triples)
    random.Random(2).shuffle(shuffled)
    assert overlap_profile(shuffled) == overlap_profile(fam)


def test_chebyshev_single_triple():
    rep = chebyshev_zero_bound([T(1, 2, 3)], Fraction(1, 2))
    assert rep.cross_term == 0 and rep.cheb_bound == 8


def test_chebyshev_two_triples():
    rep = chebyshev_zero_bound([T(1, 2, 3), T(1, 4, 5)], Fraction(1, 2))
    assert rep.cross_term == Fraction(1, 16)
    assert rep.expected == Fraction(1, 4)
    assert rep.cheb_bound == 5


def test_chebyshev_degenerate():
    with pytest.raises(DegenerateFamily):
        chebyshev_zero_bound([T(1, 2, 3)], 0.0)
    with pytest.raises(DegenerateFamily):
        chebyshev_zero_bound([], 0.5)


def test_exact_and_float_agree():
    fam = build_triple_family(IntegerSet.full(50), "0.1")
    exact = chebyshev_zero_bound(fam, Fraction(3, 10))
    approx = chebyshev_zero_bound(fam, 0.3)
    assert float(exact.cheb_bound) == pytest.approx(approx.cheb_bound, rel=1e-12)
    assert exact.asymptotic_expected == Fraction(1, 100) * Fraction(27, 1000) * 2500 / 4


def test_bound_nonincreasing_in_p():
    fam = build_triple_family(IntegerSet.full(40), "0.1")
    hist = pair_histogram_buckets(fam)
    grid = np.linspace(0.02, 1.0, 50)
    bounds = [chebyshev_zero_bound(fam, float(p), histogram=hist).cheb_bound for p in grid]
    assert all(b2 <= b1 * (1 + 1e-12) for b1, b2 in zip(bounds, bounds[1:]))


def test_variance_identity_exact():
    """1/E + cross/E^2 - 1 must dominate Var/E^2, computed by full enumeration."""
    triples = [T(1, 2, 3), T(1, 4, 5), T(2, 3, 5), T(2, 2, 4), T(3, 4, 7)]
    p = Fraction(2, 5)
    values = sorted(set().union(*map(set, triples)))
    ex = ex2 = Fraction(0)
    for bits in itertools.product((0, 1), repeat=len(values)):
        chosen = {v for v, b in zip(values, bits) if b}
        weight = Fraction(1)
        for b in bits:
            weight *= p if b else 1 - p
        x = sum(set(t) <= chosen for t in triples)
        ex += weight * x
        ex2 += weight * x * x
    rep = chebyshev_zero_bound(triples, p)
    assert rep.expected == ex
    var = ex2 - ex * ex
    assert var / ex**2 <= rep.cheb_bound


def test_monte_carlo_small_family():
    fam = build_triple_family(IntegerSet.full(10), "0.1")
    M = sample_masks(10, 0.3, 5, 0, 20000)
    arr = fam.array
    X = (M[:, arr[:, 0]] & M[:, arr[:, 1]] & M[:, arr[:, 2]]).sum(axis=1)
    se = X.std(ddof=1) / np.sqrt(len(X))
    assert abs(X.mean() - expected_capture(fam, 0.3)) <= 3 * se
