import random

import numpy as np
import pytest

from schur_perturbed.core import IntegerSet, TriplePolicy, TwoColoring, verify_coloring
from schur_perturbed.decider import (
    Verdict,
    decide_with_budget,
    find_schur_free_coloring,
    is_two_schur_ramsey,
    smallest_ramsey_prefix,
)

from conftest import mask_to_set, naive_colorings_ramsey, ramsey_by_submasks

SCHUR, WEAK = TriplePolicy.SCHUR, TriplePolicy.WEAK_SCHUR


def test_prefix_four_unique_partition():
    col, stats = find_schur_free_coloring(IntegerSet.full(4))
    assert col.red == {1, 4} and col.blue == {2, 3}
    assert stats.nodes_expanded >= 1


def test_prefix_five_has_no_coloring():
    col, _ = find_schur_free_coloring(IntegerSet.full(5))
    assert col is None
    assert not naive_colorings_ramsey([]) and naive_colorings_ramsey(range(1, 6))


def test_empty_set():
    col, stats = find_schur_free_coloring(IntegerSet(3))
    assert col == TwoColoring({})
    assert not is_two_schur_ramsey(IntegerSet(3))


def test_weak_prefix_eight_witness():
    col, _ = find_schur_free_coloring(IntegerSet.full(8), WEAK)
    assert col.red == {1, 2, 4, 8} and col.blue == {3, 5, 6, 7}
    assert verify_coloring(IntegerSet.full(8), col, WEAK) is None


def test_is_ramsey_examples():
    assert is_two_schur_ramsey(IntegerSet.full(5), SCHUR)
    assert not is_two_schur_ramsey(IntegerSet.full(8), WEAK)
    assert is_two_schur_ramsey(IntegerSet.full(9), WEAK)


def test_smallest_prefix():
    assert smallest_ramsey_prefix(SCHUR, 10) == 5
    assert smallest_ramsey_prefix(WEAK, 12) == 9
    assert smallest_ramsey_prefix(SCHUR, 3) is None
    with pytest.raises(ValueError):
        smallest_ramsey_prefix(SCHUR, 0)


def test_budget():
    assert decide_with_budget(IntegerSet.full(5), SCHUR, 10**6).verdict is Verdict.RAMSEY
    d = decide_with_budget(IntegerSet.full(4), SCHUR, 10**6)
    assert d.verdict is Verdict.NOT_RAMSEY
    assert verify_coloring(IntegerSet.full(4), d.witness) is None
    d = decide_with_budget(IntegerSet.full(40), SCHUR, 1)
    assert d.verdict is Verdict.BUDGET_EXCEEDED and d.witness is None
    with pytest.raises(ValueError):
        decide_with_budget(IntegerSet.full(4), SCHUR, 0)


def test_budget_never_misreports():
    rng = random.Random(3)
    for _ in range(200):
        S = IntegerSet(24, frozenset(k for k in range(1, 25) if rng.random() < 0.5))
        truth = is_two_schur_ramsey(S)
        for budget in (1, 2, 3, 5, 50):
            v = decide_with_budget(S, SCHUR, budget).verdict
            assert v is Verdict.BUDGET_EXCEEDED or v is (Verdict.RAMSEY if truth else Verdict.NOT_RAMSEY)


def test_determinism():
    S = IntegerSet(60, frozenset(range(1, 61, 3)) | {2, 8, 50})
    a = find_schur_free_coloring(S, WEAK)
    b = find_schur_free_coloring(S, WEAK)
    assert a == b


def test_submask_oracle_against_naive():
    # the fast oracle used below must itself agree with explicit colorings
    from conftest import sum_free_table

    table = sum_free_table(8, SCHUR)
    all_masks = np.arange(1 << 8, dtype=np.int64)
    for mask in range(1 << 8):
        S = mask_to_set(mask, 8)
        assert ramsey_by_submasks(mask, table, all_masks) == naive_colorings_ramsey(S.members)


def test_exhaustive_small_sets_both_policies(sum_free_tables):
    all_masks = np.arange(1 << 12, dtype=np.int64)
    for policy in TriplePolicy:
        table = sum_free_tables[12, policy]
        for mask in range(0, 1 << 12, 7):
            S = mask_to_set(mask, 12)
            assert is_two_schur_ramsey(S, policy) == ramsey_by_submasks(mask, table, all_masks)


def test_soundness_and_monotonicity():
    rng = random.Random(9)
    for _ in range(300):
        n = rng.randint(5, 40)
        S = IntegerSet(n, frozenset(k for k in range(1, n + 1) if rng.random() < 0.4))
        bigger = S.union(IntegerSet(n, frozenset(k for k in range(1, n + 1) if rng.random() < 0.2)))
        for policy in TriplePolicy:
            col, stats = find_schur_free_coloring(S, policy)
            if col is not None:
                assert verify_coloring(S, col, policy) is None
            if col is None:
                assert is_two_schur_ramsey(bigger, policy)
            assert stats.nodes_expanded >= 1 and stats.propagations >= 0 and stats.max_depth >= 0
