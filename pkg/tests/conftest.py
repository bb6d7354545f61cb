"""Independent brute-force oracles shared by the test modules.

Nothing here imports the code under test beyond the plain data types.
"""

from __future__ import annotations

import itertools

import numpy as np
import pytest

from schur_perturbed.core import IntegerSet, TriplePolicy


def naive_triples(members, policy=TriplePolicy.SCHUR):
    s = set(members)
    out = set()
    for a in s:
        for b in s:
            if a + b in s and (a < b or (a == b and policy is TriplePolicy.SCHUR)):
                out.add((a, b, a + b))
    return sorted(out)


def naive_4aps(members):
    s = sorted(set(members))
    ss = set(s)
    out = []
    for a, b in itertools.combinations(s, 2):
        d = b - a
        if a + 2 * d in ss and a + 3 * d in ss:
            out.append((a, d))
    return sorted(out)


def naive_colorings_ramsey(members, policy=TriplePolicy.SCHUR):
    """Try every red/blue assignment explicitly."""
    vals = sorted(set(members))
    triples = naive_triples(vals, policy)
    for bits in itertools.product((0, 1), repeat=len(vals)):
        col = dict(zip(vals, bits))
        if not any(col[a] == col[b] == col[c] for a, b, c in triples):
            return False
    return True


def sum_free_table(n: int, policy: TriplePolicy) -> np.ndarray:
    """``table[mask]`` says whether the subset of ``[n]`` encoded by ``mask`` is sum-free.

    Bit ``k - 1`` of ``mask`` encodes membership of ``k``.
    """
    masks = np.arange(1 << n, dtype=np.int64)
    bad = np.zeros(1 << n, dtype=bool)
    for a, b, c in naive_triples(range(1, n + 1), policy):
        t = (1 << (a - 1)) | (1 << (b - 1)) | (1 << (c - 1))
        bad |= (masks & t) == t
    return ~bad


def ramsey_by_submasks(mask: int, table: np.ndarray, all_masks: np.ndarray) -> bool:
    """``S`` is 2-Schur-Ramsey iff no red part ``R`` has both ``R`` and ``S - R`` sum-free."""
    subs = all_masks[(all_masks & ~mask) == 0]
    return not bool(np.any(table[subs] & table[mask ^ subs]))


def mask_to_set(mask: int, n: int) -> IntegerSet:
    return IntegerSet(n, frozenset(k + 1 for k in range(n) if mask >> k & 1))


@pytest.fixture(scope="session")
def sum_free_tables():
    out = {}
    for n in (12, 16):
        for policy in TriplePolicy:
            out[n, policy] = sum_free_table(n, policy)
    return out


# -- acceptance report ------------------------------------------------------

_ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_report():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(label: str, ok: bool, detail: str = "") -> bool:
        _ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else ""))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
