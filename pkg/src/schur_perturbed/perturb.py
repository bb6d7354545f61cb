"""Reproducible ``[n]_p`` samples and the half-interval lower-bound coloring."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Color, IntegerSet, TwoColoring

_MASK64 = (1 << 64) - 1


@dataclass(frozen=True)
class SampleSpec:
    """``(master_seed, index)`` pins down one draw of ``[n]_p``."""

    n: int
    p: float
    master_seed: int = 0
    index: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"n must be positive, got {self.n}")
        p = float(self.p)
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if self.index < 0:
            raise ValueError("index must be nonnegative")
        object.__setattr__(self, "p", p)


def _uniforms(n: int, master_seed: int, index: int) -> np.ndarray:
    # Philox is counter based: key = seed, the sample index sits in the top
    # counter word, and element j consumes the j-th draw of that stream.
    bitgen = np.random.Philox(key=master_seed & _MASK64, counter=[0, 0, 0, index & _MASK64])
    return np.random.Generator(bitgen).random(n)


def sample_np(spec: SampleSpec) -> IntegerSet:
    """Include each ``k`` in ``[n]`` independently with probability ``p``."""
    mask = np.zeros(spec.n + 1, dtype=bool)
    mask[1:] = _uniforms(spec.n, spec.master_seed, spec.index) < spec.p
    return IntegerSet.from_mask(mask)


def sample_masks(n: int, p: float, master_seed: int, start: int, count: int) -> np.ndarray:
    """Boolean ``(count, n + 1)`` matrix of the samples ``start .. start+count-1``."""
    out = np.zeros((count, n + 1), dtype=bool)
    for row in range(count):
        out[row, 1:] = _uniforms(n, master_seed, start + row) < p
    return out


def perturbed_union(A: IntegerSet, R: IntegerSet) -> IntegerSet:
    return A.union(R)


def half_interval(n: int) -> IntegerSet:
    """``{floor(n/2) + 1, ..., n}``, sum-free for every ``n``."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    return IntegerSet.interval(n // 2 + 1, n, n)


def lower_bound_coloring(A: IntegerSet, U: IntegerSet) -> TwoColoring:
    """Color ``A`` red and ``U \\ A`` blue."""
    if A.n != U.n:
        raise ValueError(f"ground size mismatch: {A.n} vs {U.n}")
    if not A.issubset(U):
        extra = sorted(A.members - U.members)[:5]
        raise ValueError(f"A is not contained in U (e.g. {extra})")
    return TwoColoring({e: Color.RED if e in A.members else Color.BLUE for e in U.elements})
