"""The ten-element gadget ``L(x, y, d)`` and an exhaustive 2-coloring check.

``L(x, y, d) = (x-d, x, x+d, x+2d, y-d, y, y+d, d, y-x-d, y-x)``: a 4AP and a
3AP of step ``d`` plus the Schur triple ``(d, y-x-d, y-x)``. When ``(a, a, 2a)``
counts as a triple, its value set cannot be 2-colored without a monochromatic
Schur triple. Under the weak policy, gadgets with coinciding entries can fail.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .core import (
    Color,
    IntegerSet,
    SchurTriple,
    TriplePolicy,
    TwoColoring,
    enumerate_schur_triples,
    verify_coloring,
)


class ConstraintViolation(ValueError):
    """Gadget parameters break ``y > x + d`` or ``x > d``."""


class OutOfRange(ValueError):
    """A gadget entry falls outside ``[1, n]``."""


@dataclass(frozen=True)
class GadgetSpec:
    x: int
    y: int
    d: int
    n: int

    @cached_property
    def tuple(self) -> tuple[int, ...]:
        x, y, d = self.x, self.y, self.d
        return (x - d, x, x + d, x + 2 * d, y - d, y, y + d, d, y - x - d, y - x)

    @cached_property
    def values(self) -> frozenset[int]:
        return frozenset(self.tuple)

    @property
    def schur_part(self) -> tuple[int, int, int]:
        return (self.d, self.y - self.x - self.d, self.y - self.x)

    def as_set(self) -> IntegerSet:
        return IntegerSet(self.n, self.values)

    def to_json(self) -> dict:
        return {
            "x": self.x,
            "y": self.y,
            "d": self.d,
            "n": self.n,
            "tuple": list(self.tuple),
            "values": sorted(self.values),
            "schur_part": list(self.schur_part),
        }


def build_gadget(x: int, y: int, d: int, n: int) -> GadgetSpec:
    if not y > x + d:
        raise ConstraintViolation(f"need y > x + d, got x={x}, y={y}, d={d}")
    if not x > d:
        raise ConstraintViolation(f"need x > d, got x={x}, d={d}")
    g = GadgetSpec(x, y, d, n)
    lo, hi = min(g.tuple), max(g.tuple)
    if lo < 1 or hi > n:
        raise OutOfRange(f"gadget entries span [{lo}, {hi}], outside [1, {n}]")
    return g


@dataclass(frozen=True)
class RamseyVerdict:
    is_ramsey: bool
    colorings_checked: int
    counterexample: TwoColoring | None = None

    def to_json(self) -> dict:
        return {
            "is_ramsey": self.is_ramsey,
            "colorings_checked": self.colorings_checked,
            "counterexample": None if self.counterexample is None else self.counterexample.to_json(),
        }


def sweep_colorings(values: Iterable[int], policy: TriplePolicy = TriplePolicy.SCHUR) -> RamseyVerdict:
    """Try all ``2**k`` colorings of a small value set.

    Colorings are visited in lexicographic order over ascending values, red
    before blue (the smallest value is the most significant bit). The first
    Schur-free one is returned as the counterexample.
    """
    vals = sorted(set(values))
    k = len(vals)
    if k > 24:
        raise ValueError(f"exhaustive sweep over 2**{k} colorings refused")
    total = 1 << k
    if k == 0:
        return RamseyVerdict(False, 1, TwoColoring({}))
    S = IntegerSet(vals[-1], frozenset(vals))
    index = {v: k - 1 - j for j, v in enumerate(vals)}
    codes = np.arange(total, dtype=np.int64)
    mono = np.zeros(total, dtype=bool)
    for t in enumerate_schur_triples(S, policy):
        ba, bb, bc = ((codes >> index[v]) & 1 for v in t)
        mono |= (ba == bb) & (bb == bc)
    free = np.flatnonzero(~mono)
    if free.size == 0:
        return RamseyVerdict(True, total, None)
    code = int(free[0])
    col = TwoColoring({v: Color.BLUE if code >> index[v] & 1 else Color.RED for v in vals})
    # the witness must survive the generic checker too
    assert verify_coloring(S, col, policy) is None
    return RamseyVerdict(False, total, col)


def verify_gadget_ramsey(g: GadgetSpec, policy: TriplePolicy = TriplePolicy.SCHUR) -> RamseyVerdict:
    return sweep_colorings(g.values, policy)


def proof_chain_triples(g: GadgetSpec) -> list[SchurTriple]:
    """The eight triples whose forcing chains rule out every coloring by hand."""
    x, y, d = g.x, g.y, g.d
    raw = [
        (y - x, x - d, y - d),
        (y - x - d, x, y - d),
        (y - x - d, d, y - x),
        (y - x - d, x + d, y),
        (y - x, x + d, y + d),
        (x + d, d, x + 2 * d),
        (y - x - d, x + 2 * d, y + d),
        (y - x, x, y),
    ]
    out = []
    for a, b, c in raw:
        t = SchurTriple.of(a, b)
        if t.c != c or not t.values <= g.values:
            raise AssertionError(f"proof triple {(a, b, c)} is not a Schur triple of {g}")
        out.append(t)
    return out


def all_gadgets(n: int) -> Iterable[GadgetSpec]:
    """Every valid gadget inside ``[n]``, ordered by ``d``, then ``x``, then ``y``."""
    for d in range(1, n):
        for x in range(d + 1, n):
            for y in range(x + d + 1, n - d + 1):
                yield GadgetSpec(x, y, d, n)
