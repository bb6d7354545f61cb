"""Ground sets, Schur triples, 4-term progressions and coloring checks.

Everything here is 1-based: a set lives inside ``[n] = {1, ..., n}`` and the
ground size ``n`` is part of its identity.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import NamedTuple

import numpy as np


class PartialColoringError(ValueError):
    """A coloring leaves some element of the checked set unassigned."""


class BudgetExceeded(RuntimeError):
    """A bounded search stopped before exhausting its search space."""

    def __init__(self, message: str, work_done: int = 0) -> None:
        super().__init__(message)
        self.work_done = work_done


class TriplePolicy(enum.Enum):
    SCHUR = "schur"
    WEAK_SCHUR = "weak-schur"

    def allows(self, a: int, b: int) -> bool:
        return a < b if self is TriplePolicy.WEAK_SCHUR else a <= b

    @classmethod
    def parse(cls, text: str | TriplePolicy) -> TriplePolicy:
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("_", "-")
        for member in cls:
            if member.value == key:
                return member
        raise ValueError(f"unknown triple policy {text!r}; expected 'schur' or 'weak-schur'")


class SchurTriple(NamedTuple):
    """Canonical triple ``(a, b, a + b)`` with ``a <= b``."""

    a: int
    b: int
    c: int

    @classmethod
    def of(cls, a: int, b: int) -> SchurTriple:
        if a < 1 or b < 1:
            raise ValueError(f"Schur triple entries must be positive, got ({a}, {b})")
        if a > b:
            a, b = b, a
        return cls(a, b, a + b)

    @property
    def values(self) -> frozenset[int]:
        return frozenset(self)

    def is_valid(self, policy: TriplePolicy = TriplePolicy.SCHUR) -> bool:
        return self.a >= 1 and self.a + self.b == self.c and policy.allows(self.a, self.b)


class FourAP(NamedTuple):
    start: int
    step: int

    @property
    def terms(self) -> tuple[int, int, int, int]:
        s, d = self.start, self.step
        return (s, s + d, s + 2 * d, s + 3 * d)


@dataclass(frozen=True)
class IntegerSet:
    """An immutable subset of ``[n]``.

    Two sets are equal when they have the same ground size and the same
    members.
    """

    n: int
    members: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"ground size must be a positive integer, got {self.n!r}")
        members = frozenset(int(m) for m in self.members)
        bad = [m for m in members if not 1 <= m <= self.n]
        if bad:
            raise ValueError(f"elements {sorted(bad)[:5]} lie outside [1, {self.n}]")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "members", members)

    @classmethod
    def full(cls, n: int) -> IntegerSet:
        return cls(n, frozenset(range(1, n + 1)))

    @classmethod
    def interval(cls, lo: int, hi: int, n: int | None = None) -> IntegerSet:
        """The integers ``lo..hi`` inclusive, inside ``[n]`` (default ``n = hi``)."""
        return cls(hi if n is None else n, frozenset(range(lo, hi + 1)))

    @classmethod
    def from_mask(cls, mask: np.ndarray) -> IntegerSet:
        """Build from a boolean array indexed ``0..n`` (index 0 ignored)."""
        mask = np.asarray(mask, dtype=bool)
        return cls(len(mask) - 1, frozenset(np.flatnonzero(mask[1:]) + 1))

    @cached_property
    def mask(self) -> np.ndarray:
        out = np.zeros(self.n + 1, dtype=bool)
        if self.members:
            out[np.fromiter(self.members, dtype=np.int64)] = True
        out.flags.writeable = False
        return out

    @cached_property
    def elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    @property
    def cardinality(self) -> int:
        return len(self.members)

    @property
    def density(self) -> float:
        return len(self.members) / self.n

    def __contains__(self, item: object) -> bool:
        return item in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        if len(self.members) <= 12:
            body = "{" + ", ".join(map(str, self.elements)) + "}"
        else:
            body = f"<{len(self.members)} elements>"
        return f"IntegerSet(n={self.n}, {body})"

    def union(self, other: IntegerSet) -> IntegerSet:
        if other.n != self.n:
            raise ValueError(f"ground size mismatch: {self.n} vs {other.n}")
        return IntegerSet(self.n, self.members | other.members)

    def issubset(self, other: IntegerSet) -> bool:
        return self.members <= other.members

    def restrict(self, elements: Iterable[int]) -> IntegerSet:
        return IntegerSet(self.n, self.members & frozenset(elements))


class Color(enum.Enum):
    RED = "red"
    BLUE = "blue"

    @property
    def other(self) -> Color:
        return Color.BLUE if self is Color.RED else Color.RED


@dataclass(frozen=True)
class TwoColoring:
    """Assignment of elements to red/blue; absent elements are unassigned."""

    assignment: Mapping[int, Color]

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", dict(sorted(self.assignment.items())))

    @classmethod
    def from_classes(cls, red: Iterable[int], blue: Iterable[int] = ()) -> TwoColoring:
        red, blue = set(red), set(blue)
        if red & blue:
            raise ValueError(f"elements colored twice: {sorted(red & blue)}")
        return cls({**{r: Color.RED for r in red}, **{b: Color.BLUE for b in blue}})

    def __hash__(self) -> int:
        return hash(tuple(self.assignment.items()))

    def color_of(self, element: int) -> Color | None:
        return self.assignment.get(element)

    def class_of(self, color: Color) -> frozenset[int]:
        return frozenset(e for e, c in self.assignment.items() if c is color)

    @property
    def red(self) -> frozenset[int]:
        return self.class_of(Color.RED)

    @property
    def blue(self) -> frozenset[int]:
        return self.class_of(Color.BLUE)

    def is_total_on(self, S: IntegerSet | Iterable[int]) -> bool:
        return all(e in self.assignment for e in S)

    def swapped(self) -> TwoColoring:
        return TwoColoring({e: c.other for e, c in self.assignment.items()})

    def to_json(self) -> dict[str, list[int]]:
        return {"red": sorted(self.red), "blue": sorted(self.blue)}


def enumerate_schur_triples(
    S: IntegerSet, policy: TriplePolicy = TriplePolicy.SCHUR
) -> list[SchurTriple]:
    """All canonical triples with every entry in ``S``, sorted lexicographically."""
    mask = S.mask
    elems = np.asarray(S.elements, dtype=np.int64)
    out: list[SchurTriple] = []
    for i, a in enumerate(elems):
        if 2 * a > S.n:
            break
        lo = i + 1 if policy is TriplePolicy.WEAK_SCHUR else i
        bs = elems[lo:]
        bs = bs[bs + a <= S.n]
        hits = bs[mask[bs + a]]
        a = int(a)
        out.extend(SchurTriple(a, int(b), a + int(b)) for b in hits)
    return out


def count_schur_triples(S: IntegerSet, policy: TriplePolicy = TriplePolicy.SCHUR) -> int:
    mask = S.mask
    elems = np.asarray(S.elements, dtype=np.int64)
    total = 0
    for i, a in enumerate(elems):
        if 2 * a > S.n:
            break
        bs = elems[i + 1 if policy is TriplePolicy.WEAK_SCHUR else i :]
        bs = bs[bs + a <= S.n]
        total += int(np.count_nonzero(mask[bs + a]))
    return total


def _first_triple_in_class(members: np.ndarray, mask: np.ndarray, policy: TriplePolicy):
    # members sorted ascending; mask covers 0..limit
    limit = len(mask) - 1
    for i, a in enumerate(members):
        if 2 * a > limit:
            return None
        bs = members[i + 1 if policy is TriplePolicy.WEAK_SCHUR else i :]
        bs = bs[bs + a <= limit]
        hit = np.flatnonzero(mask[bs + a])
        if hit.size:
            b = int(bs[hit[0]])
            return SchurTriple(int(a), b, int(a) + b)
    return None


def verify_coloring(
    S: IntegerSet, col: TwoColoring, policy: TriplePolicy = TriplePolicy.SCHUR
) -> SchurTriple | None:
    """Return the lexicographically least monochromatic triple of ``S``, or ``None``.

    ``None`` certifies that ``col`` restricted to ``S`` is Schur-free. Raises
    :class:`PartialColoringError` if ``col`` misses an element of ``S``.
    """
    missing = [e for e in S.elements if e not in col.assignment]
    if missing:
        raise PartialColoringError(f"coloring leaves {len(missing)} element(s) unassigned, e.g. {missing[:5]}")
    best = None
    for color in Color:
        cls = np.asarray([e for e in S.elements if col.assignment[e] is color], dtype=np.int64)
        if cls.size == 0:
            continue
        mask = np.zeros(S.n + 1, dtype=bool)
        mask[cls] = True
        hit = _first_triple_in_class(cls, mask, policy)
        if hit is not None and (best is None or hit < best):
            best = hit
    return best


def is_sum_free(S: IntegerSet, policy: TriplePolicy = TriplePolicy.SCHUR) -> bool:
    return _first_triple_in_class(np.asarray(S.elements, dtype=np.int64), S.mask, policy) is None


def count_4aps_by_step(S: IntegerSet) -> dict[int, int]:
    """Map each step ``d >= 1`` to the number of 4APs of that step inside ``S``."""
    counts: dict[int, int] = {}
    m = S.mask
    n = S.n
    for d in range(1, (n - 1) // 3 + 1):
        hits = m[1 : n + 1 - 3 * d] & m[1 + d : n + 1 - 2 * d] & m[1 + 2 * d : n + 1 - d] & m[1 + 3 * d :]
        c = int(np.count_nonzero(hits))
        if c:
            counts[d] = c
    return counts


def ap_starts(S: IntegerSet, d: int) -> np.ndarray:
    """Sorted start points of the 4APs of step ``d`` inside ``S``."""
    n = S.n
    if d < 1 or 3 * d >= n:
        return np.empty(0, dtype=np.int64)
    m = S.mask
    hits = m[1 : n + 1 - 3 * d] & m[1 + d : n + 1 - 2 * d] & m[1 + 2 * d : n + 1 - d] & m[1 + 3 * d :]
    return np.flatnonzero(hits).astype(np.int64) + 1


def enumerate_4aps(S: IntegerSet) -> list[FourAP]:
    """All ``(start, step)`` 4APs inside ``S``, sorted by start then step."""
    out = [FourAP(int(s), d) for d in range(1, (S.n - 1) // 3 + 1) for s in ap_starts(S, d)]
    out.sort()
    return out


# -- set text format --------------------------------------------------------


def parse_set(text: str, n: int | None = None) -> IntegerSet:
    """Parse the set text format.

    Either a header line ``n=<N>`` followed by one member per line, or bare
    members, in which case the ground size is ``n`` if given, else the
    largest member. Blank lines and ``#`` comments are ignored.
    """
    header_n = None
    members: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.lower().startswith("n="):
            if header_n is not None or members:
                raise ValueError(f"line {lineno}: header must come first and only once")
            header_n = int(line[2:])
            continue
        try:
            members.append(int(line))
        except ValueError:
            raise ValueError(f"line {lineno}: expected an integer, got {raw!r}") from None
    ground = header_n if header_n is not None else n
    if ground is None:
        if not members:
            raise ValueError("empty set file without an n=<N> header")
        ground = max(members)
    return IntegerSet(ground, frozenset(members))


def format_set(S: IntegerSet) -> str:
    return "".join([f"n={S.n}\n", *(f"{m}\n" for m in S.elements)])


def read_set(path: str | Path, n: int | None = None) -> IntegerSet:
    return parse_set(Path(path).read_text(), n=n)


def write_set(S: IntegerSet, path: str | Path) -> None:
    Path(path).write_text(format_set(S))
