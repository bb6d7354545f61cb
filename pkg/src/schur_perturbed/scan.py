"""Monte Carlo threshold scans over ``p = c * n**(-2/3)``.

Every grid point reuses the sample indices ``0 .. m-1`` under one master
seed. A sample at a larger ``c`` is then a superset of the sample with the
same index at a smaller ``c`` (common random numbers), so a row depends only
on ``(config, c)`` and both fractions move monotonically along the grid.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .core import BudgetExceeded, IntegerSet, TriplePolicy, read_set, verify_coloring
from .family import TripleFamily, as_fraction, build_triple_family, capture_count, find_gadget_in_perturbed
from .gadget import GadgetSpec
from .moments import DegenerateFamily, chebyshev_zero_bound, pair_histogram_buckets
from .perturb import SampleSpec, half_interval, lower_bound_coloring, perturbed_union, sample_np

CSV_HEADER = ("c", "p", "frac_gadget_found", "frac_lower_valid", "mean_capture", "cheb_bound", "m")
BASE_SOURCES = ("half-interval", "full", "file")


@dataclass(frozen=True)
class ScanConfig:
    n: int
    c_grid: tuple[float, ...]
    samples: int = 200
    base: str = "half-interval"
    base_file: str | None = None
    epsilon: Fraction = Fraction(1, 24)
    master_seed: int = 0
    policy: TriplePolicy = TriplePolicy.SCHUR
    gadget_budget: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "c_grid", tuple(float(c) for c in self.c_grid))
        object.__setattr__(self, "epsilon", as_fraction(self.epsilon))
        object.__setattr__(self, "policy", TriplePolicy.parse(self.policy))
        if self.n < 2:
            raise ValueError(f"n must be >= 2, got {self.n}")
        if self.samples < 1:
            raise ValueError("samples per grid point must be >= 1")
        if not self.c_grid:
            raise ValueError("empty c grid")
        if any(c <= 0 for c in self.c_grid):
            raise ValueError("grid values must be positive")
        if any(b <= a for a, b in zip(self.c_grid, self.c_grid[1:])):
            raise ValueError("grid values must be strictly increasing")
        for c in self.c_grid:
            threshold_p(c, self.n)
        if self.base not in BASE_SOURCES:
            raise ValueError(f"base must be one of {BASE_SOURCES}, got {self.base!r}")
        if self.base == "file" and not self.base_file:
            raise ValueError("base 'file' needs base_file")
        if not 0 < self.epsilon <= 1:
            raise ValueError("epsilon must lie in (0, 1]")

    @classmethod
    def from_dict(cls, data: dict) -> ScanConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown scan config keys: {sorted(unknown)}")
        return cls(**data)

    def base_set(self) -> IntegerSet:
        if self.base == "half-interval":
            return half_interval(self.n)
        if self.base == "full":
            return IntegerSet.full(self.n)
        A = read_set(self.base_file, n=self.n)
        if A.n != self.n:
            raise ValueError(f"base set file has n={A.n}, config has n={self.n}")
        return A


def threshold_p(c: float, n: int) -> float:
    """``c * n**(-2/3)``; values within rounding of 1 are clamped to 1."""
    p = c / n ** (2.0 / 3.0)
    if p > 1.0:
        if p - 1.0 > 1e-9:
            raise ValueError(f"c={c} gives p={p:.6g} > 1 at n={n}")
        p = 1.0
    return p


@dataclass(frozen=True)
class ScanRow:
    c: float
    p: float
    frac_gadget_found: float
    frac_lower_coloring_valid: float
    mean_capture_count: float
    cheb_bound: float
    m: int
    budget_exhausted: int = 0

    def csv_values(self) -> list[str]:
        return [
            _fmt(self.c),
            _fmt(self.p),
            _fmt(self.frac_gadget_found),
            _fmt(self.frac_lower_coloring_valid),
            _fmt(self.mean_capture_count),
            _fmt(self.cheb_bound),
            str(self.m),
        ]

    def to_json(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


def _fmt(v: float) -> str:
    return f"{v:.6g}"


@dataclass
class SampleOutcome:
    gadget: GadgetSpec | None
    budget_exhausted: bool
    lower_valid: bool
    capture: int
    U: IntegerSet = field(repr=False)


def evaluate_sample(
    A: IntegerSet,
    family: TripleFamily,
    p: float,
    master_seed: int,
    index: int,
    policy: TriplePolicy = TriplePolicy.SCHUR,
    gadget_budget: int | None = None,
) -> SampleOutcome:
    R = sample_np(SampleSpec(A.n, p, master_seed, index))
    U = perturbed_union(A, R)
    exhausted = False
    try:
        gadget = find_gadget_in_perturbed(A, U, family.epsilon, gadget_budget, family=family)
    except BudgetExceeded:
        gadget, exhausted = None, True
    lower_valid = verify_coloring(U, lower_bound_coloring(A, U), policy) is None
    return SampleOutcome(gadget, exhausted, lower_valid, capture_count(family, R), U)


def run_scan(config: ScanConfig, family: TripleFamily | None = None) -> list[ScanRow]:
    A = config.base_set()
    fam = family if family is not None else build_triple_family(A, config.epsilon)
    hist = pair_histogram_buckets(fam) if len(fam) else None
    rows = []
    for c in config.c_grid:
        p = threshold_p(c, config.n)
        found = valid = exhausted = capture = 0
        for k in range(config.samples):
            out = evaluate_sample(A, fam, p, config.master_seed, k, config.policy, config.gadget_budget)
            found += out.gadget is not None
            valid += out.lower_valid
            exhausted += out.budget_exhausted
            capture += out.capture
        try:
            cheb = float(chebyshev_zero_bound(fam, p, histogram=hist).cheb_bound)
        except DegenerateFamily:
            cheb = math.nan
        m = config.samples
        rows.append(ScanRow(c, p, found / m, valid / m, capture / m, cheb, m, exhausted))
    return rows


def format_csv(rows: Iterable[ScanRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_values())
    return buf.getvalue()


def emit_csv(rows: Sequence[ScanRow], destination) -> None:
    """Write rows to a path or a text stream."""
    text = format_csv(rows)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    path = Path(destination)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write scan CSV to {path}: {exc.strerror}") from exc


def parse_csv(text: str) -> list[dict[str, float]]:
    reader = csv.DictReader(io.StringIO(text))
    return [{k: float(v) for k, v in rec.items()} for rec in reader]


def plot_script(csv_name: str) -> str:
    return "\n".join(
        [
            "# gnuplot script: fractions against c = p * n^(2/3)",
            "set datafile separator ','",
            "set logscale x 2",
            "set xlabel 'c = p n^{2/3}'",
            "set ylabel 'fraction of samples'",
            "set yrange [-0.05:1.05]",
            "set key outside",
            f"plot '{csv_name}' using 1:3 skip 1 with linespoints title 'gadget found', \\",
            f"     '{csv_name}' using 1:4 skip 1 with linespoints title 'lower coloring valid'",
            "",
        ]
    )


def emit_plot_script(rows: Sequence[ScanRow], destination, csv_path: str | Path = "scan.csv") -> None:
    """Write a gnuplot script that plots the CSV at ``csv_path``.

    The CSV is referenced relative to the script's directory when possible.
    """
    dest = Path(destination)
    csv_path = Path(csv_path)
    try:
        rel = csv_path.resolve().relative_to(dest.resolve().parent)
    except ValueError:
        rel = csv_path
    try:
        dest.write_text(plot_script(rel.as_posix()))
    except OSError as exc:
        raise OSError(f"cannot write plot script to {dest}: {exc.strerror}") from exc
