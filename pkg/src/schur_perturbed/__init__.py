"""Monochromatic Schur triples in randomly perturbed dense sets of integers."""

from .core import (
    BudgetExceeded,
    Color,
    FourAP,
    IntegerSet,
    PartialColoringError,
    SchurTriple,
    TriplePolicy,
    TwoColoring,
    count_4aps_by_step,
    enumerate_4aps,
    enumerate_schur_triples,
    is_sum_free,
    verify_coloring,
)
from .decider import (
    Decision,
    SearchStats,
    Verdict,
    decide_with_budget,
    find_schur_free_coloring,
    is_two_schur_ramsey,
    smallest_ramsey_prefix,
)
from .family import (
    PopularSteps,
    TripleFamily,
    build_triple_family,
    family_size_bound_check,
    find_gadget_in_perturbed,
    popular_steps,
)
from .gadget import (
    ConstraintViolation,
    GadgetSpec,
    OutOfRange,
    RamseyVerdict,
    build_gadget,
    proof_chain_triples,
    verify_gadget_ramsey,
)
from .moments import (
    DegenerateFamily,
    MomentReport,
    chebyshev_zero_bound,
    expected_capture,
    overlap_profile,
)
from .perturb import SampleSpec, half_interval, lower_bound_coloring, perturbed_union, sample_np

__version__ = "0.1.0"
