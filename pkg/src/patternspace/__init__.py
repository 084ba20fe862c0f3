"""Exact abstract pattern spaces: cuts, supports, order and gluing, translation
actions, the local matching uniformity and its metric, Cauchy limits, finite
local complexity and orbit-hull nets."""

from .core import (
    OrderVerdict,
    act,
    atoms,
    axiom_report,
    compatible,
    cut,
    geq,
    report_passed,
    supremum,
    support,
    zero,
)
from .errors import (
    ContextMismatch,
    DimensionMismatch,
    DivisionByZero,
    IncompatibleFamily,
    MathematicalFailure,
    NoMatch,
    NonAtomisticSpace,
    NoSubsequence,
    NoSupremum,
    NotCauchyAtStep,
    PatternSpaceError,
    UnboundedOperand,
    UnboundedRegion,
    ValidationError,
)
from .field import (
    Scalar,
    SqrtValue,
    Translation,
    Vector,
    format_scalar,
    golden_ratio,
    group_norm,
    parse_scalar,
    parse_vector,
)
from .generators import (
    LatticeGenerator,
    PeriodicWordGenerator,
    ShiftedRowsGenerator,
    SubstitutionGenerator1D,
    fibonacci_point_set,
    fibonacci_tiling,
    fibonacci_word,
    integers,
    materialize,
    preset,
)
from .hull import (
    diagonal_subsequence,
    eps_net,
    flc_check,
    orbit_sample,
    shift_grid,
    substitution_language,
    symbolic_complexity,
)
from .patterns import (
    FinitePattern,
    GeneratedPattern,
    Site,
    Tile,
    Weight,
    comb,
    multi,
    patch,
    point_set,
    symbolic,
    word_pattern,
)
from .regions import All, Ball, Box, Empty, Intersection, Points, Union, ball, box, parse_region, points
from .serialize import decode_pattern, encode_pattern
from .spaces import (
    CombSpace,
    MultiSpace,
    PatchSpace,
    PointSetSpace,
    SymbolicSpace,
    TruncatedFamily,
    patch_validate,
    space_by_name,
    validate_delone,
    validate_ud,
)
from .topology import (
    CauchySchedule,
    EntourageSpec,
    cauchy_limit,
    entourage_axiom_suite,
    hausdorff_check,
    in_entourage,
    local_matching_distance,
    match_radius,
)

__version__ = "0.1.0"
