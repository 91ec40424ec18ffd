"""zetalab: exact jet algebras, auto-arc spaces, finite-field point
counts and zeta-series truncations for plane curve singularities."""

from .branches import (
    ExtensionRequired,
    NewtonPolygon,
    NotSquarefree,
    PuiseuxBranch,
    SemigroupData,
    branch_multiplicity_sum,
    branch_report,
    multiplicity,
    newton_polygon,
    puiseux_expand,
    semigroup_conductor,
    verify_uniformization,
)
from .counter import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    CountResult,
    count_auto_arc,
    count_nabla,
    count_points,
)
from .homsys import EquationSystem, SystemStats, build_auto_arc_system, build_nabla_system, system_stats
from .jetalg import (
    HilbertSamuelFit,
    JetAlgebra,
    NotOnCurve,
    build_jet_algebra,
    classical_jet_algebra,
    hilbert_samuel,
    shift_to_origin,
)
from .symbolics import (
    ClassPoly,
    FpElem,
    InterpolationError,
    MPoly,
    NonLaurentCoefficient,
    NotExpandable,
    ParseError,
    RationalFn,
    ZetaTruncation,
    interpolate_class_poly,
    pade_reconstruct,
    parse_lt_expr,
    parse_poly,
    poly_eval,
    series_of_rational,
    subseries_extract,
)
from .zeta import (
    DecompositionReport,
    Inconclusive,
    ZetaReport,
    curve_point_count,
    pole_candidates,
    smoothness_test,
    theta_truncation,
    verify_decomposition,
    zeta_truncation,
)

__version__ = "0.1.0"
