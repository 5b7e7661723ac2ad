"""Exact computations for Kakeya sets with respect to hyperplanes in F_q^n."""

from .bounds import (
    CauchySchwarzCount,
    cauchy_schwarz_count,
    kakeya_lower_bound,
    kakeya_lower_bound_ceiling,
    planar_lower_bound,
)
from .core import (
    IncidenceReport,
    KakeyaVerdict,
    OffsetAssignment,
    build_union,
    hyperplane_coverage,
    incidence_stats,
    is_kakeya,
    random_assignment,
    random_kakeya,
    read_assignment,
    read_point_set,
    write_assignment,
    write_point_set,
)
from .field import (
    FieldSpec,
    field_add,
    field_inv,
    field_mul,
    field_neg,
    field_pow,
    field_sub,
    make_field,
    parse_field_spec,
)
from .geometry import (
    AffineHyperplane,
    Direction,
    Point,
    SubspaceBasis,
    count_directions_formula,
    count_fiber,
    count_spanning_tuples,
    count_subspaces,
    enumerate_directions,
    enumerate_subspaces,
    hyperplane_points,
    intersect_hyperplanes,
)
from .pointset import PointSet
from .search import (
    SearchResult,
    TightnessCell,
    greedy_upper_bound,
    minimal_kakeya_exact,
    minimal_kakeya_powerset,
    tightness_report,
)

__all__ = [
    "AffineHyperplane",
    "CauchySchwarzCount",
    "Direction",
    "FieldSpec",
    "IncidenceReport",
    "KakeyaVerdict",
    "OffsetAssignment",
    "Point",
    "PointSet",
    "SearchResult",
    "SubspaceBasis",
    "TightnessCell",
    "build_union",
    "cauchy_schwarz_count",
    "count_directions_formula",
    "count_fiber",
    "count_spanning_tuples",
    "count_subspaces",
    "enumerate_directions",
    "enumerate_subspaces",
    "field_add",
    "field_inv",
    "field_mul",
    "field_neg",
    "field_pow",
    "field_sub",
    "greedy_upper_bound",
    "hyperplane_coverage",
    "hyperplane_points",
    "incidence_stats",
    "intersect_hyperplanes",
    "is_kakeya",
    "kakeya_lower_bound",
    "kakeya_lower_bound_ceiling",
    "make_field",
    "minimal_kakeya_exact",
    "minimal_kakeya_powerset",
    "parse_field_spec",
    "planar_lower_bound",
    "random_assignment",
    "random_kakeya",
    "read_assignment",
    "read_point_set",
    "tightness_report",
    "write_assignment",
    "write_point_set",
]
