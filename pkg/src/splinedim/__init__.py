"""Exact dimensions of planar spline spaces.

Computes, in exact rational arithmetic, the dimension of the space of
C^r piecewise polynomials of degree at most k on a triangulated planar
disk, the classical slope-correction lower bound, and the homological
discrepancy between the two.
"""

__version__ = "0.1.0"

from .analytics import (
    BoundAnalytics,
    ConsistencyClause,
    ConsistencyReport,
    RootBoundCheck,
    bound_analytics,
    consistency_check,
    hf_difference_quadratic,
    larger_root_bound,
)
from .bound import BoundReport, schumaker_bound
from .chain import (
    ChiReport,
    DiscrepancyReport,
    discrepancy,
    euler_characteristic,
    max_nonzero_h1,
)
from .linalg import (
    Form,
    GradedMatrix,
    MonomialBasis,
    RankDisagreementError,
    monomial_basis,
    monomial_count,
    multiplication_matrix,
    nullity,
    power,
    rank,
    rank_exact,
    rank_mod_prime,
)
from .local_vertex import (
    SyzygyProfile,
    VertexIdeal,
    local_hilbert,
    sigma,
    sigma_capped,
    syzygy_degrees,
)
from .mesh import (
    BUNDLED_MESHES,
    Edge,
    LinearForm,
    MeshError,
    ParseError,
    Point2,
    Triangulation,
    ValidationError,
    bundled_mesh,
    load_mesh,
    parse_mesh,
    serialize_mesh,
)
from .spline_space import (
    SplineProblem,
    dimension_table,
    smoothness_matrix,
    spline_dimension,
)

__all__ = [
    "__version__",
    "BUNDLED_MESHES",
    "BoundAnalytics",
    "BoundReport",
    "ChiReport",
    "ConsistencyClause",
    "ConsistencyReport",
    "DiscrepancyReport",
    "Edge",
    "Form",
    "GradedMatrix",
    "LinearForm",
    "MeshError",
    "MonomialBasis",
    "ParseError",
    "Point2",
    "RankDisagreementError",
    "RootBoundCheck",
    "SplineProblem",
    "SyzygyProfile",
    "Triangulation",
    "ValidationError",
    "VertexIdeal",
    "bound_analytics",
    "bundled_mesh",
    "consistency_check",
    "dimension_table",
    "discrepancy",
    "euler_characteristic",
    "hf_difference_quadratic",
    "larger_root_bound",
    "load_mesh",
    "local_hilbert",
    "max_nonzero_h1",
    "monomial_basis",
    "monomial_count",
    "multiplication_matrix",
    "nullity",
    "parse_mesh",
    "power",
    "rank",
    "rank_exact",
    "rank_mod_prime",
    "schumaker_bound",
    "serialize_mesh",
    "sigma",
    "sigma_capped",
    "smoothness_matrix",
    "spline_dimension",
    "syzygy_degrees",
]
