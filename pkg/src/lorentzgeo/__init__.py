"""Numerical synthetic Lorentzian geometry on sampled spaces.

Model-space solvers for the two-dimensional constant-curvature Lorentzian
planes, finite sampled spaces with curvature-bound certification, rigidity
detection with flat fill-ins, parallel-line and flat-strip diagnostics, and
the splitting pipeline recovering a nonpositively-curved base metric from
parallel timelike lines.
"""

from .errors import (
    DomainError,
    GeodesicDeficit,
    LorentzGeoError,
    MissingChains,
    NoSeries,
    NotChronological,
    NotInPast,
    NotParallel,
    OrderViolated,
    RigidityViolated,
    ShapeError,
    StripInconsistent,
    WindowExhausted,
)
from .modelspace import (
    Kappa,
    ModelTriangle,
    PlanePoint,
    SidePosition,
    angle_from_sides,
    angle_sum_defect,
    comparison_point_tau,
    ds_realize_triangle,
    ds_tau,
    fvf_model,
    hinge_angle,
    polar_chronology,
    second_inequality_margin,
    side_from_hinge,
    tau_plane,
)
from .parallels import (
    FlatStrip,
    LineSample,
    StripProfile,
    asymptotic_ray,
    concat_angle,
    flat_strip_reconstruct,
    is_line,
    strip_profile,
    sync_parallel_fit,
    weakly_parallel_offset,
)
from .relations import Relation
from .rigidity import (
    EqualityReport,
    FlatFillIn,
    equality_conditions,
    fill_in_reconstruct,
    quadrangle_rigidity,
)
from .sampled import (
    AngleEstimate,
    Chain,
    SampledSpace,
    SampledTriangle,
    certify_curvature_bound,
    check_angle_inequalities,
    estimate_angle,
    fvf_empirical,
    geodesic_between,
    sample_triangles,
    triangle_between,
    validate_axioms,
)
from .splitting import (
    BaseMetric,
    EmbeddingReport,
    MetricSampleIn,
    build_product,
    compute_dS,
    extract_line_classes,
    round_trip,
    verify_base_metric_cat0,
    verify_embedding,
)

__version__ = "0.1.0"
