"""salemlab: finite-stage fractal constructions and dimension estimators."""

from .bitseq import BitMatrix, BitSequence, p3_member, phi_transform, q2_member
from .constructions import (
    CantorScheme,
    ConstructionError,
    FpScheme,
    GeneralizedCantorScheme,
    IntervalScheme,
    JarnikScheme,
    Pi03Scheme,
    SAlphaScheme,
    SalemGapScheme,
    StageReport,
    WeihrauchScheme,
    cantor_stage,
    f_p_stage,
    jarnik_stage,
    pi03_stage,
    radial_lift,
    radial_reports,
    s_alpha_stage,
    salem_gap_stage,
    shrink_bound_holds,
    weihrauch_encode,
    weihrauch_dimension_target,
)
from .dimension import (
    DecayFit,
    DimensionReport,
    FitError,
    box_count_fit,
    clamp_dimension,
    countable_union_sup,
    covering_sum,
    fourier_decay_fit,
    frostman_fit,
    salem_report,
)
from .geometry import (
    BoxUnion,
    GeometryError,
    HausdorffDistance,
    IntervalUnion,
    diameter,
    disjoint_from_compact,
    hausdorff_metric,
    hausdorff_metric_boxes,
    intersects_open,
    simplex_partition_1d,
    subset_of_open,
)
from .measures import (
    FourierSample,
    MeasureError,
    PiecewiseUniformMeasure,
    SelfSimilarProductMeasure,
    affine_pushforward,
    ball_mass,
    fourier_eval,
    fourier_eval_product,
    natural_measure,
)
from .numberfield import (
    GaussianInt,
    gaussian_block_reports,
    gaussian_jarnik_stage,
    is_gaussian_prime,
    mult_matrix,
    mult_matrix_inv,
    norm,
    residue_system,
)

__version__ = "0.1.0"
