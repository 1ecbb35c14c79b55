"""Pathway distributions, Mittag-Leffler functions, Mellin-convolution
integrals, a median-centered design solver, and golden-angle spiral patterns.
"""

from .designstats import (
    CenteredSystem,
    IncidenceSystem,
    build_incidence,
    center_by_medians,
    chisquared_form_check,
    first_order_approx,
    neumann_solve,
    sample_correlation,
)
from .errors import ConvergenceError, DomainError
from .melconv import (
    MomentDensity,
    ProductSpec,
    builtin_density,
    kratzel_g1,
    kratzel_g2,
    mellin_invert,
    normality_trend,
    product_moment_density,
    random_volume_dist,
    reaction_rate,
    structure_moment,
)
from .pathway import (
    DensityFn,
    PathwayParams,
    havrda_charvat_entropy,
    mathai_entropy,
    pathway_cdf,
    pathway_pdf,
    pathway_sample,
    pathway_support,
    shannon_entropy,
    tsallis_g,
)
from .phyllotaxis import (
    SpiralConfig,
    emit_svg,
    generate_points,
    golden_angle,
    parastichy_pair,
)
from .specfun import (
    MLParams,
    Partition,
    gen_pochhammer,
    log_gamma,
    matrix_gamma,
    mittag_leffler,
    pochhammer,
)

__version__ = "0.1.0"

__all__ = [
    "CenteredSystem",
    "ConvergenceError",
    "DensityFn",
    "DomainError",
    "IncidenceSystem",
    "MLParams",
    "MomentDensity",
    "Partition",
    "PathwayParams",
    "ProductSpec",
    "SpiralConfig",
    "build_incidence",
    "builtin_density",
    "center_by_medians",
    "chisquared_form_check",
    "emit_svg",
    "first_order_approx",
    "gen_pochhammer",
    "generate_points",
    "golden_angle",
    "havrda_charvat_entropy",
    "kratzel_g1",
    "kratzel_g2",
    "log_gamma",
    "mathai_entropy",
    "matrix_gamma",
    "mellin_invert",
    "mittag_leffler",
    "neumann_solve",
    "normality_trend",
    "parastichy_pair",
    "pathway_cdf",
    "pathway_pdf",
    "pathway_sample",
    "pathway_support",
    "pochhammer",
    "product_moment_density",
    "random_volume_dist",
    "reaction_rate",
    "sample_correlation",
    "shannon_entropy",
    "structure_moment",
    "tsallis_g",
]
