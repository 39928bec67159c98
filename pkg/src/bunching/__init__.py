"""Two-particle joint detection statistics near wave-function zeros.

Computes joint detection probabilities for identical bosons, identical
fermions and distinguishable particles built from single-particle wave
functions, the boson/fermion-to-distinguishable ratios for point-pair and
finite-width detectors, and the generic closed-form laws those ratios obey
near amplitude zeros: bosons locally anti-bunch and fermions locally bunch.
"""

from .detector import QuadratureSpec, ratio_finite, ratio_finite_closed_form
from .joint import (
    DENOMINATOR_FLOOR,
    RatioExpansion,
    Statistics,
    expand_ratio_at,
    joint_density_point,
    ratio_point,
)
from .laws import (
    OrderNAverageCheck,
    length_scales,
    lorentzian_boson,
    lorentzian_fermion,
    mean_ratio_integrated,
    mean_ratio_prediction,
    order_n_average_check,
    order_n_exact,
    order_n_far,
    order_n_near,
)
from .scan import (
    ConvergenceTable,
    ExperimentConfig,
    FiniteWidth,
    Grid,
    PointPair,
    ScanResult,
    WindowAverage,
    ZeroReport,
    average_ratio_numeric,
    build_experiment,
    deficit_convergence,
    gaussian_experiment,
    one_particle_density,
    rect_experiment,
    run_scan,
    write_csv,
    zero_neighborhood_report,
)
from .wavefunctions import (
    Constant,
    Gaussian,
    MonomialZero,
    Sinc,
    WaveFunction,
    ZeroPoint,
    derivative,
    evaluate,
    far_field_source_width,
    find_zeros,
    find_zeros_numeric,
)

__version__ = "0.1.0"

__all__ = [
    "Constant",
    "ConvergenceTable",
    "DENOMINATOR_FLOOR",
    "ExperimentConfig",
    "FiniteWidth",
    "Gaussian",
    "Grid",
    "MonomialZero",
    "OrderNAverageCheck",
    "PointPair",
    "QuadratureSpec",
    "RatioExpansion",
    "ScanResult",
    "Sinc",
    "Statistics",
    "WaveFunction",
    "WindowAverage",
    "ZeroPoint",
    "ZeroReport",
    "average_ratio_numeric",
    "build_experiment",
    "deficit_convergence",
    "derivative",
    "evaluate",
    "expand_ratio_at",
    "far_field_source_width",
    "find_zeros",
    "find_zeros_numeric",
    "gaussian_experiment",
    "joint_density_point",
    "length_scales",
    "lorentzian_boson",
    "lorentzian_fermion",
    "mean_ratio_integrated",
    "mean_ratio_prediction",
    "one_particle_density",
    "order_n_average_check",
    "order_n_exact",
    "order_n_far",
    "order_n_near",
    "ratio_finite",
    "ratio_finite_closed_form",
    "ratio_point",
    "rect_experiment",
    "run_scan",
    "write_csv",
    "zero_neighborhood_report",
]
