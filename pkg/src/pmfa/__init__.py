"""Wavelet p-exponent and lacunarity analysis of singular signals."""

from .dyadic import DyadicIndex, locate, children_in_3lambda
from .wavelet import FilterBank, CoefficientField, daubechies, analyze, synthesize
from .leaders import LeaderField, wavelet_leaders, p_leaders, l_leaders
from .exponents import (
    RegressionFit,
    ScalingFunction,
    ExponentCurve,
    EstimationError,
    estimate_hmin,
    wavelet_scaling_function,
    critical_lebesgue_index,
    pointwise_p_exponent,
    p_exponent_curve,
    pointwise_lacunarity,
    sparsity_exponent,
)
from .mfa import (
    StructureFunctions,
    Spectrum,
    structure_functions,
    scaling_function,
    legendre_spectrum,
    p_spectrum,
    lacunarity_spectrum,
)
from . import generators

__version__ = "0.1.0"

__all__ = [
    "DyadicIndex", "locate", "children_in_3lambda",
    "FilterBank", "CoefficientField", "daubechies", "analyze", "synthesize",
    "LeaderField", "wavelet_leaders", "p_leaders", "l_leaders",
    "RegressionFit", "ScalingFunction", "ExponentCurve", "EstimationError",
    "estimate_hmin", "wavelet_scaling_function", "critical_lebesgue_index",
    "pointwise_p_exponent", "p_exponent_curve", "pointwise_lacunarity", "sparsity_exponent",
    "StructureFunctions", "Spectrum", "structure_functions", "scaling_function",
    "legendre_spectrum", "p_spectrum", "lacunarity_spectrum",
    "generators",
]
