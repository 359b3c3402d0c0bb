"""
Numerical geometry of planar curves in the Euclidean, similarity and
equiaffine geometries.
"""
from .affinity import (
    esa_check,
    esa_parameter_transform,
    estimate_generator,
    fit_affine_shift,
    lcg,
    msa_check,
    shift_derivative_check,
    theta_affinity_check,
)
from .classify import classify, classify_by_representation, fit_esa_curvature, omega_alpha
from .core import (
    equiaffine_curvature,
    euclidean_curvature,
    reparametrize,
    resample_uniform,
    similarity_curvature,
    turning_angle,
)
from .generators import (
    esa_class_maps,
    family_label,
    generate,
    msa_parametrization,
    reference_family_curves,
)
from .repformula import curve_from_law, euler_basis, reconstruct, solve_basis

__all__ = [
    "reparametrize", "resample_uniform", "turning_angle",
    "euclidean_curvature", "similarity_curvature", "equiaffine_curvature",
    "generate", "msa_parametrization", "esa_class_maps",
    "reference_family_curves", "family_label",
    "solve_basis", "reconstruct", "curve_from_law", "euler_basis",
    "fit_affine_shift", "esa_check", "esa_parameter_transform",
    "msa_check", "lcg", "theta_affinity_check",
    "estimate_generator", "shift_derivative_check",
    "fit_esa_curvature", "classify", "classify_by_representation", "omega_alpha",
]
