"""
Configuration for the aesthetica curve toolkit.

This file contains numerical tolerances, stencil settings and output settings.
Every threshold used by the geometry package lives in ToleranceConfig so the
whole pipeline can be tightened or relaxed from one place.

Tolerances may be overridden per run with the AESTHETICA_TOL_OVERRIDE
environment variable (a JSON object of ToleranceConfig field names).
"""

import json
import logging
import os
from dataclasses import dataclass, field, fields, replace
from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, PositiveFloat, ValidationError

TOL_OVERRIDE_ENV = "AESTHETICA_TOL_OVERRIDE"
LOG_DIR_ENV = "AESTHETICA_LOG_DIR"


# =============================================================================
# NUMERICAL TOLERANCES
# =============================================================================

@dataclass(frozen=True)
class ToleranceConfig:
    """Thresholds shared by the geometry package."""

    # Integrand / curvature floors
    integrand_floor: float = 1e-12
    speed_floor: float = 1e-12
    lcg_floor: float = 1e-8

    # ESA verdict bands (normalized RMS residual)
    esa_residual: float = 1e-6
    esa_noisy: float = 1e-3
    condition_limit: float = 1e12

    # MSA ratio bands
    msa_closed_form: float = 1e-6
    msa_sampled: float = 1e-3

    # Similarity-arc-length rate check
    theta_rate: float = 1e-3

    # Shift-derivative identities
    shift_second_order: float = 1e-3
    shift_third_order: float = 1e-2

    # Representation formula
    wronskian_drift: float = 1e-6

    # Classification
    constant_curvature_rel: float = 1e-4
    zero_curvature_abs: float = 1e-6
    poor_fit_rmse: float = 0.05
    xi_boundary_rel: float = 1e-3
    omega_boundary: float = 1e-3
    alpha_boundary: float = 1e-3
    lcg_flat: float = 1e-4
    mixed_sign_fraction: float = 0.05
    representation_fit_residual: float = 1e-3
    model_selection_ratio: float = 1.1


@dataclass(frozen=True)
class NumericsConfig:
    """Discretization settings."""

    stencil_trim: int = 4
    min_samples: int = 9
    rk4_substeps: int = 8
    min_basis_steps: int = 1000
    # Knot spans of the least-squares splines that smooth integrands and kappa(t)
    integrand_spline_intervals: int = 256
    curvature_spline_intervals: int = 64


class ToleranceOverride(BaseModel):
    """Validated shape of AESTHETICA_TOL_OVERRIDE."""

    model_config = ConfigDict(extra="forbid")

    integrand_floor: Optional[PositiveFloat] = None
    speed_floor: Optional[PositiveFloat] = None
    lcg_floor: Optional[PositiveFloat] = None
    esa_residual: Optional[PositiveFloat] = None
    esa_noisy: Optional[PositiveFloat] = None
    condition_limit: Optional[PositiveFloat] = None
    msa_closed_form: Optional[PositiveFloat] = None
    msa_sampled: Optional[PositiveFloat] = None
    theta_rate: Optional[PositiveFloat] = None
    shift_second_order: Optional[PositiveFloat] = None
    shift_third_order: Optional[PositiveFloat] = None
    wronskian_drift: Optional[PositiveFloat] = None
    constant_curvature_rel: Optional[PositiveFloat] = None
    zero_curvature_abs: Optional[PositiveFloat] = None
    poor_fit_rmse: Optional[PositiveFloat] = None
    xi_boundary_rel: Optional[PositiveFloat] = None
    omega_boundary: Optional[PositiveFloat] = None
    alpha_boundary: Optional[PositiveFloat] = None
    lcg_flat: Optional[PositiveFloat] = None
    mixed_sign_fraction: Optional[PositiveFloat] = None
    representation_fit_residual: Optional[PositiveFloat] = None
    model_selection_ratio: Optional[PositiveFloat] = None


def get_tolerance_override() -> Dict[str, float]:
    """
    Read tolerance overrides from the environment.

    Returns:
        Mapping of ToleranceConfig field names to values, empty when the
        variable is unset or invalid
    """
    raw = os.environ.get(TOL_OVERRIDE_ENV, "").strip()
    if not raw:
        return {}

    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as e:
        logging.warning(
            f"⚠️  {TOL_OVERRIDE_ENV} is not valid JSON ({e}). Using default tolerances."
        )
        return {}

    if not isinstance(payload, dict):
        logging.warning(f"⚠️  {TOL_OVERRIDE_ENV} must be a JSON object. Using default tolerances.")
        return {}

    try:
        override = ToleranceOverride.model_validate(payload)
    except ValidationError as e:
        logging.warning(
            f"⚠️  {TOL_OVERRIDE_ENV} rejected: {e.error_count()} invalid field(s). "
            "Using default tolerances."
        )
        return {}

    return override.model_dump(exclude_none=True)


def get_log_dir() -> str:
    """Log directory from AESTHETICA_LOG_DIR, default 'output'."""
    return os.environ.get(LOG_DIR_ENV, "output")


# =============================================================================
# MAIN APPLICATION CONFIGURATION
# =============================================================================

@dataclass
class AppConfig:
    """Main application configuration."""

    tolerances: ToleranceConfig = field(default_factory=ToleranceConfig)
    numerics: NumericsConfig = field(default_factory=NumericsConfig)

    # Output settings
    log_dir: str = "output"
    verbose: bool = True

    @classmethod
    def load(cls) -> "AppConfig":
        """Load configuration from environment and defaults."""
        overrides = get_tolerance_override()
        tolerances = replace(ToleranceConfig(), **overrides)
        if overrides:
            logging.info(f"Tolerance overrides applied: {sorted(overrides)}")
        return cls(tolerances=tolerances, log_dir=get_log_dir())

    def to_dict(self) -> Dict[str, Any]:
        """Flat view used in JSON reports."""
        return {
            "tolerances": {f.name: getattr(self.tolerances, f.name) for f in fields(self.tolerances)},
            "numerics": {f.name: getattr(self.numerics, f.name) for f in fields(self.numerics)},
        }


# Global configuration instance
config = AppConfig.load()


def get_tolerances() -> ToleranceConfig:
    """Tolerances of the global configuration."""
    return config.tolerances


def get_numerics() -> NumericsConfig:
    """Numerics settings of the global configuration."""
    return config.numerics


def reload_config() -> AppConfig:
    """Re-read the environment into the global configuration."""
    global config
    config = AppConfig.load()
    return config
