"""Membership, volumes and ratios of two-party correlation sets."""

from fractions import Fraction

from ._core import (
    DomainError,
    Error,
    analytic_constants,
    behavior_example,
    check_behavior,
    chsh_value,
    in_region,
    mc_volume,
    membership_profile,
    min_toggles,
    polytope_counts,
    quadrature_volume_Q,
    ratio_estimate,
    run_cli,
    sample_quantum_points,
    toggle_distance,
    tsirelson_witness,
)
from ._core import exact_volume as _exact_volume


def exact_volume(which):
    """Exact volume of a named polytope ("corrC", ...) as a Fraction."""
    return Fraction(_exact_volume(which))


__all__ = [
    "DomainError",
    "Error",
    "analytic_constants",
    "behavior_example",
    "check_behavior",
    "chsh_value",
    "exact_volume",
    "in_region",
    "mc_volume",
    "membership_profile",
    "min_toggles",
    "polytope_counts",
    "quadrature_volume_Q",
    "ratio_estimate",
    "run_cli",
    "sample_quantum_points",
    "toggle_distance",
    "tsirelson_witness",
]
