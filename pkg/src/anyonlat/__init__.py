"""anyonlat: exact-arithmetic abelian anyon models and their lattice realizations."""

from .metric_groups import (
    MetricGroup,
    PrimeFamilySpec,
    build_prime,
    central_charge_closed,
    central_charge_gauss,
    conjugate,
    direct_sum,
    gauged_center_fpdim,
    is_isomorphic,
    is_nondegenerate,
    trivial_group,
)

__all__ = [
    "MetricGroup",
    "PrimeFamilySpec",
    "build_prime",
    "central_charge_closed",
    "central_charge_gauss",
    "conjugate",
    "direct_sum",
    "gauged_center_fpdim",
    "is_isomorphic",
    "is_nondegenerate",
    "trivial_group",
]

__version__ = "0.1.0"
