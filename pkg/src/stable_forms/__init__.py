"""Numerical algebra of stable 3-forms in six and seven dimensions.

Exterior algebra primitives, orbit invariants and induced geometric
structures of 3-forms on R^6 and R^7, Lorentzian self-duality checks,
and a truncated-Fourier torus model of the associated volume
functionals and their critical points.
"""

from stable_forms.exterior import (
    DegreeError,
    DimError,
    Form,
    MetricG,
    MetricError,
    OrbitError,
    StructureError,
    VolumeElement,
    hodge_star,
    interior,
    pullback,
    wedge,
)

__all__ = [
    "DegreeError",
    "DimError",
    "Form",
    "MetricG",
    "MetricError",
    "OrbitError",
    "StructureError",
    "VolumeElement",
    "hodge_star",
    "interior",
    "pullback",
    "wedge",
]

__version__ = "0.1.0"
