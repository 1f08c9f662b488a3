"""Area, diameter and genus estimates for finite-index CMC surfaces, with
a hyperbolic-plane kernel, numerical oracles and a mesh checker."""

from .estimates import GeometryParams, SurfaceSummary, check_surface
from .report import BoundsReport
from .structure import StructureData, validate_structure

__version__ = "0.1.0"

__all__ = [
    "BoundsReport",
    "GeometryParams",
    "StructureData",
    "SurfaceSummary",
    "check_surface",
    "validate_structure",
]
