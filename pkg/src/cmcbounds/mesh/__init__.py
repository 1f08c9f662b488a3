"""Triangle-mesh geometry: area, topology, diameter, curvature and Jacobi spectrum."""

from .curvature import CurvatureField, second_fundamental_form
from .geometry import (
    angle_defect_total,
    angle_defects,
    euler_genus,
    extrinsic_diameter,
    intrinsic_diameter,
    surface_area,
)
from .jacobi import JacobiSpectrum, cotangent_stiffness, jacobi_spectrum, lumped_mass
from .summary import MeshSummary, summarize
from .surface import (
    MeshError,
    TriangulatedSurface,
    cylinder,
    double_torus,
    flat_disk,
    flat_square,
    icosphere,
    midpoint_subdivide,
    read_mesh,
    read_obj,
    read_off,
    torus,
    write_off,
)

__all__ = [
    "angle_defect_total",
    "angle_defects",
    "cotangent_stiffness",
    "CurvatureField",
    "cylinder",
    "double_torus",
    "euler_genus",
    "extrinsic_diameter",
    "flat_disk",
    "flat_square",
    "icosphere",
    "intrinsic_diameter",
    "jacobi_spectrum",
    "JacobiSpectrum",
    "lumped_mass",
    "MeshError",
    "MeshSummary",
    "midpoint_subdivide",
    "read_mesh",
    "read_obj",
    "read_off",
    "second_fundamental_form",
    "summarize",
    "surface_area",
    "torus",
    "TriangulatedSurface",
    "write_off",
]
