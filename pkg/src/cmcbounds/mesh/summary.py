"""Reduce a closed mesh to the global data the estimates need."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..estimates import SurfaceSummary
from .curvature import second_fundamental_form
from .geometry import angle_defect_total, euler_genus, extrinsic_diameter, intrinsic_diameter, surface_area
from .jacobi import JacobiSpectrum, jacobi_spectrum
from .surface import MeshError, TriangulatedSurface

logger = logging.getLogger(__name__)

CMC_RTOL = 0.02


@dataclass
class MeshSummary:
    """SurfaceSummary plus the per-stage numbers it was built from."""

    summary: SurfaceSummary
    cmc: bool
    spectrum: JacobiSpectrum
    diagnostics: dict = field(default_factory=dict)


def _spectrum_diagnostics(spectrum: JacobiSpectrum, n: int = 8) -> dict:
    return {
        "index": spectrum.index,
        "nullity": spectrum.nullity,
        "tolerance": spectrum.tolerance,
        "lowest_eigenvalues": [float(x) for x in spectrum.eigenvalues[:n]],
    }


def summarize(mesh: TriangulatedSurface, refined: Optional[TriangulatedSurface] = None) -> MeshSummary:
    """Genus, area, diameter, mean |H| and Jacobi index of a closed mesh.

    The mean curvature is the average of |H| over vertices with a usable
    curvature fit. If its relative standard deviation exceeds 2 % the
    surface is not treated as CMC and ``cmc`` is False; downstream checks
    should then be read as advisory. When ``refined`` (a finer mesh of the
    same surface) is given, its index is reported alongside and any
    disagreement is logged.
    """
    if not mesh.is_closed:
        raise MeshError("summarize needs a closed mesh; use jacobi_spectrum directly for meshes with boundary")
    comps = mesh.connected_components()
    if len(comps) != 1:
        raise MeshError(f"summarize needs a connected mesh, got {len(comps)} components")
    if not mesh.is_consistently_oriented():
        raise MeshError("mesh faces are not consistently oriented (one-sided surfaces are not supported)")

    chi, genus = euler_genus(mesh)
    area = surface_area(mesh)
    diam = intrinsic_diameter(mesh)
    ext = extrinsic_diameter(mesh)
    curv = second_fundamental_form(mesh)
    used = np.zeros(mesh.n_vertices, dtype=bool)
    used[mesh.faces.ravel()] = True
    good = used & ~curv.flagged
    absH = np.abs(curv.H[good])
    H_mean = float(absH.mean())
    H_rel = float(absH.std() / H_mean) if H_mean > 0 else math.inf
    cmc = H_rel <= CMC_RTOL
    if not cmc:
        logger.warning("mean curvature varies by %.1f%% (> %.0f%%): surface is not CMC", 100 * H_rel, 100 * CMC_RTOL)

    spectrum = jacobi_spectrum(mesh, "closed", potential=curv.A2)
    diagnostics = {
        "mesh": {"name": mesh.name, "vertices": mesh.n_vertices, "faces": mesh.n_faces},
        "topology": {"chi": chi, "genus": genus},
        "angle_defect_total": angle_defect_total(mesh),
        "area": area,
        "intrinsic_diameter": diam,
        "extrinsic_diameter": ext,
        "curvature": {
            "H_mean_abs": H_mean,
            "H_rel_std": H_rel,
            "A2_mean": float(curv.A2[good].mean()),
            "flagged_vertices": int(curv.flagged[used].sum()),
        },
        "cmc": cmc,
        "spectrum": _spectrum_diagnostics(spectrum),
    }
    if refined is not None:
        refined_spectrum = jacobi_spectrum(refined, "closed")
        diagnostics["spectrum_refined"] = _spectrum_diagnostics(refined_spectrum)
        diagnostics["index_stable_under_refinement"] = refined_spectrum.index == spectrum.index
        if refined_spectrum.index != spectrum.index:
            logger.warning("index %d on the mesh but %d on the refined mesh", spectrum.index, refined_spectrum.index)

    summary = SurfaceSummary(
        genus=genus,
        area=area,
        diameter=diam,
        H=H_mean,
        index=spectrum.index,
        compact=True,
        connected=True,
        extrinsic_diameter=ext,
    )
    return MeshSummary(summary, cmc, spectrum, diagnostics)
