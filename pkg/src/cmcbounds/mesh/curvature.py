"""Per-vertex second fundamental form from local quadric fits."""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix

from .surface import TriangulatedSurface

logger = logging.getLogger(__name__)

# Unknowns of the fit z = d x + e y + a x^2 + b x y + c y^2.
_N_UNKNOWNS = 5


@dataclass
class CurvatureField:
    """Principal curvatures per vertex plus derived |A|^2 and H.

    Curvatures are measured against the vertex normal induced by the face
    winding, so a sphere of radius R wound outward has ``k1 = k2 = -1/R``
    and ``H = -1/R``; wound inward, ``H = +1/R``.
    """

    k1: np.ndarray
    k2: np.ndarray
    flagged: np.ndarray  # vertices whose neighbourhood could not be fitted

    @property
    def A2(self) -> np.ndarray:
        return self.k1**2 + self.k2**2

    @property
    def H(self) -> np.ndarray:
        return 0.5 * (self.k1 + self.k2)


def _ring_neighbourhoods(mesh: TriangulatedSurface, rings: int):
    e = mesh.edges
    n = mesh.n_vertices
    adj = coo_matrix(
        (np.ones(2 * len(e)), (np.r_[e[:, 0], e[:, 1]], np.r_[e[:, 1], e[:, 0]])),
        shape=(n, n),
    ).tocsr()
    reach = adj.copy()
    for _ in range(rings - 1):
        reach = reach + reach @ adj
    return reach.tocsr()


def _tangent_frame(normal: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    helper = np.array([1.0, 0.0, 0.0]) if abs(normal[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    t1 = np.cross(normal, helper)
    t1 /= np.linalg.norm(t1)
    return t1, np.cross(normal, t1)


def second_fundamental_form(
    mesh: TriangulatedSurface, rings: int = 2, method: str = "corrected"
) -> CurvatureField:
    """Shape operator at every vertex from a least-squares quadric fit.

    Neighbours within ``rings`` edges are written in the frame (t1, t2, n)
    of the vertex normal and fitted by ``z = d x + e y + a x^2 + b xy + c y^2``.
    With gradient ``g`` and Hessian ``Hf`` the shape operator is
    ``(I + g g^T)^{-1} Hf / sqrt(1 + |g|^2)``.

    ``method="plain"`` fits the raw heights. ``method="corrected"`` fits
    ``z * (x^2 + y^2) / |d|^2`` instead, which agrees with z to second
    order but is an exact quadric on any sphere, removing the O(rho^2)
    bias of the plain fit (rho being the neighbourhood radius).
    """
    if method not in ("corrected", "plain"):
        raise ValueError(f"unknown curvature method {method!r}")
    normals = mesh.vertex_normals()
    reach = _ring_neighbourhoods(mesh, rings)
    used = np.zeros(mesh.n_vertices, dtype=bool)
    used[mesh.faces.ravel()] = True

    k1 = np.zeros(mesh.n_vertices)
    k2 = np.zeros(mesh.n_vertices)
    flagged = np.zeros(mesh.n_vertices, dtype=bool)
    for i in np.flatnonzero(used):
        nb = reach.indices[reach.indptr[i] : reach.indptr[i + 1]]
        nb = nb[nb != i]
        if len(nb) < _N_UNKNOWNS:
            flagged[i] = True
            continue
        n = normals[i]
        t1, t2 = _tangent_frame(n)
        d = mesh.vertices[nb] - mesh.vertices[i]
        x, y, z = d @ t1, d @ t2, d @ n
        if method == "corrected":
            r2 = x * x + y * y
            z = z * r2 / (r2 + z * z)
        design = np.column_stack([x, y, x * x, x * y, y * y])
        coef, _, rank, _ = np.linalg.lstsq(design, z, rcond=None)
        if rank < _N_UNKNOWNS:
            flagged[i] = True
            continue
        g = coef[:2]
        hess = np.array([[2 * coef[2], coef[3]], [coef[3], 2 * coef[4]]])
        shape = np.linalg.solve(np.eye(2) + np.outer(g, g), hess) / np.sqrt(1.0 + g @ g)
        k1[i], k2[i] = np.sort(np.linalg.eigvals(shape).real)[::-1]
    if flagged.any():
        logger.warning(
            "%d vertices with degenerate neighbourhoods: curvature set to zero",
            int(flagged.sum()),
        )
    return CurvatureField(k1, k2, flagged)
