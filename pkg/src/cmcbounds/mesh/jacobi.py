"""Finite-element spectrum of the Jacobi operator on a triangle mesh."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
from scipy import sparse

from .curvature import second_fundamental_form
from .surface import MeshError, TriangulatedSurface

NULLITY_FACTOR = 1e-6


@dataclass
class JacobiSpectrum:
    """Sorted generalized eigenvalues of the Jacobi quadratic form."""

    eigenvalues: np.ndarray
    index: int
    nullity: int
    tolerance: float

    @property
    def spectral_radius(self) -> float:
        return float(np.abs(self.eigenvalues).max())


def cotangent_stiffness(mesh: TriangulatedSurface) -> sparse.csr_matrix:
    """Stiffness matrix of piecewise-linear elements, phi^T S phi = int |grad phi|^2."""
    v = mesh.vertices
    f = mesh.faces
    rows, cols, vals = [], [], []
    for k in range(3):
        i, j, o = f[:, (k + 1) % 3], f[:, (k + 2) % 3], f[:, k]
        a = v[i] - v[o]
        b = v[j] - v[o]
        cot = np.einsum("ij,ij->i", a, b) / np.linalg.norm(np.cross(a, b), axis=1)
        w = 0.5 * cot
        rows += [i, j, i, j]
        cols += [j, i, i, j]
        vals += [-w, -w, w, w]
    n = mesh.n_vertices
    return sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))), shape=(n, n)
    ).tocsr()


def lumped_mass(mesh: TriangulatedSurface) -> np.ndarray:
    """Barycentric lumped mass: one third of each incident face area."""
    m = np.zeros(mesh.n_vertices)
    areas = mesh.face_areas() / 3.0
    for k in range(3):
        np.add.at(m, mesh.faces[:, k], areas)
    return m


def jacobi_spectrum(
    mesh: TriangulatedSurface,
    boundary: str = "closed",
    potential: np.ndarray | None = None,
    ricci: np.ndarray | float = 0.0,
) -> JacobiSpectrum:
    """Eigenvalues of Q(phi) = int |grad phi|^2 - (|A|^2 + Ric(N)) phi^2.

    ``boundary`` is ``"closed"`` (all vertices free, mesh must be closed) or
    ``"dirichlet"`` (boundary vertices pinned to zero). ``potential``
    overrides the per-vertex |A|^2 estimate; ``ricci`` is Ric(N), zero in
    flat space. The index is the number of strictly negative eigenvalues
    outside the nullity band ``|mu| <= 1e-6 * spectral radius``.
    """
    if boundary not in ("closed", "dirichlet"):
        raise ValueError(f"boundary must be 'closed' or 'dirichlet', got {boundary!r}")
    if boundary == "closed" and not mesh.is_closed:
        raise MeshError("closed spectrum requested on a mesh with boundary")
    if potential is None:
        potential = second_fundamental_form(mesh).A2
    potential = np.asarray(potential, dtype=float) + ricci

    stiff = cotangent_stiffness(mesh)
    if abs(stiff - stiff.T).max() > 1e-10 * abs(stiff).max():
        raise MeshError("stiffness assembly is not symmetric")
    mass = lumped_mass(mesh)
    q = stiff.toarray() - np.diag(mass * potential)

    free = np.zeros(mesh.n_vertices, dtype=bool)
    free[np.unique(mesh.faces)] = True
    if boundary == "dirichlet":
        free[mesh.boundary_vertices()] = False
    idx = np.flatnonzero(free)
    if len(idx) == 0:
        raise MeshError("no free vertices left after applying boundary conditions")
    q = q[np.ix_(idx, idx)]
    # Lumped mass is diagonal: symmetric scaling gives a standard problem.
    s = 1.0 / np.sqrt(mass[idx])
    mu = scipy.linalg.eigh(s[:, None] * q * s[None, :], eigvals_only=True)
    mu.sort()
    tol = NULLITY_FACTOR * float(np.abs(mu).max())
    index = int(np.count_nonzero(mu < -tol))
    nullity = int(np.count_nonzero(np.abs(mu) <= tol))
    return JacobiSpectrum(mu, index, nullity, tol)
