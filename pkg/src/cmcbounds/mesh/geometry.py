"""Area, topology, angle defect and intrinsic diameter of triangle meshes."""

from __future__ import annotations

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import dijkstra

from .surface import MeshError, TriangulatedSurface, midpoint_subdivide


def surface_area(mesh: TriangulatedSurface) -> float:
    return float(mesh.face_areas().sum())


def euler_genus(mesh: TriangulatedSurface, orientable: bool = True) -> tuple[int, int]:
    """Euler characteristic V - E + F and genus.

    For a closed orientable mesh the genus is ``(2 - chi) / 2``; with ``b``
    boundary loops it is ``(2 - chi - b) / 2``. For non-orientable meshes the
    genus reported is that of the orientable double cover,
    ``g = 1 - chi - b`` (``chi`` of the cover is twice that of the mesh).
    """
    used = np.unique(mesh.faces)
    chi = len(used) - len(mesh.edges) + mesh.n_faces
    b = mesh.boundary_loops()
    if orientable:
        twice = 2 - chi - b
        if twice % 2:
            raise MeshError(
                f"odd value 2 - chi - b = {twice} for a mesh claimed orientable"
            )
        return int(chi), twice // 2
    return int(chi), 1 - chi - b


def corner_angles(mesh: TriangulatedSurface) -> np.ndarray:
    """Interior angles of every face, shape (m, 3), angle k at vertex faces[:, k]."""
    v = mesh.vertices
    f = mesh.faces
    out = np.empty(f.shape)
    for k in range(3):
        p = v[f[:, k]]
        a = v[f[:, (k + 1) % 3]] - p
        b = v[f[:, (k + 2) % 3]] - p
        cross = np.linalg.norm(np.cross(a, b), axis=1)
        out[:, k] = np.arctan2(cross, np.einsum("ij,ij->i", a, b))
    return out


def angle_defects(mesh: TriangulatedSurface) -> np.ndarray:
    """Per-vertex angle defect 2*pi - (sum of incident corner angles)."""
    sums = np.zeros(mesh.n_vertices)
    np.add.at(sums, mesh.faces.ravel(), corner_angles(mesh).ravel())
    defect = 2 * np.pi - sums
    unused = np.setdiff1d(np.arange(mesh.n_vertices), mesh.faces.ravel())
    defect[unused] = 0.0
    return defect


def angle_defect_total(mesh: TriangulatedSurface) -> float:
    """Total angle defect of a closed mesh; equals 2*pi*chi (discrete Gauss-Bonnet)."""
    if not mesh.is_closed:
        raise MeshError("angle defect total requires a closed mesh")
    return float(angle_defects(mesh).sum())


def _face_complete_graph(mesh: TriangulatedSurface, parent: np.ndarray, coarse: TriangulatedSurface):
    """Edges joining every pair of refined nodes lying on the same coarse face.

    Straight segments inside a flat triangle are surface paths, so the graph
    distance stays an upper bound of the polyhedral geodesic distance.
    """
    nodes_per_face = [set() for _ in range(coarse.n_faces)]
    for fi, face in zip(parent.tolist(), mesh.faces.tolist()):
        nodes_per_face[fi].update(face)
    rows, cols = [], []
    for nodes in nodes_per_face:
        nodes = sorted(nodes)
        for i in range(len(nodes)):
            for j in range(i + 1, len(nodes)):
                rows.append(nodes[i])
                cols.append(nodes[j])
    # coo -> csr sums duplicates; segments on shared edges must appear once
    pairs = np.unique(np.column_stack([rows, cols]), axis=0)
    rows, cols = pairs[:, 0], pairs[:, 1]
    w = np.linalg.norm(mesh.vertices[rows] - mesh.vertices[cols], axis=1)
    n = mesh.n_vertices
    return coo_matrix((w, (rows, cols)), shape=(n, n)).tocsr()


def intrinsic_diameter(mesh: TriangulatedSurface) -> float:
    """Largest shortest-path distance between two mesh vertices.

    The mesh is split once at edge midpoints and paths may cut straight
    across each original face through the new nodes. The result is a
    graph metric and therefore biased upward relative to the geodesic
    distance of the underlying smooth surface.
    """
    comps = mesh.connected_components()
    if len(comps) > 1:
        sizes = ", ".join(str(len(c)) for c in comps)
        raise MeshError(f"mesh is disconnected: {len(comps)} components of sizes {sizes}")
    refined, parent = midpoint_subdivide(mesh)
    graph = _face_complete_graph(refined, parent, mesh)
    sources = np.unique(mesh.faces)
    dist = dijkstra(graph, directed=False, indices=sources)
    return float(dist[:, sources].max())


def extrinsic_diameter(mesh: TriangulatedSurface) -> float:
    """Largest Euclidean distance between two vertices (via the convex hull)."""
    from scipy.spatial import ConvexHull
    from scipy.spatial.distance import pdist

    pts = mesh.vertices[np.unique(mesh.faces)]
    try:
        pts = pts[ConvexHull(pts).vertices]
    except Exception:  # flat or tiny point sets: fall back to all points
        pass
    return float(pdist(pts).max()) if len(pts) > 1 else 0.0
