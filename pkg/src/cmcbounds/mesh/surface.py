"""Triangle mesh container, validation, file IO and test-surface generators."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

logger = logging.getLogger(__name__)

DEGENERATE_AREA_FACTOR = 1e-12


class MeshError(ValueError):
    """Raised when a mesh violates a structural requirement."""


@dataclass
class TriangulatedSurface:
    """An immersed triangle mesh in flat 3-space.

    The ambient space is Euclidean: sectional curvature and Ric(N) vanish,
    so the injectivity radius is infinite (treated as ``r0 >= 1``) and
    ``K0 = 0``.
    """

    vertices: np.ndarray
    faces: np.ndarray
    name: str = "mesh"
    _edges: np.ndarray | None = field(default=None, init=False, repr=False)
    _edge_faces: dict | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        self.vertices = np.ascontiguousarray(self.vertices, dtype=float)
        self.faces = np.ascontiguousarray(self.faces, dtype=np.int64)
        if self.vertices.ndim != 2 or self.vertices.shape[1] != 3:
            raise MeshError(f"vertices must be (n, 3), got {self.vertices.shape}")
        if self.faces.ndim != 2 or self.faces.shape[1] != 3:
            raise MeshError(f"faces must be (m, 3), got {self.faces.shape}")
        if len(self.faces) == 0:
            raise MeshError("mesh has no faces")
        if self.faces.min() < 0 or self.faces.max() >= len(self.vertices):
            raise MeshError("face references a vertex index out of range")
        if np.any(self.faces[:, 0] == self.faces[:, 1]) or np.any(
            self.faces[:, 1] == self.faces[:, 2]
        ) or np.any(self.faces[:, 0] == self.faces[:, 2]):
            raise MeshError("face with repeated vertex index")
        self._check_degenerate()
        self._check_manifold()

    # -- derived combinatorics -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def edges(self) -> np.ndarray:
        """Unique undirected edges as sorted (i, j) pairs."""
        if self._edges is None:
            half = self.faces[:, [0, 1, 1, 2, 2, 0]].reshape(-1, 2)
            self._edges = np.unique(np.sort(half, axis=1), axis=0)
        return self._edges

    def edge_face_map(self) -> dict:
        """Map sorted edge -> list of (face index, directed edge)."""
        if self._edge_faces is None:
            table: dict = {}
            for fi, (a, b, c) in enumerate(self.faces.tolist()):
                for u, v in ((a, b), (b, c), (c, a)):
                    key = (u, v) if u < v else (v, u)
                    table.setdefault(key, []).append((fi, (u, v)))
            self._edge_faces = table
        return self._edge_faces

    def boundary_edges(self) -> list[tuple[int, int]]:
        return [e for e, fs in self.edge_face_map().items() if len(fs) == 1]

    @property
    def is_closed(self) -> bool:
        return not self.boundary_edges()

    def boundary_vertices(self) -> np.ndarray:
        be = self.boundary_edges()
        if not be:
            return np.zeros(0, dtype=np.int64)
        return np.unique(np.asarray(be).ravel())

    def boundary_loops(self) -> int:
        """Number of boundary components (cycles of boundary edges)."""
        be = self.boundary_edges()
        if not be:
            return 0
        from scipy.sparse import coo_matrix
        from scipy.sparse.csgraph import connected_components

        verts = np.unique(np.asarray(be).ravel())
        index = {v: i for i, v in enumerate(verts.tolist())}
        rows = [index[a] for a, _ in be]
        cols = [index[b] for _, b in be]
        graph = coo_matrix((np.ones(len(be)), (rows, cols)), shape=(len(verts),) * 2)
        n, _ = connected_components(graph, directed=False)
        return int(n)

    def is_consistently_oriented(self) -> bool:
        """True when every interior edge is traversed once in each direction."""
        for fs in self.edge_face_map().values():
            if len(fs) == 2 and fs[0][1] == fs[1][1]:
                return False
        return True

    def connected_components(self) -> list[np.ndarray]:
        from scipy.sparse import coo_matrix
        from scipy.sparse.csgraph import connected_components

        e = self.edges
        n = self.n_vertices
        graph = coo_matrix((np.ones(len(e)), (e[:, 0], e[:, 1])), shape=(n, n))
        _, labels = connected_components(graph, directed=False)
        used = np.unique(self.faces)
        return [np.flatnonzero(labels == lab) for lab in np.unique(labels[used])]

    # -- geometry ----------------------------------------------------------------

    def face_normals(self, normalized: bool = True) -> np.ndarray:
        v = self.vertices
        f = self.faces
        n = np.cross(v[f[:, 1]] - v[f[:, 0]], v[f[:, 2]] - v[f[:, 0]])
        if normalized:
            n = n / np.linalg.norm(n, axis=1, keepdims=True)
        return n

    def face_areas(self) -> np.ndarray:
        return 0.5 * np.linalg.norm(self.face_normals(normalized=False), axis=1)

    def vertex_normals(self) -> np.ndarray:
        """Area-weighted average of incident face normals."""
        fn = self.face_normals(normalized=False)
        vn = np.zeros_like(self.vertices)
        for k in range(3):
            np.add.at(vn, self.faces[:, k], fn)
        norm = np.linalg.norm(vn, axis=1, keepdims=True)
        norm[norm == 0] = 1.0
        return vn / norm

    def bbox_diagonal(self) -> float:
        return float(np.linalg.norm(np.ptp(self.vertices, axis=0)))

    def transformed(self, rotation=None, translation=None, scale: float = 1.0):
        """Return a copy with ``x -> scale * R x + t`` applied to the vertices."""
        v = self.vertices * scale
        if rotation is not None:
            v = v @ np.asarray(rotation).T
        if translation is not None:
            v = v + np.asarray(translation)
        return TriangulatedSurface(v, self.faces.copy(), name=self.name)

    def _check_degenerate(self):
        areas = self.face_areas()
        threshold = DEGENERATE_AREA_FACTOR * self.bbox_diagonal() ** 2
        bad = np.flatnonzero(areas <= threshold)
        if len(bad):
            raise MeshError(
                f"{len(bad)} degenerate face(s), first is face {int(bad[0])} "
                f"with area {areas[bad[0]]:.3e}"
            )

    def _check_manifold(self):
        for edge, fs in self.edge_face_map().items():
            if len(fs) > 2:
                raise MeshError(f"non-manifold edge {edge} shared by {len(fs)} faces")


# -- file IO -----------------------------------------------------------------------


def _triangulate(poly: list[int]) -> list[list[int]]:
    return [[poly[0], poly[i], poly[i + 1]] for i in range(1, len(poly) - 1)]


def read_off(path) -> TriangulatedSurface:
    """Read an ASCII OFF file. Polygons with more than 3 sides are fanned."""
    path = Path(path)
    tokens: list[str] = []
    for line in path.read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            tokens.extend(line.split())
    if not tokens or not tokens[0].endswith("OFF"):
        raise MeshError(f"{path}: missing OFF header")
    pos = 1
    if tokens[0] != "OFF":
        logger.warning("%s: header %r treated as plain OFF", path, tokens[0])
    try:
        nv, nf = int(tokens[pos]), int(tokens[pos + 1])
        pos += 3
        verts = np.array(tokens[pos : pos + 3 * nv], dtype=float)
        if verts.size != 3 * nv:
            raise MeshError(f"{path}: expected {nv} vertices")
        pos += 3 * nv
        faces: list[list[int]] = []
        for _ in range(nf):
            k = int(tokens[pos])
            poly = [int(t) for t in tokens[pos + 1 : pos + 1 + k]]
            if len(poly) != k:
                raise MeshError(f"{path}: truncated face record")
            pos += 1 + k
            faces.extend(_triangulate(poly))
    except (IndexError, ValueError) as exc:
        if isinstance(exc, MeshError):
            raise
        raise MeshError(f"{path}: malformed OFF data ({exc})") from exc
    return TriangulatedSurface(verts.reshape(nv, 3), np.array(faces), name=path.stem)


def read_obj(path) -> TriangulatedSurface:
    """Read positions and faces from a Wavefront OBJ file; other records are skipped."""
    path = Path(path)
    verts: list[list[float]] = []
    faces: list[list[int]] = []
    skipped: set[str] = set()
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        parts = line.split("#", 1)[0].split()
        if not parts:
            continue
        tag = parts[0]
        try:
            if tag == "v":
                verts.append([float(x) for x in parts[1:4]])
                if len(verts[-1]) != 3:
                    raise MeshError(f"{path}:{lineno}: vertex needs 3 coordinates")
            elif tag == "f":
                idx = []
                for p in parts[1:]:
                    i = int(p.split("/")[0])
                    idx.append(i - 1 if i > 0 else len(verts) + i)
                faces.extend(_triangulate(idx))
            else:
                skipped.add(tag)
        except ValueError as exc:
            if isinstance(exc, MeshError):
                raise
            raise MeshError(f"{path}:{lineno}: {exc}") from exc
    if skipped:
        logger.warning("%s: ignored OBJ records %s", path, sorted(skipped))
    if not verts or not faces:
        raise MeshError(f"{path}: no vertices or faces")
    return TriangulatedSurface(np.array(verts), np.array(faces), name=path.stem)


def read_mesh(path) -> TriangulatedSurface:
    suffix = Path(path).suffix.lower()
    if suffix == ".off":
        return read_off(path)
    if suffix == ".obj":
        return read_obj(path)
    raise MeshError(f"unsupported mesh format {suffix!r} (expected .off or .obj)")


def write_off(mesh: TriangulatedSurface, path) -> None:
    lines = ["OFF", f"{mesh.n_vertices} {mesh.n_faces} 0"]
    lines += [f"{x:.17g} {y:.17g} {z:.17g}" for x, y, z in mesh.vertices]
    lines += [f"3 {a} {b} {c}" for a, b, c in mesh.faces]
    Path(path).write_text("\n".join(lines) + "\n")


# -- generators ----------------------------------------------------------------------


def icosphere(level: int = 3, radius: float = 1.0) -> TriangulatedSurface:
    """Subdivided icosahedron projected onto the sphere, outward winding."""
    t = (1.0 + 5.0**0.5) / 2.0
    verts = [
        (-1, t, 0), (1, t, 0), (-1, -t, 0), (1, -t, 0),
        (0, -1, t), (0, 1, t), (0, -1, -t), (0, 1, -t),
        (t, 0, -1), (t, 0, 1), (-t, 0, -1), (-t, 0, 1),
    ]
    faces = [
        (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
        (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
        (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
        (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
    ]
    v = [np.array(p, dtype=float) / np.linalg.norm(p) for p in verts]
    f = faces
    for _ in range(level):
        cache: dict = {}

        def mid(a, b):
            key = (a, b) if a < b else (b, a)
            if key not in cache:
                m = v[a] + v[b]
                v.append(m / np.linalg.norm(m))
                cache[key] = len(v) - 1
            return cache[key]

        new = []
        for a, b, c in f:
            ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
            new += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        f = new
    return TriangulatedSurface(radius * np.array(v), np.array(f), name=f"icosphere{level}")


def torus(
    major: float = 2.0, minor: float = 1.0, n_major: int = 48, n_minor: int = 24
) -> TriangulatedSurface:
    """Standard embedded torus of revolution about the z-axis."""
    u = 2 * np.pi * np.arange(n_major) / n_major
    w = 2 * np.pi * np.arange(n_minor) / n_minor
    uu, ww = np.meshgrid(u, w, indexing="ij")
    x = (major + minor * np.cos(ww)) * np.cos(uu)
    y = (major + minor * np.cos(ww)) * np.sin(uu)
    z = minor * np.sin(ww)
    verts = np.stack([x, y, z], axis=-1).reshape(-1, 3)
    faces = []
    for i in range(n_major):
        for j in range(n_minor):
            a = i * n_minor + j
            b = ((i + 1) % n_major) * n_minor + j
            c = ((i + 1) % n_major) * n_minor + (j + 1) % n_minor
            d = i * n_minor + (j + 1) % n_minor
            faces += [(a, b, c), (a, c, d)]
    return TriangulatedSurface(verts, np.array(faces), name="torus")


def cylinder(
    radius: float = 1.0, height: float = 2.0, n_around: int = 48, n_along: int = 24
) -> TriangulatedSurface:
    """Open cylinder about the z-axis (two boundary circles)."""
    u = 2 * np.pi * np.arange(n_around) / n_around
    z = np.linspace(-height / 2, height / 2, n_along + 1)
    uu, zz = np.meshgrid(u, z, indexing="ij")
    verts = np.stack(
        [radius * np.cos(uu), radius * np.sin(uu), zz], axis=-1
    ).reshape(-1, 3)
    m = n_along + 1
    faces = []
    for i in range(n_around):
        for j in range(n_along):
            a = i * m + j
            b = ((i + 1) % n_around) * m + j
            c = ((i + 1) % n_around) * m + j + 1
            d = i * m + j + 1
            faces += [(a, b, c), (a, c, d)]
    return TriangulatedSurface(verts, np.array(faces), name="cylinder")


def flat_disk(radius: float = 1.0, n_rings: int = 12) -> TriangulatedSurface:
    """Planar disk in z = 0 made of concentric rings, 6k vertices on ring k."""
    verts = [(0.0, 0.0, 0.0)]
    ring_start = [0]
    for k in range(1, n_rings + 1):
        ring_start.append(len(verts))
        r = radius * k / n_rings
        phase = 0.0 if k % 2 else np.pi / (6 * k)
        for j in range(6 * k):
            a = phase + 2 * np.pi * j / (6 * k)
            verts.append((r * np.cos(a), r * np.sin(a), 0.0))
    verts_arr = np.array(verts)
    # Delaunay of a disk with boundary on the outer ring is a valid triangulation.
    from scipy.spatial import Delaunay

    tri = Delaunay(verts_arr[:, :2]).simplices
    p = verts_arr[:, :2]
    cross = (p[tri[:, 1], 0] - p[tri[:, 0], 0]) * (p[tri[:, 2], 1] - p[tri[:, 0], 1]) - (
        p[tri[:, 1], 1] - p[tri[:, 0], 1]
    ) * (p[tri[:, 2], 0] - p[tri[:, 0], 0])
    tri[cross < 0] = tri[cross < 0][:, [0, 2, 1]]
    return TriangulatedSurface(verts_arr, tri, name="disk")


def flat_square(n: int = 1, size: float = 1.0) -> TriangulatedSurface:
    """Square [0, size]^2 split into an n x n grid, each cell cut along (1, 1)."""
    g = np.linspace(0.0, size, n + 1)
    xx, yy = np.meshgrid(g, g, indexing="ij")
    verts = np.stack([xx, yy, np.zeros_like(xx)], axis=-1).reshape(-1, 3)
    faces = []
    for i in range(n):
        for j in range(n):
            a = i * (n + 1) + j
            b = (i + 1) * (n + 1) + j
            c = (i + 1) * (n + 1) + j + 1
            d = i * (n + 1) + j + 1
            faces += [(a, b, c), (a, c, d)]
    return TriangulatedSurface(verts, np.array(faces), name="square")


def polycube_surface(cells, name: str = "polycube") -> TriangulatedSurface:
    """Boundary of a union of unit cubes, quads split into outward-wound triangles.

    ``cells`` is an iterable of integer (i, j, k) cube positions. The union
    must not contain cubes touching only along an edge or a corner, otherwise
    the boundary is not a manifold.
    """
    cells = {tuple(int(c) for c in cell) for cell in cells}
    # (axis, sign) -> quad corner offsets, counter-clockwise seen from outside
    quads = {
        (0, -1): [(0, 0, 0), (0, 0, 1), (0, 1, 1), (0, 1, 0)],
        (0, 1): [(1, 0, 0), (1, 1, 0), (1, 1, 1), (1, 0, 1)],
        (1, -1): [(0, 0, 0), (1, 0, 0), (1, 0, 1), (0, 0, 1)],
        (1, 1): [(0, 1, 0), (0, 1, 1), (1, 1, 1), (1, 1, 0)],
        (2, -1): [(0, 0, 0), (0, 1, 0), (1, 1, 0), (1, 0, 0)],
        (2, 1): [(0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1)],
    }
    index: dict = {}
    verts: list = []
    faces: list = []

    def vid(p):
        if p not in index:
            index[p] = len(verts)
            verts.append(p)
        return index[p]

    for cell in sorted(cells):
        for (axis, sign), corners in quads.items():
            nb = list(cell)
            nb[axis] += sign
            if tuple(nb) in cells:
                continue
            ids = [vid(tuple(c + o for c, o in zip(cell, off))) for off in corners]
            faces += [(ids[0], ids[1], ids[2]), (ids[0], ids[2], ids[3])]
    return TriangulatedSurface(np.array(verts, dtype=float), np.array(faces), name=name)


def double_torus() -> TriangulatedSurface:
    """Genus-2 closed surface: a 3 x 5 slab of cubes with two holes punched through."""
    cells = [(i, j, 0) for i in range(3) for j in range(5) if (i, j) not in {(1, 1), (1, 3)}]
    return polycube_surface(cells, name="double_torus")


def midpoint_subdivide(mesh: TriangulatedSurface) -> tuple[TriangulatedSurface, np.ndarray]:
    """Split every triangle into four using edge midpoints (geometry unchanged).

    Returns the refined mesh and, for each refined face, the index of the
    coarse face it came from.
    """
    edges = mesh.edges
    n = mesh.n_vertices
    lookup = {(int(a), int(b)): n + k for k, (a, b) in enumerate(edges)}
    mids = 0.5 * (mesh.vertices[edges[:, 0]] + mesh.vertices[edges[:, 1]])

    def m(a, b):
        return lookup[(a, b) if a < b else (b, a)]

    faces = []
    parent = []
    for fi, (a, b, c) in enumerate(mesh.faces.tolist()):
        ab, bc, ca = m(a, b), m(b, c), m(c, a)
        faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        parent += [fi] * 4
    refined = TriangulatedSurface(
        np.vstack([mesh.vertices, mids]), np.array(faces), name=mesh.name + "_sub"
    )
    return refined, np.array(parent)
