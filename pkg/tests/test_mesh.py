import logging
import math

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from cmcbounds.mesh import (
    MeshError,
    TriangulatedSurface,
    angle_defect_total,
    cylinder,
    double_torus,
    euler_genus,
    extrinsic_diameter,
    flat_disk,
    flat_square,
    icosphere,
    intrinsic_diameter,
    jacobi_spectrum,
    read_mesh,
    read_off,
    second_fundamental_form,
    summarize,
    surface_area,
    torus,
    write_off,
)

TRIANGLE = TriangulatedSurface(np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0]]), np.array([[0, 1, 2]]))


def mobius_strip(n=12):
    u = 2 * np.pi * np.arange(n) / n
    verts = []
    for a in u:
        for w in (-0.3, 0.3):
            verts.append([(1 + w * np.cos(a / 2)) * np.cos(a), (1 + w * np.cos(a / 2)) * np.sin(a), w * np.sin(a / 2)])
    faces = []
    for i in range(n):
        a, b = 2 * i, 2 * i + 1
        if i < n - 1:
            c, d = 2 * i + 2, 2 * i + 3
        else:
            c, d = 1, 0  # the half twist swaps the two rails
        faces += [(a, c, b), (b, c, d)]
    return TriangulatedSurface(np.array(verts), np.array(faces), name="mobius")


# --- construction and IO ---------------------------------------------------------


def test_rejects_bad_meshes():
    with pytest.raises(MeshError):
        TriangulatedSurface(np.zeros((3, 3)), np.array([[0, 1, 2]]))  # degenerate
    with pytest.raises(MeshError):
        TriangulatedSurface(np.eye(3), np.array([[0, 1, 3]]))
    with pytest.raises(MeshError):
        TriangulatedSurface(np.eye(3), np.array([[0, 1, 1]]))
    verts = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1]], dtype=float)
    with pytest.raises(MeshError, match="edge"):
        TriangulatedSurface(verts, np.array([[0, 1, 2], [0, 1, 3], [0, 1, 4]]))


def test_off_roundtrip(tmp_path):
    mesh = icosphere(1)
    path = tmp_path / "s.off"
    write_off(mesh, path)
    back = read_mesh(path)
    np.testing.assert_array_equal(back.faces, mesh.faces)
    np.testing.assert_allclose(back.vertices, mesh.vertices, rtol=0, atol=0)


def test_truncated_off(tmp_path):
    path = tmp_path / "bad.off"
    path.write_text("OFF\n4 2 0\n0 0 0\n1 0 0\n0 1 0\n")
    with pytest.raises(MeshError):
        read_off(path)


def test_obj_ignores_other_records(tmp_path, caplog):
    path = tmp_path / "q.obj"
    path.write_text("# quad\nv 0 0 0\nv 1 0 0\nv 1 1 0\nv 0 1 0\nvn 0 0 1\nvt 0 0\nf 1/1/1 2/1/1 3/1/1 4/1/1\n")
    with caplog.at_level(logging.WARNING):
        mesh = read_mesh(path)
    assert mesh.n_faces == 2
    assert surface_area(mesh) == pytest.approx(1.0)
    assert "vn" in caplog.text


def test_unknown_format(tmp_path):
    with pytest.raises(MeshError):
        read_mesh(tmp_path / "x.stl")


# --- area, topology, Gauss-Bonnet ---------------------------------------------------


def test_area_simple():
    assert surface_area(TRIANGLE) == pytest.approx(0.5)
    assert surface_area(flat_square(1)) == pytest.approx(1.0)


def test_sphere_area_converges():
    errors = [abs(surface_area(icosphere(k)) - 4 * math.pi) for k in range(1, 5)]
    assert np.all(np.diff(errors) < 0)
    assert errors[-1] / (4 * math.pi) < 0.005


@pytest.mark.parametrize(
    "mesh, chi, genus", [(icosphere(0), 2, 0), (torus(), 0, 1), (double_torus(), -2, 2), (flat_disk(), 1, 0)]
)
def test_euler_genus(mesh, chi, genus):
    assert euler_genus(mesh) == (chi, genus)


def test_odd_genus_for_claimed_orientable():
    strip = mobius_strip()
    with pytest.raises(MeshError, match="odd"):
        euler_genus(strip)
    assert euler_genus(strip, orientable=False) == (0, 0)


@pytest.mark.parametrize("mesh, chi", [(icosphere(2), 2), (torus(), 0), (double_torus(), -2)])
def test_discrete_gauss_bonnet(mesh, chi):
    assert angle_defect_total(mesh) == pytest.approx(2 * math.pi * chi, abs=1e-9)


def test_angle_defect_needs_closed_mesh():
    with pytest.raises(MeshError):
        angle_defect_total(flat_disk())


# --- diameter ----------------------------------------------------------------------


def test_diameter_simple():
    assert intrinsic_diameter(TRIANGLE) == pytest.approx(math.sqrt(2))
    assert intrinsic_diameter(flat_square(6)) == pytest.approx(math.sqrt(2), rel=1e-9)


def test_sphere_diameter(sphere3):
    d = intrinsic_diameter(sphere3)
    assert abs(d - math.pi) / math.pi < 0.05
    assert extrinsic_diameter(sphere3) == pytest.approx(2.0)


def test_diameter_rejects_disconnected():
    a = icosphere(0)
    b = icosphere(0).transformed(translation=[5, 0, 0])
    both = TriangulatedSurface(np.vstack([a.vertices, b.vertices]), np.vstack([a.faces, b.faces + a.n_vertices]))
    with pytest.raises(MeshError, match="2 components"):
        intrinsic_diameter(both)


# --- curvature ---------------------------------------------------------------------


def test_sphere_curvature(sphere3):
    curv = second_fundamental_form(sphere3)
    assert np.all(np.abs(curv.A2 - 2) < 0.1)
    assert np.all(np.abs(np.abs(curv.H) - 1) < 0.05)
    assert np.all(curv.H < 0)  # outward winding
    flipped = TriangulatedSurface(sphere3.vertices, sphere3.faces[:, ::-1])
    assert np.all(second_fundamental_form(flipped).H > 0)


def test_flat_curvature():
    mesh = flat_square(8)
    curv = second_fundamental_form(mesh)
    interior = np.setdiff1d(np.arange(mesh.n_vertices), mesh.boundary_vertices())
    assert np.abs(curv.A2[interior]).max() < 1e-6


def test_cylinder_curvature():
    mesh = cylinder(1.0, 2.0, 48, 24)
    curv = second_fundamental_form(mesh)
    z = mesh.vertices[:, 2]
    interior = np.abs(z) < 0.7
    assert np.all(np.abs(curv.A2[interior] - 1) < 0.05)
    assert np.all(np.abs(np.abs(curv.H[interior]) - 0.5) < 0.025)


# --- Jacobi spectrum -----------------------------------------------------------------


@pytest.mark.parametrize("level", [3, 4])
def test_sphere_index(sphere_spectra, level):
    spectrum = sphere_spectra[level]
    assert spectrum.index == 1
    assert spectrum.nullity == 3
    assert abs(spectrum.eigenvalues[0] + 2) / 2 < 0.02
    assert np.all(np.diff(spectrum.eigenvalues) >= 0)
    assert spectrum.index + spectrum.nullity <= len(spectrum.eigenvalues)


def test_disk_dirichlet_index(disk):
    spectrum = jacobi_spectrum(disk, "dirichlet", potential=np.zeros(disk.n_vertices))
    assert spectrum.index == 0
    assert spectrum.eigenvalues[0] > 0
    # first Dirichlet eigenvalue of the unit disk is j_{0,1}^2
    assert spectrum.eigenvalues[0] == pytest.approx(2.404825557695773**2, rel=0.03)


def test_closed_spectrum_needs_closed_mesh(disk):
    with pytest.raises(MeshError):
        jacobi_spectrum(disk, "closed")
    with pytest.raises(ValueError):
        jacobi_spectrum(disk, "neumann")


# --- invariance ---------------------------------------------------------------------


def test_rigid_motion_invariance():
    mesh = icosphere(2)
    rot = Rotation.from_euler("xyz", [0.3, -1.1, 2.0]).as_matrix()
    moved = mesh.transformed(rotation=rot, translation=[1.0, -2.0, 0.5])
    assert surface_area(moved) == pytest.approx(surface_area(mesh), abs=1e-9)
    assert intrinsic_diameter(moved) == pytest.approx(intrinsic_diameter(mesh), abs=1e-9)
    c0, c1 = second_fundamental_form(mesh), second_fundamental_form(moved)
    np.testing.assert_allclose(c1.A2, c0.A2, atol=1e-9)
    np.testing.assert_allclose(c1.H, c0.H, atol=1e-9)
    np.testing.assert_allclose(jacobi_spectrum(moved).eigenvalues, jacobi_spectrum(mesh).eigenvalues, atol=1e-9)


def test_scaling_behaviour():
    mesh = icosphere(2)
    s = 2.5
    big = mesh.transformed(scale=s)
    assert surface_area(big) == pytest.approx(s**2 * surface_area(mesh))
    assert intrinsic_diameter(big) == pytest.approx(s * intrinsic_diameter(mesh))
    c0, c1 = second_fundamental_form(mesh), second_fundamental_form(big)
    np.testing.assert_allclose(c1.A2, c0.A2 / s**2, rtol=1e-9)
    np.testing.assert_allclose(c1.H, c0.H / s, rtol=1e-9)
    assert jacobi_spectrum(big).index == jacobi_spectrum(mesh).index


# --- summary -----------------------------------------------------------------------


def test_summarize_sphere(bundled, sphere4):
    result = summarize(bundled["sphere"], refined=sphere4)
    s = result.summary
    assert (s.genus, s.index) == (0, 1)
    assert s.area == pytest.approx(4 * math.pi, rel=0.01)
    assert s.diameter == pytest.approx(math.pi, rel=0.05)
    assert s.H == pytest.approx(1.0, rel=0.01)
    assert result.cmc
    assert result.diagnostics["index_stable_under_refinement"]


def test_summarize_torus_not_cmc(bundled):
    result = summarize(bundled["torus"])
    assert not result.cmc
    assert result.summary.genus == 1


def test_summarize_rejects_open_mesh(disk):
    with pytest.raises(MeshError, match="closed"):
        summarize(disk)
