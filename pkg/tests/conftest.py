import math

import numpy as np
import pytest

from tritri.mesh import Mesh

# verdict lines recorded by the acceptance suite; echoed after the run
# (pytest's fd-level capture would otherwise swallow them on passing runs)
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


TETRA_OFF = """OFF
4 4 0
0 0 0
1 0 0
0 1 0
0 0 1
3 0 2 1
3 0 1 3
3 0 3 2
3 1 2 3
"""


@pytest.fixture
def tetra_off(tmp_path):
    path = tmp_path / "tetra.off"
    path.write_text(TETRA_OFF)
    return path


def uv_sphere(center, radius, n_theta=12, n_phi=18):
    """Triangulated UV sphere; coordinates snapped to floats as computed."""
    cx, cy, cz = center
    verts = [(cx, cy, cz + radius)]
    for it in range(1, n_theta):
        theta = math.pi * it / n_theta
        for ip in range(n_phi):
            phi = 2 * math.pi * ip / n_phi
            verts.append(
                (
                    cx + radius * math.sin(theta) * math.cos(phi),
                    cy + radius * math.sin(theta) * math.sin(phi),
                    cz + radius * math.cos(theta),
                )
            )
    verts.append((cx, cy, cz - radius))
    south = len(verts) - 1
    ring = lambda it: 1 + (it - 1) * n_phi
    faces = []
    for ip in range(n_phi):
        faces.append((0, ring(1) + ip, ring(1) + (ip + 1) % n_phi))
    for it in range(1, n_theta - 1):
        a, b = ring(it), ring(it + 1)
        for ip in range(n_phi):
            q = (ip + 1) % n_phi
            faces.append((a + ip, b + ip, b + q))
            faces.append((a + ip, b + q, a + q))
    for ip in range(n_phi):
        a = ring(n_theta - 1)
        faces.append((south, a + (ip + 1) % n_phi, a + ip))
    return verts, faces


def two_sphere_mesh(name="two_spheres"):
    """Two interpenetrating spheres as one mesh."""
    v0, f0 = uv_sphere((0.0, 0.0, 0.0), 1.0)
    v1, f1 = uv_sphere((1.0, 0.25, 0.125), 1.0)
    verts = v0 + v1
    faces = list(f0) + [(a + len(v0), b + len(v0), c + len(v0)) for a, b, c in f1]
    return Mesh(np.array(verts, float), np.array(faces, np.int64), name=name)


def write_off(path, mesh: Mesh):
    with open(path, "w") as fh:
        fh.write("OFF\n")
        fh.write(f"{len(mesh.vertices)} {len(mesh.faces)} 0\n")
        for v in mesh.vertices:
            fh.write(f"{v[0]!r} {v[1]!r} {v[2]!r}\n")
        for f in mesh.faces:
            fh.write(f"3 {f[0]} {f[1]} {f[2]}\n")


def perf_mesh(n_disjoint=80000, n_cross=10000):
    """Synthetic stress mesh: a 3D grid of isolated triangles plus
    n_cross cells each holding a mutually piercing triangle pair."""
    verts = []
    faces = []

    def add(tri):
        base = len(verts)
        verts.extend(tri)
        faces.append((base, base + 1, base + 2))

    side = int(np.ceil((n_disjoint + n_cross) ** (1.0 / 3.0)))
    cells = ((x, y, z) for x in range(side) for y in range(side) for z in range(side))
    for i in range(n_disjoint):
        cx, cy, cz = next(cells)
        o = np.array([4.0 * cx, 4.0 * cy, 4.0 * cz])
        add([tuple(o + d) for d in ((0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0))])
    for i in range(n_cross):
        cx, cy, cz = next(cells)
        o = np.array([4.0 * cx, 4.0 * cy, 4.0 * cz])
        add([tuple(o + d) for d in ((0.0, 0.0, 0.0), (2.0, 0.0, 0.0), (0.0, 2.0, 0.0))])
        add([tuple(o + d) for d in ((0.5, 0.5, -1.0), (0.5, 0.5, 1.0), (1.5, 1.5, 1.0))])
    return Mesh(np.array(verts), np.array(faces, np.int64), name="perf")
