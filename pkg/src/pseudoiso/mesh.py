"""Quad meshes sampled from parameterised surfaces, with OBJ read/write."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import Vec3
from .surface import SurfaceJet, curvatures
from .errors import DegenerateMetric


def fmt(x: float) -> str:
    """Shortest round-trip text for a float, '.0' dropped, no negative zero."""
    x = float(x)
    if x == 0.0:
        return "0"
    s = repr(x)
    return s[:-2] if s.endswith(".0") else s


@dataclass
class Mesh:
    vertices: list[Vec3]
    quads: list[tuple[int, int, int, int]]  # 0-based
    attributes: dict[str, list[float]] = field(default_factory=dict)
    shape: tuple[int, int] = (0, 0)

    def __post_init__(self):
        n = len(self.vertices)
        for q in self.quads:
            if not all(0 <= i < n for i in q):
                raise ValueError(f"face {q} indexes outside {n} vertices")

    def as_grid(self) -> np.ndarray:
        """Vertices as an array of shape (rows, cols, 3)."""
        return np.array([tuple(v) for v in self.vertices]).reshape(*self.shape, 3)


def sample_mesh(sj: SurfaceJet, grid=(50, 50), with_curvatures=True) -> Mesh:
    """Sample ``sj`` on a uniform grid over its parameter domain.

    Vertices run over u fastest-outer, v inner; vertex (i, j) has index
    ``i * grid[1] + j``. Curvature attributes are NaN where the metric
    degenerates.
    """
    (u0, u1), (v0, v1) = sj.param_domain
    nu, nv = grid
    us, vs = np.linspace(u0, u1, nu), np.linspace(v0, v1, nv)
    verts, Ks, Hs = [], [], []
    for u in us:
        for v in vs:
            verts.append(sj.point(u, v))
            if with_curvatures:
                try:
                    K, H = curvatures(sj, (u, v))
                except DegenerateMetric:
                    K = H = float("nan")
                Ks.append(K)
                Hs.append(H)
    quads = [
        (i * nv + j, (i + 1) * nv + j, (i + 1) * nv + j + 1, i * nv + j + 1)
        for i in range(nu - 1)
        for j in range(nv - 1)
    ]
    attrs = {"K": Ks, "H": Hs} if with_curvatures else {}
    return Mesh(verts, quads, attrs, (nu, nv))


def obj_text(mesh: Mesh) -> str:
    lines = [f"v {fmt(p.x1)} {fmt(p.x2)} {fmt(p.x3)}" for p in mesh.vertices]
    lines += ["f " + " ".join(str(i + 1) for i in q) for q in mesh.quads]
    return "\n".join(lines) + "\n"


def write_obj(mesh: Mesh, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(obj_text(mesh))


def read_obj(path) -> Mesh:
    verts, faces = [], []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            parts = line.split()
            if not parts or parts[0].startswith("#"):
                continue
            if parts[0] == "v":
                verts.append(Vec3(*map(float, parts[1:4])))
            elif parts[0] == "f":
                faces.append(tuple(int(p.split("/")[0]) - 1 for p in parts[1:]))
    return Mesh(verts, faces)
