"""Static figures written to files (no interactive backends)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib import cm, colors  # noqa: E402

FIGSIZE = (6.0, 5.0)
DPI = 120


def _axes3d():
    fig = plt.figure(figsize=FIGSIZE)
    ax = fig.add_subplot(projection="3d")
    ax.set_xlabel("x")
    ax.set_ylabel("y")
    ax.set_zlabel("z")
    return fig, ax


def plot_curve(points, path, title=""):
    """Space curve from an (n, 3) array of samples."""
    pts = np.asarray(points)
    fig, ax = _axes3d()
    ax.plot(pts[:, 0], pts[:, 1], pts[:, 2], lw=1.5, color="tab:blue")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)


def plot_surface(mesh, path, color_by="H", title=""):
    """Surface from a sampled mesh, faces coloured by a vertex attribute."""
    grid = mesh.as_grid()
    fig, ax = _axes3d()
    values = mesh.attributes.get(color_by)
    kw = {}
    if values:
        vals = np.asarray(values, dtype=float).reshape(mesh.shape)
        lo, hi = np.nanmin(vals), np.nanmax(vals)
        if hi - lo < 1e-9:
            # constant fields: widen the range so the colormap stays mid-scale
            lo, hi = lo - 1.0, hi + 1.0
        norm = colors.Normalize(lo, hi)
        kw["facecolors"] = cm.viridis(norm(vals))
        fig.colorbar(cm.ScalarMappable(norm=norm, cmap="viridis"), ax=ax, shrink=0.6, label=color_by)
    ax.plot_surface(grid[..., 0], grid[..., 1], grid[..., 2], linewidth=0, antialiased=False,
                    shade=False, **kw)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=DPI)
    plt.close(fig)
