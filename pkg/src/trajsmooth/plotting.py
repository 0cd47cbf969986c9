"""SVG figures: smoothing overlays and velocity arrows."""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402
from matplotlib import colors  # noqa: E402

# fixed salt and no timestamp keep the SVG text reproducible
matplotlib.rcParams["svg.hashsalt"] = "trajsmooth"
_SAVE = dict(format="svg", metadata={"Date": None}, bbox_inches="tight")


def _finish(fig, ax, path, title):
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    fig.savefig(path, **_SAVE)
    plt.close(fig)


def plot_smoothing(path, original, final, snapshots=(), title=None):
    """Original curve in red, intermediate and final curves in blue."""
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(original[:, 0], original[:, 1], color="red", lw=1.2, label="original")
    for pts in snapshots:
        ax.plot(pts[:, 0], pts[:, 1], color="tab:blue", lw=0.6, alpha=0.5)
    ax.plot(final[:, 0], final[:, 1], color="blue", lw=1.4, label="smoothed")
    ax.legend(loc="best")
    _finish(fig, ax, path, title)


def plot_velocity(path, original, points, field, title=None, cmap="viridis"):
    """Unit arrows along the evolved curve, coloured by speed."""
    fig, ax = plt.subplots(figsize=(8, 5))
    ax.plot(original[:, 0], original[:, 1], color="red", lw=1.0)
    ax.plot(points[:, 0], points[:, 1], color="0.3", lw=0.8)
    speed = field.speed
    lo, hi = float(speed.min()), float(speed.max())
    norm = colors.Normalize(vmin=lo, vmax=hi if hi > lo else lo + 1.0)
    with np.errstate(invalid="ignore", divide="ignore"):
        unit = field.vectors / np.where(speed > 0, speed, 1.0)[:, None]
    q = ax.quiver(points[1:, 0], points[1:, 1], unit[:, 0], unit[:, 1], speed, cmap=cmap, norm=norm, pivot="tip")
    fig.colorbar(q, ax=ax, label="speed")
    _finish(fig, ax, path, title)
