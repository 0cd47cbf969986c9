"""Discrete open plane curves and their local geometry.

A curve is stored as a float array of shape ``(n + 2, 2)`` holding the grid
points ``x_0 .. x_{n+1}``.  Element ``i`` (1-based, ``i = 1 .. n + 1``) joins
``x_{i-1}`` and ``x_i`` and lives at array index ``i - 1`` of every
per-element array returned here.  Interior grid points ``1 .. n`` are the
unknowns of the evolution; the two endpoints never move.

Normals follow the convention ``N = T^perp`` with ``(a, b)^perp = (b, -a)``,
so that ``T ^ N = -1`` and a curve turning left has positive curvature.
"""

from typing import NamedTuple

import numpy as np

from .errors import DegenerateCurveError, InputError

#: Relative element length below which a curve is considered degenerate.
H_FLOOR_FACTOR = 1e-12


def as_points(points, min_points=3):
    """Return ``points`` as a fresh ``(m, 2)`` float array, validating shape."""
    arr = np.array(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise InputError(f"expected an (m, 2) array of points, got shape {arr.shape}")
    if arr.shape[0] < min_points:
        raise InputError(f"need at least {min_points} points, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise InputError("point coordinates must be finite")
    return arr


def perp(v):
    """Rotate vectors by -90 degrees: ``(a, b) -> (b, -a)``."""
    v = np.asarray(v, dtype=float)
    out = np.empty_like(v)
    out[..., 0] = v[..., 1]
    out[..., 1] = -v[..., 0]
    return out


def cross(a, b):
    """Scalar 2D cross product ``a ^ b``."""
    return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]


def element_vectors(points):
    return np.diff(points, axis=0)


def element_lengths(points, floor=None):
    """Lengths ``h_i = |x_i - x_{i-1}|`` of all elements.

    Parameters
    ----------
    points : array_like, shape (m, 2)
    floor : float, optional
        Minimal admissible element length.  Defaults to ``1e-12`` times the
        total length of ``points``.

    Raises
    ------
    DegenerateCurveError
        If any element is shorter than ``floor``.
    """
    d = element_vectors(np.asarray(points, dtype=float))
    h = np.hypot(d[:, 0], d[:, 1])
    if floor is None:
        floor = H_FLOOR_FACTOR * h.sum()
    bad = np.flatnonzero(~(h >= floor) | (h == 0.0))
    if bad.size:
        i = int(bad[0]) + 1
        raise DegenerateCurveError(f"element {i} has length {h[i - 1]:.3e} (floor {floor:.3e})")
    return h


def total_length(points):
    return float(element_lengths(points, floor=0.0).sum()) if len(points) > 1 else 0.0


def _turning_angle(a, b):
    # atan2 form of arccos(a.b / |a||b|): same angle, no loss of precision near 0,
    # and the argument can never leave the domain.
    return np.arctan2(np.abs(cross(a, b)), np.einsum("ij,ij->i", a, b))


def curvature(points, h=None):
    """Signed curvature per element.

    Interior elements ``i = 2 .. n`` use the turning angle between the
    neighbouring elements ``h_{i-1}`` and ``h_{i+1}`` spread over ``2 h_i``;
    the first and last element copy their neighbour.  A curve with only two
    elements gets the vertex turning angle over the mean element length, and
    a single element is straight.
    """
    points = np.asarray(points, dtype=float)
    d = element_vectors(points)
    if h is None:
        h = element_lengths(points)
    n_el = d.shape[0]
    if n_el == 1:
        return np.zeros(1)
    if n_el == 2:
        theta = _turning_angle(d[:1], d[1:])[0]
        k = np.sign(cross(d[0], d[1])) * 2.0 * theta / (h[0] + h[1])
        return np.array([k, k])

    before, after = d[:-2], d[2:]
    k = np.empty(n_el)
    k[1:-1] = np.sign(cross(before, after)) * _turning_angle(before, after) / (2.0 * h[1:-1])
    k[0] = k[1]
    k[-1] = k[-2]
    return k


def grid_normals(points, h=None):
    """Unit normals at the interior grid points ``1 .. n``.

    The normal at ``x_i`` is the perpendicular of the chord
    ``(x_{i+1} - x_{i-1}) / (h_i + h_{i+1})``, normalised to unit length.
    """
    points = np.asarray(points, dtype=float)
    if h is None:
        h = element_lengths(points)
    chord = (points[2:] - points[:-2]) / (h[:-1] + h[1:])[:, None]
    norm = np.hypot(chord[:, 0], chord[:, 1])
    folded = np.flatnonzero(norm == 0.0)
    if folded.size:
        raise DegenerateCurveError(f"curve folds back on itself at grid point {int(folded[0]) + 1}")
    return perp(chord / norm[:, None])


class SegmentSeed(NamedTuple):
    """Where the raw trajectory vertices ended up after resampling."""

    indices: np.ndarray  # grid index of every raw vertex, I(u_0) .. I(u_{M-1})
    lengths: np.ndarray  # raw segment lengths L_j^0, j = 1 .. M-1


def default_spacing(raw):
    """Median raw segment length divided by four."""
    raw = np.asarray(raw, dtype=float)
    seg = np.hypot(*np.diff(raw, axis=0).T)
    return float(np.median(seg)) / 4.0


def resample(raw, target_spacing=None):
    """Subdivide every raw segment into equal sub-elements.

    Segment ``j`` of length ``len_j`` receives ``ceil(len_j / target_spacing)``
    elements.  Raw vertices are kept bit-exactly as grid points.

    Returns
    -------
    points : ndarray, shape (n + 2, 2)
    seed : SegmentSeed
    """
    raw = as_points(raw, min_points=2)
    seg = np.diff(raw, axis=0)
    lengths = np.hypot(seg[:, 0], seg[:, 1])
    dup = np.flatnonzero(lengths == 0.0)
    if dup.size:
        raise InputError(f"raw points {int(dup[0])} and {int(dup[0]) + 1} coincide; deduplicate first")
    if target_spacing is None:
        target_spacing = default_spacing(raw)
    if not target_spacing > 0:
        raise InputError("target spacing must be positive")

    counts = np.maximum(np.ceil(lengths / target_spacing).astype(int), 1)
    pieces = []
    for j, m in enumerate(counts):
        t = np.arange(m) / m
        pieces.append(raw[j] + t[:, None] * seg[j])
        pieces[-1][0] = raw[j]
    pieces.append(raw[-1:])
    points = np.concatenate(pieces)
    indices = np.concatenate([[0], np.cumsum(counts)])
    return points, SegmentSeed(indices=indices, lengths=lengths)
