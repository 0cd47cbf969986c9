"""Attraction of evolving grid points back to the original curve."""

import enum
from dataclasses import dataclass

import numpy as np

from .curve import as_points, element_lengths

#: Slack on the foot parameter when testing membership of [0, 1].
FOOT_TOL = 1e-12


class Source(enum.Enum):
    PERPENDICULAR_FOOT = "perpendicular_foot"
    NEAREST_VERTEX = "nearest_vertex"


@dataclass(frozen=True)
class AttractionResult:
    vector: np.ndarray
    distance: float
    source: Source
    element: int  # 1-based element of the foot, or vertex index for NEAREST_VERTEX


class OriginalCurve:
    """Immutable copy of the time-zero polyline with precomputed elements."""

    def __init__(self, vertices):
        v = as_points(vertices, min_points=2)
        self.lengths = element_lengths(v)
        self.vertices = v
        self.starts = v[:-1]
        self.directions = np.diff(v, axis=0)
        self.length_sq = self.lengths**2
        span = v.max(axis=0) - v.min(axis=0)
        #: Search cap for the perpendicular feet: twice the bounding box diagonal.
        self.search_cap = 2.0 * float(np.hypot(*span)) or 1.0
        for arr in (self.vertices, self.directions, self.lengths, self.length_sq):
            arr.flags.writeable = False

    @property
    def length(self):
        return float(self.lengths.sum())

    def __len__(self):
        return self.vertices.shape[0]


def closest_vectors(orig, points, cap=None):
    """Vectors from every query point to its nearest point on ``orig``.

    Each element of ``orig`` is tried in turn: the perpendicular foot of the
    query on the element's supporting line is a candidate if it falls inside
    the closed element and is nearer than ``cap``.  The original vertices
    are candidates as well, which covers queries that face a convex corner.
    The nearest candidate wins; ties go to feet, then to the lowest index.

    Returns
    -------
    vectors : ndarray, shape (q, 2)
        ``x0 - p`` for every query ``p``.
    distances : ndarray, shape (q,)
    from_foot : ndarray of bool, shape (q,)
    index : ndarray of int, shape (q,)
        1-based element of the winning foot, or 0-based vertex index.
    """
    p = np.asarray(points, dtype=float).reshape(-1, 2)
    if cap is None:
        cap = orig.search_cap

    rel = p[:, None, :] - orig.starts[None, :, :]
    t = np.einsum("qek,ek->qe", rel, orig.directions) / orig.length_sq
    feet = orig.starts[None, :, :] + t[..., None] * orig.directions[None, :, :]
    foot_vec = feet - p[:, None, :]
    foot_dist = np.hypot(foot_vec[..., 0], foot_vec[..., 1])
    ok = (t >= -FOOT_TOL) & (t <= 1.0 + FOOT_TOL) & (foot_dist < cap)
    foot_dist = np.where(ok, foot_dist, np.inf)
    jf = np.argmin(foot_dist, axis=1)

    vert_vec = orig.vertices[None, :, :] - p[:, None, :]
    vert_dist = np.hypot(vert_vec[..., 0], vert_vec[..., 1])
    jv = np.argmin(vert_dist, axis=1)

    rows = np.arange(p.shape[0])
    best_foot = foot_dist[rows, jf]
    best_vert = vert_dist[rows, jv]
    from_foot = best_foot <= best_vert
    vectors = np.where(from_foot[:, None], foot_vec[rows, jf], vert_vec[rows, jv])
    distances = np.where(from_foot, best_foot, best_vert)
    index = np.where(from_foot, jf + 1, jv)
    return vectors, distances, from_foot, index


def closest_vector(orig, p, cap=None):
    """Single-point version of :func:`closest_vectors`."""
    vectors, distances, from_foot, index = closest_vectors(orig, np.asarray(p, dtype=float)[None, :], cap)
    source = Source.PERPENDICULAR_FOOT if from_foot[0] else Source.NEAREST_VERTEX
    return AttractionResult(vectors[0].copy(), float(distances[0]), source, int(index[0]))


def attraction_w(orig, points, normals, cap=None):
    """Normal component ``w_i = (x0 - x_i) . N_i`` at the interior grid points."""
    points = np.asarray(points, dtype=float)
    vectors = closest_vectors(orig, points[1:-1], cap)[0]
    return np.einsum("ij,ij->i", vectors, normals)
