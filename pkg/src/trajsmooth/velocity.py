"""Velocity reconstruction on the smoothed curve.

Every segment of the raw trajectory spans one frame interval.  Its length is
tracked under the evolution as if there were no tangential motion, the
segment endpoints are relocated on the evolved grid from the tracked
lengths, and each grid element inherits the speed of the segment it falls
into.  Segments that shrink below the smallest element disappear and hand
their time over to their surviving neighbours.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .curve import _turning_angle, cross, element_lengths
from .errors import RemapError

#: Relative tolerance of the equality branch in the endpoint walk.
EQUALITY_TOL = 1e-12


@dataclass
class SegmentTrack:
    """Bookkeeping for the ``M - 1`` raw segments.

    Attributes
    ----------
    lengths : tracked lengths ``L_j``
    original : raw lengths ``L_j^0``
    indices : grid index of every segment endpoint, ``I(u_0) .. I(u_{M-1})``
    dt : time budget per segment
    alive : segment still has positive length
    discrete : lengths rescaled to the current curve length, ``L_j^d``
    """

    lengths: np.ndarray
    original: np.ndarray
    indices: np.ndarray
    dt: np.ndarray
    alive: np.ndarray
    discrete: np.ndarray

    @classmethod
    def from_seed(cls, seed, dt=1.0):
        lengths = np.array(seed.lengths, dtype=float)
        dt = np.broadcast_to(np.asarray(dt, dtype=float), lengths.shape).copy()
        return cls(
            lengths=lengths.copy(),
            original=lengths.copy(),
            indices=np.array(seed.indices, dtype=np.int64),
            dt=dt,
            alive=np.ones(lengths.shape, dtype=bool),
            discrete=lengths.copy(),
        )

    @property
    def n_segments(self):
        return self.lengths.shape[0]

    def element_counts(self):
        return np.diff(self.indices)

    def segment_of_element(self):
        """Segment index (0-based) of every grid element."""
        return np.repeat(np.arange(self.n_segments), self.element_counts())


def segment_curvature(points, h, track):
    """Element curvature computed segment by segment.

    Inside a segment the usual turning-angle formula applies.  The first and
    last element of a segment copy their inner neighbour, a two-element
    segment uses the turning angle at its middle vertex, and a one-element
    segment is straight, so no value depends on a neighbouring segment.
    """
    d = np.diff(points, axis=0)
    n_el = d.shape[0]
    k_inner = np.zeros(n_el)
    if n_el >= 3:
        before, after = d[:-2], d[2:]
        k_inner[1:-1] = np.sign(cross(before, after)) * _turning_angle(before, after) / (2.0 * h[1:-1])
    k_vertex = np.zeros(n_el + 1)
    if n_el >= 2:
        theta = _turning_angle(d[:-1], d[1:])
        k_vertex[1:-1] = np.sign(cross(d[:-1], d[1:])) * 2.0 * theta / (h[:-1] + h[1:])

    counts = track.element_counts()
    starts = track.indices[:-1]
    k = k_inner.copy()
    for c in (1, 2):
        s = starts[counts == c]
        if c == 1:
            k[s] = 0.0
        else:
            k[s] = k[s + 1] = k_vertex[s + 1]
    s = starts[counts >= 3]
    e = track.indices[1:][counts >= 3] - 1
    k[s] = k_inner[s + 1]
    k[e] = k_inner[e - 1]
    return k


def segment_length_update(track, points, h, w, params):
    """Advance every alive ``L_j`` by ``tau * sum(h_i k_i beta_i)`` over its elements.

    ``w`` is the attraction at the interior grid points of ``points``.
    """
    points = np.asarray(points, dtype=float)
    k = segment_curvature(points, h, track)
    w_el = np.zeros(h.shape[0])
    w_el[:-1] = w  # element i pairs with grid point i; w vanishes at the last endpoint
    beta = -params.delta * k + params.lam * w_el
    rate = np.bincount(track.segment_of_element(), weights=h * k * beta, minlength=track.n_segments)
    new = np.where(track.alive, track.lengths + params.tau * rate, 0.0)
    track.lengths = new
    return new


def disappearance_check(track, h):
    """Kill every alive segment shorter than the smallest element.

    Returns the mask of segments that died in this call.
    """
    h_min = float(np.min(h))
    died = track.alive & (track.lengths < h_min)
    track.lengths[died] = 0.0
    track.alive[died] = False
    return died


def redistribute_dt(track):
    """Hand the time of dead segments to their nearest alive neighbours.

    Dead segments still holding time are processed in increasing order; half
    goes to the nearest alive predecessor and half to the nearest alive
    successor, or everything to the one side that exists.
    """
    alive_idx = np.flatnonzero(track.alive)
    if alive_idx.size == 0:
        raise RemapError("no alive segment left")
    for j in np.flatnonzero(~track.alive & (track.dt != 0.0)):
        pos = np.searchsorted(alive_idx, j)
        prev = alive_idx[pos - 1] if pos > 0 else None
        nxt = alive_idx[pos] if pos < alive_idx.size else None
        share = track.dt[j]
        if prev is not None and nxt is not None:
            track.dt[prev] += 0.5 * share
            track.dt[nxt] += 0.5 * share
        else:
            track.dt[prev if prev is not None else nxt] += share
        track.dt[j] = 0.0
    return track.dt


def remap_indices(track, h, total_length):
    """Relocate segment endpoints on the current grid.

    Tracked lengths are rescaled to the curve length, ``L_j^d = L_j / sum(L)
    * L``, and the cumulative element length is walked until it reaches the
    cumulative segment length: endpoint ``j`` lands on element ``i`` when
    the walk hits it exactly, else on ``i - 1``.  Dead segments collapse onto
    their predecessor's endpoint, and every alive segment keeps at least one
    element.
    """
    h = np.asarray(h, dtype=float)
    n_el = h.shape[0]
    tracked = track.lengths.sum()
    if not tracked > 0:
        raise RemapError("tracked segment lengths sum to zero")
    discrete = track.lengths / tracked * total_length
    targets = np.cumsum(discrete)
    walked = np.cumsum(h)
    if abs(targets[-1] - walked[-1]) > 1e-9 * total_length:
        raise RemapError(f"walk ended at {walked[-1]!r} before reaching {targets[-1]!r}")
    raw = np.searchsorted(walked, targets + EQUALITY_TOL * total_length, side="right")

    alive = track.alive
    alive_after = alive[::-1].cumsum()[::-1] - alive
    if alive.sum() > n_el:
        raise RemapError(f"{int(alive.sum())} alive segments do not fit on {n_el} elements")
    indices = np.empty(track.n_segments + 1, dtype=np.int64)
    indices[0] = 0
    for j in range(track.n_segments):
        if not alive[j]:
            indices[j + 1] = indices[j]
        elif alive_after[j] == 0:
            indices[j + 1] = n_el
        else:
            lo = indices[j] + 1
            hi = n_el - alive_after[j]
            indices[j + 1] = min(max(raw[j], lo), hi)
    track.indices = indices
    track.discrete = discrete
    return indices


@dataclass
class VelocityField:
    """Per-element velocity on the evolved curve.

    Row ``e`` belongs to element ``e + 1``, i.e. to grid point ``x_{e+1}``.
    """

    vectors: np.ndarray
    speed: np.ndarray
    segment: np.ndarray


def compute_velocities(track, points):
    """Speed ``L_j^d / dt_j`` for every element of alive segment ``j``."""
    points = np.asarray(points, dtype=float)
    d = np.diff(points, axis=0)
    seg = track.segment_of_element()
    with np.errstate(divide="ignore", invalid="ignore"):
        seg_speed = np.where(track.alive, track.discrete / track.dt, 0.0)
    speed = seg_speed[seg]
    unit = d / np.hypot(d[:, 0], d[:, 1])[:, None]
    return VelocityField(vectors=speed[:, None] * unit, speed=speed, segment=seg)


class SegmentTracker:
    """Evolution observer that keeps a :class:`SegmentTrack` up to date."""

    def __init__(self, seed, params, dt=1.0):
        self.track = SegmentTrack.from_seed(seed, dt)
        self.params = params
        self.total_dt = float(self.track.dt.sum())
        self._warned = False

    def __call__(self, m, points, fields, new_points):
        track = self.track
        before = track.lengths.copy()
        segment_length_update(track, points, fields.h, fields.w, self.params)
        if self.params.lam > 0 and not self._warned and np.any(track.lengths > before + 1e-12 * track.original):
            self._warned = True
            warnings.warn(f"segment length grew at step {m + 1}", RuntimeWarning, stacklevel=2)
        h = element_lengths(new_points, floor=0.0)
        if np.any(disappearance_check(track, h)):
            redistribute_dt(track)
        remap_indices(track, h, float(h.sum()))

    def velocities(self, points):
        return compute_velocities(self.track, points)
