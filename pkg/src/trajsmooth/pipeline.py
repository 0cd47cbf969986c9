"""Resample, smooth and (optionally) track segments for one trajectory."""

import dataclasses
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .attraction import OriginalCurve
from .curve import resample
from .evolution import Params, evolve, run_until_converged
from .velocity import SegmentTracker


@dataclass
class RunConfig:
    params: Params = field(default_factory=Params)
    spacing: Optional[float] = None  # None: median raw segment / 4
    dt: float = 1.0  # time units per frame
    steps: Optional[int] = None  # fixed step count instead of the stopping test
    stride: int = 0  # keep every stride-th curve for plots; 0 keeps none
    relative_epsilon: bool = False  # scale epsilon by the bounding-box diagonal


@dataclass
class Outcome:
    raw: np.ndarray
    original: np.ndarray
    result: object
    snapshots: list
    tracker: Optional[SegmentTracker] = None

    @property
    def points(self):
        return self.result.points

    def velocities(self):
        return self.tracker.velocities(self.result.points)


class _Snapshots:
    def __init__(self, stride):
        self.stride = stride
        self.curves = []

    def __call__(self, m, points, fields, new_points):
        if (m + 1) % self.stride == 0:
            self.curves.append(new_points.copy())


def smooth_trajectory(raw, config, frames=None, track_velocity=False):
    """Smooth one raw trajectory.

    ``frames`` sets the time budget of each raw segment to
    ``dt * (frames[j] - frames[j-1])``; without it every segment spans one
    frame.
    """
    raw = np.asarray(raw, dtype=float)
    params = config.params
    if config.relative_epsilon:
        diag = float(np.hypot(*(raw.max(axis=0) - raw.min(axis=0))))
        params = dataclasses.replace(params, epsilon=params.epsilon * diag)

    points, seed = resample(raw, config.spacing)
    orig = OriginalCurve(points)

    observers = []
    snaps = None
    if config.stride > 0:
        snaps = _Snapshots(config.stride)
        observers.append(snaps)
    tracker = None
    if track_velocity:
        dt = config.dt if frames is None else config.dt * np.diff(np.asarray(frames, dtype=float))
        tracker = SegmentTracker(seed, params, dt=dt)
        observers.append(tracker)

    def observer(*args):
        for obs in observers:
            obs(*args)

    if config.steps is None:
        result = run_until_converged(points, orig, params, observer=observer if observers else None)
    else:
        result = evolve(points, orig, params, config.steps, observer=observer if observers else None)
    return Outcome(
        raw=raw,
        original=points,
        result=result,
        snapshots=snaps.curves if snaps else [],
        tracker=tracker,
    )
