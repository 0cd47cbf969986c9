"""Smoothing of noisy open plane curves by Lagrangian curve evolution."""

from .attraction import OriginalCurve, attraction_w, closest_vector, closest_vectors
from .curve import curvature, element_lengths, grid_normals, resample
from .errors import DegenerateCurveError, InputError, NumericalError, SolverError
from .evolution import Params, StopReason, evolve, mean_hausdorff, run_until_converged, step
from .pipeline import RunConfig, smooth_trajectory
from .tridiag import TridiagonalSystem, thomas_solve
from .velocity import SegmentTrack, SegmentTracker, compute_velocities

__all__ = [
    "DegenerateCurveError",
    "InputError",
    "NumericalError",
    "OriginalCurve",
    "Params",
    "RunConfig",
    "SegmentTrack",
    "SegmentTracker",
    "SolverError",
    "StopReason",
    "TridiagonalSystem",
    "attraction_w",
    "closest_vector",
    "closest_vectors",
    "compute_velocities",
    "curvature",
    "element_lengths",
    "evolve",
    "grid_normals",
    "mean_hausdorff",
    "resample",
    "run_until_converged",
    "smooth_trajectory",
    "step",
    "thomas_solve",
]
