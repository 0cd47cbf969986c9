"""Synthetic test curves and trajectories."""

import numpy as np


def sine_curve(n=200, amplitude=0.2, waves=2.0):
    """``y = amplitude * sin(2 pi waves x)`` on ``[0, 1]`` with ``n`` interior points."""
    x = np.linspace(0.0, 1.0, n + 2)
    return np.column_stack([x, amplitude * np.sin(2.0 * np.pi * waves * x)])


def semi_ellipse(a=1.0, b=0.5, segments=9):
    """Half ellipse from ``(0, -b)`` through the apex ``(a, 0)`` to ``(0, b)``.

    Vertices are equally spaced in the angle parameter, so the short segments
    sit around the apex where the curvature ``a / b**2`` is largest.
    """
    theta = np.linspace(-0.5 * np.pi, 0.5 * np.pi, segments + 1)
    pts = np.column_stack([a * np.cos(theta), b * np.sin(theta)])
    pts[0] = (0.0, -b)
    pts[-1] = (0.0, b)
    return pts


def geometric_line(n_elements=50, ratio=3.0):
    """Points on ``[0, 1] x {0}`` whose spacing grows geometrically.

    The longest element is ``ratio`` times the shortest.
    """
    q = ratio ** (1.0 / (n_elements - 1))
    h = q ** np.arange(n_elements)
    x = np.concatenate([[0.0], np.cumsum(h)]) / h.sum()
    x[-1] = 1.0
    return np.column_stack([x, np.zeros_like(x)])


def noisy_trajectory(seed=0, n_straight=12, n_noisy=12, step=0.03, noise=0.02):
    """Directed motion, a random-walk episode, then directed motion again.

    Returns the raw frame positions, shape ``(2 * n_straight + n_noisy + 1, 2)``,
    and the slice of segment indices that belongs to the noisy episode.
    """
    rng = np.random.default_rng(seed)
    moves = [np.tile([step, 0.0], (n_straight, 1))]
    moves.append(rng.normal(0.0, noise, size=(n_noisy, 2)) + [0.2 * step, 0.0])
    heading = np.array([np.cos(0.6), np.sin(0.6)]) * step
    moves.append(np.tile(heading, (n_straight, 1)))
    moves = np.concatenate(moves)
    moves[:n_straight, 1] += rng.normal(0.0, 0.05 * step, size=n_straight)
    moves[-n_straight:] += rng.normal(0.0, 0.05 * step, size=(n_straight, 2))
    pts = np.concatenate([[[0.0, 0.0]], np.cumsum(moves, axis=0)])
    return pts, slice(n_straight, n_straight + n_noisy)
