"""Tridiagonal systems and the Thomas algorithm."""

from dataclasses import dataclass

import numba
import numpy as np

from .errors import SolverError

PIVOT_FLOOR = 1e-14


@dataclass
class TridiagonalSystem:
    """Row ``i`` reads ``sub[i] u[i-1] + diag[i] u[i] + sup[i] u[i+1] = rhs[i]``.

    ``sub[0]`` and ``sup[-1]`` are the couplings to the fixed boundary values.
    They are kept for inspection (dominance checks) but their contribution is
    already part of ``rhs`` and the solver ignores them.  ``rhs`` may carry
    several right-hand sides as columns.
    """

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray

    def __len__(self):
        return self.diag.shape[0]

    def dominance_margin(self):
        """``diag - |sub| - |sup|`` per row."""
        return self.diag - np.abs(self.sub) - np.abs(self.sup)

    def to_dense(self):
        n = len(self)
        a = np.diag(self.diag)
        if n > 1:
            a += np.diag(self.sub[1:], -1) + np.diag(self.sup[:-1], 1)
        return a


@numba.njit(cache=True)
def _thomas(sub, diag, sup, rhs, floor):
    n, k = rhs.shape
    c = np.empty(n)
    d = np.empty((n, k))
    pivot = diag[0]
    if abs(pivot) < floor:
        return d, 0
    c[0] = sup[0] / pivot
    for col in range(k):
        d[0, col] = rhs[0, col] / pivot
    for i in range(1, n):
        pivot = diag[i] - sub[i] * c[i - 1]
        if abs(pivot) < floor:
            return d, i
        c[i] = sup[i] / pivot
        for col in range(k):
            d[i, col] = (rhs[i, col] - sub[i] * d[i - 1, col]) / pivot
    for i in range(n - 2, -1, -1):
        for col in range(k):
            d[i, col] -= c[i] * d[i + 1, col]
    return d, -1


def thomas_solve(system):
    """Solve a tridiagonal system by forward elimination and back substitution.

    Returns an array shaped like ``system.rhs``.

    Raises
    ------
    SolverError
        If a pivot magnitude drops below ``1e-14``.  Strictly diagonally
        dominant systems never trigger this.
    """
    rhs = np.asarray(system.rhs, dtype=float)
    flat = rhs.ndim == 1
    rhs2 = np.ascontiguousarray(rhs.reshape(rhs.shape[0], -1))
    sol, bad = _thomas(
        np.ascontiguousarray(system.sub, dtype=float),
        np.ascontiguousarray(system.diag, dtype=float),
        np.ascontiguousarray(system.sup, dtype=float),
        rhs2,
        PIVOT_FLOOR,
    )
    if bad >= 0:
        raise SolverError(f"vanishing pivot in row {bad}")
    return sol[:, 0] if flat else sol
