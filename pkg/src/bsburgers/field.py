"""One time level of the solution as a cubic-spline coefficient vector."""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .basis import UniformGrid, cubic_local_weights
from .linsys import CollocationRows, CondensationRecord, condense_and_solve


class NodalTriple(NamedTuple):
    value: float
    d1: float
    d2: float


@dataclass(frozen=True, eq=False)
class CoefficientVector:
    """Amplitudes ``sigma[-1..m+1]`` stored at array positions ``0..m+2``."""

    values: np.ndarray
    grid: UniformGrid

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.count + 3,):
            raise ValueError(
                f"expected {self.grid.count + 3} coefficients, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("coefficients must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __getitem__(self, i):
        """Coefficient by its mathematical index (-1..m+1)."""
        return self.values[i + 1]

    def __add__(self, other):
        return CoefficientVector(self.values + other.values, self.grid)

    def __sub__(self, other):
        return CoefficientVector(self.values - other.values, self.grid)

    def __mul__(self, scalar):
        return CoefficientVector(scalar * self.values, self.grid)

    __rmul__ = __mul__

    @classmethod
    def zeros(cls, grid):
        return cls(np.zeros(grid.count + 3), grid)


def nodal_values(c):
    """Value, first and second derivative at every node 0..m, as arrays."""
    s = c.values
    h = c.grid.spacing
    left, mid, right = s[:-2], s[1:-1], s[2:]
    value = left + 4.0 * mid + right
    d1 = (3.0 / h) * (right - left)
    d2 = (6.0 / h**2) * (left - 2.0 * mid + right)
    return value, d1, d2


def eval_nodal(c, i):
    m = c.grid.count
    if not 0 <= i <= m:
        raise IndexError(f"node index {i} outside 0..{m}")
    h = c.grid.spacing
    lo, mid, hi = c[i - 1], c[i], c[i + 1]
    return NodalTriple(
        float(lo + 4 * mid + hi),
        float(3 / h * (hi - lo)),
        float(6 / h**2 * (lo - 2 * mid + hi)),
    )


def _eval_dense(c, x, order):
    grid = c.grid
    x = np.asarray(x, dtype=float)
    a, b = grid.origin, grid.end
    tol = 1e-12 * max(1.0, abs(a), abs(b))
    if np.any(x < a - tol) or np.any(x > b + tol):
        raise ValueError(f"evaluation point outside [{a}, {b}]")
    pos = (x - a) / grid.spacing
    cell = np.clip(np.floor(pos).astype(int), 0, grid.count - 1)
    u = pos - cell
    w = cubic_local_weights(u)[order]
    s = c.values
    # c[k-1] lives at array position k.
    out = w[0] * s[cell] + w[1] * s[cell + 1] + w[2] * s[cell + 2] + w[3] * s[cell + 3]
    out = out / grid.spacing**order
    return out if out.ndim else float(out)


def eval_at(c, x):
    """Spline value at arbitrary points of [a, b] (scalar or array)."""
    return _eval_dense(c, x, 0)


def eval_deriv_at(c, x, order=1):
    return _eval_dense(c, x, order)


def fit_initial(samples, d_left, d_right, grid):
    """Interpolate nodal samples with prescribed end slopes.

    Solves the (m+3)-square system: value rows at nodes 0..m plus the
    slope rows at both ends, with the ghosts eliminated first.
    """
    samples = np.asarray(samples, dtype=float)
    m = grid.count
    if samples.shape != (m + 1,):
        raise ValueError(f"expected {m + 1} samples, got shape {samples.shape}")
    if not (np.isfinite(d_left) and np.isfinite(d_right)):
        raise ValueError("end derivatives must be finite")
    ones = np.ones(m + 1)
    rows = CollocationRows(ones, 4.0 * ones, ones, samples)
    k = 3.0 / grid.spacing
    record = CondensationRecord((-k, 0.0, k), float(d_left), (-k, 0.0, k), float(d_right))
    return CoefficientVector(condense_and_solve(rows, record), grid)


def fd_end_slopes(samples, h):
    """Fourth-order one-sided difference slopes at both ends."""
    f = np.asarray(samples, dtype=float)
    w = np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / (12.0 * h)
    return float(w @ f[:5]), float(-(w @ f[::-1][:5]))
