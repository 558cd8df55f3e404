"""Tridiagonal solves and elimination of the two ghost coefficients."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-14


class SingularSystemError(ArithmeticError):
    """A zero pivot was met during elimination."""

    def __init__(self, row, pivot):
        super().__init__(f"zero pivot {pivot!r} in row {row}")
        self.row = row
        self.pivot = pivot


@dataclass(frozen=True)
class TridiagonalSystem:
    """``sub[k-1]*z[k-1] + diag[k]*z[k] + sup[k]*z[k+1] = rhs[k]``."""

    sub: np.ndarray
    diag: np.ndarray
    sup: np.ndarray
    rhs: np.ndarray

    def __post_init__(self):
        n = len(self.diag)
        if n < 1 or len(self.rhs) != n or len(self.sub) != n - 1 or len(self.sup) != n - 1:
            raise ValueError(
                f"inconsistent lengths sub={len(self.sub)} diag={n} "
                f"sup={len(self.sup)} rhs={len(self.rhs)}"
            )

    def matvec(self, z):
        z = np.asarray(z, dtype=float)
        out = np.asarray(self.diag, dtype=float) * z
        out[1:] += np.asarray(self.sub, dtype=float) * z[:-1]
        out[:-1] += np.asarray(self.sup, dtype=float) * z[1:]
        return out


@dataclass(frozen=True)
class CollocationRows:
    """One row per node 0..m acting on coefficients -1..m+1.

    Row ``i`` reads ``lower[i]*s[i-1] + diag[i]*s[i] + upper[i]*s[i+1] = rhs[i]``,
    so ``lower[0]`` and ``upper[-1]`` multiply the ghost coefficients.
    """

    lower: np.ndarray
    diag: np.ndarray
    upper: np.ndarray
    rhs: np.ndarray

    def residual(self, coeffs):
        s = np.asarray(coeffs, dtype=float)
        return self.lower * s[:-2] + self.diag * s[1:-1] + self.upper * s[2:] - self.rhs


@dataclass(frozen=True)
class CondensationRecord:
    """The two extra rows that close the system.

    ``left = (g, p, q)`` reads ``g*s[-1] + p*s[0] + q*s[1] = left_value``;
    ``right = (p, q, g)`` reads ``p*s[m-1] + q*s[m] + g*s[m+1] = right_value``.
    """

    left: tuple
    left_value: float
    right: tuple
    right_value: float

    def __post_init__(self):
        if self.left[0] == 0 or self.right[2] == 0:
            raise ValueError("ghost coefficient of a boundary row must be nonzero")


def thomas_solve(system):
    """Solve a tridiagonal system by forward elimination and back substitution.

    No pivoting; a pivot smaller than ``PIVOT_TOL`` times the row scale
    raises :class:`SingularSystemError`.
    """
    sub = np.asarray(system.sub, dtype=float)
    diag = np.asarray(system.diag, dtype=float)
    sup = np.asarray(system.sup, dtype=float)
    n = len(diag)
    scale = np.abs(diag)
    if n > 1:
        scale[1:] = np.maximum(scale[1:], np.abs(sub))
        scale[:-1] = np.maximum(scale[:-1], np.abs(sup))
    limit = (PIVOT_TOL * scale).tolist()
    a = [0.0] + sub.tolist()
    b = diag.tolist()
    c = sup.tolist() + [0.0]
    d = np.asarray(system.rhs, dtype=float).tolist()

    cp = [0.0] * n
    dp = [0.0] * n
    c_prev = d_prev = 0.0
    for k in range(n):
        lo = a[k]
        pivot = b[k] - lo * c_prev
        if abs(pivot) <= limit[k] or pivot == 0.0:
            raise SingularSystemError(k, pivot)
        c_prev = cp[k] = c[k] / pivot
        d_prev = dp[k] = (d[k] - lo * d_prev) / pivot

    z = [0.0] * n
    z[-1] = dp[-1]
    for k in range(n - 2, -1, -1):
        z[k] = dp[k] - cp[k] * z[k + 1]
    return np.array(z)


def condense(rows, record):
    """Eliminate the ghosts, returning the (m+1)-square tridiagonal system."""
    diag = np.array(rows.diag, dtype=float)
    sub = np.array(rows.lower[1:], dtype=float)
    sup = np.array(rows.upper[:-1], dtype=float)
    rhs = np.array(rows.rhs, dtype=float)

    g, p, q = record.left
    w = rows.lower[0] / g
    diag[0] -= w * p
    sup[0] -= w * q
    rhs[0] -= w * record.left_value

    p, q, g = record.right
    w = rows.upper[-1] / g
    sub[-1] -= w * p
    diag[-1] -= w * q
    rhs[-1] -= w * record.right_value
    return TridiagonalSystem(sub, diag, sup, rhs)


def condense_and_solve(rows, record):
    """Solve rows 0..m plus the two boundary rows for coefficients -1..m+1."""
    inner = thomas_solve(condense(rows, record))
    g, p, q = record.left
    left_ghost = (record.left_value - p * inner[0] - q * inner[1]) / g
    p, q, g = record.right
    right_ghost = (record.right_value - p * inner[-2] - q * inner[-1]) / g
    return np.concatenate(([left_ghost], inner, [right_ghost]))
