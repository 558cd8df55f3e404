"""Quadratic (time) and cubic (space) B-splines on uniform grids.

Both families use the unnormalised scaling in which the nodal stencils
are integers: a quadratic takes the values 1, 1 at its two interior
knots and a cubic takes 1, 4, 1 at its three.

The scalar functions use plain arithmetic only, so they accept
``fractions.Fraction`` arguments and return exact rationals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np


@dataclass(frozen=True)
class UniformGrid:
    """Equally spaced knots ``origin + k * spacing``.

    ``count`` is the index of the last physical knot (n for time, m for
    space); ``ghost_count`` knots are added on each side.
    """

    origin: float
    spacing: float
    count: int
    ghost_count: int = 3

    def __post_init__(self):
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing!r}")
        if self.count < 2:
            raise ValueError(f"count must be at least 2, got {self.count!r}")

    def node(self, k):
        return self.origin + k * self.spacing

    @property
    def end(self):
        return self.node(self.count)

    def nodes(self):
        """Physical knots 0..count as a float array."""
        return self.origin + self.spacing * np.arange(self.count + 1, dtype=float)

    @classmethod
    def over(cls, start, stop, spacing, ghost_count=3):
        """Grid covering ``[start, stop]`` with the given spacing."""
        ratio = (stop - start) / spacing
        count = int(round(ratio))
        if not math.isclose(ratio, count, rel_tol=1e-9, abs_tol=1e-9):
            raise ValueError(
                f"interval [{start}, {stop}] is not a whole number of steps of {spacing}"
            )
        return cls(start, spacing, count, ghost_count)


@dataclass(frozen=True)
class NodalStencil:
    """Contributions of neighbouring basis functions at one knot.

    Entry ``k`` of each row is the value (or derivative) at knot ``p`` of
    the basis function with index ``p + offsets[k]``, i.e. the weight of
    that coefficient in the nodal value.  Rows are stored as integers;
    derivative row ``r`` carries a factor ``spacing ** -r``.
    """

    offsets: tuple
    value: tuple
    d1: tuple
    d2: tuple = ()

    def scaled(self, spacing):
        """Return (value, d1, d2) with the spacing factors applied."""
        rows = (self.value, self.d1, self.d2)
        return tuple(tuple(v / spacing**k for v in row) for k, row in enumerate(rows))


# B^{j-2} .. B^{j+1} at t^j: U^j = delta^{j-1} + delta^j.
QUADRATIC_STENCIL = NodalStencil(offsets=(-2, -1, 0, 1), value=(0, 1, 1, 0), d1=(0, -2, 2, 0))
# B_{i-2} .. B_{i+2} at x_i.
CUBIC_STENCIL = NodalStencil(
    offsets=(-2, -1, 0, 1, 2), value=(0, 1, 4, 1, 0), d1=(0, -3, 0, 3, 0), d2=(0, 6, -12, 6, 0)
)


def _local(index, point, grid, offset):
    """Position of ``point`` measured in spacings from knot ``index - offset``."""
    if isinstance(point, Fraction) or isinstance(grid.spacing, Fraction):
        return (Fraction(point) - Fraction(grid.origin)) / Fraction(grid.spacing) - (index - offset)
    return (point - grid.origin) / grid.spacing - (index - offset)


def quad_eval(j, t, grid):
    """B^j(t), supported on [t^{j-1}, t^{j+2}]."""
    s = _local(j, t, grid, 1)
    if s < 0 or s > 3:
        return 0 * s
    if s <= 1:
        return s * s
    if s <= 2:
        # (3 - s)^2 - 3 (2 - s)^2
        return (3 - s) ** 2 - 3 * (2 - s) ** 2
    return (3 - s) ** 2


def quad_deriv(j, t, grid):
    """dB^j/dt."""
    s = _local(j, t, grid, 1)
    if s < 0 or s > 3:
        return 0 * s
    if s <= 1:
        d = 2 * s
    elif s <= 2:
        d = -2 * (3 - s) + 6 * (2 - s)
    else:
        d = -2 * (3 - s)
    return d / grid.spacing


def _cubic_pieces(s):
    """Scaled cubic and its first two s-derivatives for s in [0, 4]."""
    if s < 0 or s > 4:
        z = 0 * s
        return z, z, z
    if s <= 1:
        return s**3, 3 * s * s, 6 * s
    if s <= 2:
        u = s - 1
        return 1 + 3 * u + 3 * u * u - 3 * u**3, 3 + 6 * u - 9 * u * u, 6 - 18 * u
    if s <= 3:
        u = 3 - s
        return 1 + 3 * u + 3 * u * u - 3 * u**3, -(3 + 6 * u - 9 * u * u), 6 - 18 * u
    u = 4 - s
    return u**3, -3 * u * u, 6 * u


def cubic_eval(i, x, grid):
    """B_i(x), supported on [x_{i-2}, x_{i+2}]."""
    return _cubic_pieces(_local(i, x, grid, 2))[0]


def cubic_deriv1(i, x, grid):
    return _cubic_pieces(_local(i, x, grid, 2))[1] / grid.spacing


def cubic_deriv2(i, x, grid):
    return _cubic_pieces(_local(i, x, grid, 2))[2] / grid.spacing**2


def cubic_local_weights(u):
    """Weights of the four cubics alive on a cell, at local offsets ``u``.

    For ``x = x_k + u * h`` with ``0 <= u <= 1`` the spline value is
    ``w0*c[k-1] + w1*c[k] + w2*c[k+1] + w3*c[k+2]``.  Returns a
    ``(3, 4, ...)`` array: value, first and second derivative (in units
    of ``u``).
    """
    u = np.asarray(u, dtype=float)
    v = 1.0 - u
    val = np.stack([v**3, 1 + 3 * v + 3 * v**2 - 3 * v**3, 1 + 3 * u + 3 * u**2 - 3 * u**3, u**3])
    d1 = np.stack([-3 * v**2, -(3 + 6 * v - 9 * v**2), 3 + 6 * u - 9 * u**2, 3 * u**2])
    d2 = np.stack([6 * v, 6 - 18 * v, 6 - 18 * u, 6 * u])
    return np.stack([val, d1, d2])
