"""Crank-Nicolson finite-difference reference solver.

Centered differences in space, trapezoidal rule in time, and the
``u * u_x`` product at the new level linearised by lagging ``u``.  It
shares only :func:`~bsburgers.linsys.thomas_solve` with the spline
stepper, so agreement between the two is evidence rather than tautology.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .basis import UniformGrid
from .linsys import TridiagonalSystem, thomas_solve
from .stepper import SolverConfig


class FdProfile(NamedTuple):
    time: float
    x: np.ndarray
    u: np.ndarray


def _operators(u, h):
    ux = (u[2:] - u[:-2]) / (2.0 * h)
    uxx = (u[2:] - 2.0 * u[1:-1] + u[:-2]) / (h * h)
    return ux, uxx


def cn_step(u, t_new, problem, h, dt, inner_iterations=2):
    """One Crank-Nicolson step; returns the new nodal profile."""
    nu = problem.viscosity
    ux, uxx = _operators(u, h)
    inner = u[1:-1]
    rhs0 = inner - 0.5 * dt * inner * ux + 0.5 * nu * dt * uxx
    r = nu * dt / (2.0 * h * h)
    left, right = problem.bc_left(t_new), problem.bc_right(t_new)

    lagged = inner
    new = u.copy()
    new[0], new[-1] = left, right
    for _ in range(inner_iterations):
        c = dt * lagged / (4.0 * h)
        lower = -c - r
        upper = c - r
        diag = np.full_like(inner, 1.0 + 2.0 * r)
        rhs = rhs0.copy()
        rhs[0] -= lower[0] * left
        rhs[-1] -= upper[-1] * right
        new[1:-1] = thomas_solve(TridiagonalSystem(lower[1:], diag, upper[:-1], rhs))
        lagged = new[1:-1].copy()
    return new


def cn_fd_run(problem, h, dt, t_end, inner_iterations=2, t_start=None):
    """Profiles at every time level from ``t_start`` to ``t_end``."""
    t0 = problem.t_start if t_start is None else t_start
    # Reuse the stepper's checks on the time grid.
    cfg = SolverConfig(problem.viscosity, h, dt, t0, t_end, inner_iterations)
    a, b = problem.domain
    x = UniformGrid.over(a, b, h).nodes()
    u = np.asarray(problem.exact(x, t0), dtype=float).copy()
    u[0], u[-1] = problem.bc_left(t0), problem.bc_right(t0)
    profiles = [FdProfile(t0, x, u)]
    for n in range(1, cfg.step_count + 1):
        t = cfg.time_at(n)
        u = cn_step(u, t, problem, h, dt, inner_iterations)
        profiles.append(FdProfile(t, x, u))
    return profiles
