"""Space-time collocation stepper.

Time is expanded in quadratic B-splines, so the solution at t^j is the
sum of two consecutive spatial splines ``delta^{j-1} + delta^j``; each
``delta^j`` is a cubic spline in x.  One step solves the collocation
equations at t^{j+1} for the coefficients of ``delta^{j+1}``, with the
nonlinear term linearised by lagging one factor and refreshed over a
few inner passes.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .basis import UniformGrid
from .field import CoefficientVector, fd_end_slopes, fit_initial, nodal_values
from .linsys import CollocationRows, CondensationRecord, condense_and_solve

logger = logging.getLogger(__name__)

MODES = ("summed", "direct")
INIT_STRATEGIES = ("pde-derivative", "symmetric")
L2_WEIGHTINGS = ("unweighted", "h-weighted")

GRID_TOL = 1e-9


class SolverError(RuntimeError):
    """The time integration failed at a particular step."""

    def __init__(self, message, step=None, time=None):
        super().__init__(message)
        self.step = step
        self.time = time


@dataclass(frozen=True)
class SolverConfig:
    viscosity: float
    h: float
    dt: float
    t_start: float
    t_end: float
    inner_iterations: int = 2
    mode: str = "summed"
    init_strategy: str = "pde-derivative"
    l2_weighting: str = "unweighted"
    # Weight of the newest solve in the lagged estimate between inner passes:
    # 1.0 is plain Picard, 0.5 the midpoint update sigma^j + (sigma^{j+1} - sigma^j)/2.
    relaxation: float = 1.0

    def __post_init__(self):
        for name in ("viscosity", "h", "dt"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be a positive number, got {value!r}")
        if not self.t_end > self.t_start:
            raise ValueError(f"t_end must exceed t_start ({self.t_end!r} <= {self.t_start!r})")
        if self.inner_iterations < 1:
            raise ValueError(f"inner_iterations must be >= 1, got {self.inner_iterations!r}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.init_strategy not in INIT_STRATEGIES:
            raise ValueError(
                f"init_strategy must be one of {INIT_STRATEGIES}, got {self.init_strategy!r}"
            )
        if self.l2_weighting not in L2_WEIGHTINGS:
            raise ValueError(
                f"l2_weighting must be one of {L2_WEIGHTINGS}, got {self.l2_weighting!r}"
            )
        if not 0 < self.relaxation <= 1:
            raise ValueError(f"relaxation must lie in (0, 1], got {self.relaxation!r}")
        self.step_count  # validates divisibility

    @property
    def step_count(self):
        ratio = (self.t_end - self.t_start) / self.dt
        n = int(round(ratio))
        if not math.isclose(ratio, n, rel_tol=GRID_TOL, abs_tol=GRID_TOL):
            raise ValueError(
                f"t_end - t_start = {self.t_end - self.t_start!r} is not a multiple of dt = {self.dt!r}"
            )
        return n

    def time_at(self, step):
        return self.t_start + step * self.dt

    def step_of(self, t):
        """Index of the grid time equal to ``t``; raises if ``t`` is off-grid."""
        ratio = (t - self.t_start) / self.dt
        n = int(round(ratio))
        if not math.isclose(ratio, n, rel_tol=GRID_TOL, abs_tol=GRID_TOL):
            raise ValueError(f"time {t!r} is not on the time grid")
        if not 0 <= n <= self.step_count:
            raise ValueError(f"time {t!r} outside [{self.t_start!r}, {self.t_end!r}]")
        return n


@dataclass(frozen=True)
class SolverState:
    prev: CoefficientVector
    curr: CoefficientVector
    step: int
    time: float

    def __post_init__(self):
        if self.prev.grid != self.curr.grid:
            raise ValueError("prev and curr must share one grid")

    @property
    def grid(self):
        return self.curr.grid

    def solution(self, mode):
        """Nodal solution U at the current time level."""
        value = nodal_values(self.curr)[0]
        if mode == "summed":
            value = value + nodal_values(self.prev)[0]
        return value


class Sample(NamedTuple):
    time: float
    x: np.ndarray
    u: np.ndarray


def space_grid(problem, cfg):
    a, b = problem.domain
    return UniformGrid.over(a, b, cfg.h)


def apply_boundary(state, bc_left, bc_right, mode):
    """Boundary rows fixing the spline value of the new level at both ends.

    In summed mode the new level takes whatever is needed for
    ``delta^j + delta^{j+1}`` to hit the boundary data; in direct mode
    the new level itself is set to the data.
    """
    if mode == "summed":
        value, _, _ = nodal_values(state.curr)
        bc_left = bc_left - value[0]
        bc_right = bc_right - value[-1]
    return CondensationRecord((1.0, 4.0, 1.0), float(bc_left), (1.0, 4.0, 1.0), float(bc_right))


def assemble_step(state, lagged, cfg, bc_left, bc_right):
    """Linearised collocation rows for the step ``t^j -> t^{j+1}``.

    ``lagged`` is the current estimate of the new level; only its slope
    enters, through the factor that multiplies the new value.
    """
    h, dt, nu = cfg.h, cfg.dt, cfg.viscosity
    d, dx, dxx = nodal_values(state.curr)
    _, lag_dx, _ = nodal_values(lagged)

    a = 1.0 + 0.5 * dt * (dx + lag_dx)
    conv = 1.5 * dt / h * d
    diff = 3.0 * nu * dt / h**2
    lower = a - conv - diff
    diag = 4.0 * a + 2.0 * diff
    upper = a + conv - diff
    rhs = d - 0.5 * dt * d * dx + 0.5 * nu * dt * dxx

    for name, arr in (("lower", lower), ("diag", diag), ("upper", upper), ("rhs", rhs)):
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise SolverError(
                f"non-finite {name} coefficient at node {bad[0]} (step {state.step})",
                step=state.step,
                time=state.time,
            )
    rows = CollocationRows(lower, diag, upper, rhs)
    return rows, apply_boundary(state, bc_left, bc_right, cfg.mode)


def advance(state, cfg, problem):
    """Advance one time step with ``cfg.inner_iterations`` linear solves."""
    t_new = cfg.time_at(state.step + 1)
    bc_l, bc_r = problem.bc_left(t_new), problem.bc_right(t_new)
    grid = state.grid
    lagged = state.curr
    new = None
    for k in range(cfg.inner_iterations):
        if new is not None:
            lagged = state.curr + cfg.relaxation * (new - state.curr)
        rows, record = assemble_step(state, lagged, cfg, bc_l, bc_r)
        try:
            values = condense_and_solve(rows, record)
        except ArithmeticError as exc:
            raise SolverError(f"step {state.step + 1}, pass {k}: {exc}", state.step + 1, t_new) from exc
        if not np.all(np.isfinite(values)):
            raise SolverError(
                f"solution blew up at step {state.step + 1} (t = {t_new:g})", state.step + 1, t_new
            )
        new = CoefficientVector(values, grid)
    return SolverState(prev=state.curr, curr=new, step=state.step + 1, time=t_new)


def initial_state(problem, cfg):
    """Build the two starting levels from the initial condition.

    Direct mode fits one spline to the initial data and uses it for both
    levels.  Summed mode splits the data into two levels whose sum is the
    initial profile; ``pde-derivative`` also matches the initial time
    derivative from the equation, ``symmetric`` splits it evenly.
    """
    grid = space_grid(problem, cfg)
    t0 = cfg.t_start
    x = grid.nodes()
    f = np.asarray(problem.exact(x, t0), dtype=float)
    fx = np.asarray(problem.exact_x(x, t0), dtype=float)
    u_fit = fit_initial(f, problem.bc_left_deriv(t0), problem.bc_right_deriv(t0), grid)
    if cfg.mode == "direct":
        return SolverState(u_fit, u_fit, 0, t0)
    if cfg.init_strategy == "symmetric":
        half = 0.5 * u_fit
        return SolverState(half, half, 0, t0)
    fxx = np.asarray(problem.exact_xx(x, t0), dtype=float)
    ut = -f * fx + cfg.viscosity * fxx
    ut_fit = fit_initial(ut, *fd_end_slopes(ut, grid.spacing), grid)
    shift = (0.25 * cfg.dt) * ut_fit
    half = 0.5 * u_fit
    return SolverState(prev=half - shift, curr=half + shift, step=0, time=t0)


def run(problem, cfg, sample_times=()):
    """Integrate from ``cfg.t_start`` to ``cfg.t_end``.

    Returns one :class:`Sample` (nodal solution) per requested time, in
    the order given.
    """
    if not math.isclose(problem.t_start, cfg.t_start, abs_tol=GRID_TOL):
        logger.info("starting %s problem at t=%g instead of %g", problem.kind, cfg.t_start, problem.t_start)
    wanted = {}
    for t in sample_times:
        wanted.setdefault(cfg.step_of(t), []).append(t)

    state = initial_state(problem, cfg)
    x = state.grid.nodes()
    recorded = {}

    def record():
        for t in wanted.get(state.step, ()):
            recorded[t] = Sample(cfg.time_at(state.step), x, state.solution(cfg.mode))

    record()
    for _ in range(cfg.step_count):
        state = advance(state, cfg, problem)
        record()
    return [recorded[t] for t in sample_times]
