"""Benchmark problems with closed-form solutions.

Two families are provided: a shock-like decaying pulse on [0, 1] for
t >= 1 and a traveling front connecting the states alpha + mu and
mu - alpha.  A constant state is included for smoke runs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.special import expit


@dataclass(frozen=True)
class FrontParams:
    alpha: float = 0.4
    mu: float = 0.6
    gamma: float = 0.125

    def __post_init__(self):
        if not (self.alpha > 0 and self.mu > 0):
            raise ValueError("front parameters alpha and mu must be positive")


@dataclass(frozen=True)
class ProblemSpec:
    """Domain, viscosity and exact solution of one Burgers' problem.

    Initial and boundary data are derived from ``exact`` and its
    x-derivatives unless ``boundary`` pins the two end values to
    constants.
    """

    kind: str
    domain: tuple
    t_start: float
    viscosity: float
    exact: Callable
    exact_x: Callable
    exact_xx: Callable
    params: dict = field(default_factory=dict)
    boundary: tuple | None = None

    def __post_init__(self):
        a, b = self.domain
        if not b > a:
            raise ValueError(f"empty domain {self.domain!r}")
        if not self.viscosity > 0:
            raise ValueError(f"viscosity must be positive, got {self.viscosity!r}")

    def ic(self, x):
        return self.exact(x, self.t_start)

    def bc_left(self, t):
        if self.boundary is not None:
            return float(self.boundary[0])
        return float(self.exact(self.domain[0], t))

    def bc_right(self, t):
        if self.boundary is not None:
            return float(self.boundary[1])
        return float(self.exact(self.domain[1], t))

    def bc_left_deriv(self, t):
        return float(self.exact_x(self.domain[0], t))

    def bc_right_deriv(self, t):
        return float(self.exact_x(self.domain[1], t))


def shock_t0(nu):
    return math.exp(1.0 / (8.0 * nu))


def _shock_exponent(x, t, nu):
    # x^2/(4 nu t) + log sqrt(t / t0)
    return x * x / (4.0 * nu * t) - 1.0 / (16.0 * nu) + 0.5 * np.log(t)


def shock_exact(x, t, nu):
    """Decaying shock-like pulse, valid for t >= 1 on [0, 1]."""
    x = np.asarray(x, dtype=float)
    g = expit(-_shock_exponent(x, t, nu))
    out = (x / t) * g
    return out if out.ndim else float(out)


def shock_exact_derivs(x, t, nu):
    """Return ``(u_x, u_xx)`` of :func:`shock_exact`."""
    x = np.asarray(x, dtype=float)
    g = expit(-_shock_exponent(x, t, nu))
    ex = x / (2.0 * nu * t)
    gp = -g * (1.0 - g) * ex
    gpp = -gp * (1.0 - 2.0 * g) * ex - g * (1.0 - g) / (2.0 * nu * t)
    ux = g / t + (x / t) * gp
    uxx = 2.0 * gp / t + (x / t) * gpp
    if ux.ndim == 0:
        return float(ux), float(uxx)
    return ux, uxx


def _front_eta(x, t, params, nu):
    return params.alpha * (x - params.mu * t - params.gamma) / nu


def front_exact(x, t, params, nu):
    """Traveling front moving right at speed ``mu``."""
    x = np.asarray(x, dtype=float)
    s = expit(-_front_eta(x, t, params, nu))
    # (a + mu + (mu - a) e^eta) / (1 + e^eta) == mu - a + 2 a / (1 + e^eta)
    out = params.mu - params.alpha + 2.0 * params.alpha * s
    return out if out.ndim else float(out)


def front_exact_derivs(x, t, params, nu):
    x = np.asarray(x, dtype=float)
    s = expit(-_front_eta(x, t, params, nu))
    k = params.alpha / nu
    w = s * (1.0 - s)
    ux = -2.0 * params.alpha * k * w
    uxx = 2.0 * params.alpha * k * k * (1.0 - 2.0 * s) * w
    if ux.ndim == 0:
        return float(ux), float(uxx)
    return ux, uxx


def _scalar_or_array(value, x):
    out = np.full(np.shape(x), value, dtype=float)
    return out if out.ndim else float(out)


PROBLEM_KINDS = {
    "shock": "decaying shock-like pulse on [0, 1], t >= 1, zero boundaries",
    "front": "traveling front on [0, 1], t >= 0, states alpha+mu -> mu-alpha",
    "constant": "constant state u = c (smoke test)",
}


def make_problem(kind, nu, params=None, constant=1.0):
    """Build a :class:`ProblemSpec` by name."""
    if kind == "shock":
        return ProblemSpec(
            kind="shock",
            domain=(0.0, 1.0),
            t_start=1.0,
            viscosity=nu,
            exact=lambda x, t: shock_exact(x, t, nu),
            exact_x=lambda x, t: shock_exact_derivs(x, t, nu)[0],
            exact_xx=lambda x, t: shock_exact_derivs(x, t, nu)[1],
            boundary=(0.0, 0.0),
        )
    if kind == "front":
        p = params if params is not None else FrontParams()
        return ProblemSpec(
            kind="front",
            domain=(0.0, 1.0),
            t_start=0.0,
            viscosity=nu,
            exact=lambda x, t: front_exact(x, t, p, nu),
            exact_x=lambda x, t: front_exact_derivs(x, t, p, nu)[0],
            exact_xx=lambda x, t: front_exact_derivs(x, t, p, nu)[1],
            params={"alpha": p.alpha, "mu": p.mu, "gamma": p.gamma},
        )
    if kind == "constant":
        c = float(constant)
        return ProblemSpec(
            kind="constant",
            domain=(0.0, 1.0),
            t_start=0.0,
            viscosity=nu,
            exact=lambda x, t: _scalar_or_array(c, x),
            exact_x=lambda x, t: _scalar_or_array(0.0, x),
            exact_xx=lambda x, t: _scalar_or_array(0.0, x),
            params={"c": c},
        )
    raise ValueError(f"unknown problem kind {kind!r}; expected one of {sorted(PROBLEM_KINDS)}")
