"""Discrete error norms and shock-peak diagnostics."""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np


@dataclass(frozen=True)
class ErrorReport:
    linf: float
    l2: float
    l2_h: float
    peak_value: float
    peak_location: float
    time: float

    def as_dict(self):
        return asdict(self)


def _difference(numeric, exact):
    numeric = np.asarray(numeric, dtype=float)
    exact = np.asarray(exact, dtype=float)
    if numeric.shape != exact.shape:
        raise ValueError(f"profile length mismatch: {numeric.shape} vs {exact.shape}")
    if numeric.size == 0:
        raise ValueError("empty profile")
    return numeric - exact


def linf_norm(numeric, exact):
    return float(np.max(np.abs(_difference(numeric, exact))))


def l2_norm(numeric, exact, h=1.0, weighting="unweighted"):
    """Root-sum-square of the nodal error, optionally weighted by ``h``."""
    e = _difference(numeric, exact)
    total = float(np.sum(e * e))
    if weighting == "unweighted":
        return float(np.sqrt(total))
    if weighting == "h-weighted":
        return float(np.sqrt(h * total))
    raise ValueError(f"unknown l2 weighting {weighting!r}")


def peak(profile, x):
    """Largest value and its node; ties go to the leftmost node."""
    profile = np.asarray(profile, dtype=float)
    if profile.size == 0:
        raise ValueError("empty profile")
    k = int(np.argmax(profile))
    return float(profile[k]), float(np.asarray(x, dtype=float)[k])


def error_report(numeric, exact, x, h, time):
    value, location = peak(numeric, x)
    return ErrorReport(
        linf=linf_norm(numeric, exact),
        l2=l2_norm(numeric, exact),
        l2_h=l2_norm(numeric, exact, h, "h-weighted"),
        peak_value=value,
        peak_location=location,
        time=float(time),
    )
