"""Delimited output: profile CSVs and error summary tables."""
from __future__ import annotations

import csv

import numpy as np

from .metrics import error_report

PROFILE_COLUMNS = ("x", "u_numeric", "u_exact", "abs_err")
SUMMARY_COLUMNS = (
    "problem", "solver", "nu", "h", "dt", "time",
    "linf", "l2", "l2_h", "peak_value", "peak_location",
)


def fmt(value):
    """Shortest text that round-trips a float (at most 17 significant digits)."""
    return repr(float(value))


def write_profile(path, x, numeric, exact):
    numeric = np.asarray(numeric, dtype=float)
    exact = np.asarray(exact, dtype=float)
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(PROFILE_COLUMNS)
        for row in zip(x, numeric, exact, np.abs(numeric - exact)):
            w.writerow([fmt(v) for v in row])
    return path


def read_profile(path):
    """Return ``(x, u_numeric, u_exact)`` arrays from a profile CSV."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        if tuple(header) != PROFILE_COLUMNS:
            raise ValueError(f"{path}: unexpected header {header}")
        data = np.array([[float(v) for v in row] for row in reader])
    return data[:, 0], data[:, 1], data[:, 2]


def rescore_profile(path, h, time):
    x, numeric, exact = read_profile(path)
    return error_report(numeric, exact, x, h, time)


def write_summary_csv(path, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_COLUMNS)
        for row in rows:
            w.writerow([row[k] if isinstance(row[k], str) else fmt(row[k]) for k in SUMMARY_COLUMNS])
    return path


def format_table(rows, title="Errors and peak values"):
    """Aligned text table, one block per (problem, solver, nu, time).

    Columns follow the usual error-table layout: h = dt, L_inf, L_2, peak value,
    with the h-weighted L_2 alongside.
    """
    lines = [title]
    blocks = {}
    for row in rows:
        key = (row["problem"], row["solver"], row["nu"], row["time"])
        blocks.setdefault(key, []).append(row)
    for (problem, solver, nu, time), block in blocks.items():
        lines.append("")
        lines.append(f"{problem}  solver={solver}  nu={nu:g}  t={time:g}")
        lines.append(f"{'h=dt':>10} {'L_inf':>10} {'L_2':>10} {'L_2(h)':>10} {'Peak value':>11}")
        for row in block:
            h = f"{row['h']:g}" if row["h"] == row["dt"] else f"{row['h']:g}/{row['dt']:g}"
            lines.append(
                f"{h:>10} {row['linf']:>10.4f} {row['l2']:>10.4f} {row['l2_h']:>10.4f} {row['peak_value']:>11.4f}"
            )
    return "\n".join(lines) + "\n"
