"""Static figures of solution profiles and pointwise errors."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.labelsize": 9,
    "legend.fontsize": 7,
    "lines.linewidth": 1.2,
    "axes.grid": True,
    "grid.alpha": 0.3,
    # Fixed element ids so identical data gives identical files.
    "svg.hashsalt": "bsburgers",
}


def figsize(scale=1.0, rows=1):
    golden = (np.sqrt(5.0) - 1.0) / 2.0
    width = 6.4 * scale
    return width, rows * width * golden


def emit_plot(samples, exact, path, title=None):
    """Write a two-panel figure: solutions on top, |error| below.

    ``samples`` are objects with ``time``, ``x`` and ``u``; ``exact`` is a
    callable ``exact(x, t)`` or None.  Returns the path written, or None
    when there is nothing to draw.
    """
    samples = list(samples)
    if not samples:
        return None
    with plt.rc_context(STYLE):
        fig, (top, bottom) = plt.subplots(2, 1, sharex=True, figsize=figsize(1.0, 1.6))
        colors = plt.cm.viridis(np.linspace(0.0, 0.85, len(samples)))
        for s, color in zip(samples, colors):
            top.plot(s.x, s.u, color=color, label=f"t = {s.time:g}")
            if exact is not None:
                ref = np.asarray(exact(s.x, s.time), dtype=float)
                top.plot(s.x, ref, color=color, ls=":", lw=0.9)
                bottom.plot(s.x, np.abs(s.u - ref), color=color)
        top.set_ylabel("u")
        top.legend(loc="best", frameon=False)
        if title:
            top.set_title(title)
        bottom.set_xlabel("x")
        bottom.set_ylabel("|u - u_exact|")
        fig.tight_layout()
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)
    return path
