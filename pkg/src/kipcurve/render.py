"""Matplotlib rendering of Kippenhahn curves to figure files.

Output is deterministic for a fixed input and matplotlib version: the SVG
hash salt is pinned and no timestamps are embedded.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Circle as CirclePatch

from . import kipp

_RC = {
    "svg.hashsalt": "kipcurve",
    "figure.figsize": (6.0, 6.0),
    "font.size": 9.0,
    "path.simplify": False,
}


def render_curve(a, out_path, steps: int = 2048, circles=None, title: str | None = None) -> None:
    """Draw the traced curve branches with detected circles overlaid.

    One line per branch, circles as dashed overlays, the unit circle and
    axes as a reference grid; square frame [-1.1, 1.1]^2 in mathematical
    orientation.
    """
    trace = kipp.trace_curve(a, steps)
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots()
        ax.set_aspect("equal")
        ax.set_xlim(-1.1, 1.1)
        ax.set_ylim(-1.1, 1.1)
        ax.axhline(0.0, color="0.85", lw=0.6, zorder=0)
        ax.axvline(0.0, color="0.85", lw=0.6, zorder=0)
        ax.add_patch(
            CirclePatch((0.0, 0.0), 1.0, fill=False, color="0.85", lw=0.6, zorder=0)
        )
        for j in range(trace.n):
            pts = trace.points[:, j]
            ax.plot(pts.real, pts.imag, lw=0.9, zorder=2)
        for c in circles or ():
            ax.add_patch(
                CirclePatch(
                    (c.center.real, c.center.imag),
                    max(c.radius, 1e-3),
                    fill=False,
                    linestyle="--",
                    color="black",
                    lw=1.0,
                    zorder=3,
                )
            )
        if title:
            ax.set_title(title)
        out = Path(out_path)
        fmt = out.suffix.lstrip(".").lower() or "svg"
        metadata = {"Date": None} if fmt == "svg" else None
        fig.savefig(out, format=fmt, metadata=metadata)
        plt.close(fig)
