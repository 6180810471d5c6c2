"""Convex-geometry and conic-fitting helpers for curve verification.

The numerical range is approximated two ways: from inside by the convex
hull of traced envelope points, and from outside by the support polygon
(the intersection of supporting half-planes).  Their Hausdorff distance
bounds the tracing error.
"""

from __future__ import annotations

import numpy as np
from scipy.spatial import ConvexHull


def support_polygon_vertices(thetas, values) -> np.ndarray:
    """Vertices of the intersection of half-planes Re(e^{i theta} z) <= value.

    The supporting line for angle theta has outward normal
    (cos theta, -sin theta); consecutive line intersections are the
    polygon vertices.  Angles must be sorted and cover the circle.
    """
    th = np.asarray(thetas, dtype=float)
    h = np.asarray(values, dtype=float)
    nx, ny = np.cos(th), -np.sin(th)
    nx2, ny2 = np.roll(nx, -1), np.roll(ny, -1)
    h2 = np.roll(h, -1)
    det = nx * ny2 - ny * nx2
    ok = np.abs(det) > 1e-14
    x = (h * ny2 - h2 * ny)[ok] / det[ok]
    y = (nx * h2 - nx2 * h)[ok] / det[ok]
    return np.column_stack([x, y])


def convex_hull_vertices(points: np.ndarray) -> np.ndarray:
    """Hull vertices (counterclockwise) of a 2d point cloud."""
    pts = np.asarray(points, dtype=float)
    if len(pts) < 3:
        return pts
    spread = np.max(np.ptp(pts, axis=0))
    if spread < 1e-12:
        return pts[:1]
    try:
        hull = ConvexHull(pts)
    except Exception:
        hull = ConvexHull(pts, qhull_options="QJ")
    return pts[hull.vertices]


def points_to_convex_polygon_distance(points: np.ndarray, poly: np.ndarray) -> np.ndarray:
    """Euclidean distance from each point to a convex polygon (0 inside).

    Vectorized over chunks of points against all polygon edges; the
    polygon is taken as its vertex list in either orientation.
    """
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    q = np.asarray(poly, dtype=float)
    if len(q) == 1:
        return np.hypot(pts[:, 0] - q[0, 0], pts[:, 1] - q[0, 1])
    if len(q) == 2:
        q = np.vstack([q, q[0]])
    a = q
    b = np.roll(q, -1, axis=0)
    edge = b - a
    # orient counterclockwise so "inside" is a consistent sign
    area = float(np.sum(a[:, 0] * b[:, 1] - b[:, 0] * a[:, 1]))
    sign = 1.0 if area >= 0 else -1.0
    out = np.empty(len(pts))
    chunk = max(1, 2_000_000 // max(len(q), 1))
    for start in range(0, len(pts), chunk):
        p = pts[start : start + chunk]
        dx = p[:, None, 0] - a[None, :, 0]
        dy = p[:, None, 1] - a[None, :, 1]
        cross = sign * (edge[None, :, 0] * dy - edge[None, :, 1] * dx)
        inside = np.all(cross >= -1e-14, axis=1)
        ee = np.maximum(np.sum(edge * edge, axis=1), 1e-300)
        t = np.clip((dx * edge[None, :, 0] + dy * edge[None, :, 1]) / ee[None, :], 0.0, 1.0)
        ex = dx - t * edge[None, :, 0]
        ey = dy - t * edge[None, :, 1]
        d = np.sqrt(np.min(ex * ex + ey * ey, axis=1))
        d[inside] = 0.0
        out[start : start + chunk] = d
    return out


def _ccw_vertices(poly: np.ndarray) -> np.ndarray:
    """Vertices in counterclockwise order with duplicates dropped."""
    q = np.asarray(poly, dtype=float)
    area = float(np.sum(q[:, 0] * np.roll(q[:, 1], -1) - np.roll(q[:, 0], -1) * q[:, 1]))
    if area < 0:
        q = q[::-1]
    keep = np.linalg.norm(q - np.roll(q, 1, axis=0), axis=1) > 1e-300
    return q[keep] if np.any(keep) else q[:1]


def _support_breakpoints(q: np.ndarray):
    """Edge-normal angles of a CCW polygon: the active vertex for any
    direction in [angle_i, angle_{i+1}) is vertex i+1."""
    edges = np.roll(q, -1, axis=0) - q
    # outward normal of edge (dx, dy) is (dy, -dx) for CCW orientation
    return np.arctan2(-edges[:, 0], edges[:, 1])


def hausdorff_distance(poly_a: np.ndarray, poly_b: np.ndarray) -> float:
    """Hausdorff distance between two convex polygons given by vertices.

    For convex sets this is the sup-norm of the support-function
    difference.  On each angular cell of the merged normal fans a single
    vertex of each polygon is active, so the difference is one sinusoid
    (v - w) . u(psi) whose extreme over the cell is available in closed
    form; the global maximum over all cells is exact up to roundoff.
    """
    a = _ccw_vertices(poly_a)
    b = _ccw_vertices(poly_b)
    if len(a) == 0 or len(b) == 0:
        return np.inf
    if len(a) < 3 or len(b) < 3:
        d_ab = float(np.max(points_to_convex_polygon_distance(a, b)))
        d_ba = float(np.max(points_to_convex_polygon_distance(b, a)))
        return max(d_ab, d_ba)

    ang_a = _support_breakpoints(a)
    ang_b = _support_breakpoints(b)
    order_a = np.argsort(ang_a)
    order_b = np.argsort(ang_b)
    brk_a = ang_a[order_a]
    brk_b = ang_b[order_b]
    cells = np.unique(np.concatenate([brk_a, brk_b]))
    if cells.size == 0:
        return 0.0
    # active vertex on (brk[i], brk[i+1]] is the one following edge order[i]
    mid = 0.5 * (cells + np.roll(cells, -1))
    mid[-1] = 0.5 * (cells[-1] + cells[0] + 2 * np.pi)
    mid = np.mod(mid + np.pi, 2 * np.pi) - np.pi

    def active(brk, order, q, angles):
        idx = np.searchsorted(brk, angles, side="left") - 1
        vert = (order[idx % len(order)] + 1) % len(q)
        return q[vert]

    va = active(brk_a, order_a, a, mid)
    vb = active(brk_b, order_b, b, mid)
    diff = va - vb
    r = np.hypot(diff[:, 0], diff[:, 1])
    psi0 = np.arctan2(diff[:, 1], diff[:, 0])
    lo = cells
    hi = np.roll(cells, -1)
    hi[-1] = cells[0] + 2 * np.pi
    best = 0.0
    # |R cos(psi - psi0)| over [lo, hi]: check endpoints and interior peaks
    for shift in (0.0, np.pi):
        peak = psi0 + shift
        k = np.ceil((lo - peak) / (2 * np.pi))
        peak_in = peak + 2 * np.pi * k <= hi
        if np.any(peak_in):
            best = max(best, float(np.max(r[peak_in])))
    for edge_angles in (lo, hi):
        vals = np.abs(r * np.cos(edge_angles - psi0))
        best = max(best, float(np.max(vals)))
    return best


def points_to_xy(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex).ravel()
    return np.column_stack([z.real, z.imag])


def fit_conic(points: np.ndarray) -> np.ndarray:
    """Least-squares conic a x^2 + b xy + c y^2 + d x + e y + f = 0.

    Returns the coefficient vector (a, b, c, d, e, f), normalized, from the
    smallest singular vector of the design matrix.
    """
    pts = np.asarray(points, dtype=float)
    x, y = pts[:, 0], pts[:, 1]
    design = np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])
    _, _, vh = np.linalg.svd(design, full_matrices=False)
    coef = vh[-1]
    return coef / np.linalg.norm(coef)


def ellipse_from_conic(coef):
    """Center, semi-axes and foci of the ellipse with the given conic
    coefficients.  Raises ``ValueError`` for non-elliptic conics."""
    a, b, c, d, e, f = coef
    q = np.array([[a, b / 2.0], [b / 2.0, c]])
    if np.linalg.det(q) <= 0:
        raise ValueError("conic is not an ellipse")
    center = np.linalg.solve(2.0 * q, [-d, -e])
    # constant term after recentering
    f0 = f + 0.5 * (d * center[0] + e * center[1])
    w, v = np.linalg.eigh(q)
    if np.any(w * (-f0) <= 0):
        raise ValueError("conic is not a real ellipse")
    semi = np.sqrt(-f0 / w)  # descending axis for the smaller eigenvalue
    order = np.argsort(semi)[::-1]
    semi = semi[order]
    axes = v[:, order]
    cdist = np.sqrt(max(semi[0] ** 2 - semi[1] ** 2, 0.0))
    f1 = center + cdist * axes[:, 0]
    f2 = center - cdist * axes[:, 0]
    return center, semi, (f1, f2)


def fit_ellipse_foci(points: np.ndarray):
    """Fit an ellipse through 2d points and return its two foci."""
    _, _, foci = ellipse_from_conic(fit_conic(points))
    return foci
