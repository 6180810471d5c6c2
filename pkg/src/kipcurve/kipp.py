"""Kippenhahn polynomials and curves, numerical radius, circle detection.

The Kippenhahn polynomial of a square matrix A is

    P(lambda, theta) = det(Re(e^{i theta} A) - lambda I),

a degree-n polynomial in lambda whose lambda^a coefficient is a trigonometric
polynomial in theta of degree at most n - a.  The roots lambda_j(theta)
define a family of supporting lines whose envelope, the Kippenhahn curve
C(A), has the numerical range W(A) as its convex hull.

A circle of radius r centered at the origin is a component of C(A) exactly
when lambda^2 - r^2 divides P, i.e. when every Fourier-coefficient
polynomial of P vanishes at both +r and -r; circle centers must be
defective eigenvalues, which is what makes a finite search possible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg

#: Relative tolerance for the divisibility test behind circle detection.
DETECT_TOL = 1e-7
#: Divisibility-by-lambda threshold (degenerate circle {0}).
POINT_TOL = 1e-9
#: |w(A - center) - radius| below this means the circle bounds the range.
DISK_TOL = 1e-7
#: Gray zone multiplier: gaps in (DISK_TOL, 100 * DISK_TOL) are reported
#: as undetermined rather than guessed.
DISK_GRAY = 100.0
#: Radii closer than this are the same circle.
RADIUS_CLUSTER = 1e-7


@dataclass(frozen=True)
class TrigPolynomial:
    """Polynomial in lambda with trigonometric-polynomial coefficients.

    ``coeffs[a, n + k]`` is the harmonic-k Fourier coefficient of the
    lambda^a coefficient, k = -n..n; entries with |k| > n - a vanish.
    Real-valued on real (lambda, theta) since c_{a,-k} = conj(c_{a,k}).
    """

    n: int
    coeffs: np.ndarray

    def scale(self) -> float:
        return float(np.max(np.abs(self.coeffs)))

    def harmonic_poly(self, k: int) -> np.ndarray:
        """Ascending lambda-coefficients of the harmonic-k part."""
        return self.coeffs[:, self.n + k].copy()

    def evaluate(self, lam, theta):
        """Value of P at (lambda, theta); real up to roundoff."""
        lam = np.asarray(lam, dtype=float)
        th = np.asarray(theta, dtype=float)
        ks = np.arange(-self.n, self.n + 1)
        ph = np.exp(1j * np.multiply.outer(th, ks))
        lam_pows = np.power.outer(lam, np.arange(self.n + 1))
        out = np.einsum("...a,ak,...k->...", lam_pows, self.coeffs, ph)
        return out.real

    def lambda_poly_at(self, theta: float) -> np.ndarray:
        """Ascending real coefficients of lambda -> P(lambda, theta)."""
        ks = np.arange(-self.n, self.n + 1)
        ph = np.exp(1j * theta * ks)
        return (self.coeffs @ ph).real


def kippenhahn_polynomial(a) -> TrigPolynomial:
    """Kippenhahn polynomial of a square matrix (n <= 16).

    Characteristic polynomials of Re(e^{i theta} A) are sampled at 2n+1
    equispaced angles and the Fourier coefficients recovered per
    lambda-power; since the harmonic content of the lambda^a coefficient is
    bounded by n - a, the interpolation is exact up to roundoff.
    """
    m = linalg.as_square_matrix(a)
    n = m.shape[0]
    if n > 16:
        raise ValueError("Kippenhahn polynomial supported for n <= 16 only")
    grid = linalg.theta_grid(2 * n + 1)
    h = 0.5 * (
        np.exp(1j * grid)[:, None, None] * m + np.exp(-1j * grid)[:, None, None] * m.conj().T
    )
    eigs = np.linalg.eigvalsh(h)
    sign = (-1.0) ** n
    char = np.empty((2 * n + 1, n + 1))
    for i in range(2 * n + 1):
        char[i] = sign * np.poly(eigs[i])[::-1]
    coeffs = np.zeros((n + 1, 2 * n + 1), dtype=complex)
    for apow in range(n + 1):
        c = linalg.trig_interpolate(char[:, apow])
        kmax = n - apow
        coeffs[apow, n - kmax : n + kmax + 1] = c[n - kmax : n + kmax + 1]
    return TrigPolynomial(n=n, coeffs=coeffs)


@dataclass(frozen=True)
class CurveTrace:
    """Envelope points of the Kippenhahn curve on a theta grid.

    Branch j at angle theta contributes the point z = <A u, u> for the unit
    eigenvector u of Re(e^{i theta} A) at its j-th smallest eigenvalue; z
    lies on the supporting line Re(e^{i theta} z) = lambda_j(theta).
    Branch labels follow the per-theta sorted eigenvalue order, so they can
    jump at eigenvalue crossings.
    """

    thetas: np.ndarray
    eigenvalues: np.ndarray  # (steps, n), ascending per row
    points: np.ndarray  # (steps, n) complex envelope points

    @property
    def n(self) -> int:
        return self.eigenvalues.shape[1]

    def samples(self):
        """Iterate (theta, branch, eigenvalue, point) rows, theta-major."""
        for i, th in enumerate(self.thetas):
            for j in range(self.n):
                yield th, j, self.eigenvalues[i, j], self.points[i, j]


def trace_curve(a, theta_steps: int = 720) -> CurveTrace:
    """Trace all branches of the Kippenhahn curve on a theta grid."""
    if theta_steps < 4:
        raise ValueError("need at least 4 theta steps")
    m = linalg.as_square_matrix(a)
    grid = linalg.theta_grid(theta_steps)
    h = 0.5 * (
        np.exp(1j * grid)[:, None, None] * m + np.exp(-1j * grid)[:, None, None] * m.conj().T
    )
    w, v = np.linalg.eigh(h)
    av = np.einsum("ij,sjk->sik", m, v)
    pts = np.einsum("sik,sik->sk", v.conj(), av)
    return CurveTrace(thetas=grid, eigenvalues=w, points=pts)


def support_function(a, thetas) -> np.ndarray:
    """Largest eigenvalue of Re(e^{i theta} A) per angle.

    This is the support function of W(A) evaluated in the direction
    conjugate to theta: max over W(A) of Re(e^{i theta} z).
    """
    m = linalg.as_square_matrix(a)
    th = np.asarray(thetas, dtype=float)
    h = 0.5 * (
        np.exp(1j * th)[:, None, None] * m + np.exp(-1j * th)[:, None, None] * m.conj().T
    )
    return np.linalg.eigvalsh(h)[:, -1]


def _golden_max_batch(f_batch, lo: np.ndarray, hi: np.ndarray, tol: float = 1e-10):
    """Golden-section maximization on a batch of brackets.

    ``f_batch`` maps an array of angles to an array of values; each
    iteration evaluates one angle per bracket, batched into a single call.
    """
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1, f2 = f_batch(x1), f_batch(x2)
    while np.max(hi - lo) > tol:
        take2 = f1 < f2
        lo = np.where(take2, x1, lo)
        hi = np.where(take2, hi, x2)
        x1n = np.where(take2, x2, hi - invphi * (hi - lo))
        x2n = np.where(take2, lo + invphi * (hi - lo), x1)
        f1n = np.where(take2, f2, 0.0)
        f2n = np.where(take2, 0.0, f1)
        need = np.where(take2, x2n, x1n)
        vals = f_batch(need)
        f1n = np.where(take2, f1n, vals)
        f2n = np.where(take2, vals, f2n)
        x1, x2, f1, f2 = x1n, x2n, f1n, f2n
    x = 0.5 * (lo + hi)
    return x, f_batch(x)


def numerical_radius(a, coarse_steps: int = 256):
    """Numerical radius and the angles attaining it.

    Maximizes the support function over a coarse grid, then refines every
    strict local maximum by golden section to 1e-10 in theta.  Returns
    ``(w, thetas)`` where ``thetas`` lists all maxima within 1e-8 of w;
    for a circular disk centered at the origin that is the whole grid.
    """
    m = linalg.as_square_matrix(a)
    grid = linalg.theta_grid(coarse_steps)
    vals = support_function(m, grid)
    step = 2.0 * np.pi / coarse_steps

    left = np.roll(vals, 1)
    right = np.roll(vals, -1)
    strict = (vals > left + 1e-14) & (vals > right + 1e-14)
    plateau = ~strict & (vals >= left) & (vals >= right)

    best: list[tuple[float, float]] = [
        (float(grid[i]), float(vals[i])) for i in np.nonzero(plateau)[0]
    ]
    idx = np.nonzero(strict)[0]
    if idx.size:
        ths, vs = _golden_max_batch(
            lambda t: support_function(m, t), grid[idx] - step, grid[idx] + step
        )
        # a cone point narrower than the probe spacing can defeat golden
        # section; never return less than the grid already saw
        for i, t, v in zip(idx, ths, vs):
            if v >= vals[i]:
                best.append((float(t), float(v)))
            else:
                best.append((float(grid[i]), float(vals[i])))
    if not best:
        best = [(float(grid[int(np.argmax(vals))]), float(np.max(vals)))]
    w = max(v for _, v in best)
    thetas = [th for th, v in best if v >= w - 1e-8]
    return float(w), thetas


@dataclass(frozen=True)
class Circle:
    """A circular component of the Kippenhahn curve."""

    center: complex
    radius: float
    degenerate: bool
    source: str  # "oracle" or "closed-form"


@dataclass(frozen=True)
class CircleReport:
    """Detected circles plus the disk classification of W(A)."""

    circles: tuple
    disk: str  # "circular-disk" | "non-disk" | "undetermined"
    numerical_radius: float

    def radii(self):
        return sorted(c.radius for c in self.circles)


#: Linkage floor: a conjugated Jordan chain of length m smears its
#: eigenvalue over roughly eps^(1/m), which exceeds 1e-3 only for chains
#: longer than ~4; longer chains are caught by the confirmed-merge pass.
EIGEN_LINK_TOL = 1e-3
#: Window for the second, multiplicity-confirmed merge pass.
EIGEN_MERGE_WINDOW = 5e-2


def _defective_eigenvalue_clusters(a, cluster_tol: float):
    """Defective eigenvalues of ``a`` (candidate circle centers).

    Eigenvalues are clustered by single linkage, then nearby clusters are
    merged only when ker (A - c I)^m confirms the combined multiplicity;
    that keeps the detection invariant under unitary conjugation, where a
    Jordan chain of length m smears its eigenvalue over O(eps^(1/m)).
    Distinct eigenvalues closer than ~EIGEN_LINK_TOL are not resolved.
    """
    m = linalg.as_square_matrix(a)
    n = m.shape[0]
    _, t = linalg.schur_upper_triangularize(m)
    scale = max(1.0, float(np.max(np.abs(np.diagonal(t)))))
    clusters = linalg.cluster_eigenvalues(
        np.diagonal(t), max(cluster_tol, EIGEN_LINK_TOL * scale)
    )
    merged = True
    while merged and len(clusters) > 1:
        merged = False
        for i in range(len(clusters)):
            for j in range(i + 1, len(clusters)):
                ci, gi = clusters[i]
                cj, gj = clusters[j]
                if abs(ci - cj) > EIGEN_MERGE_WINDOW * scale:
                    continue
                g = gi + gj
                center = complex(np.mean(g))
                if linalg.algebraic_multiplicity(m, center, len(g)) >= len(g):
                    clusters[i] = (center, g)
                    del clusters[j]
                    merged = True
                    break
            if merged:
                break
    out = []
    for center, members in clusters:
        if len(members) < 2:
            continue
        spread = max(abs(z - center) for z in members)
        s = np.linalg.svd(m - center * np.eye(n), compute_uv=False)
        geo = int(np.sum(s <= max(cluster_tol, 10.0 * spread, linalg.RANK_TOL * s[0])))
        if len(members) > geo:
            out.append(center)
    return out


def _circle_radii_for_center(p: TrigPolynomial, tol: float, point_tol: float):
    """Radii r > 0 with lambda^2 - r^2 dividing P, plus lambda-divisibility."""
    scale = p.scale()
    if scale == 0.0:
        return [], True
    n = p.n
    polys = []
    for k in range(0, n + 1):
        c = p.harmonic_poly(k)
        mag = np.max(np.abs(c))
        if mag > tol * scale:
            deg = int(np.max(np.nonzero(np.abs(c) > tol * scale)[0]))
            polys.append((deg, k, c))
    divisible_by_lambda = all(
        abs(p.coeffs[0, n + k]) <= point_tol * scale for k in range(-n, n + 1)
    )
    if not polys:
        return [], divisible_by_lambda
    deg, _, cand_poly = min(polys, key=lambda item: (item[0], item[1]))
    if deg == 0:
        return [], divisible_by_lambda
    roots = np.roots(cand_poly[: deg + 1][::-1])
    roots = linalg.polish_roots(cand_poly[: deg + 1], roots)
    # radii below the clustering resolution belong to the degenerate branch
    cands = sorted(
        {
            float(r.real)
            for r in roots
            if r.real > 1e-6 and abs(r.imag) <= 1e-6 * max(1.0, abs(r))
        }
    )
    radii = []
    for r in cands:
        if radii and abs(r - radii[-1]) <= RADIUS_CLUSTER:
            continue
        ok = True
        for _, _, c in polys:
            vals = np.polynomial.polynomial.polyval(np.array([r, -r]), c)
            if np.max(np.abs(vals)) > tol * scale:
                ok = False
                break
        if ok:
            radii.append(r)
    return radii, divisible_by_lambda


def detect_circles(
    a,
    tol: float = DETECT_TOL,
    cluster_tol: float = 1e-6,
    disk_tol: float = DISK_TOL,
    point_tol: float = POINT_TOL,
) -> CircleReport:
    """Find all circular components of C(A) and classify W(A).

    Candidate centers are the defective eigenvalues; for each, a radius
    r > 0 is reported when every Fourier-coefficient polynomial of the
    recentered Kippenhahn polynomial vanishes at both +r and -r within
    ``tol`` (relative), and the degenerate circle {center} when the
    polynomial is divisible by lambda.  W(A) is a circular disk exactly
    when some detected circle has radius equal to the numerical radius of
    the recentered matrix; gaps inside the gray zone
    (disk_tol, 100 * disk_tol) yield "undetermined".
    """
    m = linalg.as_square_matrix(a)
    if m.shape[0] > 16:
        raise ValueError("circle detection supported for n <= 16 only")
    centers = _defective_eigenvalue_clusters(m, cluster_tol)
    circles = []
    for center in centers:
        shifted = m - center * np.eye(m.shape[0])
        p = kippenhahn_polynomial(shifted)
        radii, div_lambda = _circle_radii_for_center(p, tol, point_tol)
        for r in radii:
            circles.append(Circle(center=center, radius=r, degenerate=False, source="oracle"))
        if div_lambda:
            circles.append(Circle(center=center, radius=0.0, degenerate=True, source="oracle"))
    w, _ = numerical_radius(m)
    disk = "non-disk"
    if circles:
        gaps = []
        for c in circles:
            wc, _ = numerical_radius(m - c.center * np.eye(m.shape[0]))
            gaps.append(abs(wc - c.radius))
        gap = min(gaps)
        if gap <= disk_tol:
            disk = "circular-disk"
        elif gap <= DISK_GRAY * disk_tol:
            disk = "undetermined"
    return CircleReport(circles=tuple(circles), disk=disk, numerical_radius=w)


def contains_circle(a, radius: float, center: complex = 0.0, tol: float = DETECT_TOL) -> bool:
    """Divisibility test: is the circle |z - center| = radius part of C(A)?"""
    m = linalg.as_square_matrix(a)
    p = kippenhahn_polynomial(m - center * np.eye(m.shape[0]))
    scale = p.scale()
    if scale == 0.0:
        return radius == 0.0
    for k in range(0, p.n + 1):
        c = p.harmonic_poly(k)
        vals = np.polynomial.polynomial.polyval(np.array([radius, -radius]), c)
        if np.max(np.abs(vals)) > tol * scale:
            return False
    return True


def contains_point_circle(a, tol: float = POINT_TOL) -> bool:
    """True when the Kippenhahn polynomial is divisible by lambda, i.e.
    the degenerate circle {0} is part of C(A)."""
    p = kippenhahn_polynomial(a)
    scale = p.scale()
    if scale == 0.0:
        return True
    return bool(np.max(np.abs(p.coeffs[0])) <= tol * scale)
