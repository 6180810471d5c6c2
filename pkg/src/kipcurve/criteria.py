"""Closed-form circle criteria and disk classification for Defect2Form.

For the real canonical form the Kippenhahn polynomial collapses to

    P(lambda, theta) = -lambda p(rho) cos(theta) + q(rho),   rho = lambda^2,

with the cubic q and quadratic p given by ``pq_from_form``.  Circles of
radius r centered at the origin correspond exactly to common roots
rho = r^2 of p and q in [0, 1), which is what every criterion below
specializes.  The x parameter sqrt(d^2 + c e g / h) locates the candidate
roots of p at rho = (1 +/- x) / 4.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kipp, linalg, pisom
from .pisom import Defect2Form, PartialIsometry

#: Structural zero threshold on canonical parameters.
ZTOL = 1e-9
#: Tolerance for the circle-existence equalities (crith conditions).
CRITERION_TOL = 1e-8


@dataclass(frozen=True)
class PQPair:
    """Ascending coefficients of the polynomial pair (p, q) in rho."""

    p: np.ndarray
    q: np.ndarray

    def p_at(self, rho):
        return np.polynomial.polynomial.polyval(rho, self.p)

    def q_at(self, rho):
        return np.polynomial.polynomial.polyval(rho, self.q)


def pq_from_form(form: Defect2Form) -> PQPair:
    """The (p, q) pair of the canonical form:

    p(rho) = h rho^2 - (1/2) h rho + ((b^2 + c^2) h - c e g) / 16
    q(rho) = rho^3 - (3 - h^2)/4 rho^2
             + (c^2 + b^2 + e^2 + 1 - h^2)/16 rho - b^2 e^2 / 64
    """
    b, c, e, g, h = form.b, form.c, form.e, form.g, form.h
    p = np.array([((b * b + c * c) * h - c * e * g) / 16.0, -0.5 * h, h])
    q = np.array(
        [
            -(b * b * e * e) / 64.0,
            (c * c + b * b + e * e + 1.0 - h * h) / 16.0,
            -(3.0 - h * h) / 4.0,
            1.0,
        ]
    )
    return PQPair(p=p, q=q)


@dataclass(frozen=True)
class XValue:
    """sqrt(d^2 + c e g / h); undefined when the radicand is negative."""

    defined: bool
    x: float


def x_value(form: Defect2Form) -> XValue:
    """The x parameter; requires h != 0. When undefined there are no
    candidate circles away from radius 1/2."""
    if form.h <= ZTOL:
        raise ValueError("x is defined only for h != 0")
    rad = form.d**2 + form.c * form.e * form.g / form.h
    if rad < -1e-15:
        return XValue(defined=False, x=float("nan"))
    return XValue(defined=True, x=float(np.sqrt(max(rad, 0.0))))


def circles_defect2(form: Defect2Form, ztol: float = ZTOL) -> list[float]:
    """Radii of all circles in the curve of the canonical form.

    The radii are sqrt(rho) over common roots rho of p and q in [0, 1);
    when p vanishes identically (nilpotent with c e g = 0) the roots of q
    alone qualify and the curve is exactly three concentric circles.
    A returned radius 0 is the degenerate circle {0}.
    """
    pq = pq_from_form(form)
    qscale = float(np.max(np.abs(pq.q)))
    p_is_zero = np.max(np.abs(pq.p)) <= ztol
    radii: list[float] = []
    if p_is_zero:
        roots = linalg.poly_real_roots(pq.q, (-0.25, 1.0))
        for rho, _ in roots:
            if -ztol <= rho < 1.0:
                radii.append(float(np.sqrt(max(rho, 0.0))))
        return sorted(radii)
    try:
        roots = linalg.poly_real_roots(pq.p, (-0.25, 1.0))
    except linalg.ZeroPolynomialError:
        return []
    for rho, _ in roots:
        if -ztol <= rho < 1.0 and abs(pq.q_at(rho)) <= max(ztol, ztol * qscale):
            radii.append(float(np.sqrt(max(rho, 0.0))))
    return sorted(radii)


def has_circle_half(form: Defect2Form, ztol: float = ZTOL) -> bool:
    """Radius-1/2 circle criterion: c = d = 0 or g = h = 0."""
    return (form.c <= ztol and form.d <= ztol) or (abs(form.g) <= ztol and form.h <= ztol)


def reduce_j2(form: Defect2Form, ztol: float = ZTOL):
    """Parameters (t, h) with the form unitarily similar to J_2 + A_{t,h}.

    Valid exactly when ``has_circle_half`` holds; t = b*e, and h is the
    form's h (zero in the g = h = 0 case).
    """
    if not has_circle_half(form, ztol):
        raise ValueError("reduction to J_2 + A_{t,h} needs c = d = 0 or g = h = 0")
    return form.b * form.e, form.h


@dataclass(frozen=True)
class CrithResult:
    plus_holds: bool
    minus_holds: bool
    x: float
    radius_plus: float | None
    radius_minus: float | None
    residual_plus: float
    residual_minus: float


def crith_conditions(form: Defect2Form, tol: float = CRITERION_TOL) -> CrithResult:
    """Circle-existence equalities for h != 0.

    plus:  c e g h - d^2 g^2 + (e^2 + h^2 + c e g / h - 1) x = 0,  x <= 3,
           giving the circle of radius sqrt(1 + x) / 2;
    minus: same with the opposite sign and x <= 1, radius sqrt(1 - x) / 2
           (x = 1 degenerates to {0} and corresponds to b e = 0).
    """
    xv = x_value(form)
    if not xv.defined:
        raise ValueError("x is undefined (negative radicand); no candidates")
    x = xv.x
    c, d, e, g, h = form.c, form.d, form.e, form.g, form.h
    base = c * e * g * h - d * d * g * g
    slope = e * e + h * h + c * e * g / h - 1.0
    res_p = base + slope * x
    res_m = base - slope * x
    plus = abs(res_p) <= tol and x <= 3.0 + 1e-12
    minus = abs(res_m) <= tol and x <= 1.0 + 1e-12
    return CrithResult(
        plus_holds=plus,
        minus_holds=minus,
        x=x,
        radius_plus=float(np.sqrt(1.0 + x) / 2.0) if plus else None,
        radius_minus=float(np.sqrt(max(1.0 - x, 0.0)) / 2.0) if minus else None,
        residual_plus=abs(res_p),
        residual_minus=abs(res_m),
    )


def two_circles_classification(form: Defect2Form, ztol: float = ZTOL) -> bool:
    """True when the curve contains two nondegenerate circles besides the
    ellipse: c = f = g = 0 while d is neither 0 nor 1."""
    return (
        form.c <= ztol
        and abs(form.f) <= ztol
        and abs(form.g) <= ztol
        and form.d > ztol
        and abs(form.d - 1.0) > ztol
    )


def ellipse_support(h: float, thetas) -> np.ndarray:
    """Support function of the ellipse with foci 0 and h, major axis 1."""
    th = np.asarray(thetas, dtype=float)
    return 0.5 * h * np.cos(th) + 0.5 * np.sqrt(
        np.cos(th) ** 2 + (1.0 - h * h) * np.sin(th) ** 2
    )


def ovular_carrier_matrix(h: float) -> np.ndarray:
    """The 3x3 matrix [[0,1,0],[0,0,sqrt(1-h^2)],[0,0,h]] carrying W(A)
    in the e = 0 branch of the radius-1/2 family."""
    m = np.zeros((3, 3), dtype=complex)
    m[0, 1] = 1.0
    m[1, 2] = np.sqrt(max(0.0, 1.0 - h * h))
    m[2, 2] = h
    return m


def nrc_half_shape(form: Defect2Form, ztol: float = ZTOL):
    """Shape of W(A) for forms containing the radius-1/2 circle.

    Returns ``(tag, value)``: ("disk", boundary radius) when h = 0;
    ("cone-half-one", None) for h = 1; ("cone-half-ellipse", None) when
    e^2 + h^2 = 1 with h strictly inside (0, 1); ("ovular-carrier", None)
    when e = 0; otherwise ("aeh-carrier", None), W(A) being the range of
    A_{e,h}.
    """
    if not has_circle_half(form, ztol):
        raise ValueError("shape dispatch applies only to radius-1/2 forms")
    b, e, h = form.b, form.e, form.h
    if h <= ztol:
        t = b * e
        return "disk", float(np.sqrt(1.0 + np.sqrt(max(0.0, 1.0 - t * t))) / 2.0)
    if abs(h - 1.0) <= ztol:
        return "cone-half-one", None
    if e <= ztol:
        return "ovular-carrier", None
    if abs(e * e + h * h - 1.0) <= ztol:
        return "cone-half-ellipse", None
    return "aeh-carrier", None


def interlacing_bound_check(form: Defect2Form):
    """Closed-form eigenvalues of the leading 5x5 block of A + A^T - I.

    They are -1 and -1 +/- sqrt(1 +/- d); for d in (0, 1) exactly one is
    positive and four are negative, which caps the number of roots of the
    theta = 0 section exceeding 1/2 via Cauchy interlacing.
    """
    d = form.d
    eigs = sorted(
        [
            -1.0,
            -1.0 + np.sqrt(1.0 + d),
            -1.0 - np.sqrt(1.0 + d),
            -1.0 + np.sqrt(max(0.0, 1.0 - d)),
            -1.0 - np.sqrt(max(0.0, 1.0 - d)),
        ]
    )
    n_neg = sum(1 for x in eigs if x < 0)
    n_pos = sum(1 for x in eigs if x > 0)
    return {
        "eigenvalues": eigs,
        "n_negative": n_neg,
        "n_positive": n_pos,
        "signature_ok": n_neg == 4 and n_pos == 1,
    }


def m5_matrix(form: Defect2Form) -> np.ndarray:
    """Leading 5x5 block of A + A^T - I for the canonical form."""
    a = form.matrix().real
    m = a + a.T - np.eye(6)
    return m[:5, :5]


def disk_classification(form: Defect2Form, ztol: float = ZTOL, crith_tol: float = CRITERION_TOL):
    """Is W(A) a circular disk?  Returns ``(tag, reason)``.

    Dispatch: nilpotent forms are disks exactly when c e g = 0 (the curve
    is then three concentric circles); the radius-1/2 family with h != 0
    is never a disk; for c = g = 0 the threshold is d >= 2h + h^2 (the
    ellipse tip h/2 + 1/2 against the outer circle); in the full-support
    case the plus-branch circle must exist and the boundary-derivative
    inequality 3x^2 + 2h^2 x + h^2 + e^2 - d^2 - 1 > 4 h x sqrt(1 + x)
    must hold strictly.
    """
    b, c, d, e, f, g, h = form.b, form.c, form.d, form.e, form.f, form.g, form.h
    if h <= ztol:
        if abs(c * e * g) <= ztol:
            return "circular-disk", "nilpotent-three-circles"
        return "non-disk", "nilpotent-no-circles"
    if c <= ztol and d <= ztol:
        # radius-1/2 family; a disk would force nilpotency
        return "non-disk", "half-circle-family-not-nilpotent"
    if c <= ztol and abs(g) <= ztol:
        if d >= 2.0 * h + h * h:
            return "circular-disk", "two-circles-ellipse-inside"
        return "non-disk", "ellipse-outside"
    if c <= ztol or abs(g) <= ztol:
        # c g = 0 without the two-circle structure: no boundary circle
        return "non-disk", "no-boundary-circle"
    xv = x_value(form)
    if not xv.defined:
        return "non-disk", "no-circle-candidates"
    crith = crith_conditions(form, tol=crith_tol)
    if not crith.plus_holds:
        return "non-disk", "no-boundary-circle"
    x = crith.x
    lhs = 3.0 * x * x + 2.0 * h * h * x + h * h + e * e - d * d - 1.0
    rhs = 4.0 * h * x * np.sqrt(1.0 + x)
    if lhs > rhs:
        return "circular-disk", "plus-circle-is-boundary"
    return "non-disk", "plus-circle-interior"


def classify_disk(pi: PartialIsometry, cluster_tol: float = pisom.ZERO_EIGEN_TOL):
    """Disk classification of a rank-three 6x6 partial isometry via its
    defect and canonical form; agrees with the curve-based oracle."""
    dft = pisom.defect(pi, cluster_tol)
    if dft <= 0:
        return "non-disk", "no-defective-eigenvalue"
    if dft == 1:
        return "non-disk", "defect-one"
    try:
        form, _, _ = pisom.canonicalize_defect2(pi, cluster_tol)
    except pisom.CanonicalFormError:
        # the real form exists whenever the curve has a circular component
        return "non-disk", "no-real-canonical-form"
    return disk_classification(form)


def oracle_agrees(form: Defect2Form, tol: float = 1e-6) -> bool:
    """Cross-check: closed-form radii match the curve-based detection."""
    closed = [r for r in circles_defect2(form) if r > tol]
    report = kipp.detect_circles(form.matrix())
    oracle = [c.radius for c in report.circles if not c.degenerate]
    if len(closed) != len(oracle):
        return False
    return all(abs(a - b) <= tol for a, b in zip(sorted(closed), sorted(oracle)))
