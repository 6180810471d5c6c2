"""Seeded property-test harness: every in-scope statement gets machine
checked against the curve-based oracle, with a report per theorem.

Each check draws deterministic samples from the hypothesis class of its
statement (rejection sampling on canonical parameters where constraints
are involved), evaluates closed form and oracle on both sides, and counts
violations.  Failures are data, not exceptions; a report with zero
failures over its trials is the machine-checked outcome.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import criteria, geometry, kipp, linalg, matpoly, pisom
from .pisom import Defect2Form

#: Tolerances for inputs that were rounded to about four decimal digits
#: (the bundled reference matrices): the constraint residuals of such
#: inputs sit around 1e-5 after projection, while the nearest competing
#: non-circle candidates stay above 4e-4.
ROUNDED_DETECT_TOL = 5e-5
ROUNDED_POINT_TOL = 1e-7
ROUNDED_DISK_TOL = 1e-4
ROUNDED_CANON_RESIDUAL = 1e-6
ROUNDED_CRITERION_TOL = 1e-3
#: Published reference values carry two displayed decimals.
REFERENCE_VALUE_TOL = 5e-3


@dataclass
class TheoremReport:
    theorem_id: str
    trials: int
    failures: int
    worst_residual: float
    witnesses: list = field(default_factory=list)
    exploratory: bool = False
    notes: str = ""

    def record(self, residual: float, ok: bool, witness=None):
        self.trials += 1
        self.worst_residual = max(self.worst_residual, float(residual))
        if not ok:
            self.failures += 1
            if witness is not None and len(self.witnesses) < 5:
                self.witnesses.append(witness)

    def to_json_dict(self) -> dict:
        return {
            "theoremId": self.theorem_id,
            "trials": self.trials,
            "failures": self.failures,
            "worstResidual": self.worst_residual,
            "witnesses": self.witnesses,
            "exploratory": self.exploratory,
            "notes": self.notes,
        }


def _new_report(theorem_id: str, exploratory: bool = False, notes: str = "") -> TheoremReport:
    return TheoremReport(
        theorem_id=theorem_id,
        trials=0,
        failures=0,
        worst_residual=0.0,
        exploratory=exploratory,
        notes=notes,
    )


def _form_witness(form: Defect2Form, **extra) -> dict:
    w = {k: getattr(form, k) for k in ("b", "c", "d", "e", "f", "g", "h")}
    w.update(extra)
    return w


# ---------------------------------------------------------------------------
# samplers on the admissibility manifold
# ---------------------------------------------------------------------------


def sample_defect2(rng: np.random.Generator, h: float | None = None, h_min: float = 0.05) -> Defect2Form:
    """Admissible Defect2Form, the d > 0 stratum.

    (b, c, d) is uniform on the nonnegative sphere octant; f = -c e / d is
    solved from orthogonality and (e, f, g, h) rescaled onto its sphere,
    which keeps both constraints exact.  With ``h=0`` the sign of g is
    normalized away (it is not pinned for nilpotent forms).
    """
    while True:
        v = np.abs(rng.standard_normal(3))
        nv = np.linalg.norm(v)
        if nv < 1e-3 or np.min(v) < 1e-3:
            continue
        b, c, d = v / nv
        e0, g0, h0 = np.abs(rng.standard_normal(3))
        g0 *= np.sign(rng.standard_normal()) or 1.0
        if h is not None:
            h0 = h
        elif h0 < h_min:
            continue
        f0 = -c * e0 / d
        scale = np.linalg.norm([e0, f0, g0, h0])
        if h is not None and h > 0:
            # keep the prescribed h: rescale only (e, f, g)
            if h >= 1.0 or e0 < 1e-3:
                continue
            t = np.sqrt(1.0 - h * h) / np.linalg.norm([e0, f0, g0])
            e1, f1, g1 = e0 * t, f0 * t, g0 * t
            h1 = h
        else:
            t = 1.0 / scale
            e1, f1, g1, h1 = e0 * t, f0 * t, g0 * t, h0 * t
        if h1 <= 1e-9:
            g1 = abs(g1)
        form = Defect2Form(b=b, c=c, d=d, e=e1, f=f1, g=g1, h=h1)
        if form.is_admissible(1e-9):
            return form


def sample_half_circle(rng: np.random.Generator, case: str) -> Defect2Form:
    """Forms satisfying the radius-1/2 criterion: case 'i' is c = d = 0,
    case 'ii' is g = h = 0."""
    if case == "i":
        while True:
            e, h = np.abs(rng.standard_normal(2))
            n2 = np.hypot(e, h)
            if n2 < 1e-3:
                continue
            e, h = e / n2, h / n2
            f = abs(rng.standard_normal()) * 0.5
            s = np.sqrt(max(0.0, 1.0 - h * h))
            if s < 1e-6:
                e, f, g = 0.0, 0.0, 0.0
            else:
                # resample (e, f, g) on the sphere of radius sqrt(1 - h^2)
                raw = np.abs(rng.standard_normal(3))
                raw[2] *= np.sign(rng.standard_normal()) or 1.0
                raw *= s / np.linalg.norm(raw)
                e, f, g = raw
            return Defect2Form(b=1.0, c=0.0, d=0.0, e=e, f=f, g=abs(g) if h <= 1e-9 else g, h=h)
    if case == "ii":
        while True:
            v = np.abs(rng.standard_normal(3))
            nv = np.linalg.norm(v)
            if nv < 1e-3 or np.min(v) < 1e-3:
                continue
            b, c, d = v / nv
            e = c / np.hypot(c, d) if c > 0 else 1.0
            f = -c * e / d
            n2 = np.hypot(e, f)
            e, f = e / n2, f / n2
            return Defect2Form(b=b, c=c, d=d, e=e, f=f, g=0.0, h=0.0)
    raise ValueError(f"unknown case {case!r}")


def sample_not_half(rng: np.random.Generator) -> Defect2Form:
    """Admissible forms violating the radius-1/2 criterion with margin:
    c, d, h bounded away from zero and g >= 0 so the criterion residual
    at rho = 1/4 cannot collapse by cancellation."""
    while True:
        form = sample_defect2(rng, h_min=0.15)
        if min(form.c, form.d) >= 0.15 and form.g >= 0.0 and form.h >= 0.15:
            return form


def sample_nilpotent(rng: np.random.Generator, stratum: str) -> Defect2Form:
    """Nilpotent (h = 0) strata: 'g0' (g = 0), 'c0' (c = 0, g free),
    'ceg-nonzero' (no circles), 'e0' (b free, c = e = 0), 'cd0'
    (c = d = 0)."""
    while True:
        if stratum == "g0":
            form = sample_defect2(rng, h=0.0)
            v = np.abs(rng.standard_normal(3))
            nv = np.linalg.norm(v)
            if nv < 1e-3 or np.min(v) < 1e-3:
                continue
            b, c, d = v / nv
            e = d / np.hypot(c, d)
            f = -c * e / d
            n2 = np.hypot(e, f)
            form = Defect2Form(b=b, c=c, d=d, e=e / n2, f=f / n2, g=0.0, h=0.0)
        elif stratum == "c0":
            d = rng.uniform(0.1, 0.95)
            b = np.sqrt(1.0 - d * d)
            e = rng.uniform(0.1, 0.95)
            g = np.sqrt(1.0 - e * e)
            form = Defect2Form(b=b, c=0.0, d=d, e=e, f=0.0, g=g, h=0.0)
        elif stratum == "ceg-nonzero":
            form = sample_defect2(rng, h=0.0)
            if min(form.c, form.e, abs(form.g)) < 0.1:
                continue
        elif stratum == "e0":
            # e = 0 (so c = 0) with d > 0 forces f = 0, hence g = 1
            d = rng.uniform(0.05, 0.95)
            b = np.sqrt(1.0 - d * d)
            form = Defect2Form(b=b, c=0.0, d=d, e=0.0, f=0.0, g=1.0, h=0.0)
        elif stratum == "cd0":
            e = rng.uniform(0.05, 0.95)
            g = np.sqrt(1.0 - e * e)
            form = Defect2Form(b=1.0, c=0.0, d=0.0, e=e, f=0.0, g=g, h=0.0)
        else:
            raise ValueError(f"unknown stratum {stratum!r}")
        if form.is_admissible(1e-9):
            return form


def sample_two_circles(rng: np.random.Generator, d_range=(0.05, 0.95)) -> Defect2Form:
    """The c = f = g = 0 family: two circles of radii sqrt(1 +/- d)/2 plus
    the ellipse with foci 0 and h."""
    d = rng.uniform(*d_range)
    b = np.sqrt(1.0 - d * d)
    h = rng.uniform(0.05, 0.95)
    e = np.sqrt(1.0 - h * h)
    return Defect2Form(b=b, c=0.0, d=d, e=e, f=0.0, g=0.0, h=h)


def sample_crith_plus(rng: np.random.Generator, max_attempts: int = 500):
    """Full-support (c d e f g h != 0) form satisfying the plus-branch
    circle equality, built by solving it for d.

    Given (c, e, h) and a g sign, orthogonality pins f = -c e / d and the
    column norms pin |g|, so the equality becomes a scalar equation in d;
    a sign change on a d-grid is bracketed and refined by bisection.
    Returns ``(form, attempts)`` or ``(None, attempts)``.
    """
    from scipy.optimize import brentq

    for attempt in range(1, max_attempts + 1):
        c = rng.uniform(0.1, 0.8)
        e = rng.uniform(0.1, 0.8)
        h = rng.uniform(0.1, 0.8)
        sgn = -1.0 if rng.uniform() < 0.5 else 1.0
        if e * e + h * h >= 0.98:
            continue

        def residual(d):
            f = -c * e / d
            g2 = 1.0 - e * e - f * f - h * h
            if g2 <= 1e-6:
                return np.nan
            g = sgn * np.sqrt(g2)
            rad = d * d + c * e * g / h
            if rad <= 1e-8:
                return np.nan
            x = np.sqrt(rad)
            if x > 3.0:
                return np.nan
            return c * e * g * h - d * d * g * g + (e * e + h * h + c * e * g / h - 1.0) * x

        d_lo = c * e / np.sqrt(max(1.0 - e * e - h * h - 1e-4, 1e-8)) + 1e-3
        d_hi = min(np.sqrt(1.0 - c * c) - 1e-3, 0.995)
        if d_lo >= d_hi:
            continue
        grid = np.linspace(d_lo, d_hi, 40)
        vals = np.array([residual(d) for d in grid])
        ok = np.isfinite(vals)
        root = None
        for i in range(len(grid) - 1):
            if ok[i] and ok[i + 1] and vals[i] * vals[i + 1] < 0:
                root = brentq(residual, grid[i], grid[i + 1], xtol=1e-14)
                break
        if root is None:
            continue
        d = float(root)
        f = -c * e / d
        g = sgn * np.sqrt(1.0 - e * e - f * f - h * h)
        b2 = 1.0 - c * c - d * d
        if b2 <= 1e-4:
            continue
        form = Defect2Form(b=float(np.sqrt(b2)), c=c, d=d, e=e, f=f, g=float(g), h=h)
        if not form.is_admissible(1e-9):
            continue
        if min(form.b, form.c, form.d, form.e, abs(form.f), abs(form.g), form.h) < 0.02:
            continue
        return form, attempt
    return None, max_attempts


def sample_defect1(rng: np.random.Generator, reducible: bool):
    """Defect-one partial isometry: column-5 diagonal entry a != 0 and
    h != 0.  With ``reducible`` the (4,5)/(4,6) entries d, f vanish, which
    is exactly the J_2-reduction case."""
    while True:
        m = np.zeros((6, 6), dtype=complex)
        m[0, 3] = 1.0
        if reducible:
            b, c, a = np.abs(rng.standard_normal(3))
            nv = np.linalg.norm([b, c, a])
            b, c, a = b / nv, c / nv, a / nv
            if a < 0.15:
                continue
            e = rng.uniform(0.1, 0.9)
            g = -c * e / a
            h2 = 1.0 - e * e - g * g
            if h2 < 0.04:
                continue
            col5 = np.array([0, b, c, 0.0, a, 0])
            col6 = np.array([0, 0, e, 0.0, g, np.sqrt(h2)])
        else:
            b, c, d, a = np.abs(rng.standard_normal(4))
            nv = np.linalg.norm([b, c, d, a])
            b, c, d, a = (x / nv for x in (b, c, d, a))
            if a < 0.15 or d < 0.1:
                continue
            raw = rng.standard_normal(3)
            u = np.array([c, d, a])
            raw -= u * (u @ raw) / (u @ u)
            if np.linalg.norm(raw) < 1e-3:
                continue
            h = rng.uniform(0.15, 0.9)
            raw *= np.sqrt(1.0 - h * h) / np.linalg.norm(raw)
            e, f, g = raw
            if abs(f) < 0.05:
                continue
            col5 = np.array([0, b, c, d, a, 0])
            col6 = np.array([0, 0, e, f, g, h])
        m[:, 4] = col5
        m[:, 5] = col6
        try:
            pi = pisom.validate(m, 1e-10)
        except pisom.NotPartialIsometryError:
            continue
        if pisom.defect(pi) == 1:
            return pi


# ---------------------------------------------------------------------------
# theorem checks
# ---------------------------------------------------------------------------


def _rotated_embedding(form: Defect2Form, rng: np.random.Generator) -> np.ndarray:
    u = linalg.random_unitary(6, rng)
    phase = np.exp(1j * rng.uniform(-np.pi, np.pi))
    return phase * (u @ form.matrix() @ u.conj().T)


def check_gww_rank3(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Circles of rank-three partial isometries are centered at the origin."""
    rep = _new_report("gww-rank3")
    child = rng.integers(0, 2**63, size=trials)
    for i in range(trials):
        sub = np.random.default_rng(child[i])
        if i % 5 == 4:
            # stratum with actual circles: admissible form, rotated
            form = sample_defect2(sub, h=0.0 if i % 2 else None)
            a = _rotated_embedding(form, sub)
        else:
            a = pisom.random_partial_isometry(6, 3, sub)
        report = kipp.detect_circles(a)
        worst = max((abs(c.center) for c in report.circles), default=0.0)
        rep.record(worst, worst <= 1e-6, witness={"seed": int(child[i])})
    return rep


def check_thm_3_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Half-circle containment plus the kernel bound force a J_2 summand."""
    rep = _new_report("thm-3-1")
    for i in range(trials):
        k = 2 + i % 3
        if i % 3 == 0:
            # constructed reducible: C = [0] + contraction
            z = rng.standard_normal((k - 1, k - 1)) + 1j * rng.standard_normal((k - 1, k - 1))
            z /= max(1.0, 1.01 * np.linalg.norm(z, 2))
            c = pisom.direct_sum(np.zeros((1, 1)), z)
        else:
            c = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
            c /= max(1.0, 1.01 * np.linalg.norm(c, 2))
            if i % 3 == 1:
                # singular stratum: zero out a column
                c[:, int(rng.integers(k))] = 0.0
        a = matpoly.assemble_from_contraction(c)
        pi = pisom.validate(a, 1e-8)
        res = matpoly.check_theorem31(pi)
        rep.record(0.0 if res["implication_ok"] else 1.0, res["implication_ok"])
    return rep


def check_prop_3_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Identically singular flipped polynomial forces ker C to meet ker C*."""
    rep = _new_report("prop-3-1")
    for i in range(trials):
        k = 2 + i % 4
        c = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
        if i % 3 == 0:
            c[:, 0] = 0.0
            c[0, :] = 0.0
        elif i % 3 == 1:
            c[:, int(rng.integers(k))] = 0.0
        res = matpoly.check_prop31(c)
        rep.record(0.0 if res["implication_ok"] else 1.0, res["implication_ok"])
    return rep


def check_thm_3_2(rng: np.random.Generator, trials: int) -> TheoremReport:
    """w(A) = 1/2 exactly for sums of J_2 blocks and zeros, and only then."""
    rep = _new_report("thm-3-2")
    for i in range(trials):
        stratum = i % 3
        if stratum == 0:
            m = 1 + int(rng.integers(3))
            blocks = [pisom.jordan_block(2)] * m + [np.zeros((6 - 2 * m, 6 - 2 * m))]
            a = pisom.direct_sum(*blocks)
            u = linalg.random_unitary(6, rng)
            a = u @ a @ u.conj().T
            expect_half = True
        elif stratum == 1:
            b = linalg.random_unitary(3, rng)
            a = np.zeros((6, 6), dtype=complex)
            a[:3, 3:] = b
            expect_half = True  # A^2 = 0 partial isometry
        else:
            a = pisom.random_partial_isometry(6, 2 + int(rng.integers(3)), rng)
            expect_half = None
        w, _ = kipp.numerical_radius(a)
        nil2 = np.linalg.norm(a @ a, 2) <= 1e-8
        is_half = abs(w - 0.5) <= 1e-9
        if expect_half is None:
            ok = is_half == nil2
            res = 0.0 if ok else abs(w - 0.5)
        else:
            ok = is_half and nil2
            res = abs(w - 0.5)
        rep.record(res, ok)
    return rep


def check_thm_5_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Defect one: a circle exists iff a J_2 splits off; it is the circle
    of radius 1/2, unique, and the range is never a disk."""
    rep = _new_report("thm-5-1")
    for i in range(trials):
        reducible = i % 2 == 0
        pi = sample_defect1(rng, reducible)
        report = kipp.detect_circles(pi.matrix)
        radii = [c.radius for c in report.circles if not c.degenerate]
        _, _, cblk = pi.block_form()
        joined = matpoly.kernel_intersection(cblk).shape[1] > 0
        if reducible:
            ok = (
                len(radii) == 1
                and abs(radii[0] - 0.5) <= 1e-7
                and joined
                and report.disk == "non-disk"
            )
            res = abs(radii[0] - 0.5) if radii else 1.0
        else:
            ok = len(radii) == 0 and not joined and report.disk == "non-disk"
            res = float(len(radii))
        rep.record(res, ok, witness={"reducible": reducible})
    return rep


def check_thm_5_2(rng: np.random.Generator, trials: int) -> TheoremReport:
    """The degenerate circle {0} lies in the curve iff b e = 0."""
    rep = _new_report("thm-5-2")
    for i in range(trials):
        stratum = i % 3
        if stratum == 0:
            form = sample_defect2(rng)
            while form.b * form.e < 0.01:
                form = sample_defect2(rng)
            expect = False
        elif stratum == 1:
            # b = 0: rescaling (c, d) onto the unit circle keeps both the
            # second column constraint and the orthogonality c e + d f = 0
            base = sample_defect2(rng)
            hyp = np.hypot(base.c, base.d)
            form = Defect2Form(
                b=0.0, c=base.c / hyp, d=base.d / hyp,
                e=base.e, f=base.f, g=base.g, h=base.h,
            )
            expect = True
        else:
            d = rng.uniform(0.2, 0.95)
            form = Defect2Form(
                b=np.sqrt(1 - d * d), c=0.0, d=d, e=0.0, f=0.0,
                g=abs(rng.standard_normal()), h=abs(rng.standard_normal()),
            )
            n2 = np.hypot(form.g, form.h)
            form = Defect2Form(b=form.b, c=0.0, d=d, e=0.0, f=0.0, g=form.g / n2, h=form.h / n2)
            expect = True  # e = 0 forces b e = 0
        got = kipp.contains_point_circle(form.matrix())
        q0 = abs(form.b * form.e) ** 2 / 64.0
        rep.record(q0 if expect else 0.0, got == expect, witness=_form_witness(form))
    return rep


def check_thm_5_3(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Closed-form radii (common roots of p and q) match the oracle."""
    rep = _new_report("thm-5-3")
    for i in range(trials):
        form = sample_defect2(rng, h=0.0 if i % 4 == 0 else None)
        closed = [r for r in criteria.circles_defect2(form) if r > 1e-9]
        oracle = [c.radius for c in kipp.detect_circles(form.matrix()).circles if not c.degenerate]
        ok = len(closed) == len(oracle) and all(
            abs(a - b) <= 1e-6 for a, b in zip(sorted(closed), sorted(oracle))
        )
        res = 0.0
        if closed and oracle and len(closed) == len(oracle):
            res = max(abs(a - b) for a, b in zip(sorted(closed), sorted(oracle)))
        elif len(closed) != len(oracle):
            res = 1.0
        rep.record(res, ok, witness=_form_witness(form, closed=closed, oracle=oracle))
    return rep


def check_lemma_6_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Nilpotent constraint identities."""
    rep = _new_report("lemma-6-1")
    for i in range(trials):
        if i % 2 == 0:
            form = sample_defect2(rng, h=0.0)
        else:
            form = sample_nilpotent(rng, "g0")
        b, c, d, e, f, g = form.b, form.c, form.d, form.e, form.f, form.g
        r1 = abs(b * b + c * c + e * e + d * d * g * g - 1.0 - b * b * e * e)
        res = r1
        ok = r1 <= 1e-12
        if abs(g) <= 1e-12:
            r2 = abs(b * b * e * e + d * d + f * f - 1.0)
            res = max(res, r2)
            ok = ok and r2 <= 1e-12
        rep.record(res, ok, witness=_form_witness(form))
    return rep


def check_thm_6_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Nilpotent: circles iff c e g = 0, then three concentric circles
    bounding a disk."""
    rep = _new_report("thm-6-1")
    for i in range(trials):
        stratum = ("g0", "c0", "ceg-nonzero")[i % 3]
        form = sample_nilpotent(rng, stratum)
        report = kipp.detect_circles(form.matrix())
        radii = [c.radius for c in report.circles if not c.degenerate]
        if stratum == "ceg-nonzero":
            ok = len(radii) == 0 and report.disk == "non-disk"
            rep.record(float(len(radii)), ok, witness=_form_witness(form))
            continue
        pq = criteria.pq_from_form(form)
        expected = sorted(
            np.sqrt(max(r, 0.0)) for r, _ in linalg.poly_real_roots(pq.q, (-1e-12, 1.0))
        )
        got = sorted(set(c.radius for c in report.circles))
        ok = (
            len(got) == len(expected)
            and all(abs(a - b) <= 1e-6 for a, b in zip(expected, got))
            and report.disk == "circular-disk"
        )
        res = abs(report.numerical_radius - expected[-1]) if expected else 1.0
        ok = ok and res <= 1e-7
        rep.record(res, ok, witness=_form_witness(form))
    return rep


def check_prop_6_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Nilpotent radii: ordering around 1/2, the f(1/4) identity, and the
    middle-radius criterion."""
    rep = _new_report("prop-6-1")
    for i in range(trials):
        stratum = ("g0", "cd0", "c0")[i % 3]
        form = sample_nilpotent(rng, stratum)
        while stratum == "c0" and min(abs(form.g), form.d) < 0.3:
            # keep d^2 g^2 away from zero so the middle radius is
            # unambiguously off 1/2
            form = sample_nilpotent(rng, "c0")
        pq = criteria.pq_from_form(form)
        rhos = sorted(r for r, m in linalg.poly_real_roots(pq.q, (-1e-9, 1.0)) for _ in range(m))
        if len(rhos) != 3:
            rep.record(1.0, False, witness=_form_witness(form, rhos=rhos))
            continue
        r = [np.sqrt(max(x, 0.0)) for x in rhos]
        ident = abs(pq.q_at(0.25) + form.d**2 * form.g**2 / 64.0)
        ok = r[0] <= 0.5 + 1e-9 and r[2] >= 0.5 - 1e-9 and ident <= 1e-12
        mid_is_half = abs(r[1] - 0.5) <= 1e-9
        crit = abs(form.g) <= 1e-9 or (form.c <= 1e-9 and form.d <= 1e-9)
        if stratum == "c0":
            ok = ok and not mid_is_half and not crit
        else:
            ok = ok and mid_is_half and crit
        sep = min(abs(r[1] - r[0]), abs(r[2] - r[1]))
        if sep <= 1e-9:
            ok = ok and max(abs(x - 0.5) for x in r) <= 1e-9
        rep.record(ident, ok, witness=_form_witness(form))
    return rep


def check_cor_6_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Closed-form radii for h = b e = c e g = 0 versus q-roots and oracle."""
    rep = _new_report("cor-6-1")
    for i in range(trials):
        stratum = i % 3
        if stratum == 0:
            form = sample_nilpotent(rng, "e0")
        elif stratum == 1:
            c = rng.uniform(0.1, 0.9)
            d = np.sqrt(1.0 - c * c)
            form = Defect2Form(b=0.0, c=c, d=d, e=d, f=-c, g=0.0, h=0.0)
        else:
            e = rng.uniform(0.05, 0.95)
            form = Defect2Form(
                b=0.0, c=0.0, d=1.0, e=e, f=0.0, g=np.sqrt(1.0 - e * e), h=0.0
            )
        s = form.b**2 + form.c**2 + form.e**2
        disc = np.sqrt(max(0.0, 5.0 - 4.0 * s))
        closed = sorted(
            [0.0, 0.5 * np.sqrt((3.0 - disc) / 2.0), 0.5 * np.sqrt((3.0 + disc) / 2.0)]
        )
        pq = criteria.pq_from_form(form)
        qroots = sorted(
            np.sqrt(max(r, 0.0)) for r, m in linalg.poly_real_roots(pq.q, (-1e-9, 1.0)) for _ in range(m)
        )
        res_closed = max(abs(a - b) for a, b in zip(closed, qroots)) if len(qroots) == 3 else 1.0
        oracle = sorted(c2.radius for c2 in kipp.detect_circles(form.matrix()).circles)
        res_oracle = (
            max(abs(a - b) for a, b in zip(closed, oracle)) if len(oracle) == 3 else 1.0
        )
        ok = res_closed <= 1e-12 and res_oracle <= 1e-6
        rep.record(max(res_closed, res_oracle), ok, witness=_form_witness(form))
    return rep


def check_thm_7_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Radius-1/2 containment iff c = d = 0 or g = h = 0."""
    rep = _new_report("thm-7-1")
    for i in range(trials):
        stratum = i % 3
        if stratum == 0:
            form = sample_half_circle(rng, "i")
        elif stratum == 1:
            form = sample_half_circle(rng, "ii")
        else:
            form = sample_not_half(rng)
        expect = criteria.has_circle_half(form)
        got = kipp.contains_circle(form.matrix(), 0.5, tol=1e-7)
        pq = criteria.pq_from_form(form)
        pq_zero = max(abs(pq.p_at(0.25)), abs(pq.q_at(0.25)))
        ok = got == expect and (pq_zero <= 1e-12) == expect
        rep.record(pq_zero if expect else 0.0, ok, witness=_form_witness(form))
    return rep


def check_prop_7_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Radius-1/2 forms reduce to J_2 + A_{be,h}: curves must coincide."""
    rep = _new_report("prop-7-1")
    probes_l = np.linspace(-0.95, 0.95, 5)
    probes_t = linalg.theta_grid(64)
    for i in range(trials):
        form = sample_half_circle(rng, "i" if i % 2 == 0 else "ii")
        t, h = criteria.reduce_j2(form)
        if t * t + h * h > 1.0:
            rep.record(1.0, False, witness=_form_witness(form))
            continue
        reduced = pisom.direct_sum(pisom.jordan_block(2), pisom.ath_matrix(t, h))
        pa = kipp.kippenhahn_polynomial(form.matrix())
        pb = kipp.kippenhahn_polynomial(reduced)
        worst = 0.0
        for lam in probes_l:
            la = np.full_like(probes_t, lam)
            worst = max(worst, float(np.max(np.abs(pa.evaluate(la, probes_t) - pb.evaluate(la, probes_t)))))
        rep.record(worst, worst <= 1e-8, witness=_form_witness(form, t=t))
    return rep


def check_prop_7_2(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Unitary reducibility of A_{t,h} happens exactly at t = 0, t = 1 or
    t^2 + h^2 = 1."""
    rep = _new_report("prop-7-2")
    for i in range(trials):
        stratum = i % 4
        if stratum == 0:
            t, h, expect = 0.0, rng.uniform(0.1, 0.9), False
        elif stratum == 1:
            t, h, expect = 1.0, 0.0, False
        elif stratum == 2:
            t = rng.uniform(0.1, 0.9)
            h, expect = np.sqrt(1.0 - t * t), False
        else:
            t = rng.uniform(0.1, 0.85)
            h = rng.uniform(0.1, np.sqrt(max(0.0, 0.95 - t * t)))
            expect = True
        a = pisom.ath_matrix(t, h)
        b, c = a[:2, 2:], a[2:, 2:]
        got = pisom.is_unitarily_irreducible_blockform(b, c)
        rep.record(0.0 if got == expect else 1.0, got == expect, witness={"t": t, "h": h})
    return rep


def check_prop_7_3(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Curve structure in the radius-1/2 family."""
    rep = _new_report("prop-7-3")
    probes_t = linalg.theta_grid(32)
    for i in range(trials):
        stratum = i % 3
        if stratum == 0:
            # c = d = e = 0: {0}, the half circle, and the 3x3 carrier curve
            h = rng.uniform(0.05, 0.95)
            form = Defect2Form(b=1.0, c=0.0, d=0.0, e=0.0, f=np.sqrt(1 - h * h), g=0.0, h=h)
            pa = kipp.kippenhahn_polynomial(form.matrix())
            carrier = criteria.ovular_carrier_matrix(h)
            pj = kipp.kippenhahn_polynomial(pisom.jordan_block(2))
            pc = kipp.kippenhahn_polynomial(carrier)
            worst = 0.0
            for lam in (-0.8, -0.3, 0.2, 0.7):
                la = np.full_like(probes_t, lam)
                lhs = pa.evaluate(la, probes_t)
                rhs = -lam * pj.evaluate(la, probes_t) * pc.evaluate(la, probes_t)
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
            report = kipp.detect_circles(form.matrix())
            radii = sorted(c2.radius for c2 in report.circles)
            ok = worst <= 1e-8 and any(abs(r - 0.5) <= 1e-7 for r in radii) and radii[0] <= 1e-9
            rep.record(worst, ok, witness={"h": h, "radii": radii})
        elif stratum == 1:
            # c = d = 0, e^2 + h^2 = 1: two half circles plus the ellipse
            h = rng.uniform(0.05, 0.9)
            e = np.sqrt(1.0 - h * h)
            form = Defect2Form(b=1.0, c=0.0, d=0.0, e=e, f=0.0, g=0.0, h=h)
            pa = kipp.kippenhahn_polynomial(form.matrix())
            pj = kipp.kippenhahn_polynomial(pisom.jordan_block(2))
            pe = kipp.kippenhahn_polynomial(np.array([[0.0, e], [0.0, h]], dtype=complex))
            worst = 0.0
            for lam in (-0.8, -0.3, 0.2, 0.7):
                la = np.full_like(probes_t, lam)
                lhs = pa.evaluate(la, probes_t)
                rhs = pj.evaluate(la, probes_t) ** 2 * pe.evaluate(la, probes_t)
                worst = max(worst, float(np.max(np.abs(lhs - rhs))))
            radii = [c2.radius for c2 in kipp.detect_circles(form.matrix()).circles if not c2.degenerate]
            ok = worst <= 1e-8 and len(radii) == 1 and abs(radii[0] - 0.5) <= 1e-7
            rep.record(worst, ok, witness={"h": h})
        else:
            # g = h = 0: radii sqrt(1 -/+ sqrt(1 - (be)^2))/2 around 1/2
            form = sample_half_circle(rng, "ii")
            t = form.b * form.e
            disc = np.sqrt(max(0.0, 1.0 - t * t))
            expected = sorted(
                [np.sqrt((1.0 - disc)) / 2.0, 0.5, np.sqrt((1.0 + disc)) / 2.0]
            )
            got = sorted(c2.radius for c2 in kipp.detect_circles(form.matrix()).circles if not c2.degenerate)
            got = sorted(set(round(r, 9) for r in got))
            expected = sorted(set(round(r, 9) for r in expected))
            ok = len(got) == len(expected) and all(
                abs(a - b) <= 1e-6 for a, b in zip(got, expected)
            )
            res = max((abs(a - b) for a, b in zip(got, expected)), default=1.0) if ok else 1.0
            rep.record(res, ok, witness=_form_witness(form))
    return rep


def check_thm_7_2(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Shape dispatch for the radius-1/2 family, against support functions."""
    rep = _new_report("thm-7-2")
    grid = linalg.theta_grid(128)
    for i in range(trials):
        stratum = i % 5
        if stratum == 0:
            form = sample_half_circle(rng, "ii")
        elif stratum == 1:
            form = Defect2Form(b=1.0, c=0.0, d=0.0, e=0.0, f=0.0, g=0.0, h=1.0)
        elif stratum == 2:
            h = rng.uniform(0.1, 0.9)
            form = Defect2Form(b=1.0, c=0.0, d=0.0, e=np.sqrt(1 - h * h), f=0.0, g=0.0, h=h)
        elif stratum == 3:
            h = rng.uniform(0.1, 0.9)
            form = Defect2Form(b=1.0, c=0.0, d=0.0, e=0.0, f=np.sqrt(1 - h * h), g=0.0, h=h)
        else:
            while True:
                h = rng.uniform(0.1, 0.9)
                e = rng.uniform(0.1, 0.9)
                if abs(e * e + h * h - 1.0) > 0.02 and e * e + h * h < 0.98:
                    break
            g = np.sqrt(1.0 - e * e - h * h)
            form = Defect2Form(b=1.0, c=0.0, d=0.0, e=e, f=0.0, g=g, h=h)
        tag, value = criteria.nrc_half_shape(form)
        sup = kipp.support_function(form.matrix(), grid)
        if tag == "disk":
            res = max(
                float(np.max(np.abs(sup - value))),
                abs(kipp.numerical_radius(form.matrix())[0] - value),
            )
            ok = res <= 1e-9
        elif tag == "cone-half-one":
            res = float(np.max(np.abs(sup - np.maximum(0.5, np.cos(grid)))))
            ok = res <= 1e-8
        elif tag == "cone-half-ellipse":
            target = np.maximum(0.5, criteria.ellipse_support(form.h, grid))
            res = float(np.max(np.abs(sup - target)))
            ok = res <= 1e-8
        elif tag == "ovular-carrier":
            target = kipp.support_function(criteria.ovular_carrier_matrix(form.h), grid)
            res = float(np.max(np.abs(sup - target)))
            ok = res <= 1e-8
        else:
            target = kipp.support_function(pisom.ath_matrix(form.e, form.h), grid)
            res = float(np.max(np.abs(sup - target)))
            ok = res <= 1e-8
        expected_tag = {0: "disk", 1: "cone-half-one", 2: "cone-half-ellipse", 3: "ovular-carrier", 4: "aeh-carrier"}[stratum]
        ok = ok and tag == expected_tag
        rep.record(res, ok, witness=_form_witness(form, tag=tag))
    return rep


def check_cor_7_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Radius-1/2 family: circular disk iff nilpotent."""
    rep = _new_report("cor-7-1")
    for i in range(trials):
        if i % 2 == 0:
            form = sample_half_circle(rng, "ii")
            expect = True
        else:
            form = sample_half_circle(rng, "i")
            if form.h < 0.05:
                continue
            expect = False
        tag, _ = criteria.disk_classification(form)
        report = kipp.detect_circles(form.matrix())
        ok = (tag == "circular-disk") == expect and (report.disk == "circular-disk") == expect
        rep.record(0.0 if ok else 1.0, ok, witness=_form_witness(form))
    return rep


def check_prop_8_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Plus/minus circle equalities match the oracle radii sqrt(1+-x)/2."""
    rep = _new_report("prop-8-1")
    for i in range(trials):
        stratum = i % 3
        if stratum == 0:
            form, _ = sample_crith_plus(rng)
            if form is None:
                rep.record(1.0, False, witness={"sampler": "crith-plus exhausted"})
                continue
        elif stratum == 1:
            form = sample_two_circles(rng)
        else:
            form = sample_not_half(rng)
        crith = criteria.crith_conditions(form)
        oracle = [c.radius for c in kipp.detect_circles(form.matrix()).circles if not c.degenerate]
        expected = []
        if crith.plus_holds:
            expected.append(crith.radius_plus)
        if crith.minus_holds and crith.x < 1.0 - 1e-9:
            expected.append(crith.radius_minus)
        ok = len(expected) == len(oracle) and all(
            abs(a - b) <= 1e-6 for a, b in zip(sorted(expected), sorted(oracle))
        )
        res = 1.0 if not ok else (
            max((abs(a - b) for a, b in zip(sorted(expected), sorted(oracle))), default=0.0)
        )
        rep.record(res, ok, witness=_form_witness(form, expected=expected, oracle=oracle))
    return rep


def check_thm_8_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """c = g = 0 family: circles sqrt(1 +/- d)/2 plus the (0, h) ellipse."""
    rep = _new_report("thm-8-1")
    probes_t = linalg.theta_grid(32)
    for _ in range(trials):
        form = sample_two_circles(rng)
        expected = sorted([np.sqrt(1.0 - form.d) / 2.0, np.sqrt(1.0 + form.d) / 2.0])
        got = sorted(c2.radius for c2 in kipp.detect_circles(form.matrix()).circles if not c2.degenerate)
        ok = len(got) == 2 and all(abs(a - b) <= 1e-6 for a, b in zip(expected, got))
        res = max((abs(a - b) for a, b in zip(expected, got)), default=1.0)
        # ellipse factor: P_A = P_(2x2 ellipse block) * P_(4x4 two-circle block)
        pa = kipp.kippenhahn_polynomial(form.matrix())
        pe = kipp.kippenhahn_polynomial(np.array([[0.0, form.e], [0.0, form.h]], dtype=complex))
        b4 = np.zeros((4, 4), dtype=complex)
        b4[0, 2] = 1.0
        b4[1, 3] = form.b
        b4[2, 3] = form.d
        pb = kipp.kippenhahn_polynomial(b4)
        worst = 0.0
        for lam in (-0.7, -0.2, 0.4, 0.8):
            la = np.full_like(probes_t, lam)
            worst = max(
                worst,
                float(np.max(np.abs(pa.evaluate(la, probes_t) - pe.evaluate(la, probes_t) * pb.evaluate(la, probes_t)))),
            )
        ok = ok and worst <= 1e-8
        rep.record(max(res, worst), ok, witness=_form_witness(form))
    return rep


def check_cor_8_1(rng: np.random.Generator, trials: int) -> TheoremReport:
    """c = g = 0 family is a disk iff d >= 2h + h^2."""
    rep = _new_report("cor-8-1")
    for _ in range(trials):
        while True:
            form = sample_two_circles(rng)
            margin = form.d - (2.0 * form.h + form.h * form.h)
            if abs(margin) >= 1e-3:
                break
        expect = margin >= 0.0
        tag, _ = criteria.disk_classification(form)
        report = kipp.detect_circles(form.matrix())
        w = report.numerical_radius
        target = np.sqrt(1.0 + form.d) / 2.0 if expect else (1.0 + form.h) / 2.0
        res = abs(w - target)
        ok = (
            (tag == "circular-disk") == expect
            and (report.disk == "circular-disk") == expect
            and res <= 1e-7
        )
        rep.record(res, ok, witness=_form_witness(form))
    return rep


def check_thm_8_2(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Two nondegenerate circles happen exactly for c = f = g = 0, d != 0, 1."""
    rep = _new_report("thm-8-2")
    for i in range(trials):
        stratum = i % 3
        if stratum == 0:
            form = sample_two_circles(rng)
            expect = True
        elif stratum == 1:
            form = sample_not_half(rng)
            expect = False
        else:
            h = rng.uniform(0.1, 0.9)
            form = Defect2Form(b=0.0, c=0.0, d=1.0, e=np.sqrt(1 - h * h), f=0.0, g=0.0, h=h)
            expect = False  # d = 1 degenerates one circle
        got = criteria.two_circles_classification(form)
        radii = [c2.radius for c2 in kipp.detect_circles(form.matrix()).circles if not c2.degenerate and abs(c2.radius - 0.5) > 1e-7]
        ok = got == expect and (len(radii) == 2) == expect
        rep.record(0.0 if ok else 1.0, ok, witness=_form_witness(form, radii=radii))
    return rep


def check_thm_8_3(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Full-support disk criterion against the numerical-radius oracle,
    with the equality gray zone excluded by the sampler."""
    rep = _new_report("thm-8-3")
    attempts_total = 0
    for _ in range(trials):
        while True:
            form, attempts = sample_crith_plus(rng)
            attempts_total += attempts
            if form is None:
                break
            crith = criteria.crith_conditions(form)
            if not crith.plus_holds:
                continue
            x = crith.x
            lhs = 3 * x * x + 2 * form.h**2 * x + form.h**2 + form.e**2 - form.d**2 - 1.0
            rhs = 4.0 * form.h * x * np.sqrt(1.0 + x)
            if abs(lhs - rhs) > 1e-6:
                break
        if form is None:
            rep.record(1.0, False, witness={"sampler": "exhausted"})
            continue
        tag, _ = criteria.disk_classification(form)
        w, _ = kipp.numerical_radius(form.matrix())
        gap = abs(w - crith.radius_plus)
        oracle_disk = gap <= 1e-7
        ok = (tag == "circular-disk") == oracle_disk
        rep.record(0.0 if ok else gap, ok, witness=_form_witness(form, w=w, r=crith.radius_plus))
    rep.notes = f"sampler attempts: {attempts_total}"
    return rep


def check_gww_rank4_open(rng: np.random.Generator, trials: int) -> TheoremReport:
    """Exploratory only: rank-four 6x6 partial isometries (open case).
    Records the largest off-origin circle center seen; never asserts."""
    rep = _new_report("gww-rank4-open", exploratory=True, notes="open case; report only")
    worst = 0.0
    for _ in range(trials):
        a = pisom.random_partial_isometry(6, 4, rng)
        report = kipp.detect_circles(a)
        worst = max(worst, max((abs(c.center) for c in report.circles), default=0.0))
        rep.record(worst, True)
    return rep


CHECKS = {
    "gww-rank3": check_gww_rank3,
    "thm-3-1": check_thm_3_1,
    "prop-3-1": check_prop_3_1,
    "thm-3-2": check_thm_3_2,
    "thm-5-1": check_thm_5_1,
    "thm-5-2": check_thm_5_2,
    "thm-5-3": check_thm_5_3,
    "lemma-6-1": check_lemma_6_1,
    "thm-6-1": check_thm_6_1,
    "prop-6-1": check_prop_6_1,
    "cor-6-1": check_cor_6_1,
    "thm-7-1": check_thm_7_1,
    "prop-7-1": check_prop_7_1,
    "prop-7-2": check_prop_7_2,
    "prop-7-3": check_prop_7_3,
    "thm-7-2": check_thm_7_2,
    "cor-7-1": check_cor_7_1,
    "prop-8-1": check_prop_8_1,
    "thm-8-1": check_thm_8_1,
    "cor-8-1": check_cor_8_1,
    "thm-8-2": check_thm_8_2,
    "thm-8-3": check_thm_8_3,
    "gww-rank4-open": check_gww_rank4_open,
}


def run_suite(seed: int, trials_per_theorem: int = 50, theorem: str | None = None):
    """Run the theorem checks; deterministic per seed.

    Every check gets its own child generator spawned from the seed, so
    single-theorem runs reproduce exactly what the full suite would do
    for that theorem.
    """
    if trials_per_theorem < 1:
        raise ValueError("need at least one trial per theorem")
    ids = [theorem] if theorem else list(CHECKS)
    if theorem and theorem not in CHECKS:
        raise KeyError(f"unknown theorem id {theorem!r}; known: {', '.join(CHECKS)}")
    reports = []
    for tid in ids:
        index = list(CHECKS).index(tid)
        child = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(index,)))
        reports.append(CHECKS[tid](child, trials_per_theorem))
    return reports


def suite_to_json(reports) -> str:
    return json.dumps([r.to_json_dict() for r in reports], indent=2, sort_keys=True)


def suite_table(reports) -> str:
    lines = ["theorem              trials  failures  worst residual"]
    for r in reports:
        flag = " (exploratory)" if r.exploratory else ""
        lines.append(
            f"{r.theorem_id:<20} {r.trials:>6}  {r.failures:>8}  {r.worst_residual:.3e}{flag}"
        )
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# bundled reference configurations
# ---------------------------------------------------------------------------


def analyze_rounded(a: np.ndarray):
    """Detection pipeline for matrices given to ~4 decimal digits:
    project to an exact partial isometry, then detect with tolerances
    matched to the rounding scale."""
    p = pisom.project_to_partial_isometry(a)
    report = kipp.detect_circles(
        p,
        tol=ROUNDED_DETECT_TOL,
        disk_tol=ROUNDED_DISK_TOL,
        point_tol=ROUNDED_POINT_TOL,
    )
    return p, report


def reproduce_reference_examples():
    """Compare the six bundled configurations against their published
    reference values; returns (rows, all_ok)."""
    from . import refdata

    rows = []

    def add(config, quantity, expected, computed, tol):
        ok = bool(abs(computed - expected) <= tol) if isinstance(expected, float) else bool(computed == expected)
        rows.append(
            {
                "config": config,
                "quantity": quantity,
                "expected": expected,
                "computed": computed,
                "tol": tol,
                "ok": ok,
            }
        )

    for idx, ref_radius, placement in (
        (1, 0.48, "interior"),
        (2, 0.41, "intermediate"),
        (3, 0.73, "exterior-disk"),
    ):
        name = f"example{idx}"
        a, _ = refdata.reference_matrix(name)
        p, report = analyze_rounded(a)
        radii = [c.radius for c in report.circles if not c.degenerate]
        add(name, "circle count", 1, len(radii), 0)
        r = radii[0] if radii else float("nan")
        add(name, "circle radius", ref_radius, r, REFERENCE_VALUE_TOL)
        w = report.numerical_radius
        if placement == "interior":
            add(name, "not outer (w - r)", True, bool(w - r > REFERENCE_VALUE_TOL), 0)
        elif placement == "intermediate":
            # at theta = 0 the envelope points are the horizontal extremes
            # of the nested ovals; the middle pair must be the circle
            trace = kipp.trace_curve(p, 64)
            crossings = np.sort(trace.points[np.argmin(np.abs(trace.thetas)), :].real)
            mid_ok = bool(
                abs(crossings[1] + r) <= REFERENCE_VALUE_TOL
                and abs(crossings[4] - r) <= REFERENCE_VALUE_TOL
            )
            add(name, "intermediate of three nested", True, mid_ok, 0)
        else:
            add(name, "disk classification", "circular-disk", report.disk, 0)
            add(name, "outer (|w - r|)", 0.0, abs(w - r), 1e-3)

    for idx, e_val, expect_disk in ((1, 0.3, False), (2, 0.6, False), (3, 0.99, True)):
        name = f"figure{idx}"
        a, _ = refdata.reference_matrix(name)
        d = np.sqrt(1.0 - 0.2**2)
        report = kipp.detect_circles(a)
        radii = sorted(c.radius for c in report.circles if not c.degenerate)
        expected = sorted([np.sqrt(1.0 - d) / 2.0, np.sqrt(1.0 + d) / 2.0])
        add(name, "circle count", 2, len(radii), 0)
        if len(radii) == 2:
            add(name, "radius gap", 0.0, max(abs(x - y) for x, y in zip(radii, expected)), 1e-6)
        add(name, "disk classification", "circular-disk" if expect_disk else "non-disk", report.disk, 0)
        # ellipse focus recovery from traced points
        trace = kipp.trace_curve(a, 720)
        pts = trace.points.ravel()
        keep = np.ones(len(pts), dtype=bool)
        for r in expected:
            keep &= np.abs(np.abs(pts) - r) > 1e-3
        fit_pts = geometry.points_to_xy(pts[keep])
        h = float(np.sqrt(1.0 - e_val * e_val))
        try:
            f1, f2 = geometry.fit_ellipse_foci(fit_pts)
            foci = sorted([f1, f2], key=lambda p: p[0])
            err = max(
                np.hypot(foci[0][0] - 0.0, foci[0][1]),
                np.hypot(foci[1][0] - h, foci[1][1]),
            )
        except ValueError:
            err = float("inf")
        add(name, "ellipse focus recovery", 0.0, err, 1e-3)

    all_ok = all(r["ok"] for r in rows)
    return rows, all_ok


def reference_table(rows) -> str:
    lines = ["config    quantity                        expected      computed      ok"]
    for r in rows:
        exp = r["expected"]
        comp = r["computed"]
        exp_s = f"{exp:.6g}" if isinstance(exp, float) else str(exp)
        comp_s = f"{comp:.6g}" if isinstance(comp, float) else str(comp)
        lines.append(
            f"{r['config']:<9} {r['quantity']:<31} {exp_s:<13} {comp_s:<13} {'pass' if r['ok'] else 'FAIL'}"
        )
    return "\n".join(lines)
