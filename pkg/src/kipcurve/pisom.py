"""Partial isometries: validation, projection, compression, canonical forms.

A partial isometry preserves norms on the orthogonal complement of its
kernel; equivalently all its singular values lie in {0, 1}.  With the kernel
spanned by the first m coordinates it takes the block form

    [ 0  B ]
    [ 0  C ]        with  B*B + C*C = I.

Rank-three partial isometries live (after compression) in C^{6x6} and admit
two canonical forms under circular equivalence (unitary similarity combined
with multiplication by a unimodular scalar): a general one parametrized by
``CanonicalForm6`` and, when the zero eigenvalue has defect >= 2, the
sparser real form encoded by ``Defect2Form``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg

#: Eigenvalues within this distance of zero count as the zero eigenvalue
#: when algebraic multiplicities are read off a Schur diagonal.
ZERO_EIGEN_TOL = 1e-6
#: Structural zero threshold for canonical-form parameters.
CANON_ZTOL = 1e-9
#: Max-norm residual guaranteed between a canonical form and the
#: circularly-equivalent transform of its input.
CANON_RESIDUAL = 1e-8


class NotPartialIsometryError(ValueError):
    """Input is not a partial isometry within tolerance.

    Carries ``deviation``: the largest distance of a singular value
    from the set {0, 1}.
    """

    def __init__(self, deviation: float, tol: float):
        self.deviation = deviation
        super().__init__(
            f"singular values deviate from {{0, 1}} by {deviation:.3e} (tolerance {tol:.0e})"
        )


class AmbiguousSingularValueError(ValueError):
    """A singular value sits too close to 1/2 to round to 0 or 1."""


class CanonicalFormError(ValueError):
    """The requested canonical form does not exist for this input."""


def jordan_block(n: int) -> np.ndarray:
    """Nilpotent n x n Jordan block J_n."""
    return np.eye(n, k=1, dtype=complex)


def direct_sum(*blocks) -> np.ndarray:
    out_n = sum(np.atleast_2d(b).shape[0] for b in blocks)
    out = np.zeros((out_n, out_n), dtype=complex)
    i = 0
    for b in blocks:
        b = np.atleast_2d(np.asarray(b, dtype=complex))
        k = b.shape[0]
        out[i : i + k, i : i + k] = b
        i += k
    return out


@dataclass(frozen=True)
class PartialIsometry:
    """Validated partial isometry with its rank and kernel dimension."""

    matrix: np.ndarray
    rank: int
    kernel_dim: int
    tol: float

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    @cached_property
    def _block(self):
        a = self.matrix
        _, _, vh = np.linalg.svd(a)
        v = vh.conj().T
        # kernel vectors (smallest singular values) first
        w = np.hstack([v[:, self.rank :], v[:, : self.rank]])
        t = w.conj().T @ a @ w
        return w, t

    def block_form(self):
        """Blocks ``(w, b, c)`` with ``w* A w = [[0, b], [0, c]]``.

        ``w`` is unitary with its first ``kernel_dim`` columns spanning
        ker A; ``b`` is kernel_dim x rank and ``c`` is rank x rank.
        """
        w, t = self._block
        m = self.kernel_dim
        return w, t[:m, m:].copy(), t[m:, m:].copy()


def validate(m, tol: float = 1e-10) -> PartialIsometry:
    """Check that ``m`` is a partial isometry and wrap it.

    The rank is the number of singular values above 1/2; every singular
    value must be within ``tol`` of 0 or 1, otherwise
    ``NotPartialIsometryError`` is raised carrying the deviation.
    """
    a = linalg.as_square_matrix(m)
    s = np.linalg.svd(a, compute_uv=False)
    deviation = float(np.max(np.minimum(np.abs(s), np.abs(s - 1.0)))) if s.size else 0.0
    if deviation > tol:
        raise NotPartialIsometryError(deviation, tol)
    rank = int(np.sum(s > 0.5))
    return PartialIsometry(matrix=a, rank=rank, kernel_dim=a.shape[0] - rank, tol=tol)


def project_to_partial_isometry(m, gap: float = 0.1) -> np.ndarray:
    """Nearest partial isometry, for inputs whose singular values are
    already close to {0, 1}.

    Singular values are snapped to 0 or 1 while both singular bases are
    kept, which makes the map idempotent.  Raises
    ``AmbiguousSingularValueError`` when a singular value lies within
    ``gap`` of 1/2 and the rounding direction would be a guess.
    """
    a = linalg.as_square_matrix(m)
    u, s, vh = np.linalg.svd(a)
    if np.any(np.abs(s - 0.5) < gap):
        worst = s[np.argmin(np.abs(s - 0.5))]
        raise AmbiguousSingularValueError(
            f"singular value {worst:.6f} is within {gap} of 1/2"
        )
    r = int(np.sum(s > 0.5))
    return u[:, :r] @ vh[:r, :]


def compress_to_active_subspace(a) -> np.ndarray:
    """Restrict ``a`` to ran(A) + ran(A*), its smallest reducing subspace.

    For a rank-k matrix the result has size n <= 2k and carries the whole
    Kippenhahn curve up to a power of lambda; the discarded complement is
    ker A intersected with ker A*, on which A acts as zero.
    """
    m = linalg.as_square_matrix(a)
    q = linalg.orthonormal_columns(np.hstack([m, m.conj().T]))
    return q.conj().T @ m @ q


def defect(a, cluster_tol: float = ZERO_EIGEN_TOL) -> int:
    """Algebraic minus geometric multiplicity of the eigenvalue 0.

    The algebraic multiplicity is dim ker A^n computed from singular
    values, which stays exact under unitary conjugation (Schur-diagonal
    clustering does not: a Jordan chain of length m smears its zero over
    O(eps^(1/m))).  Nonzero eigenvalues should stay above ~1e-2 in modulus
    to be resolved.  The geometric multiplicity is the numerical kernel
    dimension at ``cluster_tol``.
    """
    if isinstance(a, PartialIsometry):
        m = a.matrix
        geo = a.kernel_dim
    else:
        m = linalg.as_square_matrix(a)
        s = np.linalg.svd(m, compute_uv=False)
        smax = s[0] if s.size else 0.0
        geo = int(np.sum(s <= max(cluster_tol, linalg.RANK_TOL * smax)))
    alg = linalg.algebraic_multiplicity(m, 0.0, m.shape[0])
    return alg - geo


def random_partial_isometry(n: int, rank: int, rng: np.random.Generator) -> np.ndarray:
    """Random n x n partial isometry with the first n-rank columns zero.

    The last ``rank`` columns are Haar-orthonormal, so the isometry
    condition holds to machine precision by construction.
    """
    z = rng.standard_normal((n, rank)) + 1j * rng.standard_normal((n, rank))
    q, r = np.linalg.qr(z)
    q = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    out = np.zeros((n, n), dtype=complex)
    out[:, n - rank :] = q
    return out


def random_rank3(seed: int) -> PartialIsometry:
    """Deterministic random 6x6 rank-three partial isometry (zero first
    three columns, orthonormal last three)."""
    rng = np.random.default_rng(seed)
    return validate(random_partial_isometry(6, 3, rng), tol=1e-10)


def is_unitarily_irreducible_blockform(b, c, tol: float = 1e-8) -> bool:
    """Unitary irreducibility of the block form [[0, B], [0, C]].

    True iff B has full rank and C is unitarily irreducible.  The latter is
    the commutant test: any X commuting with both C and C* must be scalar,
    i.e. the stacked Sylvester system has a one-dimensional null space.
    """
    bm = np.atleast_2d(np.asarray(b, dtype=complex))
    cm = linalg.as_square_matrix(c)
    s = np.linalg.svd(bm, compute_uv=False)
    if s.size == 0 or s[-1] <= tol:
        return False
    n = cm.shape[0]
    eye = np.eye(n)
    rows = [np.kron(eye, m) - np.kron(m.T, eye) for m in (cm, cm.conj().T)]
    ns = linalg.null_space(np.vstack(rows), rank_tol=tol)
    return ns.shape[1] == 1


# ---------------------------------------------------------------------------
# canonical forms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalForm6:
    """Parameters of the general rank-three 6x6 canonical form.

    The matrix is zero outside the 3x3 upper right block

        [ sqrt(1-a^2)  b*a        d*a  ]
        [ 0            v          0    ]
        [ 0            c          e    ]

    and the upper-triangular lower right block with diagonal
    (a, lambda2, lambda3) and strict upper part
    (-b sqrt(1-a^2), -d sqrt(1-a^2), f).  Unit and mutually orthogonal
    columns 4, 5, 6 are what tie the parameters together.
    """

    a: float
    b: float
    c: float
    v: float
    d: complex
    e: complex
    f: complex
    lambda2: complex
    lambda3: complex

    def matrix(self) -> np.ndarray:
        a, b, c, v = self.a, self.b, self.c, self.v
        d, e, f = self.d, self.e, self.f
        s = np.sqrt(max(0.0, 1.0 - a * a))
        m = np.zeros((6, 6), dtype=complex)
        m[0, 3] = s
        m[0, 4] = b * a
        m[0, 5] = d * a
        m[1, 4] = v
        m[2, 4] = c
        m[2, 5] = e
        m[3, 3] = a
        m[3, 4] = -b * s
        m[3, 5] = -d * s
        m[4, 4] = self.lambda2
        m[4, 5] = f
        m[5, 5] = self.lambda3
        return m

    def orthogonality_residuals(self):
        """Residuals of the three column constraints (all ~0 when valid)."""
        r1 = self.b * self.d + self.c * self.e + self.f * np.conj(self.lambda2)
        r2 = self.b**2 + self.c**2 + self.v**2 + abs(self.lambda2) ** 2 - 1.0
        r3 = abs(self.d) ** 2 + abs(self.e) ** 2 + abs(self.f) ** 2 + abs(self.lambda3) ** 2 - 1.0
        return abs(r1), abs(r2), abs(r3)


@dataclass(frozen=True)
class Defect2Form:
    """Real canonical form of a rank-three partial isometry of defect >= 2.

    Nonzero entries: (1,4) = 1 and

        column 5: (0, b, c, d, 0, 0)
        column 6: (0, 0, e, f, g, h)

    with b, c, d, e, h >= 0, g real, f <= 0 when c*e > 0 and f >= 0
    otherwise, unit columns (b^2+c^2+d^2 = 1, e^2+f^2+g^2+h^2 = 1),
    orthogonality c*e + d*f = 0, and the convention that e = 0 forces c = 0.
    """

    b: float
    c: float
    d: float
    e: float
    f: float
    g: float
    h: float

    def matrix(self) -> np.ndarray:
        m = np.zeros((6, 6), dtype=complex)
        m[0, 3] = 1.0
        m[1, 4] = self.b
        m[2, 4] = self.c
        m[3, 4] = self.d
        m[2, 5] = self.e
        m[3, 5] = self.f
        m[4, 5] = self.g
        m[5, 5] = self.h
        return m

    def constraint_residuals(self):
        """(column-norm, column-norm, orthogonality) residuals."""
        r1 = self.b**2 + self.c**2 + self.d**2 - 1.0
        r2 = self.e**2 + self.f**2 + self.g**2 + self.h**2 - 1.0
        r3 = self.c * self.e + self.d * self.f
        return abs(r1), abs(r2), abs(r3)

    def is_admissible(self, tol: float = 1e-8) -> bool:
        if min(self.b, self.c, self.d, self.e, self.h) < -tol:
            return False
        if self.c * self.e > tol and self.f > tol:
            return False
        if self.e <= tol and self.c > tol:
            return False
        return max(self.constraint_residuals()) <= tol


def ath_matrix(t: float, h: float) -> np.ndarray:
    """The 4x4 partial isometry A_{t,h} (t, h >= 0, t^2 + h^2 <= 1).

    Zero first two columns; third column e_1, fourth column
    (0, t, sqrt(1 - t^2 - h^2), h).
    """
    if t < 0 or h < 0 or t * t + h * h > 1.0 + 1e-12:
        raise ValueError("need t, h >= 0 with t^2 + h^2 <= 1")
    m = np.zeros((4, 4), dtype=complex)
    m[0, 2] = 1.0
    m[1, 3] = t
    m[2, 3] = np.sqrt(max(0.0, 1.0 - t * t - h * h))
    m[3, 3] = h
    return m


def _phase(z: complex) -> complex:
    """Unimodular phase of z, or 1 for z == 0."""
    return z / abs(z) if abs(z) > 0.0 else 1.0 + 0.0j


def _complete_to_unitary(cols: np.ndarray, n: int) -> np.ndarray:
    """Extend the given orthonormal columns (possibly none) to an n x n
    unitary, deterministically, by Gram-Schmidt against the identity."""
    basis = [cols[:, j] for j in range(cols.shape[1])]
    for i in range(n):
        if len(basis) == n:
            break
        v = np.zeros(n, dtype=complex)
        v[i] = 1.0
        for u in basis:
            v = v - u * (u.conj() @ v)
        nv = np.linalg.norm(v)
        if nv > 1e-8:
            basis.append(v / nv)
    return np.column_stack(basis)


def _kernel_block_unitary(b: np.ndarray) -> np.ndarray:
    """3x3 unitary u such that u* b has zeros at (2,1), (3,1) and (2,3).

    The first column of b is rotated onto e_1, and the remaining freedom
    confines the third column of b to span(u1, u3).
    """
    b1, b3 = b[:, 0], b[:, 2]
    n1 = np.linalg.norm(b1)
    u1 = b1 / n1 if n1 > CANON_ZTOL else None
    w = b3 - u1 * (u1.conj() @ b3) if u1 is not None else b3.copy()
    nw = np.linalg.norm(w)
    if u1 is None:
        if nw > CANON_ZTOL:
            u1, w, nw = w / nw, np.zeros(3, dtype=complex), 0.0
        else:
            u1 = np.array([1.0, 0.0, 0.0], dtype=complex)
    if nw > CANON_ZTOL:
        u3 = w / nw
        u = _complete_to_unitary(np.column_stack([u1, u3]), 3)
        return u[:, [0, 2, 1]]
    return _complete_to_unitary(u1.reshape(3, 1), 3)


def canonicalize_rank3(pi: PartialIsometry):
    """General canonical form of a rank-three 6x6 partial isometry.

    Returns ``(form, u, theta)`` with
    ``exp(i theta) * u @ A @ u*`` equal to ``form.matrix()`` up to
    ``CANON_RESIDUAL`` in max-norm.  The eigenvalue rotated onto the
    nonnegative reals and placed first on the diagonal is the one of
    largest modulus (ties broken by ascending argument); if every
    eigenvalue vanishes the phase is left at zero.
    """
    if pi.n != 6 or pi.rank != 3 or pi.kernel_dim != 3:
        raise CanonicalFormError("need a 6x6 partial isometry of rank 3")
    w, b0, c0 = pi.block_form()

    q, t = linalg.ordered_schur(c0, lambda lam: (-abs(lam), np.angle(lam)))
    theta = -np.angle(t[0, 0]) if abs(t[0, 0]) > CANON_ZTOL else 0.0
    b1 = np.exp(1j * theta) * (b0 @ q)
    t1 = np.exp(1j * theta) * t

    u3 = _kernel_block_unitary(b1)
    b2 = u3.conj().T @ b1

    a = min(max(t1[0, 0].real, 0.0), 1.0)
    s = np.sqrt(max(0.0, 1.0 - a * a))
    # (1,5) = b*a and (4,5) = -b*sqrt(1-a^2) share a phase; fix it from the
    # larger of the two for stability, and likewise for the d pair
    if abs(b2[0, 1]) >= abs(t1[0, 1]):
        d5 = np.conj(_phase(b2[0, 1])) if abs(b2[0, 1]) > CANON_ZTOL else 1.0
    else:
        d5 = -np.conj(_phase(t1[0, 1]))
    if abs(b2[0, 2]) >= abs(t1[0, 2]):
        d6 = np.conj(_phase(b2[0, 2])) if abs(b2[0, 2]) > CANON_ZTOL else 1.0
    else:
        d6 = -np.conj(_phase(t1[0, 2]))
    d2 = _phase(d5 * b2[1, 1])
    d3 = _phase(d5 * b2[2, 1])
    dk = np.diag([1.0, np.conj(d2), np.conj(d3)])
    dc = np.diag([1.0, d5, d6])
    b3m = dk @ b2 @ dc
    t2 = dc.conj() @ t1 @ dc

    if a > s:
        bpar, dpar = (b3m[0, 1] / a).real, b3m[0, 2] / a
    else:
        bpar, dpar = (-t2[0, 1] / s).real, -t2[0, 2] / s
    form = CanonicalForm6(
        a=a,
        b=max(bpar, 0.0),
        c=max(b3m[2, 1].real, 0.0),
        v=max(b3m[1, 1].real, 0.0),
        d=dpar,
        e=b3m[2, 2],
        f=t2[1, 2],
        lambda2=t2[1, 1],
        lambda3=t2[2, 2],
    )
    vfull = w @ direct_sum(np.eye(3), q) @ direct_sum(u3, np.eye(3)) @ direct_sum(dk.conj().T, dc)
    u = vfull.conj().T
    residual = np.max(np.abs(np.exp(1j * theta) * (u @ pi.matrix @ u.conj().T) - form.matrix()))
    if residual > CANON_RESIDUAL:
        raise CanonicalFormError(f"canonical form residual {residual:.3e}")
    return form, u, theta


def _zeros_first_triangularize(c: np.ndarray, sigma_tol: float = 1e-7):
    """Unitary q with q* c q upper triangular and the zero eigenvalues
    leading on the diagonal.

    Built by iterated kernel deflation: the numerical kernel (a singular
    value computation, immune to Jordan-chain eigenvalue smearing) is
    split off level by level, which puts exact zeros on the corresponding
    diagonal positions; whatever remains is Schur-triangularized with its
    small eigenvalues first.
    """
    n = c.shape[0]
    q = np.eye(n, dtype=complex)
    m = np.array(c, dtype=complex)
    pos = 0
    while pos < n:
        sub = m[pos:, pos:]
        _, s, vh = np.linalg.svd(sub)
        smax = s[0] if s.size else 0.0
        k = int(np.sum(s <= max(sigma_tol, linalg.RANK_TOL * smax)))
        if k == 0:
            break
        ker = vh[len(s) - k :].conj().T
        w = _complete_to_unitary(ker, n - pos)
        full = np.eye(n, dtype=complex)
        full[pos:, pos:] = w
        q = q @ full
        m = full.conj().T @ m @ full
        pos += k
    if pos < n:
        sub = m[pos:, pos:]
        q2, _ = linalg.ordered_schur(sub, lambda lam: abs(lam))
        full = np.eye(n, dtype=complex)
        full[pos:, pos:] = q2
        q = q @ full
        m = full.conj().T @ m @ full
    return q, np.triu(m)


def canonicalize_defect2(
    pi: PartialIsometry,
    cluster_tol: float = ZERO_EIGEN_TOL,
    residual_tol: float = CANON_RESIDUAL,
):
    """Real canonical ``Defect2Form`` of a rank-three partial isometry
    whose zero eigenvalue has defect >= 2.

    Returns ``(form, u, theta)`` with
    ``exp(i theta) * u @ A @ u*`` equal to ``form.matrix()`` up to
    ``residual_tol`` in max-norm.  Raises ``CanonicalFormError`` when the
    defect is too small, or when no circular equivalence makes the g
    parameter real (that happens exactly for complex-phased inputs with
    h != 0, c*e != 0 and no circular curve component; the realness of g is
    then an obstruction, not a numerical failure).
    """
    if pi.n != 6 or pi.rank != 3 or pi.kernel_dim != 3:
        raise CanonicalFormError("need a 6x6 partial isometry of rank 3")
    if defect(pi, cluster_tol) < 2:
        raise CanonicalFormError("need a zero eigenvalue of defect >= 2")
    w, b0, c0 = pi.block_form()

    q, t = _zeros_first_triangularize(c0, sigma_tol=max(1e-7, cluster_tol / 10.0))
    b1 = b0 @ q
    u3 = _kernel_block_unitary(b1)
    b2 = u3.conj().T @ b1

    m = np.zeros((6, 6), dtype=complex)
    m[:3, 3:] = b2
    m[3:, 3:] = t

    # convention: when e vanishes, fold c into b by a rotation in rows 2, 3
    fold = np.eye(6, dtype=complex)
    if abs(m[2, 5]) <= CANON_ZTOL and abs(m[2, 4]) > CANON_ZTOL:
        bb, cc = m[1, 4], m[2, 4]
        r = np.hypot(abs(bb), abs(cc))
        fold[1, 1], fold[1, 2] = np.conj(bb) / r, np.conj(cc) / r
        fold[2, 1], fold[2, 2] = -cc / r, bb / r
        m = fold @ m @ fold.conj().T

    z = CANON_ZTOL
    b_, c_, d_, e_ = m[1, 4], m[2, 4], m[3, 4], m[2, 5]
    f_, g_, h_ = m[3, 5], m[4, 5], m[5, 5]

    # Solve for the global phase th and diagonal phases (p2, p3, p4, p5, p6)
    # in radians.  The (1,4) entry pins p4 = -th; targets are d, b, c, e on
    # the nonnegative reals and h likewise via th, with f and g soaking up
    # whatever freedom is left.  The entries transform as
    #   b -> b * exp(i(th - p2 + p5)),   c -> c * exp(i(th - p3 + p5)),
    #   d -> d * exp(i(2 th + p5)),      e -> e * exp(i(th - p3 + p6)),
    #   f -> f * exp(i(2 th + p6)),      g -> g * exp(i(th - p5 + p6)),
    #   h -> h * exp(i th).
    h_free = abs(h_) <= z
    th = 0.0 if h_free else -np.angle(h_)
    p5 = -np.angle(d_) - 2.0 * th if abs(d_) > z else None
    p3 = p6 = None
    if abs(c_) > z:
        # admissible defect-2 data forces d != 0 and e != 0 alongside c != 0
        if p5 is None:
            raise CanonicalFormError("inconsistent canonical data: c != 0 with d = 0")
        p3 = np.angle(c_) + th + p5
        p6 = p3 - np.angle(e_) - th if abs(e_) > z else None
    elif abs(e_) > z:
        if abs(f_) > z and p5 is None:
            p6 = -np.angle(f_) - 2.0 * th
        elif abs(g_) > z and p5 is not None:
            p6 = p5 - th - np.angle(g_)
        elif abs(f_) > z:
            p6 = -np.angle(f_) - 2.0 * th
        p6 = 0.0 if p6 is None else p6
        p3 = np.angle(e_) + th + p6
    else:
        p3 = 0.0
        if abs(f_) > z:
            p6 = -np.angle(f_) - 2.0 * th
        elif abs(g_) > z and p5 is not None:
            p6 = p5 - th - np.angle(g_)
    if p6 is None:
        p6 = 0.0
    if p5 is None:
        p5 = np.angle(g_) + th + p6 if abs(g_) > z else 0.0
    p2 = np.angle(b_) + th + p5 if abs(b_) > z else 0.0

    if h_free and abs(g_) > z:
        # nilpotent case: shifting (th, p2, p3, p5, p6) by
        # (d, -d, -d, -2d, -2d) moves only the phase of g, so g can always
        # be made real here
        delta = -(np.angle(g_) + th - p5 + p6)
        th = th + delta
        p2, p3 = p2 - delta, p3 - delta
        p5, p6 = p5 - 2.0 * delta, p6 - 2.0 * delta

    dd = np.diag(np.exp(1j * np.array([0.0, p2, p3, -th, p5, p6])))
    mm = np.exp(1j * th) * (dd.conj() @ m @ dd)

    imag_g = abs(mm[4, 5].imag)
    if imag_g > max(1e-7, 10 * residual_tol):
        raise CanonicalFormError(
            f"no circular equivalence makes g real (Im g = {imag_g:.3e}); "
            "the curve of this matrix has no circular component"
        )
    form = Defect2Form(
        b=max(mm[1, 4].real, 0.0),
        c=max(mm[2, 4].real, 0.0),
        d=max(mm[3, 4].real, 0.0),
        e=max(mm[2, 5].real, 0.0),
        f=mm[3, 5].real,
        g=mm[4, 5].real,
        h=max(mm[5, 5].real, 0.0),
    )
    vfull = (
        w
        @ direct_sum(np.eye(3), q)
        @ direct_sum(u3, np.eye(3))
        @ fold.conj().T
        @ dd
    )
    u = vfull.conj().T
    residual = np.max(np.abs(np.exp(1j * th) * (u @ pi.matrix @ u.conj().T) - form.matrix()))
    if residual > residual_tol:
        raise CanonicalFormError(f"canonical form residual {residual:.3e}")
    return form, u, th
