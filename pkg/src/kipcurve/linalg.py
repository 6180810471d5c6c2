"""Dense complex linear algebra for small matrices (n <= 16).

Thin, contract-checked wrappers around LAPACK (via numpy/scipy) plus the
polynomial and trigonometric-interpolation helpers the rest of the package
is built on.  All tolerances are module-level constants; nothing here keeps
mutable global state.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg

#: Allowed deviation from Hermitian symmetry, max-norm.
HERMITIAN_TOL = 1e-10
#: Residual guaranteed by the eigen/Schur factorizations, max-norm.
FACTOR_TOL = 1e-10
#: Relative threshold below which a singular value counts as zero.
RANK_TOL = 1e-9
#: Polynomial root residual, relative to the largest coefficient.
ROOT_TOL = 1e-9
#: Distance below which polynomial roots are clustered into one root.
ROOT_CLUSTER_TOL = 1e-7
#: Maximal widening of a root cluster when a confirmed multiple root is
#: present (double roots carry O(sqrt(eps)) noise, triple roots O(eps^(1/3))).
MULTIPLE_ROOT_TOL = 5e-5


class ZeroPolynomialError(ValueError):
    """Raised when a root finder is handed the identically-zero polynomial."""


def as_square_matrix(a) -> np.ndarray:
    """Validate and return ``a`` as a square complex matrix.

    Rejects non-square shapes and non-finite entries.
    """
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not (np.all(np.isfinite(m.real)) and np.all(np.isfinite(m.imag))):
        raise ValueError("matrix has non-finite entries")
    return m


def hermitian_part(a: np.ndarray, theta: float = 0.0) -> np.ndarray:
    """Hermitian part of exp(i*theta) * a, i.e. Re(e^{i theta} A)."""
    m = np.exp(1j * theta) * a
    return 0.5 * (m + m.conj().T)


def hermitian_eigen(h, tol: float = HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix.

    Returns ``(w, v)`` with eigenvalues ``w`` ascending and unitary ``v``
    such that ``h @ v = v @ diag(w)``.  Raises if ``h`` is not square or
    deviates from Hermitian symmetry by more than ``tol`` in max-norm.
    """
    m = as_square_matrix(h)
    dev = np.max(np.abs(m - m.conj().T)) if m.size else 0.0
    if dev > tol:
        raise ValueError(f"matrix is not Hermitian: max deviation {dev:.3e} > {tol:.0e}")
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return w, v


def schur_upper_triangularize(c):
    """Complex Schur factorization ``u* @ c @ u = t`` with ``t`` upper triangular.

    Returns ``(u, t)``.
    """
    m = as_square_matrix(c)
    t, u = scipy.linalg.schur(m, output="complex")
    return u, t


def _swap_adjacent(t: np.ndarray, u: np.ndarray, i: int) -> None:
    """Swap diagonal entries i, i+1 of the upper-triangular t in place.

    Standard unitary swap: rotate the eigenvector of the trailing eigenvalue
    of the 2x2 block into the leading position.  No-op for equal eigenvalues
    (the swap is then unnecessary and, for a defective block, impossible).
    """
    a, b, c = t[i, i], t[i, i + 1], t[i + 1, i + 1]
    if abs(c - a) <= 1e-14 * max(1.0, abs(a), abs(c)):
        return
    x = np.array([b, c - a])
    nx = np.linalg.norm(x)
    if nx == 0.0:
        t[i, i], t[i + 1, i + 1] = c, a
        return
    x /= nx
    g = np.array([[x[0], -np.conj(x[1])], [x[1], np.conj(x[0])]])
    t[i : i + 2, :] = g.conj().T @ t[i : i + 2, :]
    t[:, i : i + 2] = t[:, i : i + 2] @ g
    u[:, i : i + 2] = u[:, i : i + 2] @ g
    t[i + 1, i] = 0.0


def ordered_schur(c, key):
    """Schur factorization with the diagonal sorted by ``key``.

    ``key`` maps an eigenvalue to a sortable value; sorting is stable, so
    eigenvalues with equal keys keep their LAPACK order.  Returns ``(u, t)``.
    """
    u, t = schur_upper_triangularize(c)
    n = t.shape[0]
    keys = [key(t[i, i]) for i in range(n)]
    # bubble sort with unitary adjacent swaps; n <= 16 so cost is irrelevant
    for _ in range(n):
        swapped = False
        for i in range(n - 1):
            if keys[i + 1] < keys[i]:
                _swap_adjacent(t, u, i)
                keys[i], keys[i + 1] = keys[i + 1], keys[i]
                swapped = True
        if not swapped:
            break
    return u, t


def orthonormal_columns(a, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the column space of ``a`` (SVD based)."""
    m = np.atleast_2d(np.asarray(a, dtype=complex))
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((m.shape[0], 0), dtype=complex)
    r = int(np.sum(s > rank_tol * s[0]))
    return u[:, :r]


def null_space(a, rank_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the (right) null space of ``a``."""
    m = np.atleast_2d(np.asarray(a, dtype=complex))
    _, s, vh = np.linalg.svd(m)
    n = m.shape[1]
    smax = s[0] if s.size else 0.0
    r = int(np.sum(s > rank_tol * smax)) if smax > 0.0 else 0
    return vh[r:].conj().T if r < n else np.zeros((n, 0), dtype=complex)


def polish_roots(coeffs: np.ndarray, roots: np.ndarray, steps: int = 4) -> np.ndarray:
    """Newton-polish ``roots`` of the ascending-coefficient polynomial."""
    der = np.polynomial.polynomial.polyder(coeffs)
    out = np.array(roots, dtype=complex)
    for _ in range(steps):
        p = np.polynomial.polynomial.polyval(out, coeffs)
        dp = np.polynomial.polynomial.polyval(out, der)
        ok = np.abs(dp) > 1e-300
        out[ok] = out[ok] - p[ok] / dp[ok]
    return out


def _confirmed_multiple(coeffs: np.ndarray, center: float, m: int, scale: float) -> bool:
    """Check that ``center`` behaves like a root of multiplicity ``m``.

    A merged cluster is only accepted when p and its first m-1 derivatives
    are small there; this is what discriminates a genuine multiple root
    (value ~ spread^m) from two distinct roots that merely sit close
    (value ~ spread^2 * |cofactor|).
    """
    radius = MULTIPLE_ROOT_TOL * max(1.0, abs(center))
    d = np.array(coeffs, dtype=complex)
    for j in range(m):
        val = abs(np.polynomial.polynomial.polyval(center, d))
        bound = 4.0 * scale * math.comb(m, j) * radius ** (m - j)
        if val > bound:
            return False
        d = np.polynomial.polynomial.polyder(d)
    return True


def poly_real_roots(coeffs, interval=(-np.inf, np.inf)):
    """Real roots (with multiplicities) of a real polynomial on an interval.

    ``coeffs`` are ascending.  Returns a sorted list of ``(root, multiplicity)``
    pairs.  Roots come from the companion matrix, are Newton polished, and are
    clustered at ``ROOT_CLUSTER_TOL``; clusters are widened (up to
    ``MULTIPLE_ROOT_TOL``) only when the derivative test confirms a genuine
    multiple root, since the companion roots of an m-fold root are spread over
    O(eps^(1/m)) and a flat 1e-7 window cannot reunite them.

    Raises ``ZeroPolynomialError`` for the identically-zero polynomial, which
    is "everywhere zero" rather than root-free.
    """
    c = np.asarray(coeffs, dtype=float)
    scale = np.max(np.abs(c)) if c.size else 0.0
    if scale == 0.0:
        raise ZeroPolynomialError("polynomial is identically zero")
    c = np.trim_zeros(c, "b")
    # drop numerically-zero leading coefficients so np.roots sees the true degree
    while c.size > 1 and abs(c[-1]) <= 1e-14 * scale:
        c = c[:-1]
    if c.size <= 1:
        return []
    roots = np.roots(c[::-1])
    roots = polish_roots(c, roots)
    lo, hi = interval
    # keep near-real roots; a multiple real root shows up as a conjugate
    # cluster with imaginary parts up to the cluster spread
    near_real = roots[np.abs(roots.imag) <= MULTIPLE_ROOT_TOL * np.maximum(1.0, np.abs(roots))]
    if near_real.size == 0:
        return []
    order = np.argsort(near_real.real)
    vals = near_real[order]

    clusters: list[list[complex]] = []
    for z in vals:
        if clusters and abs(z - np.mean(clusters[-1])) <= ROOT_CLUSTER_TOL * max(1.0, abs(z)):
            clusters[-1].append(z)
        else:
            clusters.append([z])
    # try widening: merge neighbours when the derivative test confirms it
    merged = True
    while merged and len(clusters) > 1:
        merged = False
        for i in range(len(clusters) - 1):
            a, b = clusters[i], clusters[i + 1]
            center = float(np.mean(np.concatenate([a, b])).real)
            gap = abs(np.mean(b) - np.mean(a))
            m = len(a) + len(b)
            if gap <= MULTIPLE_ROOT_TOL * max(1.0, abs(center)) and _confirmed_multiple(
                c, center, m, scale
            ):
                clusters[i : i + 2] = [a + b]
                merged = True
                break

    out = []
    for cl in clusters:
        r = float(np.mean(cl).real)
        mult = len(cl)
        if np.imag(np.mean(cl)) > ROOT_CLUSTER_TOL * max(1.0, abs(r)) and mult == 1:
            continue
        if mult > 1:
            # an m-fold root of p is a simple root of p^(m-1); Newton there
            # recovers it to full precision (p itself is all cancellation)
            d = np.array(c, dtype=float)
            for _ in range(mult - 1):
                d = np.polynomial.polynomial.polyder(d)
            dd = np.polynomial.polynomial.polyder(d)
            r_ref = r
            for _ in range(8):
                dv = np.polynomial.polynomial.polyval(r_ref, dd)
                if abs(dv) < 1e-300:
                    break
                r_ref = r_ref - np.polynomial.polynomial.polyval(r_ref, d) / dv
            if abs(r_ref - r) <= MULTIPLE_ROOT_TOL * max(1.0, abs(r)):
                r = float(r_ref)
        if lo - 1e-12 <= r <= hi + 1e-12:
            out.append((min(max(r, lo), hi), mult))
    return out


def theta_grid(n: int) -> np.ndarray:
    """``n`` equispaced angles on (-pi, pi], ending at pi."""
    return -np.pi + 2.0 * np.pi * (np.arange(n) + 1) / n


def trig_interpolate(samples) -> np.ndarray:
    """Fourier coefficients of a trig polynomial from equispaced samples.

    ``samples`` are values at ``theta_grid(2K+1)``.  Returns the complex
    coefficients ``c_k`` for harmonics k = -K..K (so that the sampled
    function equals ``sum_k c_k exp(i k theta)``), exact for any trig
    polynomial of degree <= K.
    """
    f = np.asarray(samples, dtype=complex)
    n = f.size
    if n < 1 or n % 2 == 0:
        raise ValueError("need an odd number 2K+1 of samples")
    k_max = (n - 1) // 2
    # theta_m = 2*pi*(m+1)/n - pi, so the DFT picks up a per-harmonic phase
    fhat = np.fft.fft(f) / n
    ks = np.arange(-k_max, k_max + 1)
    phase = (-1.0) ** ks * np.exp(-2j * np.pi * ks / n)
    return phase * fhat[ks % n]


def trig_evaluate(harmonics, theta):
    """Evaluate ``sum_k c_k exp(i k theta)`` for harmonics k = -K..K."""
    h = np.asarray(harmonics, dtype=complex)
    k_max = (h.size - 1) // 2
    ks = np.arange(-k_max, k_max + 1)
    th = np.asarray(theta, dtype=float)
    return np.tensordot(h, np.exp(1j * np.outer(ks, np.ravel(th))), axes=(0, 0)).reshape(th.shape)


def algebraic_multiplicity(m, center: complex, power: int) -> int:
    """Generalized eigenvectors of ``center`` up to grade ``power``.

    The dimension of ker (A - center I)^power equals the algebraic
    multiplicity whenever the Jordan chains at ``center`` are no longer
    than ``power``.  Computed from singular values of the explicit power,
    which is robust where eigenvalue clustering is not: an m-chain smears
    its eigenvalues over O(eps^(1/m)) but barely moves singular values.
    """
    a = as_square_matrix(m)
    n = a.shape[0]
    b = a - center * np.eye(n)
    p = np.eye(n, dtype=complex)
    for _ in range(power):
        p = p @ b
    s = np.linalg.svd(p, compute_uv=False)
    tol = max(1e-12 * s[0], 10.0 ** (-(2 * power + 1)))
    return n - int(np.sum(s > tol))


def cluster_eigenvalues(eigs, link_tol: float):
    """Single-linkage clusters of complex eigenvalues.

    Returns a list of (mean, members) pairs; means of complete clusters
    are trace-accurate even when the members carry Jordan-chain noise.
    """
    vals = list(eigs)
    n = len(vals)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if abs(vals[i] - vals[j]) <= link_tol:
                parent[find(i)] = find(j)
    groups: dict[int, list[complex]] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(vals[i])
    out = [(complex(np.mean(g)), g) for g in groups.values()]
    out.sort(key=lambda cg: (cg[0].real, cg[0].imag))
    return out


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed n x n unitary (Ginibre + phase-fixed QR)."""
    z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))
