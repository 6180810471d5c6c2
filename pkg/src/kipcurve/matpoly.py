"""Matrix polynomials: identically-singular tests and polynomial kernels.

A matrix polynomial P(z) = sum_i P_i z^i with det P identically zero has a
nonzero vector polynomial v(z) with P(z) v(z) = 0.  The minimal-degree v is
found constructively: the identity P(z) v(z) = 0 is a block-convolution
linear system in the vector coefficients of v, and the degree is grown
until that system becomes singular.

The partial-isometry connection: a rank-k partial isometry in block form
[[0, B], [0, C]] has the circle of radius 1/2 inside its Kippenhahn curve
exactly when det(z^2 C - z C*C + C*) vanishes identically, and a
J_2-reduction is equivalent to ker C meeting ker C*.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .pisom import PartialIsometry

#: Relative determinant threshold at the probe points.
SINGULAR_TOL = 1e-8
#: Residual guaranteed for returned kernel polynomials.
KERNEL_RESIDUAL = 1e-8
#: Null-space singular values below this (relative) count as zero.
NULL_TOL = 1e-9


@dataclass(frozen=True)
class MatrixPolynomial:
    """P(z) = sum_i coeffs[i] z^i with square matrix coefficients."""

    coeffs: tuple

    @property
    def size(self) -> int:
        return self.coeffs[0].shape[0]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, z: complex) -> np.ndarray:
        out = np.array(self.coeffs[-1], dtype=complex)
        for c in self.coeffs[-2::-1]:
            out = out * z + c
        return out

    @staticmethod
    def from_coeffs(*coeffs) -> "MatrixPolynomial":
        mats = tuple(linalg.as_square_matrix(c) for c in coeffs)
        n = mats[0].shape[0]
        if any(m.shape[0] != n for m in mats):
            raise ValueError("coefficient sizes differ")
        return MatrixPolynomial(coeffs=mats)


def half_circle_polynomial(c) -> MatrixPolynomial:
    """z^2 C - z C*C + C*, whose identical singularity encodes the circle
    of radius 1/2 inside the curve of the assembled partial isometry."""
    cm = linalg.as_square_matrix(c)
    ch = cm.conj().T
    return MatrixPolynomial.from_coeffs(ch, -ch @ cm, cm)


def flipped_polynomial(c) -> MatrixPolynomial:
    """z^2 C + z C* - C*C, the coefficient-swapped companion of
    ``half_circle_polynomial`` whose identical singularity forces
    ker C and ker C* to intersect."""
    cm = linalg.as_square_matrix(c)
    ch = cm.conj().T
    return MatrixPolynomial.from_coeffs(-ch @ cm, ch, cm)


def probe_points(count: int) -> np.ndarray:
    """Roots of unity scaled by 1.1; off the unit circle to avoid the
    structured cancellations these polynomials have at |z| = 1."""
    return 1.1 * np.exp(2j * np.pi * np.arange(count) / count)


def is_identically_singular(p: MatrixPolynomial, tol: float = SINGULAR_TOL) -> bool:
    """True when det P(z) vanishes at n*d + 1 distinct probe points.

    det P is a polynomial of degree at most n*d, so vanishing there is
    vanishing identically.  The threshold is relative to the probe-point
    operator norms.
    """
    n, d = p.size, p.degree
    if n * d > 64:
        raise ValueError("matrix polynomial too large (need n*d <= 64)")
    for z in probe_points(n * d + 1):
        m = p(z)
        opn = np.linalg.norm(m, 2)
        scale = max(1.0, opn**n)
        if abs(np.linalg.det(m)) > tol * scale:
            return False
    return True


@dataclass(frozen=True)
class KernelPolynomial:
    """v(z) = sum_i vectors[i] z^i with P(z) v(z) = 0 identically."""

    vectors: tuple

    @property
    def degree(self) -> int:
        return len(self.vectors) - 1

    def __call__(self, z: complex) -> np.ndarray:
        out = np.array(self.vectors[-1], dtype=complex)
        for v in self.vectors[-2::-1]:
            out = out * z + v
        return out

    def residual(self, p: MatrixPolynomial, probes=None) -> float:
        if probes is None:
            probes = probe_points(2 * self.degree + 2)
        worst = 0.0
        for z in probes:
            worst = max(worst, float(np.linalg.norm(p(z) @ self(z))))
        return worst


def _convolution_matrix(p: MatrixPolynomial, d: int) -> np.ndarray:
    """Stacked system: the m-th block row is sum_{i+j=m} P_i v_j."""
    n, dp = p.size, p.degree
    rows = dp + d + 1
    out = np.zeros((rows * n, (d + 1) * n), dtype=complex)
    for i, pi in enumerate(p.coeffs):
        for j in range(d + 1):
            m = i + j
            out[m * n : (m + 1) * n, j * n : (j + 1) * n] += pi
    return out


def minimal_kernel_polynomial(p: MatrixPolynomial, max_degree: int | None = None) -> KernelPolynomial:
    """Minimal-degree vector polynomial annihilated by P.

    Grows the candidate degree from zero and takes the first nontrivial
    null vector of the block-convolution system; by construction the
    leading and trailing vector coefficients are nonzero.  The search is
    capped at n * deg P (no general degree bound is available) and raises
    if nothing is found, which for an identically singular P should not
    happen in practice.
    """
    if not is_identically_singular(p):
        raise ValueError("matrix polynomial is not identically singular")
    n = p.size
    cap = max_degree if max_degree is not None else n * max(p.degree, 1)
    for d in range(cap + 1):
        sys = _convolution_matrix(p, d)
        ns = linalg.null_space(sys, rank_tol=NULL_TOL)
        if ns.shape[1] == 0:
            continue
        v = ns[:, 0]
        vecs = [v[j * n : (j + 1) * n] for j in range(d + 1)]
        lead = np.linalg.norm(vecs[-1])
        if lead <= NULL_TOL:
            continue
        vecs = [w / lead for w in vecs]
        # deterministic overall phase: largest component of the lead real positive
        top = vecs[-1][np.argmax(np.abs(vecs[-1]))]
        ph = top / abs(top)
        vecs = [w * np.conj(ph) for w in vecs]
        return KernelPolynomial(vectors=tuple(vecs))
    raise ValueError(f"no kernel polynomial of degree <= {cap} found")


def kernel_intersection(c, tol: float = 1e-8) -> np.ndarray:
    """Orthonormal basis (possibly empty) of ker C intersected with ker C*.

    Computed as the null space of the stacked matrix [C; C*], which is
    exactly the intersection.
    """
    cm = linalg.as_square_matrix(c)
    stacked = np.vstack([cm, cm.conj().T])
    return linalg.null_space(stacked, rank_tol=tol)


def assemble_from_contraction(c) -> np.ndarray:
    """Partial isometry [[0, B], [0, C]] with B = (I - C*C)^(1/2).

    Requires ||C|| <= 1 so that I - C*C is positive semidefinite; the
    result is 2k x 2k of rank k for a k x k contraction C.
    """
    cm = linalg.as_square_matrix(c)
    k = cm.shape[0]
    gram = np.eye(k) - cm.conj().T @ cm
    w, v = np.linalg.eigh(0.5 * (gram + gram.conj().T))
    if np.min(w) < -1e-10:
        raise ValueError("need a contraction: I - C*C has a negative eigenvalue")
    b = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    out = np.zeros((2 * k, 2 * k), dtype=complex)
    out[:k, k:] = b
    out[k:, k:] = cm
    return out


def check_theorem31(pi: PartialIsometry):
    """J_2-reducibility data for a partial isometry in block form.

    Returns a dict with ``hypothesis`` (dim ker C >= floor(rank/2)),
    ``contains_half_circle`` (z^2 C - z C*C + C* identically singular) and
    ``reducible_j2`` (ker C meets ker C*); whenever the first two hold the
    third must as well.
    """
    _, _, c = pi.block_form()
    k = pi.rank
    dim_ker_c = linalg.null_space(c, rank_tol=1e-8).shape[1]
    hypothesis = dim_ker_c >= k // 2
    contains = is_identically_singular(half_circle_polynomial(c))
    reducible = kernel_intersection(c).shape[1] > 0
    return {
        "hypothesis": hypothesis,
        "contains_half_circle": contains,
        "reducible_j2": reducible,
        "dim_ker_c": dim_ker_c,
        "implication_ok": (not (hypothesis and contains)) or reducible,
    }


def check_prop31(c):
    """Test the implication: det(z^2 C + z C* - C*C) identically zero
    forces ker C to meet ker C*.  Returns the two booleans and the
    implication verdict."""
    singular = is_identically_singular(flipped_polynomial(c))
    nontrivial = kernel_intersection(c).shape[1] > 0
    return {
        "flipped_identically_singular": singular,
        "kernel_intersection_nontrivial": nontrivial,
        "implication_ok": (not singular) or nontrivial,
    }
