"""Shared test oracles, independent of the implementation paths they check."""

import numpy as np
import pytest

from kipcurve import linalg


def hermitian_part(a, theta):
    m = np.exp(1j * theta) * np.asarray(a, dtype=complex)
    return 0.5 * (m + m.conj().T)


def eigen_scan_radii(a, grid_steps=181, tol=1e-7):
    """Independent circle oracle: r > 0 is a circle radius (centered at the
    origin) exactly when +r and -r are eigenvalues of Re(e^{i theta} A)
    for every theta.  Uses nothing but eigvalsh on a theta grid."""
    a = np.asarray(a, dtype=complex)
    thetas = np.linspace(-np.pi, np.pi, grid_steps)
    eigs = np.array([np.linalg.eigvalsh(hermitian_part(a, t)) for t in thetas])
    radii = []
    for r in sorted(set(np.round(eigs[0][eigs[0] > 1e-6], 12))):
        dev_plus = max(np.min(np.abs(ev - r)) for ev in eigs)
        dev_minus = max(np.min(np.abs(ev + r)) for ev in eigs)
        if max(dev_plus, dev_minus) <= tol:
            radii.append(float(r))
    return radii


def char_poly_coeffs(a):
    """Characteristic polynomial det(A - z I) by determinant interpolation
    (LU-based det at fixed probe points, Vandermonde solve); ascending."""
    a = np.asarray(a, dtype=complex)
    n = a.shape[0]
    probes = 1.7 * np.exp(2j * np.pi * np.arange(n + 1) / (n + 1))
    vals = np.array([np.linalg.det(a - z * np.eye(n)) for z in probes])
    vmat = np.vander(probes, n + 1, increasing=True)
    return np.linalg.solve(vmat, vals)


def random_complex(rng, n):
    return rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)


def assert_unitary(u, tol=1e-10):
    n = u.shape[0]
    assert np.max(np.abs(u.conj().T @ u - np.eye(n))) <= tol


def random_unitary(rng, n):
    return linalg.random_unitary(n, rng)
