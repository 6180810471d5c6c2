import numpy as np
import pytest

from conftest import assert_unitary, char_poly_coeffs, eigen_scan_radii, random_complex
from kipcurve import linalg
from kipcurve.pisom import Defect2Form


class TestHermitianEigen:
    def test_2x2_symmetric(self):
        w, v = linalg.hermitian_eigen([[0.0, 0.5], [0.5, 0.0]])
        np.testing.assert_allclose(w, [-0.5, 0.5], atol=1e-14)
        assert_unitary(v)

    def test_identity(self):
        w, v = linalg.hermitian_eigen(np.eye(3))
        np.testing.assert_allclose(w, [1, 1, 1], atol=0)
        np.testing.assert_allclose(v, np.eye(3), atol=1e-14)

    def test_m5_closed_form_eigenvalues(self, rng):
        # leading 5x5 block of A + A^T - I for the real canonical form has
        # eigenvalues -1 and -1 +/- sqrt(1 +/- d)
        for _ in range(10):
            v = np.abs(rng.standard_normal(3))
            b, c, d = v / np.linalg.norm(v)
            m = np.zeros((5, 5))
            m[0, 3] = 1.0
            m[1, 4] = b
            m[2, 4] = c
            m[3, 4] = d
            m5 = m + m.T - np.eye(5)
            w, _ = linalg.hermitian_eigen(m5)
            expected = np.sort(
                [-1.0, -1 + np.sqrt(1 + d), -1 - np.sqrt(1 + d), -1 + np.sqrt(1 - d), -1 - np.sqrt(1 - d)]
            )
            np.testing.assert_allclose(w, expected, atol=1e-9)

    def test_residual_contracts(self, rng):
        for n in (2, 5, 16):
            h = random_complex(rng, n)
            h = 0.5 * (h + h.conj().T)
            w, v = linalg.hermitian_eigen(h)
            assert np.max(np.abs(h @ v - v * w)) <= 1e-10 * max(1, np.max(np.abs(w)))
            assert_unitary(v)
            assert np.all(np.diff(w) >= 0)

    def test_trace_matches_eigen_sum(self, rng):
        h = random_complex(rng, 7)
        h = 0.5 * (h + h.conj().T)
        w, _ = linalg.hermitian_eigen(h)
        assert abs(np.sum(w) - np.trace(h).real) <= 1e-9 * max(1, abs(np.trace(h)))

    def test_unitary_conjugation_invariance(self, rng):
        h = random_complex(rng, 6)
        h = 0.5 * (h + h.conj().T)
        w0, _ = linalg.hermitian_eigen(h)
        for _ in range(10):
            u = linalg.random_unitary(6, rng)
            w1, _ = linalg.hermitian_eigen(u @ h @ u.conj().T, tol=1e-9)
            np.testing.assert_allclose(w0, w1, atol=1e-9)

    def test_rejects_non_square_and_non_hermitian(self):
        with pytest.raises(ValueError):
            linalg.hermitian_eigen(np.ones((2, 3)))
        with pytest.raises(ValueError, match="Hermitian"):
            linalg.hermitian_eigen([[0.0, 1.0], [0.0, 0.0]])


class TestSchur:
    def test_fixed_point_upper_triangular(self):
        c = np.array([[1.0, 2.0], [0.0, 3.0]], dtype=complex)
        u, t = linalg.schur_upper_triangularize(c)
        np.testing.assert_allclose(t, c, atol=1e-12)
        np.testing.assert_allclose(np.abs(u), np.eye(2), atol=1e-12)

    def test_lower_jordan_block(self):
        c = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)
        u, t = linalg.schur_upper_triangularize(c)
        assert abs(t[1, 0]) <= 1e-12
        assert abs(abs(t[0, 1]) - 1.0) <= 1e-12
        np.testing.assert_allclose(u.conj().T @ c @ u, t, atol=1e-12)

    def test_diag_matches_companion_roots(self, rng):
        for _ in range(10):
            c = random_complex(rng, 3)
            u, t = linalg.schur_upper_triangularize(c)
            assert_unitary(u)
            assert np.max(np.abs(np.tril(t, -1))) <= 1e-10 * np.max(np.abs(c))
            roots = np.roots(char_poly_coeffs(c)[::-1])
            got = sorted(np.diagonal(t), key=lambda z: (z.real, z.imag))
            want = sorted(roots, key=lambda z: (z.real, z.imag))
            np.testing.assert_allclose(got, want, atol=1e-8)

    def test_det_is_diag_product(self, rng):
        c = random_complex(rng, 5)
        _, t = linalg.schur_upper_triangularize(c)
        det = np.linalg.det(c)
        assert abs(np.prod(np.diagonal(t)) - det) <= 1e-8 * abs(det)

    def test_ordered_schur_sorts_keys(self, rng):
        c = random_complex(rng, 5)
        u, t = linalg.ordered_schur(c, lambda lam: lam.real)
        keys = [lam.real for lam in np.diagonal(t)]
        assert keys == sorted(keys)
        np.testing.assert_allclose(u.conj().T @ c @ u, t, atol=1e-10)
        assert_unitary(u)


class TestPolyRealRoots:
    def test_triple_root(self):
        roots = linalg.poly_real_roots([-1 / 64, 3 / 16, -3 / 4, 1.0], (0.0, 1.0))
        assert len(roots) == 1
        r, mult = roots[0]
        assert mult == 3
        assert abs(r - 0.25) <= 1e-9

    def test_simple_roots_on_interval(self):
        roots = linalg.poly_real_roots([0.0, -1.0, 1.0], (0.0, 1.0))  # rho^2 - rho
        assert [m for _, m in roots] == [1, 1]
        np.testing.assert_allclose([r for r, _ in roots], [0.0, 1.0], atol=1e-12)

    def test_identically_zero_raises(self):
        with pytest.raises(linalg.ZeroPolynomialError):
            linalg.poly_real_roots([0.0, 0.0, 0.0])

    def test_residual_contract_random(self, rng):
        for _ in range(20):
            true_roots = np.sort(rng.uniform(-1.0, 1.0, size=rng.integers(2, 8)))
            coeffs = np.polynomial.polynomial.polyfromroots(true_roots)
            scale = np.max(np.abs(coeffs))
            got = linalg.poly_real_roots(coeffs)
            for r, _ in got:
                val = np.polynomial.polynomial.polyval(r, coeffs)
                assert abs(val) <= 1e-9 * scale

    def test_nilpotent_q_roots_match_eigen_oracle(self, rng):
        # cubic of the nilpotent family: roots are the squared circle radii
        for _ in range(5):
            v = np.abs(rng.standard_normal(3))
            b, c, d = v / np.linalg.norm(v)
            e = d / np.hypot(c, d)
            f = -c * e / d
            n2 = np.hypot(e, f)
            form = Defect2Form(b=b, c=c, d=d, e=e / n2, f=f / n2, g=0.0, h=0.0)
            q = [
                -(b * b * (e / n2) ** 2) / 64.0,
                (c * c + b * b + (e / n2) ** 2 + 1.0) / 16.0,
                -3.0 / 4.0,
                1.0,
            ]
            roots = linalg.poly_real_roots(q, (0.0, 1.0))
            radii = sorted(np.sqrt(r) for r, _ in roots if r > 1e-9)
            oracle = eigen_scan_radii(form.matrix())
            assert len(radii) == len(oracle)
            np.testing.assert_allclose(radii, oracle, atol=1e-6)


class TestTrigInterpolate:
    def test_constant(self):
        h = linalg.trig_interpolate(np.ones(5))
        np.testing.assert_allclose(h, [0, 0, 1, 0, 0], atol=1e-14)

    def test_cosine(self):
        g = linalg.theta_grid(5)
        h = linalg.trig_interpolate(np.cos(g))
        np.testing.assert_allclose(h, [0, 0.5, 0, 0.5, 0], atol=1e-14)

    def test_roundtrip_random_trig_polynomials(self, rng):
        for k in (1, 3, 8):
            coef = rng.standard_normal(2 * k + 1) + 1j * rng.standard_normal(2 * k + 1)
            coef = coef + coef[::-1].conj()  # real-valued polynomial
            g = linalg.theta_grid(2 * k + 1)
            vals = linalg.trig_evaluate(coef, g)
            back = linalg.trig_interpolate(vals)
            np.testing.assert_allclose(back, coef, atol=1e-10)

    def test_constant_coefficient_of_canonical_form_has_one_harmonic(self, rng):
        # lambda^0 coefficient of det(Re(e^{i t}A) - lambda I) for the real
        # canonical form keeps only harmonics -1, 0, 1
        from kipcurve.verify import sample_defect2

        form = sample_defect2(rng)
        a = form.matrix()
        g = linalg.theta_grid(13)
        dets = np.array(
            [np.linalg.det(0.5 * (np.exp(1j * t) * a + np.exp(-1j * t) * a.conj().T)) for t in g]
        )
        h = linalg.trig_interpolate(dets)
        mags = np.abs(h)
        assert np.max(mags[np.abs(np.arange(-6, 7)) > 1]) <= 1e-12 * max(np.max(mags), 1e-30)

    def test_even_sample_count_rejected(self):
        with pytest.raises(ValueError):
            linalg.trig_interpolate(np.ones(6))


class TestAlgebraicMultiplicity:
    def test_jordan_chains_under_conjugation(self, rng):
        from kipcurve.pisom import direct_sum, jordan_block

        a = direct_sum(np.zeros((1, 1)), np.zeros((1, 1)), jordan_block(4))
        u = linalg.random_unitary(6, rng)
        b = u @ a @ u.conj().T
        assert linalg.algebraic_multiplicity(b, 0.0, 6) == 6
        assert linalg.algebraic_multiplicity(b + np.eye(6), 1.0, 6) == 6
        assert linalg.algebraic_multiplicity(np.diag([1.0, 2.0, 3.0]), 1.0, 3) == 1
        assert linalg.algebraic_multiplicity(np.diag([1.0, 2.0, 3.0]), 0.0, 3) == 0
