import numpy as np
import pytest

from conftest import eigen_scan_radii, hermitian_part, random_complex
from kipcurve import geometry, kipp, linalg, pisom
from kipcurve.pisom import Defect2Form
from kipcurve.verify import sample_defect2, sample_two_circles


class TestKippenhahnPolynomial:
    def test_j2_is_theta_independent(self):
        p = kipp.kippenhahn_polynomial(pisom.jordan_block(2))
        for th in (-2.0, 0.0, 1.3):
            assert abs(p.evaluate(0.5, th)) <= 1e-12
            assert abs(p.evaluate(0.0, th) + 0.25) <= 1e-12
        # only the zeroth harmonic is populated
        n = p.n
        for k in range(1, n + 1):
            assert np.max(np.abs(p.harmonic_poly(k))) <= 1e-14

    def test_matches_determinant_at_probes(self, rng):
        for n in (2, 4, 6):
            a = random_complex(rng, n)
            p = kipp.kippenhahn_polynomial(a)
            for _ in range(100):
                lam = rng.uniform(-2, 2)
                th = rng.uniform(-np.pi, np.pi)
                det = np.linalg.det(hermitian_part(a, th) - lam * np.eye(n)).real
                assert abs(p.evaluate(lam, th) - det) <= 1e-9 * max(1.0, abs(det))

    def test_normal_matrix_product_form(self, rng):
        a = np.diag([1.0, 1j])
        p = kipp.kippenhahn_polynomial(a)
        for _ in range(20):
            lam = rng.uniform(-1.5, 1.5)
            th = rng.uniform(-np.pi, np.pi)
            want = (np.cos(th) - lam) * (-np.sin(th) - lam)
            assert abs(p.evaluate(lam, th) - want) <= 1e-10

    def test_harmonic_bound_and_reality(self, rng):
        a = random_complex(rng, 5)
        p = kipp.kippenhahn_polynomial(a)
        n = p.n
        for apow in range(n + 1):
            for k in range(-n, n + 1):
                if abs(k) > n - apow:
                    assert p.coeffs[apow, n + k] == 0.0
        # real-valuedness: c_{a,-k} = conj(c_{a,k})
        flipped = p.coeffs[:, ::-1].conj()
        assert np.max(np.abs(flipped - p.coeffs)) <= 1e-12 * max(1.0, p.scale())

    def test_size_cap(self):
        with pytest.raises(ValueError):
            kipp.kippenhahn_polynomial(np.zeros((17, 17)))


class TestTraceCurve:
    def test_j2_points_on_circle(self):
        tr = kipp.trace_curve(pisom.jordan_block(2), 360)
        np.testing.assert_allclose(np.abs(tr.points), 0.5, atol=1e-8)

    def test_normal_matrix_points_at_eigenvalues(self):
        tr = kipp.trace_curve(np.diag([0.0, 1.0]), 16)
        for z in tr.points.ravel():
            assert min(abs(z), abs(z - 1.0)) <= 1e-10

    def test_supporting_line_property(self, rng):
        a = random_complex(rng, 5)
        tr = kipp.trace_curve(a, 64)
        for i, th in enumerate(tr.thetas):
            recon = np.real(np.exp(1j * th) * tr.points[i])
            np.testing.assert_allclose(recon, tr.eigenvalues[i], atol=1e-8)

    def test_real_matrix_conjugation_symmetry(self, rng):
        a = rng.standard_normal((5, 5))
        tr = kipp.trace_curve(a, 60)
        pts = np.sort_complex(np.round(tr.points.ravel(), 9))
        conj = np.sort_complex(np.round(tr.points.ravel().conj(), 9))
        np.testing.assert_allclose(pts, conj, atol=1e-8)

    def test_minimum_steps(self):
        with pytest.raises(ValueError):
            kipp.trace_curve(np.eye(2), 3)

    def test_hull_close_to_support_polygon(self, rng):
        a = random_complex(rng, 4)
        tr = kipp.trace_curve(a, 1024)
        poly = geometry.support_polygon_vertices(tr.thetas, tr.eigenvalues[:, -1])
        hull = geometry.convex_hull_vertices(geometry.points_to_xy(tr.points.ravel()))
        d = geometry.hausdorff_distance(hull, poly)
        assert d <= 1e-4 * np.linalg.norm(a, 2)


class TestNumericalRadius:
    def test_j2(self):
        w, thetas = kipp.numerical_radius(pisom.jordan_block(2))
        assert abs(w - 0.5) <= 1e-12
        assert len(thetas) > 64  # disk: attained everywhere on the grid

    def test_ath_family_closed_form(self):
        for t in (0.2, 0.5, 0.9):
            w, _ = kipp.numerical_radius(pisom.ath_matrix(t, 0.0))
            assert abs(w - np.sqrt(1 + np.sqrt(1 - t * t)) / 2) <= 1e-10

    def test_unitary(self):
        w, _ = kipp.numerical_radius(np.diag([1.0, 1j, -1.0]))
        assert abs(w - 1.0) <= 1e-12


class TestDetectCircles:
    def test_j2(self):
        rep = kipp.detect_circles(pisom.jordan_block(2))
        assert len(rep.circles) == 1
        c = rep.circles[0]
        assert abs(c.center) <= 1e-10
        assert abs(c.radius - 0.5) <= 1e-10
        assert not c.degenerate
        assert rep.disk == "circular-disk"

    def test_0_0_j4(self):
        a = pisom.direct_sum(np.zeros((1, 1)), np.zeros((1, 1)), pisom.jordan_block(4))
        rep = kipp.detect_circles(a)
        radii = sorted(c.radius for c in rep.circles)
        expected = [0.0, (np.sqrt(5) - 1) / 4, (np.sqrt(5) + 1) / 4]
        np.testing.assert_allclose(radii, expected, atol=1e-8)
        assert any(c.degenerate for c in rep.circles)
        assert rep.disk == "circular-disk"

    def test_normal_matrix_empty(self):
        rep = kipp.detect_circles(np.diag([1.0, 2.0, 3.0]))
        assert rep.circles == ()
        assert rep.disk == "non-disk"

    def test_shifted_center(self):
        a = pisom.jordan_block(2) + (0.3 + 0.4j) * np.eye(2)
        rep = kipp.detect_circles(a)
        assert len(rep.circles) == 1
        assert abs(rep.circles[0].center - (0.3 + 0.4j)) <= 1e-9
        assert abs(rep.circles[0].radius - 0.5) <= 1e-10

    def test_two_centers(self):
        a = pisom.direct_sum(pisom.jordan_block(2), pisom.jordan_block(2) + np.eye(2))
        rep = kipp.detect_circles(a)
        centers = sorted(c.center.real for c in rep.circles)
        np.testing.assert_allclose(centers, [0.0, 1.0], atol=1e-9)
        for c in rep.circles:
            assert abs(c.radius - 0.5) <= 1e-9

    def test_rotation_covariance(self, rng):
        form = sample_two_circles(rng)
        base = kipp.detect_circles(form.matrix())
        base_radii = sorted(c.radius for c in base.circles)
        for _ in range(20):
            phi = rng.uniform(-np.pi, np.pi)
            rep = kipp.detect_circles(np.exp(1j * phi) * form.matrix())
            radii = sorted(c.radius for c in rep.circles)
            np.testing.assert_allclose(radii, base_radii, atol=1e-8)
            for c in rep.circles:
                assert abs(c.center) <= 1e-8  # origin is rotation fixed

    def test_unitary_invariance(self, rng):
        form = sample_two_circles(rng)
        base_radii = sorted(c.radius for c in kipp.detect_circles(form.matrix()).circles)
        for _ in range(5):
            u = linalg.random_unitary(6, rng)
            rep = kipp.detect_circles(u @ form.matrix() @ u.conj().T)
            np.testing.assert_allclose(
                sorted(c.radius for c in rep.circles), base_radii, atol=1e-8
            )

    def test_oracle_bound_on_reported_circles(self, rng):
        # every reported circle satisfies the 64-point grid bound
        thetas = linalg.theta_grid(64)
        for sampler in (lambda: sample_two_circles(rng), lambda: sample_defect2(rng, h=0.0)):
            form = sampler()
            rep = kipp.detect_circles(form.matrix())
            p = kipp.kippenhahn_polynomial(form.matrix())
            for c in rep.circles:
                vals = np.concatenate(
                    [p.evaluate(np.full_like(thetas, s * c.radius), thetas) for s in (1, -1)]
                )
                assert np.max(np.abs(vals)) <= 1e-6 * p.scale()

    def test_matches_eigen_scan_oracle(self, rng):
        for i in range(10):
            form = sample_defect2(rng, h=0.0 if i % 2 else None)
            rep = kipp.detect_circles(form.matrix())
            got = sorted(c.radius for c in rep.circles if not c.degenerate)
            want = eigen_scan_radii(form.matrix())
            assert len(got) == len(want)
            np.testing.assert_allclose(got, want, atol=1e-6)

    def test_gray_zone_undetermined(self):
        # just under the disk threshold of the two-circle family, the gap
        # between the outer circle and the range lands in (1e-7, 1e-5)
        h = 0.2
        d = 2 * h + h * h - 5e-6
        b = np.sqrt(1 - d * d)
        e = np.sqrt(1 - h * h)
        form = Defect2Form(b=b, c=0.0, d=d, e=e, f=0.0, g=0.0, h=h)
        rep = kipp.detect_circles(form.matrix())
        gap = abs(rep.numerical_radius - max(c.radius for c in rep.circles))
        assert 1e-7 < gap < 1e-5
        assert rep.disk == "undetermined"


class TestContains:
    def test_contains_circle(self):
        assert kipp.contains_circle(pisom.jordan_block(2), 0.5)
        assert not kipp.contains_circle(pisom.jordan_block(2), 0.4)
        a = pisom.jordan_block(2) + 0.7 * np.eye(2)
        assert kipp.contains_circle(a, 0.5, center=0.7)

    def test_point_circle_criterion(self, rng):
        base = sample_defect2(rng)
        hyp = np.hypot(base.c, base.d)
        zero_b = Defect2Form(
            b=0.0, c=base.c / hyp, d=base.d / hyp, e=base.e, f=base.f, g=base.g, h=base.h
        )
        assert kipp.contains_point_circle(zero_b.matrix())
        while base.b * base.e < 0.05:
            base = sample_defect2(rng)
        assert not kipp.contains_point_circle(base.matrix())
        assert kipp.contains_point_circle(np.zeros((3, 3)))
