import numpy as np
import pytest

from conftest import random_complex
from kipcurve import kipp, matpoly, pisom

# the two sharpness witnesses: identically singular z^2 C - z C*C + C*
# with trivial kernel intersection
C_ODD = np.array(
    [
        [1, 0, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 0, 1],
        [0, 1, 0, 0, 0],
        [0, 0, 0, 0, 0],
    ],
    dtype=complex,
)
C_EVEN = np.array(
    [[0, 0, 1, 0], [0, 0, 0, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    dtype=complex,
)


class TestIdenticallySingular:
    def test_witnesses(self):
        assert matpoly.is_identically_singular(matpoly.half_circle_polynomial(C_ODD))
        assert matpoly.is_identically_singular(matpoly.half_circle_polynomial(C_EVEN))

    def test_scalar_z_not_singular(self):
        p = matpoly.MatrixPolynomial.from_coeffs(np.zeros((1, 1)), np.ones((1, 1)))
        assert not matpoly.is_identically_singular(p)

    def test_generic_not_singular(self, rng):
        c = random_complex(rng, 3) / 3.0
        assert not matpoly.is_identically_singular(matpoly.half_circle_polynomial(c))

    def test_size_cap(self):
        p = matpoly.MatrixPolynomial.from_coeffs(*[np.zeros((9, 9))] * 9)
        with pytest.raises(ValueError):
            matpoly.is_identically_singular(p)


class TestMinimalKernelPolynomial:
    def test_degree_zero_common_null_vector(self, rng):
        c = random_complex(rng, 3)
        c[:, 0] = 0.0
        c[0, :] = 0.0
        c /= 2 * np.linalg.norm(c, 2)
        p = matpoly.half_circle_polynomial(c)
        v = matpoly.minimal_kernel_polynomial(p)
        assert v.degree == 0
        assert v.residual(p) <= 1e-8

    @pytest.mark.parametrize("c", [C_ODD, C_EVEN], ids=["odd", "even"])
    def test_witness_polynomials(self, c):
        p = matpoly.half_circle_polynomial(c)
        v = matpoly.minimal_kernel_polynomial(p)
        assert v.residual(p) <= 1e-8
        assert np.linalg.norm(v.vectors[0]) > 1e-9
        assert np.linalg.norm(v.vectors[-1]) > 1e-9
        assert v.degree > 0  # no common null vector here
        # minimality: the degree d-1 convolution system has full column rank
        if v.degree > 0:
            sys = matpoly._convolution_matrix(p, v.degree - 1)
            s = np.linalg.svd(sys, compute_uv=False)
            assert s[-1] > 1e-9 * s[0]

    def test_rejects_nonsingular(self, rng):
        c = random_complex(rng, 3) / 3.0
        with pytest.raises(ValueError):
            matpoly.minimal_kernel_polynomial(matpoly.half_circle_polynomial(c))


class TestKernelIntersection:
    def test_witnesses_trivial(self):
        # kernels exist but do not meet: span(e4) versus span(e5) / span(e2)
        k1 = matpoly.kernel_intersection(C_ODD)
        assert k1.shape[1] == 0
        np.testing.assert_allclose(np.abs(np.linalg.svd(C_ODD @ np.eye(5)[:, [3]], compute_uv=False)), 0, atol=1e-14)
        k2 = matpoly.kernel_intersection(C_EVEN)
        assert k2.shape[1] == 0

    def test_zero_matrix_full(self):
        k = matpoly.kernel_intersection(np.zeros((2, 2)))
        assert k.shape[1] == 2


class TestTheorem31:
    def test_two_j2_blocks(self):
        a = pisom.direct_sum(pisom.jordan_block(2), pisom.jordan_block(2))
        # rearrange into kernel-first block form via validate
        pi = pisom.validate(a, 1e-10)
        res = matpoly.check_theorem31(pi)
        assert res["hypothesis"] and res["contains_half_circle"] and res["reducible_j2"]
        assert res["implication_ok"]

    @pytest.mark.parametrize("m_extra,l_extra", [(0, 0), (1, 0), (0, 1), (1, 2)])
    def test_sharpness_family(self, m_extra, l_extra):
        blocks = [C_ODD] + [np.eye(2, dtype=complex)] * m_extra + [pisom.jordan_block(2)] * l_extra
        ck = pisom.direct_sum(*blocks)
        a = matpoly.assemble_from_contraction(ck)
        pi = pisom.validate(a, 1e-8)
        res = matpoly.check_theorem31(pi)
        assert res["contains_half_circle"]
        assert not res["reducible_j2"]
        assert not res["hypothesis"]  # the bound is sharp: hypothesis fails here
        assert res["implication_ok"]

    def test_random_contractions_never_violate(self, rng):
        for i in range(50):
            k = 2 + i % 3
            c = random_complex(rng, k)
            c /= max(1.0, 1.01 * np.linalg.norm(c, 2))
            if i % 2:
                c[:, int(rng.integers(k))] = 0.0
            pi = pisom.validate(matpoly.assemble_from_contraction(c), 1e-8)
            assert matpoly.check_theorem31(pi)["implication_ok"]


class TestProp31:
    def test_zero_matrix(self):
        res = matpoly.check_prop31(np.zeros((2, 2)))
        assert res["flipped_identically_singular"]
        assert res["kernel_intersection_nontrivial"]
        assert res["implication_ok"]

    def test_witness_flipped_not_singular(self):
        # the coefficient-swapped polynomial of the first witness cannot be
        # identically singular, otherwise its kernels would have to meet
        res = matpoly.check_prop31(C_ODD)
        assert not res["flipped_identically_singular"]
        assert res["implication_ok"]

    def test_constructed_common_kernel(self, rng):
        c = random_complex(rng, 4)
        c[:, 0] = 0.0
        c[0, :] = 0.0
        res = matpoly.check_prop31(c)
        assert res["flipped_identically_singular"]
        assert res["kernel_intersection_nontrivial"]


class TestHalfCircleConnection:
    def test_singularity_equals_curve_containment(self, rng):
        # det(z^2 C - z C*C + C*) = 0 identically iff the assembled partial
        # isometry carries the circle of radius 1/2
        hits = 0
        for i in range(100):
            k = 2 + i % 2
            if i % 4 == 0:
                z = random_complex(rng, k - 1) if k > 1 else np.zeros((0, 0))
                z = z / max(1.0, 1.01 * np.linalg.norm(z, 2)) if k > 1 else z
                c = pisom.direct_sum(np.zeros((1, 1)), z) if k > 1 else np.zeros((1, 1))
            else:
                c = random_complex(rng, k)
                c /= max(1.0, 1.01 * np.linalg.norm(c, 2))
            a = matpoly.assemble_from_contraction(c)
            singular = matpoly.is_identically_singular(matpoly.half_circle_polynomial(c))
            contains = kipp.contains_circle(a, 0.5, tol=1e-7)
            assert singular == contains
            hits += singular
        assert hits >= 20  # the structured stratum guarantees positives

    def test_contraction_required(self):
        with pytest.raises(ValueError):
            matpoly.assemble_from_contraction(2.0 * np.eye(2))
