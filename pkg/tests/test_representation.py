import numpy as np
import pytest

from pararp.algebra import Polynomial, adjoint, canonical_product, reflect
from pararp.exponents import ExponentVector
from pararp.representation import (
    DimensionCapError,
    all_exponent_vectors,
    build_generators,
    clock_shift,
    decompose,
    to_matrix,
    trace_monomial,
    verify_yamazaki,
)

from conftest import rep_for


class TestClockShift:
    def test_pauli_case(self):
        sigma, tau = clock_shift(2)
        assert np.allclose(sigma, np.diag([1, -1]))
        assert np.allclose(tau, np.array([[0, 1], [1, 0]]))

    def test_weyl_relation(self):
        for n in (2, 3, 5, 8):
            sigma, tau = clock_shift(n)
            omega = np.exp(2j * np.pi / n)
            assert np.abs(sigma @ tau - omega * tau @ sigma).max() < 1e-13
            eye = np.eye(n)
            assert np.abs(np.linalg.matrix_power(sigma, n) - eye).max() < 1e-12
            assert np.abs(np.linalg.matrix_power(tau, n) - eye).max() < 1e-12

    def test_traceless(self):
        for n in (2, 3, 7):
            sigma, tau = clock_shift(n)
            assert abs(np.trace(sigma)) < 1e-12
            assert abs(np.trace(tau)) < 1e-12

    def test_rejects_small_order(self):
        with pytest.raises(ValueError):
            clock_shift(1)


class TestBuildGenerators:
    def test_majorana_pair(self):
        rep = rep_for(2, 2)
        c1, c2 = rep.generators
        assert np.allclose(c1, np.diag([1, -1]))
        # c_2 = i sigma tau = -Y (anticommutes with c_1, squares to Id)
        assert np.abs(c1 @ c2 + c2 @ c1).max() < 1e-13
        assert np.abs(c2 @ c2 - np.eye(2)).max() < 1e-13

    def test_even_generator_needs_prefactor(self):
        # without zeta^{n-1}, (sigma tau)^n = (-1)^{n-1} Id
        for n in (3, 4):
            sigma, tau = clock_shift(n)
            bare = np.linalg.matrix_power(sigma @ tau, n)
            assert np.abs(bare - (-1) ** (n - 1) * np.eye(n)).max() < 1e-11
            rep = rep_for(n, 2)
            fixed = np.linalg.matrix_power(rep.generators[1], n)
            assert np.abs(fixed - np.eye(n)).max() < 1e-11

    @pytest.mark.parametrize("n,L", [(2, 2), (2, 4), (3, 2), (3, 4), (5, 2)])
    def test_all_relations(self, n, L):
        residuals = verify_yamazaki(rep_for(n, L))
        assert max(residuals.values()) < 1e-12

    def test_dimension_cap(self):
        with pytest.raises(DimensionCapError):
            build_generators(2, 4, dim_cap=3)

    def test_corrupted_generator_reported_not_raised(self):
        rep = build_generators(3, 2)
        rep.generators[0] = rep.generators[0] + 0.5
        residuals = verify_yamazaki(rep)
        assert max(residuals.values()) > 0.1


class TestToMatrix:
    def test_identity(self):
        rep = rep_for(3, 2)
        m = to_matrix(Polynomial.identity(3, 2), rep)
        assert np.allclose(m, np.eye(3))

    @pytest.mark.parametrize("n,L", [(2, 2), (2, 4), (3, 4), (4, 2)])
    def test_product_homomorphism(self, n, L):
        rep = rep_for(n, L)
        rng = np.random.default_rng(17)
        vecs = list(all_exponent_vectors(n, L))
        for _ in range(100):
            i, j = rng.integers(0, len(vecs), size=2)
            p = Polynomial.monomial(complex(rng.normal(), rng.normal()), vecs[i])
            q = Polynomial.monomial(complex(rng.normal(), rng.normal()), vecs[j])
            lhs = to_matrix(canonical_product(p, q), rep)
            rhs = to_matrix(p, rep) @ to_matrix(q, rep)
            assert np.abs(lhs - rhs).max() < 1e-10

    @pytest.mark.parametrize("n,L", [(2, 4), (3, 2), (4, 2)])
    def test_adjoint_and_reflect_oracles(self, n, L):
        rep = rep_for(n, L)
        rng = np.random.default_rng(23)
        vecs = list(all_exponent_vectors(n, L))
        for _ in range(50):
            idx = rng.integers(0, len(vecs), size=3)
            p = Polynomial(
                {vecs[i]: complex(rng.normal(), rng.normal()) for i in idx},
                n, L,
            )
            assert np.abs(
                to_matrix(adjoint(p), rep) - to_matrix(p, rep).conj().T
            ).max() < 1e-10
            # reflection is multiplicative against matrices too
            q = Polynomial.monomial(1.0, vecs[int(idx[0])])
            lhs = to_matrix(reflect(canonical_product(p, q)), rep)
            rhs = to_matrix(reflect(p), rep) @ to_matrix(reflect(q), rep)
            assert np.abs(lhs - rhs).max() < 1e-10


class TestTraceTheorem:
    @pytest.mark.parametrize("n,L", [(2, 2), (2, 4), (3, 2), (3, 4), (4, 2)])
    def test_analytic_trace_matches_matrix(self, n, L):
        rep = rep_for(n, L)
        for vec in all_exponent_vectors(n, L):
            analytic = trace_monomial(vec)
            numeric = np.trace(rep.monomial_matrix(vec))
            assert abs(analytic - numeric) < 1e-10

    def test_identity_trace(self):
        assert trace_monomial(ExponentVector((0, 0), 3)) == 3
        assert trace_monomial(ExponentVector((0, 0, 0, 0), 3)) == 9

    def test_case_ii_exclusion(self):
        # every site occurs yet the trace vanishes
        vec = ExponentVector((2, 2, 2, 2), 4)
        assert trace_monomial(vec) == 0
        rep = rep_for(4, 4)
        assert abs(np.trace(rep.monomial_matrix(vec))) < 1e-10

    @pytest.mark.parametrize("n,L", [(2, 2), (2, 4), (3, 2), (3, 4)])
    def test_basis_gram_identity(self, n, L):
        rep = rep_for(n, L)
        mats = np.array(
            [rep.monomial_matrix(v).ravel() for v in all_exponent_vectors(n, L)]
        )
        gram = mats.conj() @ mats.T / rep.dim
        assert np.abs(gram - np.eye(n**L)).max() < 1e-10


class TestDecompose:
    def test_identity(self):
        rep = rep_for(3, 2)
        p = decompose(np.eye(3, dtype=complex), rep)
        assert p.almost_equal(Polynomial.identity(3, 2))

    def test_single_monomial(self):
        rep = rep_for(3, 2)
        vec = ExponentVector((1, 2), 3)
        p = decompose(rep.monomial_matrix(vec), rep)
        assert list(p.terms) == [vec]
        assert abs(p.terms[vec] - 1) < 1e-12

    def test_round_trip_random(self):
        rep = rep_for(2, 4)
        rng = np.random.default_rng(31)
        a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        p = decompose(a, rep)
        assert np.abs(to_matrix(p, rep) - a).max() < 1e-10

    def test_shape_mismatch(self):
        rep = rep_for(3, 2)
        with pytest.raises(ValueError):
            decompose(np.eye(4), rep)


class TestPrimitiveRP:
    def test_trace_of_a_theta_a(self):
        # Tr(A theta(A)) = n^{L/2} |a_0|^2 for A in the minus algebra
        from pararp.rp import random_minus_vector

        rng = np.random.default_rng(41)
        for n, L in [(2, 4), (3, 4)]:
            rep = rep_for(n, L)
            for _ in range(100):
                terms = {}
                for _ in range(int(rng.integers(1, 5))):
                    vec = random_minus_vector(n, L, rng, observable=False)
                    terms[vec] = complex(rng.normal(), rng.normal())
                a = Polynomial(terms, n, L)
                tr = np.trace(
                    to_matrix(a, rep) @ to_matrix(reflect(a), rep)
                )
                expected = rep.dim * abs(a.constant_term()) ** 2
                assert abs(tr - expected) < 1e-9
