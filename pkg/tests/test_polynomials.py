from __future__ import annotations

import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import standard_monomials_by_degree
from sgp import NotMonomialAfterSpecialization
from sgp.errors import InvalidInput
from sgp.families import ed4_polynomials, reduction_identities
from sgp.polynomials import (
    INFINITE,
    MonomialIdeal,
    SparsePolynomial,
    monomial_colength,
    poly_identity_zero,
    specialize_binomials_at_zero,
)


def x(i, power=1, nv=4):
    return SparsePolynomial.variable(nv, i, power)


def to_sympy(p: SparsePolynomial):
    xs = sympy.symbols(f"x0:{p.num_vars}")
    return sum(
        (c * sympy.Mul(*(v**e for v, e in zip(xs, mono))) for mono, c in p.terms.items()),
        sympy.Integer(0),
    )


class TestSparsePolynomial:
    def test_arithmetic(self):
        a = x(0) + x(1)
        b = x(0) - x(1)
        assert a * b == x(0, 2) - x(1, 2)
        assert (a - a).is_zero()
        assert a * 3 == 3 * a

    def test_zero_coefficients_dropped(self):
        p = SparsePolynomial(2, {(1, 0): 0, (0, 1): 2})
        assert p.terms == {(0, 1): 2}

    def test_mismatch(self):
        with pytest.raises(InvalidInput):
            x(0, nv=3) + x(0, nv=4)
        with pytest.raises(InvalidInput):
            SparsePolynomial(2, {(1,): 1})

    def test_repr(self):
        assert repr(SparsePolynomial.binomial((0, 1, 1, 0), (1, 0, 0, 1))) == "-x0*x3 + x1*x2"
        assert repr(SparsePolynomial(1)) == "0"

    @settings(max_examples=60, deadline=None)
    @given(
        st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-5, 5), max_size=5),
        st.dictionaries(st.tuples(*[st.integers(0, 3)] * 3), st.integers(-5, 5), max_size=5),
    )
    def test_product_matches_sympy(self, ta, tb):
        a, b = SparsePolynomial(3, ta), SparsePolynomial(3, tb)
        assert sympy.expand(to_sympy(a * b) - to_sympy(a) * to_sympy(b)) == 0
        assert sympy.expand(to_sympy(a + b) - to_sympy(a) - to_sympy(b)) == 0


class TestIdentities:
    @pytest.mark.parametrize("n", [5, 6])
    def test_reductions_hold(self, n):
        for terms, target in reduction_identities(n).values():
            assert poly_identity_zero(terms, target)
            total = to_sympy(target) + sum(to_sympy(m) * to_sympy(f) for m, f in terms)
            assert sympy.expand(total) == 0

    def test_perturbed(self):
        terms, target = reduction_identities(5)["f_6"]
        terms = [(m * 2, f) if f == ed4_polynomials(5)["h_0"] else (m, f) for m, f in terms]
        assert not poly_identity_zero(terms, target)

    def test_permutation_invariant(self):
        rng = random.Random(7)
        for terms, target in reduction_identities(7).values():
            for _ in range(5):
                shuffled = list(terms)
                rng.shuffle(shuffled)
                assert poly_identity_zero(shuffled, target)

    def test_mismatch(self):
        with pytest.raises(InvalidInput):
            poly_identity_zero([(x(0, nv=3), x(1))], x(0))


def j_prime(n):
    gens = [(n + 1, 0, 0), (0, n + 1, 0), (0, 0, n), (1, 1, 0)]
    gens += [(0, k, n + 1 - k) for k in range(2, n + 1)]
    gens += [(k, 0, n + 1 - k) for k in range(2, n + 1)]
    return gens


class TestMonomialIdeal:
    def test_interreduced(self):
        I = MonomialIdeal(2, [(1, 0), (2, 1), (0, 3)])
        assert I.generators == {(1, 0), (0, 3)}

    def test_colength_examples(self):
        assert monomial_colength(MonomialIdeal(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])) == 1
        assert monomial_colength(MonomialIdeal(2, [(2, 0)])) == INFINITE
        assert monomial_colength(MonomialIdeal(2, [(0, 0)])) == 0

    @pytest.mark.parametrize("n, expected", [(5, 35), (6, 48), (7, 63)])
    def test_j_prime(self, n, expected):
        I = MonomialIdeal(3, j_prime(n))
        assert monomial_colength(I) == expected
        assert standard_monomials_by_degree(j_prime(n), 3, 3 * (n + 1)) == expected

    @settings(max_examples=40, deadline=None)
    @given(
        st.lists(st.tuples(*[st.integers(0, 4)] * 3), min_size=1, max_size=5),
        st.tuples(*[st.integers(1, 5)] * 3),
    )
    def test_colength_matches_degree_enumeration(self, mixed, powers):
        gens = mixed + [tuple(p if i == j else 0 for j in range(3)) for i, p in enumerate(powers)]
        I = MonomialIdeal(3, gens)
        assert monomial_colength(I) == standard_monomials_by_degree(list(I.generators), 3, 3 * max(powers))


class TestSpecialize:
    def test_g2(self):
        g2 = SparsePolynomial.binomial((0, 1, 1, 0), (1, 0, 0, 1))
        assert specialize_binomials_at_zero([g2], 0) == MonomialIdeal(4, [(0, 1, 1, 0), (1, 0, 0, 0)])

    def test_survivor_raises(self):
        b = SparsePolynomial.binomial((0, 1, 1, 0, 0), (0, 0, 0, 1, 1))
        with pytest.raises(NotMonomialAfterSpecialization):
            specialize_binomials_at_zero([b], 0)

    def test_survivor_absorbed(self):
        # x1^2 - x2 survives x0 = 0 but x1 is already in the ideal via x0*x3 - x1
        polys = [SparsePolynomial.binomial((1, 0, 0, 1), (0, 1, 0, 0)),
                 SparsePolynomial.binomial((0, 2, 0, 0), (0, 0, 1, 0))]
        I = specialize_binomials_at_zero(polys, 0)
        assert I == MonomialIdeal(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0)])

    @pytest.mark.parametrize("n", [5, 6])
    def test_matches_printed_list(self, n):
        P = ed4_polynomials(n)
        I = specialize_binomials_at_zero(list(P.values()), 0)
        expected = [(1, 0, 0, 0)] + [(0,) + g for g in j_prime(n)]
        assert I == MonomialIdeal(4, expected)
