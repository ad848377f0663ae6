from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, strategies as st

from zelevinsky import linalg
from zelevinsky.poly import Poly, gaussian_binomial, gl_order, q_int

laurent = st.dictionaries(st.integers(-3, 3), st.integers(-5, 5), max_size=4).map(Poly)


def _count_subspaces(n, k, p):
    """Number of k-dim subspaces of F_p^n, by counting spanning k-tuples."""
    vectors = list(product(range(p), repeat=n))

    def rank(rows):
        m = [list(r) for r in rows]
        r = 0
        for c in range(n):
            piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = pow(m[r][c], p - 2, p)
            m[r] = [x * inv % p for x in m[r]]
            for i in range(len(m)):
                if i != r and m[i][c] % p:
                    f = m[i][c]
                    m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
            r += 1
        return r

    tuples = sum(1 for rows in product(vectors, repeat=k) if rank(rows) == k)
    bases = 1
    for i in range(k):
        bases *= p ** k - p ** i
    return tuples // bases


@pytest.mark.parametrize("n,k,p", [(2, 1, 2), (3, 1, 2), (3, 2, 3), (4, 2, 2)])
def test_gaussian_binomial_counts_subspaces(n, k, p):
    assert gaussian_binomial(n, k)(p) == _count_subspaces(n, k, p)


def test_gl_order():
    assert gl_order(2)(2) == 6
    assert gl_order(3)(2) == 168
    assert q_int(3) == Poly({0: 1, 1: 1, 2: 1})


@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a - a == Poly()
    assert a * b == b * a


@given(laurent, st.integers(1, 5))
def test_evaluation_is_homomorphism(a, x):
    b = a * a + a
    assert b(x) == a(x) ** 2 + a(x)


def test_poly_basics():
    p = Poly({0: 1, 1: 2, 2: 1})
    assert p.degree() == 2 and p.low_degree() == 0
    assert p.is_palindromic(2)
    assert not Poly({0: 1, 1: 2}).is_palindromic(1)
    assert p.coefficients() == [1, 2, 1]
    assert Poly.monomial(-1) * Poly.monomial(1) == 1
    assert (Poly.monomial(1) ** -2) == Poly.monomial(-2)
    assert str(Poly({0: 1, 1: 1})) == "1 + q"
    assert p.substitute_power(2) == Poly({0: 1, 2: 2, 4: 1})


def test_rref_and_nullspace():
    a = [[Fraction(x) for x in row] for row in [[1, 2, 3], [2, 4, 6], [1, 0, 1]]]
    assert linalg.rank(a) == 2
    ns = linalg.nullspace(a, 3)
    assert len(ns) == 1
    assert linalg.is_zero([linalg.matvec(a, ns[0])])


def test_span_builder():
    sb = linalg.SpanBuilder(3)
    assert sb.add([1, 0, 0])
    assert sb.add([1, 1, 0])
    assert not sb.add([2, 1, 0])
    assert sb.contains([0, 3, 0])
    assert not sb.contains([0, 0, 1])
    assert len(sb) == 2


def test_matrix_power():
    m = [[Fraction(1), Fraction(1)], [Fraction(0), Fraction(1)]]
    assert linalg.mat_pow(m, 5) == [[1, 5], [0, 1]]
    assert linalg.mat_pow(m, 0) == linalg.identity(2)
