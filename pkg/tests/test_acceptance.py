"""
Acceptance suite: one test per criterion, each with its time limit.

Run with pytest (one PASS/FAIL line per criterion under -v), or directly:

    python3 tests/test_acceptance.py
"""

import random
import sys
import time
from collections import Counter
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))

from strategies import all_dimension_vectors, random_integer_multisegment, singletons  # noqa: E402
from zelevinsky.geometry import (DimensionVector, closure_leq, orbit_size,  # noqa: E402
                                 orbits_with_dimension_vector)
from zelevinsky.hecke import (multinomial, oracle_factors, relation_check,  # noqa: E402
                              standard_module, theta_weights, weight_formula)
from zelevinsky.multiplicity import (fiber_count, fiber_count_enumerated, ic_stalks,  # noqa: E402
                                     layer_sequence, multiplicity, multiplicity_matrix)
from zelevinsky.multiseg import (Exponent, Multisegment, Segment, SupercuspidalLabel,  # noqa: E402
                                 from_langlands_triple, inertial_decompose, langlands_triple,
                                 leq, leq_bfs, ms, twist)
from zelevinsky.params import simple_normalize  # noqa: E402
from zelevinsky.poly import Poly  # noqa: E402

Q_VALUES = (4, 9, 25)


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, "took %.2f s, limit %s s" % (self.elapsed, self.limit)


def _oracle_rows_agree(a, q):
    m = multiplicity_matrix(a)
    for i, e in enumerate(m.elements):
        expected = {m.elements[j]: x for j, x in enumerate(m.rows[i]) if x}
        if oracle_factors(e, q) != expected:
            return False
    return True


# 1 -------------------------------------------------------------------------------------

def test_criterion_1_gl2_principal_block():
    with Timer(1.0):
        a = ms(1, 0)
        m = multiplicity_matrix(a)
        assert m.rows == [[1, 1], [0, 1]]
        for q in Q_VALUES:
            factors = oracle_factors(a, q)
            assert factors == {ms(1, 0): 1, ms((0, 1)): 1}
            assert _oracle_rows_agree(a, q)


# 2 -------------------------------------------------------------------------------------

def test_criterion_2_gl3_regular_block():
    with Timer(5.0):
        a = ms(2, 1, 0)
        m = multiplicity_matrix(a)
        n = len(m.elements)
        assert n == 4
        for i in range(n):
            for j in range(n):
                comparable = leq(m.elements[j], m.elements[i])
                assert m.rows[i][j] == (1 if comparable else 0)
        for q in Q_VALUES:
            assert _oracle_rows_agree(a, q)


# 3 -------------------------------------------------------------------------------------

def test_criterion_3_quadric_cone():
    with Timer(5.0):
        zero = ms(0, 0, 1, 1)
        rank_one = ms((0, 1), 0, 1)
        table = ic_stalks(zero)
        assert table.stalk(rank_one, zero).poly == Poly({0: 1, 1: 1})
        assert multiplicity(rank_one, zero) == 2
        # small resolution: the fibre over the zero orbit is a projective line
        L = layer_sequence(rank_one)
        assert fiber_count(L, zero).poly == Poly({0: 1, 1: 1})
        for p in (2, 3, 5, 7):
            assert fiber_count_enumerated(L, zero, p) == p + 1


# 4 -------------------------------------------------------------------------------------

def test_criterion_4_order_criterion_equivalence():
    with Timer(60.0):
        everything = []
        for phi in all_dimension_vectors(6, gaps=True):
            orbits = [ms(*ivs) for ivs in orbits_with_dimension_vector(dict(enumerate(phi)))]
            everything.extend(orbits)
            for b in orbits:
                for c in orbits:
                    assert closure_leq(b, c) == leq_bfs(b, c), (b, c)
        # pairs with different content are never comparable; sample them
        rng = random.Random(4)
        for _ in range(20000):
            b, c = rng.choice(everything), rng.choice(everything)
            assert closure_leq(b, c) == leq_bfs(b, c)


# 5 -------------------------------------------------------------------------------------

def _random_class(rng, rho, shift):
    size = rng.randint(1, 4)
    a = random_integer_multisegment(rng, size, spread=2)
    return Multisegment(tuple(Segment(rho, s.start + shift, s.end + shift) for s in a))


def test_criterion_5_product_rule():
    rng = random.Random(5)
    other = SupercuspidalLabel("x", 2)
    with Timer(60.0):
        for _ in range(50):
            first = _random_class(rng, SupercuspidalLabel(), 0)
            second = _random_class(rng, other, Fraction(1, 2)) if rng.random() < 0.5 \
                else _random_class(rng, SupercuspidalLabel(), Fraction(1, 2))
            a = first + second
            m = multiplicity_matrix(a)
            m1, m2 = multiplicity_matrix(first), multiplicity_matrix(second)
            assert len(m.elements) == len(m1.elements) * len(m2.elements)
            idx1 = {e: k for k, e in enumerate(m1.elements)}
            idx2 = {e: k for k, e in enumerate(m2.elements)}
            for i, ei in enumerate(m.elements):
                pi = inertial_decompose(ei)
                for j, ej in enumerate(m.elements):
                    pj = inertial_decompose(ej)
                    expected = (m1.rows[idx1[pi[0]]][idx1[pj[0]]] *
                                m2.rows[idx2[pi[1]]][idx2[pj[1]]])
                    assert m.rows[i][j] == expected


# 6 -------------------------------------------------------------------------------------

def test_criterion_6_normalization():
    rng = random.Random(6)
    with Timer(60.0):
        for k in range(50):
            rho = SupercuspidalLabel("r%d" % k, rng.randint(1, 4), Fraction(rng.randint(-3, 3), 4))
            shift = Exponent(Fraction(rng.randint(0, 5), 6), Fraction(rng.randint(-2, 2), 7))
            base = random_integer_multisegment(rng, rng.randint(1, 5), spread=3)
            a = Multisegment(tuple(Segment(rho, s.start + shift, s.end + shift) for s in base))
            norm = simple_normalize(a)
            ma, mn = multiplicity_matrix(a), multiplicity_matrix(norm)
            assert [simple_normalize(e) for e in ma.elements] == mn.elements
            assert ma.rows == mn.rows


# 7 -------------------------------------------------------------------------------------

def _check_invariants(a):
    table = ic_stalks(a)
    m = multiplicity_matrix(a)
    els, dims = table.elements, table.dims
    n = len(els)
    for i in range(n):
        assert m.rows[i][i] == 1
        for j in range(n):
            if m.rows[i][j]:
                assert leq(els[j], els[i])
            if j < i:
                assert m.rows[i][j] == 0
    for (i, j), poly in table.stalks.items():
        assert poly.is_polynomial() and all(Fraction(c).denominator == 1 and c > 0
                                            for _, c in poly.terms())
        if i == j:
            assert poly == 1
        else:
            assert 2 * poly.degree() < dims[i] - dims[j]
    for (i, j), corr in table.corrections.items():
        assert corr.is_palindromic(dims[i] - dims[j])
        assert all(c > 0 for _, c in corr.terms())
    image = ic_stalks(a, "image")
    assert image.elements == els and image.stalks == table.stalks
    for shift in (Exponent(3), Exponent(Fraction(1, 2), Fraction(1, 7))):
        t = multiplicity_matrix(twist(a, shift))
        assert t.rows == m.rows
        assert t.elements == [twist(e, shift) for e in m.elements]


def test_criterion_7_invariant_suite():
    with Timer(600.0):
        for phi in all_dimension_vectors(5, gaps=True):
            a = singletons(phi)
            _check_invariants(a)
            dv = DimensionVector.from_dict(dict(enumerate(phi)))
            for q in (2, 3, 4):
                total = sum(orbit_size(b, q) for b in orbits_with_dimension_vector(dict(enumerate(phi))))
                assert total == q ** dv.dim_E()
        rng = random.Random(7)
        for _ in range(200):
            _check_invariants(random_integer_multisegment(rng, rng.randint(1, 7), spread=4))


# 8 -------------------------------------------------------------------------------------

def test_criterion_8_hecke_kernel():
    with Timer(120.0):
        for q in Q_VALUES:
            for n in (2, 3, 4):
                report = relation_check(n, q)
                assert all(report.values()), [k for k, v in report.items() if not v]
        for a in [ms(1, 0), ms(2, 1, 0), ms((0, 1), 2), ms(1, 1, 0, 0), ms((0, 2), 3), ms((1, 2), 0, 1)]:
            for q in Q_VALUES:
                M = standard_module(a, q)
                assert M.dim == multinomial([s.length for s in a])
                expected = Counter()
                lam = weight_formula(reversed(a.segments), q)
                assert lam == M.weight
                for w in M.basis:
                    expected[tuple(lam[w.index(k + 1)] for k in range(M.n))] += 1
                assert theta_weights(M) == expected


# 9 -------------------------------------------------------------------------------------

def test_criterion_9_langlands_translation():
    rng = random.Random(9)
    labels = [SupercuspidalLabel(), SupercuspidalLabel("u", 2, Fraction(1, 2)),
              SupercuspidalLabel("w", 3, Fraction(-1, 3))]
    with Timer(60.0):
        for _ in range(100):
            segs = []
            for _ in range(rng.randint(1, 6)):
                rho = rng.choice(labels)
                start = Exponent(Fraction(rng.randint(-6, 6), 2), Fraction(rng.randint(-1, 1), 3))
                segs.append(Segment(rho, start, start + rng.randint(0, 3)))
            a = Multisegment(tuple(segs))
            triple = langlands_triple(a)
            mids = [mid.re for mid, _ in triple]
            assert all(x > y for x, y in zip(mids, mids[1:]))
            assert from_langlands_triple(triple) == a


CRITERIA = [
    test_criterion_1_gl2_principal_block,
    test_criterion_2_gl3_regular_block,
    test_criterion_3_quadric_cone,
    test_criterion_4_order_criterion_equivalence,
    test_criterion_5_product_rule,
    test_criterion_6_normalization,
    test_criterion_7_invariant_suite,
    test_criterion_8_hecke_kernel,
    test_criterion_9_langlands_translation,
]


def main():
    failed = 0
    for k, fn in enumerate(CRITERIA, start=1):
        start = time.perf_counter()
        try:
            fn()
            status = "PASS"
        except AssertionError as exc:
            status = "FAIL (%s)" % exc
            failed += 1
        print("criterion %d: %s  [%.2f s]  %s" % (k, status, time.perf_counter() - start, fn.__name__))
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
