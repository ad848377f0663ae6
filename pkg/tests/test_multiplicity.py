import json

import pytest

from strategies import all_dimension_vectors, singletons
from zelevinsky.multiplicity import (DEFAULT_PRIMES, InterpolationError, fiber_count,
                                     fiber_count_enumerated, fiber_count_interpolated,
                                     ic_stalks, interpolate, layer_sequence, multiplicity,
                                     multiplicity_matrix, stalk_table_json, subspace_counts,
                                     subspace_counts_enumerated)
from zelevinsky.multiseg import SupercuspidalLabel, lower_set, ms
from zelevinsky.poly import Poly

ONE_PLUS_Q = Poly({0: 1, 1: 1})

# Frozen from two independent routes that agree: point counts with elimination,
# and composition factors of induced Hecke modules at q = 4, 9, 25.
FROZEN = {
    "[2]+[1]+[1]+[0]": (
        ["[2]+[1]+[1]+[0]", "[1,2]+[1]+[0]", "[2]+[1]+[0,1]", "[1,2]+[0,1]", "[1]+[0,2]"],
        [[1, 1, 1, 2, 1], [0, 1, 0, 1, 1], [0, 0, 1, 1, 1], [0, 0, 0, 1, 1], [0, 0, 0, 0, 1]],
    ),
    "[2]+[2]+[1]+[0]": (
        ["[2]+[2]+[1]+[0]", "[2]+[2]+[0,1]", "[2]+[1,2]+[0]", "[2]+[0,2]"],
        [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]],
    ),
    "[1]+[1]+[0]+[0]": (
        ["[1]+[1]+[0]+[0]", "[1]+[0,1]+[0]", "[0,1]+[0,1]"],
        [[1, 2, 1], [0, 1, 1], [0, 0, 1]],
    ),
    "[3]+[2]+[1]+[0]": (
        ["[3]+[2]+[1]+[0]", "[2,3]+[1]+[0]", "[3]+[1,2]+[0]", "[3]+[2]+[0,1]", "[1,3]+[0]",
         "[2,3]+[0,1]", "[3]+[0,2]", "[0,3]"],
        [[1, 1, 1, 1, 1, 1, 1, 1], [0, 1, 0, 0, 1, 1, 0, 1], [0, 0, 1, 0, 1, 0, 1, 1],
         [0, 0, 0, 1, 0, 1, 1, 1], [0, 0, 0, 0, 1, 0, 0, 1], [0, 0, 0, 0, 0, 1, 0, 1],
         [0, 0, 0, 0, 0, 0, 1, 1], [0, 0, 0, 0, 0, 0, 0, 1]],
    ),
}


@pytest.mark.parametrize("key", sorted(FROZEN))
def test_frozen_matrices(key):
    from zelevinsky.dsl import parse_multisegment
    m = multiplicity_matrix(parse_multisegment(key))
    elements, rows = FROZEN[key]
    assert [str(e) for e in m.elements] == elements
    assert m.rows == rows


def test_gl2_and_gl3():
    assert multiplicity_matrix(ms(1, 0)).rows == [[1, 1], [0, 1]]
    m = multiplicity_matrix(ms(2, 1, 0))
    assert m.rows == [[1, 1, 1, 1], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 0, 1]]


def test_quadric_stalk():
    t = ic_stalks(ms(1, 1, 0, 0))
    rank_one = ms((0, 1), 0, 1)
    zero = ms(1, 1, 0, 0)
    assert t.stalk(rank_one, zero).poly == ONE_PLUS_Q
    assert t.stalk(rank_one, zero).at_one() == 2
    assert multiplicity(rank_one, zero) == 2
    assert t.corrections == {}


def test_layer_sequences():
    b = ms((0, 1), 0, 1)
    assert layer_sequence(b).steps == ((0, 1), (1, 2), (0, 1))
    assert layer_sequence(b, "image").steps == ((1, 1), (0, 2), (1, 1))
    assert layer_sequence(ms((0, 2))).steps == ((2, 1), (1, 1), (0, 1))
    with pytest.raises(ValueError):
        layer_sequence(b, "sideways")


def test_projective_line_fibre():
    L = layer_sequence(ms((0, 1), 0, 1))
    assert fiber_count(L, ms(1, 1, 0, 0)).poly == ONE_PLUS_Q
    for p in (2, 3, 5):
        assert fiber_count_enumerated(L, ms(1, 1, 0, 0), p) == p + 1


SMALL_PACKETS = [(1, 1), (1, 1, 1), (2, 2), (1, 2, 1), (2, 1, 1), (1, 1, 2), (2, 2, 1), (1, 2, 2)]


@pytest.mark.parametrize("phi", SMALL_PACKETS)
@pytest.mark.parametrize("side", ["kernel", "image"])
def test_fibre_counts_against_enumeration(phi, side):
    els = lower_set(singletons(phi))
    for b in els:
        L = layer_sequence(b, side)
        for c in els:
            poly = fiber_count(L, c).poly
            for p in (2, 3):
                assert poly(p) == fiber_count_enumerated(L, c, p)


@pytest.mark.parametrize("phi", [(2, 2), (1, 2, 1), (2, 2, 1)])
def test_interpolation_with_held_out_prime(phi):
    els = lower_set(singletons(phi))
    held_out = 7
    primes = [p for p in DEFAULT_PRIMES if p != held_out]
    for b in els:
        L = layer_sequence(b)
        for c in els:
            poly = fiber_count_interpolated(L, c, primes)
            assert poly == fiber_count(L, c).poly
            assert poly(held_out) == fiber_count_enumerated(L, c, held_out)


def test_interpolation_needs_enough_primes():
    L = layer_sequence(ms((0, 1), 0, 1))
    with pytest.raises(InterpolationError):
        fiber_count_interpolated(L, ms(1, 1, 0, 0), primes=(2,))
    assert interpolate([(0, 1), (1, 2), (2, 5)]) == Poly({0: 1, 2: 1})


@pytest.mark.parametrize("state,j,c", [
    (((0, 1), (0, 1)), 0, 1),
    (((0, 1), (0, 0), (1, 1)), 1, 1),
    (((0, 0), (0, 1), (1, 2)), 1, 1),
    (((0, 2), (1, 1), (1, 2)), 1, 2),
    (((0, 0), (0, 0), (0, 1)), 0, 2),
])
def test_subspace_counts_against_enumeration(state, j, c):
    closed = {s: poly for s, poly in subspace_counts(state, j, c)}
    for p in (2, 3):
        brute = subspace_counts_enumerated(state, j, c, p)
        assert {s: poly(p) for s, poly in closed.items() if poly(p)} == brute


@pytest.mark.parametrize("phi", all_dimension_vectors(5))
def test_kernel_and_image_agree(phi):
    a = singletons(phi)
    k, i = ic_stalks(a, "kernel"), ic_stalks(a, "image")
    assert k.elements == i.elements
    assert k.stalks == i.stalks


def test_product_rule_small():
    x = SupercuspidalLabel("x", 2)
    a = ms(1, 0) + ms(1, 1, 0, 0, rho=x)
    m = multiplicity_matrix(a)
    assert len(m.elements) == 6
    assert multiplicity(ms((0, 1)) + ms((0, 1), 0, 1, rho=x), a) == 2
    assert sum(map(sum, m.rows)) == 3 * 7


def test_multiplicity_zero_off_order():
    assert multiplicity(ms(1, 0), ms((0, 1))) == 0
    assert multiplicity(ms((0, 1)), ms(2, 1)) == 0


def test_serialization():
    m = multiplicity_matrix(ms(1, 0))
    assert m.to_json() == {"elements": ["[1]+[0]", "[0,1]"], "matrix": [[1, 1], [0, 1]]}
    assert m.to_csv().splitlines()[0] == ',[1]+[0],"[0,1]"'
    js = stalk_table_json(ic_stalks(ms(1, 1, 0, 0)))
    json.dumps(js)


def test_empty_input():
    from zelevinsky.multiseg import Multisegment
    m = multiplicity_matrix(Multisegment(()))
    assert m.rows == [[1]]
