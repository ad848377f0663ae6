"""Exact affine Hecke algebra of GL_n, its induced modules and a small-n oracle."""

import random
from itertools import combinations

from .algebra import (Element, HeckeAlgebra, beta, beta_inverse, bernstein, iwahori,
                      sqrt_rational)
from .modules import (DEFAULT_MODULE_BOUND, DEFAULT_ORACLE_BOUND, HeckeBoundExceeded,
                      InducedHeckeModule, Undecided, composition_multiplicities,
                      induced_module, module_relation_check, multinomial, simple_module,
                      standard_module, theta_weights, weight_formula)
from ..multiseg import Multisegment, Segment, inertial_decompose, ms

__all__ = [
    "Element", "HeckeAlgebra", "bernstein", "iwahori", "beta_translate", "relation_check",
    "InducedHeckeModule", "induced_module", "standard_module", "theta_weights",
    "weight_formula", "composition_multiplicities", "simple_module", "module_relation_check",
    "multinomial", "Undecided", "HeckeBoundExceeded", "sample_modules", "oracle_factors",
    "DEFAULT_MODULE_BOUND", "DEFAULT_ORACLE_BOUND",
]


def beta_translate(e, direction="to_iwahori", q=None):
    """Apply the isomorphism between the presentations (or its inverse)."""
    if q is None:
        raise ValueError("q is required")
    if direction == "to_iwahori":
        return beta(e, q)
    if direction == "to_bernstein":
        return beta_inverse(e, q)
    raise ValueError("direction must be 'to_iwahori' or 'to_bernstein'")


def _algebra_relations(alg, quad_roots):
    n = alg.n
    one = alg.one()
    rep = {}

    def record(name, ok):
        rep[name] = rep.get(name, True) and bool(ok)

    r1, r2 = quad_roots
    for i in range(1, n):
        t = alg.T(i)
        record("quadratic", ((t - one * r1) * (t - one * r2)).is_zero())
        record("cross", t * alg.Y(i + 1) * t == alg.Y(i))
        pair = alg.Y(i) * alg.Y(i + 1)
        record("invariant", t * pair == pair * t)
        for j in range(1, n + 1):
            if j not in (i, i + 1):
                record("commute_Y", t * alg.Y(j) == alg.Y(j) * t)
        for k in range(i + 2, n):
            record("far_commute", t * alg.T(k) == alg.T(k) * t)
        if i + 1 < n:
            u = alg.T(i + 1)
            record("braid", t * u * t == u * t * u)
    for j, k in combinations(range(1, n + 1), 2):
        record("Y_commute", alg.Y(j) * alg.Y(k) == alg.Y(k) * alg.Y(j))
    return rep


def sample_modules(n, q):
    """One standard module per composition of n: segments of those lengths starting at 0."""
    out = []
    for mask in range(1 << (n - 1)):
        lengths, cur = [], 1
        for i in range(n - 1):
            if mask >> i & 1:
                lengths.append(cur)
                cur = 1
            else:
                cur += 1
        lengths.append(cur)
        a = ms(*[(0, k - 1) for k in lengths])
        out.append(standard_module(a, q))
    return out


def relation_check(n, q=4, bound=DEFAULT_MODULE_BOUND, modules=True, seed=0, trials=5):
    """
    Check every defining relation on the regular representation (normal forms)
    in both presentations, associativity and the isomorphism on random
    elements, and optionally all relations on sample standard modules.

    Returns {name: bool}.
    """
    if n > bound:
        raise HeckeBoundExceeded("n = %d exceeds the configured bound %d" % (n, bound))
    v = sqrt_rational(q)
    H, I = bernstein(n, q), iwahori(n, q)
    report = {}
    for name, ok in _algebra_relations(H, (v, -1 / v)).items():
        report["bernstein." + name] = ok
    for name, ok in _algebra_relations(I, (q, -1)).items():
        report["iwahori." + name] = ok
    rng = random.Random(seed)
    assoc = hom = roundtrip = True
    for _ in range(trials):
        x, y, z = (H.random_element(rng) for _ in range(3))
        assoc &= (x * y) * z == x * (y * z)
        hom &= beta(x * y, q) == beta(x, q) * beta(y, q)
        roundtrip &= beta_inverse(beta(x, q), q) == x
    report["associativity"] = assoc
    report["beta.homomorphism"] = hom
    report["beta.roundtrip"] = roundtrip
    if modules:
        for M in sample_modules(n, q):
            for name, ok in module_relation_check(M).items():
                key = "module." + name
                report[key] = report.get(key, True) and ok
            report["module.dimension"] = report.get("module.dimension", True) and \
                M.dim == multinomial(M.n_vec)
    return report


def _denormalize(b, rho, offset):
    return Multisegment(tuple(Segment(rho, s.start + offset, s.end + offset) for s in b))


def oracle_factors(a, q=4, bound=DEFAULT_ORACLE_BOUND):
    """
    Composition factors of the standard module of any multisegment.

    Each inertial class is normalized, solved on its own and mapped back;
    factors of a product over classes multiply. Raises Undecided when any
    class is out of reach.
    """
    from ..params import simple_normalize
    result = {Multisegment(()): 1}
    for part in inertial_decompose(a):
        norm, off = simple_normalize(part, return_offset=True)
        if norm.size > bound:
            raise Undecided("class of size %d exceeds the oracle bound %d" % (norm.size, bound))
        rho = part.segments[0].rho
        factors = composition_multiplicities(standard_module(norm, q), bound)
        result = {x + _denormalize(b, rho, off): m * k
                  for x, m in result.items() for b, k in factors.items()}
    return result
