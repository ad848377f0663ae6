"""
Graded nilpotent orbits.

For a single inertial class, shift exponents to integer grades. A dimension
vector phi gives a graded space V = sum V_j, and E_phi is the space of
degree-raising maps x with x(V_j) in V_{j+1}. The orbits of GL_phi on E_phi
are labelled by multisegments with content phi, one Jordan string per
segment. Orbit closures are cut out by rank conditions on the composites
x^(j-i): V_i -> V_j.

Everything in this module works on the integer picture of one class (see
`multiseg.intervals`). Multi-class inputs are handled by `hasse` and the
helpers that explicitly take products.
"""

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .multiseg import (Multisegment, ms, intervals, inertial_decompose, lower_set,
                       end_dim, DEFAULT_MAX_POSET)
from .poly import Poly, gl_order

__all__ = [
    "DimensionVector", "GradedNilpotent", "RankMatrix", "OrbitPoset",
    "dimension_vector", "x_of", "rank_matrix", "rank_matrix_from_x", "orbit_dim",
    "closure_leq", "hasse", "orbits_with_dimension_vector", "multisegment_from_ranks",
    "orbit_of", "orbit_size", "automorphism_count", "to_dot", "poset_json",
]


@dataclass(frozen=True)
class DimensionVector:
    phi: tuple  # sorted (grade, dim) pairs with dim > 0

    @classmethod
    def from_dict(cls, d):
        return cls(tuple(sorted((j, n) for j, n in d.items() if n)))

    def __getitem__(self, j):
        return dict(self.phi).get(j, 0)

    @property
    def grades(self):
        return [j for j, _ in self.phi]

    @property
    def total(self):
        return sum(n for _, n in self.phi)

    def dim_E(self):
        return sum(self[j] * self[j + 1] for j in self.grades)

    def dim_GL(self):
        return sum(n * n for _, n in self.phi)


def _ivs(b):
    if isinstance(b, Multisegment):
        return intervals(b)
    return tuple(sorted(b))


def _ms(ivs):
    return ms(*[(s, e) for s, e in ivs])


def dimension_vector(b):
    c = Counter()
    for s, e in _ivs(b):
        for j in range(s, e + 1):
            c[j] += 1
    return DimensionVector.from_dict(c)


@dataclass
class GradedNilpotent:
    """x as blocks x_j : V_j -> V_{j+1}, each a phi(j+1) x phi(j) matrix."""
    phi: DimensionVector
    blocks: dict = field(default_factory=dict)

    def block(self, j):
        if j in self.blocks:
            return self.blocks[j]
        return linalg.zeros(self.phi[j + 1], self.phi[j])

    def composite(self, i, j):
        """x^(j-i) restricted to V_i, as a phi(j) x phi(i) matrix (i < j)."""
        m = self.block(i)
        for k in range(i + 1, j):
            m = linalg.matmul(self.block(k), m)
        return m


def _basis_index(ivs):
    """Grade -> list of segment indices occupying that grade, in canonical order."""
    idx = {}
    for n, (s, e) in enumerate(ivs):
        for j in range(s, e + 1):
            idx.setdefault(j, []).append(n)
    return idx


def x_of(b):
    """The standard representative: each segment is one Jordan string."""
    ivs = _ivs(b)
    phi = dimension_vector(ivs)
    idx = _basis_index(ivs)
    blocks = {}
    for j in phi.grades:
        src, dst = idx.get(j, []), idx.get(j + 1, [])
        if not dst:
            continue
        m = linalg.zeros(len(dst), len(src))
        for col, n in enumerate(src):
            if ivs[n][1] > j:
                m[dst.index(n)][col] = Fraction(1)
        blocks[j] = m
    return GradedNilpotent(phi, blocks)


@dataclass(frozen=True)
class RankMatrix:
    """r[(i, j)] for i <= j over the support: ranks of x^(j-i) on V_i (dim V_i when i == j)."""
    r: tuple

    def __getitem__(self, key):
        return dict(self.r).get(key, 0)

    def as_dict(self):
        return dict(self.r)


def rank_matrix(b):
    """Combinatorial window ranks: r(i, j) = #{[k, l] : k <= i, j <= l}."""
    ivs = _ivs(b)
    grades = dimension_vector(ivs).grades
    out = {}
    for i in grades:
        for j in grades:
            if i <= j:
                out[(i, j)] = sum(1 for s, e in ivs if s <= i and j <= e)
    return RankMatrix(tuple(sorted(out.items())))


def rank_matrix_from_x(x):
    """Window ranks computed from explicit matrices."""
    out = {}
    grades = x.phi.grades
    for i in grades:
        for j in grades:
            if i == j:
                out[(i, j)] = x.phi[i]
            elif i < j:
                out[(i, j)] = linalg.rank(x.composite(i, j)) if x.phi[i] and x.phi[j] else 0
    return RankMatrix(tuple(sorted(out.items())))


def multisegment_from_ranks(r, grades):
    """Invert `rank_matrix`: #segments exactly [i, j] by inclusion-exclusion."""
    rd = r.as_dict() if isinstance(r, RankMatrix) else r
    get = lambda i, j: rd.get((i, j), 0)
    ivs = []
    for i in grades:
        for j in grades:
            if i <= j:
                k = get(i, j) - get(i - 1, j) - get(i, j + 1) + get(i - 1, j + 1)
                if k < 0:
                    raise ValueError("inconsistent rank data")
                ivs.extend([(i, j)] * k)
    return tuple(sorted(ivs))


def orbit_of(x):
    """Integer-picture multisegment of the orbit containing x."""
    rm = rank_matrix_from_x(x)
    return multisegment_from_ranks(rm, x.phi.grades)


def _end_dim_ivs(ivs):
    return sum(1 for a, b in ivs for c, d in ivs if c <= a <= d <= b)


def orbit_dim(b):
    """dim C_b = sum phi(j)^2 - dim End(b)."""
    if isinstance(b, Multisegment):
        return sum(dimension_vector(p).dim_GL() - end_dim(p) for p in inertial_decompose(b))
    ivs = _ivs(b)
    return dimension_vector(ivs).dim_GL() - _end_dim_ivs(ivs)


def closure_leq(b, c):
    """C_c lies in the closure of C_b, i.e. b <= c: every window rank of c is at most that of b."""
    ib, ic = _ivs(b), _ivs(c)
    if dimension_vector(ib) != dimension_vector(ic):
        return False
    rb, rc = rank_matrix(ib).as_dict(), rank_matrix(ic).as_dict()
    return all(rc[k] <= rb[k] for k in rb)


def orbits_with_dimension_vector(phi):
    """
    All multisegments with content phi, by direct enumeration.

    Independent of the elementary-operation search: segments are chosen
    grade by grade, starting at the lowest grade still uncovered.
    """
    if isinstance(phi, DimensionVector):
        phi = dict(phi.phi)
    phi = {j: n for j, n in phi.items() if n}
    out = []

    def rec(remaining, acc):
        if not remaining:
            out.append(tuple(sorted(acc)))
            return
        j = min(remaining)
        # lexicographic canonical choice: the next segment starts at j with end e,
        # and ends are non-decreasing among segments starting at the same grade
        last = max((e for s, e in acc if s == j), default=j)
        e = last
        while all(remaining.get(k, 0) > 0 for k in range(j, e + 1)):
            nxt = dict(remaining)
            for k in range(j, e + 1):
                nxt[k] -= 1
                if not nxt[k]:
                    del nxt[k]
            rec(nxt, acc + [(j, e)])
            e += 1

    rec(phi, [])
    return sorted(set(out))


def automorphism_count(b, q):
    """|Aut(M_b)(F_q)| = q^(dim End - sum m_t^2) * prod |GL_{m_t}(F_q)|."""
    ivs = _ivs(b)
    mult = Counter(ivs)
    poly = Poly.monomial(_end_dim_ivs(ivs) - sum(m * m for m in mult.values()))
    for m in mult.values():
        poly = poly * gl_order(m)
    return poly(q)


def orbit_size(b, q):
    """Number of F_q-points of the orbit C_b."""
    ivs = _ivs(b)
    phi = dimension_vector(ivs)
    g = Fraction(1)
    for _, n in phi.phi:
        g *= gl_order(n)(q)
    size = g / automorphism_count(ivs, q)
    if size.denominator != 1:
        raise ArithmeticError("non-integral orbit size")
    return int(size)


@dataclass
class OrbitPoset:
    elements: list
    covers: dict     # index -> indices of elements it covers (strictly smaller in the order, larger orbits)
    dims: list

    def open_orbit(self):
        top = max(self.dims)
        found = [i for i, d in enumerate(self.dims) if d == top]
        if len(found) != 1:
            raise ValueError("no unique open orbit")
        return self.elements[found[0]]

    def edges(self):
        return [(i, j) for i in sorted(self.covers) for j in self.covers[i]]


def _leq_matrix(elements):
    """le[i] as a bitmask of j with elements[j] <= elements[i]."""
    parts = [{p.classes()[0]: intervals(p) for p in inertial_decompose(e)} for e in elements]
    ranks = [{k: rank_matrix(v).as_dict() for k, v in p.items()} for p in parts]
    n = len(elements)
    le = [0] * n
    for i in range(n):
        for j in range(n):
            # elements[j] <= elements[i]: ranks of i bounded by ranks of j
            if all(all(ranks[i][k][w] <= ranks[j][k][w] for w in ranks[i][k]) for k in ranks[i]):
                le[i] |= 1 << j
    return le


def hasse(a, max_size=DEFAULT_MAX_POSET):
    """Hasse diagram of the lower set of `a`: covers and orbit dimensions."""
    elements = lower_set(a, max_size=max_size)
    dims = [orbit_dim(e) for e in elements]
    le = _leq_matrix(elements)
    n = len(elements)
    below = [le[i] & ~(1 << i) for i in range(n)]
    covers = {}
    for i in range(n):
        cands = below[i]
        # drop anything strictly below another candidate
        indirect = 0
        j = cands
        while j:
            low = j & -j
            k = low.bit_length() - 1
            indirect |= below[k]
            j ^= low
        direct = cands & ~indirect
        covers[i] = [k for k in range(n) if direct >> k & 1]
    return OrbitPoset(elements, covers, dims)


def to_dot(poset, name="hasse"):
    lines = ["digraph %s {" % name, "  rankdir=TB;"]
    for i, e in enumerate(poset.elements):
        lines.append('  n%d [label="%s", tooltip="dim %d"];' % (i, str(e) or "()", poset.dims[i]))
    for i, j in poset.edges():
        lines.append("  n%d -> n%d;" % (i, j))
    lines.append("}")
    return "\n".join(lines) + "\n"


def poset_json(poset):
    return {
        "elements": [str(e) for e in poset.elements],
        "covers": [[i, j] for i, j in poset.edges()],
        "dims": poset.dims,
    }
