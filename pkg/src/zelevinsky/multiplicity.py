"""
Intersection cohomology stalks of orbit closures and composition multiplicities.

Route: for every orbit C_b build a resolution of its closure,

    Z_L = {(x, U) : U a graded flag with step dims L, x U^t in U^(t-1)},

count the F_q-points of the fibre over each x_c (a polynomial in q), and
peel IC stalks off those counts by triangular elimination: the fibre count
f_{b,c} is the sum over intermediate orbits c' of V_{b,c'} * ic_{c',c}, where
V is palindromic about dim C_b - dim C_c' and ic_{c',c} has degree strictly
below (dim C_c' - dim C_c) / 2. The multiplicity m(b; c) is ic_{b,c}(1).

Fibre counts are computed by dynamic programming over isomorphism classes:
removing one step from the top of the flag replaces the current module by
a submodule of prescribed codimension at one grade containing the image of
x, and the number of such submodules of each isomorphism type is a product
of Gaussian binomials. `fiber_count_enumerated` and `interpolate` give an
independent brute-force check over prime fields.
"""

import csv
import io
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .geometry import dimension_vector, orbit_dim, closure_leq, _ivs, _ms
from .multiseg import (Multisegment, inertial_decompose, intervals, lower_set, content,
                       DEFAULT_MAX_POSET)
from .params import simple_normalize
from .poly import Poly, gaussian_binomial

__all__ = [
    "LayerSequence", "StalkPolynomial", "FiberCount", "StalkTable", "MultiplicityMatrix",
    "EliminationError", "InterpolationError", "layer_sequence", "fiber_count",
    "subspace_counts", "subspace_counts_enumerated", "fiber_count_enumerated",
    "interpolate", "fiber_count_interpolated", "ic_stalks", "multiplicity",
    "multiplicity_matrix", "DEFAULT_PRIMES",
]

DEFAULT_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


class EliminationError(ArithmeticError):
    """The elimination produced something no IC stalk can be (a bug, never output)."""


class InterpolationError(ValueError):
    """Too few sample points for the requested degree bound."""


@dataclass(frozen=True)
class LayerSequence:
    steps: tuple  # (grade, count) from the bottom of the flag upwards

    def __iter__(self):
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def grade_totals(self):
        out = {}
        for j, c in self.steps:
            out[j] = out.get(j, 0) + c
        return out


def layer_sequence(b, side="kernel"):
    """
    Steps of the canonical flag of x_b.

    side="kernel": layers ker x^k / ker x^(k-1) for k = 1, 2, ...
    side="image": layers im x^k / im x^(k+1) from the deepest image upwards.
    Inside a layer, grades ascend. Both choices give a flag variety that maps
    birationally onto the closure of C_b.
    """
    ivs = _ivs(b)
    if not ivs:
        return LayerSequence(())
    longest = max(e - s + 1 for s, e in ivs)
    layers = []
    for k in range(longest):
        per_grade = {}
        for s, e in ivs:
            for j in range(s, e + 1):
                depth = e - j if side == "kernel" else j - s
                if depth == k:
                    per_grade[j] = per_grade.get(j, 0) + 1
        layers.append([(j, per_grade[j]) for j in sorted(per_grade)])
    if side == "image":
        layers.reverse()
    elif side != "kernel":
        raise ValueError("side must be 'kernel' or 'image'")
    return LayerSequence(tuple(step for layer in layers for step in layer))


@dataclass(frozen=True)
class FiberCount:
    layers: LayerSequence
    target: tuple
    poly: Poly

    def __call__(self, q):
        return self.poly(q)


def _compositions(limits, total):
    """Vectors r with 0 <= r_i <= limits[i] and sum r = total."""
    if not limits:
        if total == 0:
            yield ()
        return
    head, rest = limits[0], limits[1:]
    cap = sum(rest)
    for r in range(max(0, total - cap), min(head, total) + 1):
        for tail in _compositions(rest, total - r):
            yield (r,) + tail


@lru_cache(maxsize=None)
def subspace_counts(state, j, c):
    """
    Submodules W of M_state with W_i = M_i for i != j, W_j of codimension c,
    and W containing x(M), grouped by isomorphism type.

    Returns a tuple of (new_state, Poly) pairs. Only segments starting at j
    can lose their grade-j vector; the count for a given choice of how many
    segments of each length survive is a Schubert-cell count relative to the
    filtration of (M_j / x M_{j-1}) by lengths.
    """
    starting = {}
    for s, e in state:
        if s == j:
            starting[e - j + 1] = starting.get(e - j + 1, 0) + 1
    lengths = sorted(starting)
    groups = [starting[l] for l in lengths]
    results = []
    for removed in _compositions(tuple(groups), c):
        poly = Poly.const(1)
        below = kept_below = 0   # f_{l-1} and t_{l-1}
        for g, r in zip(groups, removed):
            k = g - r
            poly = poly * gaussian_binomial(g, k) * Poly.monomial(k * (below - kept_below))
            below += g
            kept_below += k
        rm = dict(zip(lengths, removed))
        new = []
        for s, e in state:
            l = e - s + 1
            if s == j and rm.get(l, 0):
                rm[l] -= 1
                if e > j:
                    new.append((j + 1, e))
            else:
                new.append((s, e))
        results.append((tuple(sorted(new)), poly))
    return tuple(results)


def _fiber_dp(steps, start):
    memo = {}

    def go(t, state):
        if t == 0:
            return Poly.const(1) if not state else Poly()
        key = (t, state)
        if key in memo:
            return memo[key]
        j, c = steps[t - 1]
        total = Poly()
        for new, count in subspace_counts(state, j, c):
            sub = go(t - 1, new)
            if not sub.is_zero():
                total = total + count * sub
        memo[key] = total
        return total

    return go(len(steps), start)


def fiber_count(L, a):
    """Polynomial number of F_q-points of the fibre of Z_L over x_a."""
    target = _ivs(a)
    if L.grade_totals() != dict(dimension_vector(target).phi):
        raise ValueError("layer sequence and target have different dimension vectors")
    return FiberCount(L, target, _fiber_dp(tuple(L.steps), target))


# --- brute-force oracle over prime fields -------------------------------------------

def _rank_mod(rows, p):
    m = [[x % p for x in r] for r in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for c in range(cols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][c], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[rank])]
        rank += 1
    return rank


def _subspaces(n, k, p):
    """All k-dim subspaces of F_p^n as k x n RREF row lists."""
    for pivots in itertools.combinations(range(n), k):
        free = [(r, c) for r in range(k) for c in range(n)
                if c > pivots[r] and c not in pivots]
        for vals in itertools.product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][pc] = 1
            for (r, c), v in zip(free, vals):
                rows[r][c] = v
            yield rows


def _module_matrices(ivs):
    """Jordan-string basis: grade -> list of segment indices, and x on basis labels."""
    idx = {}
    for n, (s, e) in enumerate(ivs):
        for j in range(s, e + 1):
            idx.setdefault(j, []).append(n)
    return idx


def _apply_x(vec, j, ivs, idx):
    """x applied to a grade-j vector given in the basis idx[j]."""
    dst = idx.get(j + 1, [])
    out = [0] * len(dst)
    for coeff, n in zip(vec, idx[j]):
        if coeff and ivs[n][1] > j:
            out[dst.index(n)] += coeff
    return out


def _iso_type(sub, ivs, idx, p):
    """Multisegment of the x-stable graded subspace given by grade -> row basis."""
    grades = sorted(g for g in sub if sub[g])
    ranks = {}
    for i in grades:
        vecs = sub[i]
        ranks[(i, i)] = len(vecs)
        cur = vecs
        k = i
        while True:
            if (k + 1) not in idx or not cur:
                break
            cur = [_apply_x(v, k, ivs, idx) for v in cur]
            k += 1
            ranks[(i, k)] = _rank_mod(cur, p) if cur and cur[0] else 0
    from .geometry import multisegment_from_ranks
    return multisegment_from_ranks(ranks, grades)


def subspace_counts_enumerated(state, j, c, p):
    """Direct enumeration over F_p of the submodules counted by `subspace_counts`."""
    ivs = tuple(state)
    idx = _module_matrices(ivs)
    basis_j = idx.get(j, [])
    dim = len(basis_j)
    # image of x at grade j: basis vectors of segments that started before j
    image = [[int(n == m) for m in basis_j] for n in basis_j if ivs[n][0] < j]
    full = {g: [[int(a == b) for b in idx[g]] for a in idx[g]] for g in idx}
    counts = {}
    target_dim = dim - c
    if target_dim < len(image):
        return counts
    for rows in _subspaces(dim, target_dim, p):
        if any(_rank_mod(rows + [v], p) != target_dim for v in image):
            continue
        sub = dict(full)
        sub[j] = rows
        key = _iso_type(sub, ivs, idx, p)
        counts[key] = counts.get(key, 0) + 1
    return counts


def fiber_count_enumerated(L, a, p):
    """Number of F_p-points of the fibre, by enumerating every flag explicitly."""
    ivs = _ivs(a)
    idx = _module_matrices(ivs)
    steps = list(L.steps)
    full = {g: [[int(x == y) for y in idx[g]] for x in idx[g]] for g in idx}

    def image_at(sub, g):
        if (g - 1) not in sub:
            return []
        return [_apply_x(v, g - 1, ivs, idx) for v in sub[g - 1]]

    def go(t, sub):
        if t == 0:
            return int(all(not v for v in sub.values()))
        j, c = steps[t - 1]
        cur = sub.get(j, [])
        k = len(cur) - c
        if k < 0:
            return 0
        img = [v for v in image_at(sub, j) if any(x % p for x in v)]
        total = 0
        # choose a k-dim subspace of span(cur), expressed in coordinates of cur
        for coords in _subspaces(len(cur), k, p):
            rows = [[sum(cf * cur[r][m] for r, cf in enumerate(cr)) % p
                     for m in range(len(idx[j]))] for cr in coords]
            if any(_rank_mod(rows + [v], p) != k for v in img):
                continue
            nxt = dict(sub)
            nxt[j] = rows
            total += go(t - 1, nxt)
        return total

    return go(len(steps), full)


def interpolate(points):
    """Exact Lagrange interpolation through (x, y) pairs, as a Poly."""
    result = Poly()
    xs = [Fraction(x) for x, _ in points]
    for i, (xi, yi) in enumerate(points):
        basis = Poly.const(Fraction(yi))
        for m, xm in enumerate(xs):
            if m != i:
                basis = basis * Poly({0: -xm / (xi - xm), 1: 1 / (Fraction(xi) - xm)})
        result = result + basis
    return Poly({e: int(c) if Fraction(c).denominator == 1 else c for e, c in result.terms()})


def _flag_dim_bound(L):
    """Dimension of the ambient graded flag variety: a bound on the fibre degree."""
    remaining = L.grade_totals()
    bound = 0
    for j, c in reversed(L.steps):
        bound += c * (remaining[j] - c)
        remaining[j] -= c
    return bound


def fiber_count_interpolated(L, a, primes=DEFAULT_PRIMES):
    """Fibre count from brute-force enumeration at several primes plus interpolation."""
    bound = _flag_dim_bound(L)
    if len(primes) < bound + 1:
        raise InterpolationError("need %d sample fields for degree bound %d, got %d"
                                 % (bound + 1, bound, len(primes)))
    pts = [(p, fiber_count_enumerated(L, a, p)) for p in primes[:bound + 1]]
    return interpolate(pts)


# --- elimination ------------------------------------------------------------------

@dataclass(frozen=True)
class StalkPolynomial:
    b: Multisegment
    a: Multisegment
    poly: Poly

    @property
    def coefficients(self):
        return self.poly.coefficients()

    def at_one(self):
        return int(self.poly(1))


@dataclass
class StalkTable:
    """IC stalk data over a lower set; elements are larger-first."""
    elements: list
    dims: list
    stalks: dict        # (i, j) -> Poly: stalk of IC(closure C_{elements[i]}) at C_{elements[j]}
    corrections: dict   # (i, j) -> Poly: V_{i,j} with j != i, nonzero only

    def index(self, b):
        return self.elements.index(b)

    def stalk(self, b, a):
        i, j = self.index(b), self.index(a)
        return StalkPolynomial(b, a, self.stalks.get((i, j), Poly()))

    def multiplicity(self, b, a):
        return int(self.stalks.get((self.index(b), self.index(a)), Poly())(1))


def _eliminate(elements, dims, side):
    n = len(elements)
    stalks, corr = {}, {}
    leq = [[closure_leq(elements[i], elements[j]) for j in range(n)] for i in range(n)]
    # process orbits from small to large: elements come larger-first (smaller orbits first)
    for bi in range(n):
        L = layer_sequence(elements[bi], side)
        memo_steps = tuple(L.steps)
        stalks[(bi, bi)] = Poly.const(1)
        f_self = _fiber_dp(memo_steps, elements[bi])
        if f_self != Poly.const(1):
            raise EliminationError("resolution of %s is not birational: %s" % (elements[bi], f_self))
        inside = [c for c in range(n) if c != bi and leq[bi][c]]
        inside.sort(key=lambda c: (-dims[c], c))
        for c in range(n):
            if c != bi and not leq[bi][c] and not _fiber_dp(memo_steps, elements[c]).is_zero():
                raise EliminationError("fibre over an orbit outside the closure")
        for c in inside:
            r = _fiber_dp(memo_steps, elements[c])
            for c2 in inside:
                if dims[c2] > dims[c] and (bi, c2) in corr and leq[c2][c]:
                    r = r - corr[(bi, c2)] * stalks.get((c2, c), Poly())
            span = dims[bi] - dims[c]
            v = {}
            for e, coef in r.terms():
                if e < 0 or e > span:
                    raise EliminationError("degree out of range at %s over %s" % (elements[c], elements[bi]))
                if 2 * e >= span:
                    v[e] = coef
                    v[span - e] = coef
            vpoly = Poly(v)
            ic = r - vpoly
            if any(coef < 0 for _, coef in ic.terms()) or any(coef < 0 for _, coef in vpoly.terms()):
                raise EliminationError("negative coefficient: ic=%s V=%s for %s at %s"
                                       % (ic, vpoly, elements[bi], elements[c]))
            if not ic.is_zero():
                stalks[(bi, c)] = ic
            if not vpoly.is_zero():
                corr[(bi, c)] = vpoly
    return stalks, corr


@lru_cache(maxsize=256)
def _class_table(ivs, side, max_size):
    top = _ms(ivs)
    elements = [intervals(e) for e in lower_set(top, max_size=max_size)]
    dims = [orbit_dim(e) for e in elements]
    stalks, corr = _eliminate(elements, dims, side)
    return elements, dims, stalks, corr


def _normalized_parts(a):
    return [intervals(simple_normalize(p)) for p in inertial_decompose(a)]


def ic_stalks(a, side="kernel", max_size=DEFAULT_MAX_POSET):
    """
    IC stalk polynomials over the lower set of `a`.

    Multi-class inputs use the product decomposition: the lower set is the
    product of the per-class lower sets and stalks multiply.
    """
    parts = inertial_decompose(a)
    if len(parts) <= 1:
        if not parts:
            return StalkTable([a], [0], {(0, 0): Poly.const(1)}, {})
        ivs = intervals(simple_normalize(parts[0]))
        els, dims, stalks, corr = _class_table(ivs, side, max_size)
        elements = lower_set(a, max_size=max_size)
        # match elements of `a`'s own lower set to the normalized class table
        pos = {intervals(simple_normalize(e)): k for k, e in enumerate(elements)}
        perm = [pos[e] for e in els]
        remap = lambda d: {(perm[i], perm[j]): p for (i, j), p in d.items()}
        ordered_dims = [0] * len(els)
        for k, d in enumerate(dims):
            ordered_dims[perm[k]] = d
        return StalkTable(elements, ordered_dims, remap(stalks), remap(corr))
    tables = [ic_stalks(p, side, max_size) for p in parts]
    elements = lower_set(a, max_size=max_size)
    index = {e: k for k, e in enumerate(elements)}
    dims = [0] * len(elements)
    stalks, corr = {}, {}
    for combo in itertools.product(*[range(len(t.elements)) for t in tables]):
        e = Multisegment(tuple(s for t, k in zip(tables, combo) for s in t.elements[k]))
        dims[index[e]] = sum(t.dims[k] for t, k in zip(tables, combo))
    for combo_b in itertools.product(*[range(len(t.elements)) for t in tables]):
        eb = Multisegment(tuple(s for t, k in zip(tables, combo_b) for s in t.elements[k]))
        for combo_c in itertools.product(*[range(len(t.elements)) for t in tables]):
            poly = Poly.const(1)
            for t, kb, kc in zip(tables, combo_b, combo_c):
                poly = poly * t.stalks.get((kb, kc), Poly())
                if poly.is_zero():
                    break
            if not poly.is_zero():
                ec = Multisegment(tuple(s for t, k in zip(tables, combo_c) for s in t.elements[k]))
                stalks[(index[eb], index[ec])] = poly
    return StalkTable(elements, dims, stalks, corr)


def multiplicity(b, a, side="kernel"):
    """m(b; a) = [S(a) : irreducible of b]; zero unless b <= a."""
    if content(a) != content(b):
        return 0
    pa = {p.classes()[0]: p for p in inertial_decompose(a)}
    pb = {p.classes()[0]: p for p in inertial_decompose(b)}
    if pa.keys() != pb.keys():
        return 0
    result = 1
    for k in pa:
        ia = intervals(simple_normalize(pa[k]))
        ib = intervals(simple_normalize(pb[k]))
        if not closure_leq(ib, ia):
            return 0
        els, dims, stalks, _ = _class_table(ia, side, DEFAULT_MAX_POSET)
        result *= int(stalks.get((els.index(ib), els.index(ia)), Poly())(1))
        if not result:
            return 0
    return result


@dataclass
class MultiplicityMatrix:
    """rows[i][j] = m(elements[j]; elements[i]): row i is the standard module of elements[i]."""
    elements: list
    rows: list

    def to_json(self):
        return {"elements": [str(e) for e in self.elements], "matrix": self.rows}

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([""] + [str(e) for e in self.elements])
        for e, row in zip(self.elements, self.rows):
            w.writerow([str(e)] + row)
        return buf.getvalue()


def multiplicity_matrix(a, side="kernel", max_size=DEFAULT_MAX_POSET):
    table = ic_stalks(a, side, max_size)
    n = len(table.elements)
    rows = [[int(table.stalks.get((j, i), Poly())(1)) for j in range(n)] for i in range(n)]
    return MultiplicityMatrix(table.elements, rows)


def stalk_table_json(table):
    out = []
    for (i, j), p in sorted(table.stalks.items()):
        out.append({"b": str(table.elements[i]), "a": str(table.elements[j]),
                    "coefficients": p.coefficients()})
    return out


__all__.append("stalk_table_json")
