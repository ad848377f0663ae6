"""
Induced modules H (x)_{H_J} C over the Bernstein presentation.

For a multisegment a with trivial support and integer exponents, the
standard module has block sizes n_vec = segment lengths read from the last
segment to the first, and on the parabolic subalgebra the line C is given by

    T_i  -> v                          (i inside a block)
    theta_j -> q^-(a_k + t - 1)        (t-th position of the k-th block)

A basis is T_w (x) 1 over minimal coset representatives w (one-line
notation increasing on each block). Any T_u splits as T_{u^J} T_{u_J},
and T_{u_J} acts on C by v^len(u_J).

Composition factors are found without a socle search. The simple Z(b) is
the submodule of the standard module of b generated by the unique line on
which theta acts by the weight of b read in its own (not reversed) order and
the parabolic T's of that order act by v. Characters (generalized theta
weight multiplicities) of the Z(b) are linearly independent, so the
multiplicities in a standard module are the unique solution of one exact
linear system. Anything that does not pin down a unique answer is reported
as undecided.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import factorial

from .. import linalg
from ..multiseg import Multisegment, TRIVIAL, lower_set
from .algebra import bernstein, min_coset_rep, perm_length, sqrt_rational

__all__ = [
    "Undecided", "HeckeBoundExceeded", "InducedHeckeModule", "induced_module",
    "standard_module", "theta_weights", "weight_formula", "simple_module",
    "composition_multiplicities", "module_relation_check", "multinomial",
    "DEFAULT_MODULE_BOUND", "DEFAULT_ORACLE_BOUND",
]

DEFAULT_MODULE_BOUND = 5
DEFAULT_ORACLE_BOUND = 4


class Undecided(RuntimeError):
    """The oracle could not pin down an answer; never a wrong one."""


class HeckeBoundExceeded(ValueError):
    pass


def multinomial(parts):
    out = factorial(sum(parts))
    for p in parts:
        out //= factorial(p)
    return out


def coset_reps(blocks):
    n = sum(blocks)
    reps = [w for w in permutations(range(1, n + 1)) if min_coset_rep(w, blocks) == w]
    return sorted(reps, key=lambda w: (perm_length(w), w))


@dataclass
class InducedHeckeModule:
    n: int
    n_vec: tuple
    weight: tuple          # theta_j on the generating line, j = 1..n
    q: Fraction
    basis: list            # minimal coset representatives
    T: list                # T_1..T_{n-1} as matrices, column k = image of basis[k]
    theta: list            # theta_{omega_1}..theta_{omega_n}
    source: Multisegment = None
    z_vec: tuple = ()

    @property
    def dim(self):
        return len(self.basis)

    @property
    def v(self):
        return sqrt_rational(self.q)

    def theta_power(self, x):
        """theta_x as a matrix for an integer vector x."""
        m = linalg.identity(self.dim)
        for j, k in enumerate(x):
            if k:
                base = self.theta[j] if k > 0 else _inverse(self.theta[j])
                m = linalg.matmul(m, linalg.mat_pow(base, abs(k)))
        return m

    def to_json(self, factors=None):
        out = {
            "n": self.n,
            "n_vec": list(self.n_vec),
            "q": str(self.q),
            "dimension": self.dim,
            "basis": ["".join(map(str, w)) for w in self.basis],
            "T": [_mat_str(m) for m in self.T],
            "theta": [_mat_str(m) for m in self.theta],
            "weights": [[[str(c) for c in w], k] for w, k in sorted(theta_weights(self).items())],
        }
        if self.source is not None:
            out["multisegment"] = str(self.source)
        if factors is not None:
            out["composition_factors"] = {str(b): k for b, k in factors.items()}
        return out


def _mat_str(m):
    return [[str(x) for x in row] for row in m]


def _inverse(m):
    # exact inverse by row reduction of [m | I]
    n = len(m)
    aug = [list(m[i]) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    rows, pivots = linalg.rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in rows[:n]]


def induced_module(n_vec, weight, q, source=None, z_vec=()):
    n_vec = tuple(int(k) for k in n_vec)
    n = sum(n_vec)
    weight = tuple(Fraction(c) for c in weight)
    if len(weight) != n:
        raise ValueError("weight has %d entries, expected %d" % (len(weight), n))
    q = Fraction(q)
    alg = bernstein(n, q)
    v = sqrt_rational(q)
    basis = coset_reps(n_vec)
    index = {w: k for k, w in enumerate(basis)}

    def column(elem):
        col = [Fraction(0)] * len(basis)
        for (u, y), c in elem.terms.items():
            top = min_coset_rep(u, n_vec)
            scale = v ** (perm_length(u) - perm_length(top))
            for lam, k in zip(weight, y):
                if k:
                    scale *= lam ** k
            col[index[top]] += c * scale
        return col

    def matrix(gen):
        cols = [column(gen * alg.T_word(w)) for w in basis]
        return linalg.transpose(cols)

    T = [matrix(alg.T(i)) for i in range(1, n)]
    theta = [matrix(alg.Y(j)) for j in range(1, n + 1)]
    return InducedHeckeModule(n, n_vec, weight, q, basis, T, theta, source, tuple(z_vec))


def _check_input(a, bound):
    if any(s.rho != TRIVIAL or s.start.im or s.start.re.denominator != 1 for s in a):
        raise ValueError("normalize first: trivial support with integer exponents required")
    if a.size > bound:
        raise HeckeBoundExceeded("n = %d exceeds the configured bound %d" % (a.size, bound))


def weight_formula(segments, q):
    """Concatenated q^-(a + t - 1), t = 1..length, for the given segment order."""
    q = Fraction(q)
    out = []
    for s in segments:
        a = int(s.start.re)
        out.extend(q ** -(a + t) for t in range(s.length))
    return tuple(out)


@lru_cache(maxsize=256)
def standard_module(a, q=4, bound=DEFAULT_MODULE_BOUND):
    _check_input(a, bound)
    segs = list(reversed(a.segments))
    q = Fraction(q)
    z_vec = tuple(q ** -int(s.start.re) for s in segs)
    return induced_module([s.length for s in segs], weight_formula(segs, q), q, source=a, z_vec=z_vec)


# --- theta weights -------------------------------------------------------------------

def _weight_candidates(M):
    return sorted(set(permutations(M.weight)))


def _generalized_eigenspaces(M):
    """Candidate weight -> basis of its joint generalized eigenspace (nonzero ones only)."""
    key = id(M)
    cached = _eig_cache.get(key)
    if cached is not None and cached[0] is M:
        return cached[1]
    powers = {}
    for j in range(M.n):
        for c in set(M.weight):
            shifted = linalg.mat_sub(M.theta[j], linalg.mat_scale(c, linalg.identity(M.dim)))
            powers[(j, c)] = linalg.mat_pow(shifted, M.dim)
    out = {}
    for lam in _weight_candidates(M):
        stacked = [row for j, c in enumerate(lam) for row in powers[(j, c)]]
        ns = linalg.nullspace(stacked, M.dim)
        if ns:
            out[lam] = ns
    _eig_cache[key] = (M, out)
    return out


_eig_cache = {}


def theta_weights(M):
    """Multiset of joint generalized theta eigenvalues, as a Counter of weight tuples."""
    return Counter({lam: len(vs) for lam, vs in _generalized_eigenspaces(M).items()})


def _subspace_character(M, vectors):
    """Weight multiplicities of a theta-stable subspace spanned by `vectors`."""
    dim_u = linalg.rank(vectors) if vectors else 0
    out = Counter()
    for lam, g in _generalized_eigenspaces(M).items():
        inter = dim_u + len(g) - linalg.rank(list(vectors) + list(g))
        if inter:
            out[lam] = inter
    return out


# --- simple modules ------------------------------------------------------------------

def _spin(M, vec):
    """Basis of the submodule generated by vec."""
    span = linalg.SpanBuilder(M.dim)
    gens = M.T + M.theta + [_inverse(t) for t in M.theta]
    todo = [vec]
    span.add(vec)
    while todo:
        u = todo.pop()
        for g in gens:
            w = linalg.matvec(g, u)
            if span.add(w):
                todo.append(w)
    return span.basis


@lru_cache(maxsize=1024)
def simple_module(b, q=4, bound=DEFAULT_MODULE_BOUND):
    """
    Z(b) inside the standard module of b, as (module, basis of the submodule).

    The generator is the common solution of theta_j = lambda_j and T_i = v on
    the blocks of b in its stored (DNP) order.
    """
    M = standard_module(b, q, bound)
    lam = weight_formula(b.segments, q)
    v = M.v
    eye = linalg.identity(M.dim)
    rows = []
    for j, c in enumerate(lam):
        rows.extend(linalg.mat_sub(M.theta[j], linalg.mat_scale(c, eye)))
    pos = 0
    for s in b.segments:
        for i in range(pos + 1, pos + s.length):
            rows.extend(linalg.mat_sub(M.T[i - 1], linalg.mat_scale(v, eye)))
        pos += s.length
    ns = linalg.nullspace(rows, M.dim) if rows else [list(r) for r in eye]
    if len(ns) != 1:
        raise Undecided("generating line for Z(%s) has dimension %d" % (b, len(ns)))
    return M, tuple(tuple(x) for x in _spin(M, ns[0]))


def simple_character(b, q=4, bound=DEFAULT_MODULE_BOUND):
    M, basis = simple_module(b, q, bound)
    return _subspace_character(M, [list(x) for x in basis])


def composition_multiplicities(M, bound=DEFAULT_ORACLE_BOUND):
    """
    Multiplicity of each simple Z(b) in the standard module M of a.

    Candidates are the b <= a. Returns {b: multiplicity} with zero entries
    dropped. Raises Undecided when the character system has no unique
    nonnegative integer solution.
    """
    a = M.source
    if a is None:
        raise ValueError("composition factors need a module built by standard_module")
    if M.n > bound:
        raise Undecided("n = %d exceeds the oracle bound %d" % (M.n, bound))
    if M.dim == 1:
        return {a: 1}
    target = theta_weights(M)
    cands = lower_set(a)
    chars = [simple_character(b, M.q) for b in cands]
    weights = sorted(set(target) | {w for ch in chars for w in ch})
    aug = [[Fraction(ch[w]) for ch in chars] + [Fraction(target[w])] for w in weights]
    rows, pivots = linalg.rref(aug)
    k = len(cands)
    if k in pivots:
        raise Undecided("character of %s is not a combination of simple characters" % a)
    if pivots != list(range(k)):
        raise Undecided("simple characters are linearly dependent over the packet of %s" % a)
    out = {}
    for i, b in enumerate(cands):
        m = rows[i][k]
        if m.denominator != 1 or m < 0:
            raise Undecided("non-integral or negative multiplicity for %s" % b)
        if m:
            out[b] = int(m)
    return out


# --- relation checks on modules ------------------------------------------------------

def module_relation_check(M):
    """Every defining relation, in both presentations, as matrix identities on M."""
    n, v, q = M.n, M.v, M.q
    eye = linalg.identity(M.dim)
    mm = linalg.matmul
    sub = linalg.mat_sub
    sc = lambda c, m: linalg.mat_scale(c, m)
    is0 = linalg.is_zero
    T, th = M.T, M.theta
    S = [sc(v, t) for t in T]
    X = [sc(q ** (Fraction(n + 1, 2) - j), th[j - 1]) if (n + 1) % 2 == 0 else
         sc(v ** (n + 1 - 2 * j), th[j - 1]) for j in range(1, n + 1)]
    rep = {}

    def record(name, ok):
        rep[name] = rep.get(name, True) and bool(ok)

    for i in range(n - 1):
        record("quadratic_T", is0(mm(sub(T[i], sc(v, eye)), linalg.mat_add(T[i], sc(1 / v, eye)))))
        record("quadratic_S", is0(mm(linalg.mat_add(S[i], eye), sub(S[i], sc(q, eye)))))
        record("theta_cross_T", mm(mm(T[i], th[i + 1]), T[i]) == th[i])
        record("X_cross_S", mm(mm(S[i], X[i + 1]), S[i]) == X[i])
        # T_i theta_x T_i = theta_{w_i x} for x = omega_{i+1} + (omega_i + omega_{i+1})
        pair = mm(th[i], th[i + 1])
        record("theta_reflect_T", mm(mm(T[i], mm(th[i + 1], pair)), T[i]) == mm(th[i], pair))
        record("theta_invariant_T", mm(T[i], pair) == mm(pair, T[i]))
        for j in range(n):
            if j not in (i, i + 1):
                record("theta_commute_T", mm(T[i], th[j]) == mm(th[j], T[i]))
                record("X_commute_S", mm(S[i], X[j]) == mm(X[j], S[i]))
        for k in range(i + 2, n - 1):
            record("far_commute_T", mm(T[i], T[k]) == mm(T[k], T[i]))
            record("far_commute_S", mm(S[i], S[k]) == mm(S[k], S[i]))
        if i + 1 < n - 1:
            record("braid_T", mm(mm(T[i], T[i + 1]), T[i]) == mm(mm(T[i + 1], T[i]), T[i + 1]))
            record("braid_S", mm(mm(S[i], S[i + 1]), S[i]) == mm(mm(S[i + 1], S[i]), S[i + 1]))
    for j in range(n):
        for k in range(j + 1, n):
            record("theta_commute", mm(th[j], th[k]) == mm(th[k], th[j]))
        record("theta_invertible", linalg.rank(th[j]) == M.dim)
    return rep
