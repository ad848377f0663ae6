"""
Affine Hecke algebras of GL_n in normal form T_w Y^x.

Both presentations share one shape: generators T_1..T_{n-1} with
T^2 = s T + p, commuting invertible Y_1..Y_n, Y_j T_i = T_i Y_j for
j != i, i+1, and T_i Y_{i+1} T_i = Y_i.

    Bernstein (theta):       s = v - 1/v, p = 1     ((T - v)(T + 1/v) = 0)
    Iwahori-Matsumoto (X):   s = q - 1,   p = q     ((S + 1)(S - q) = 0)

with v = sqrt(q) rational. Moving a monomial in Y past one T_i only needs
the two rank-two identities

    Y_i T     = p T Y_{i+1} + s Y_i
    Y_{i+1} T = p^-1 T Y_i - (s/p) Y_i

together with the fact that Y_i Y_{i+1} commutes with T_i.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "HeckeAlgebra", "Element", "bernstein", "iwahori", "perm_length", "reduced_word",
    "right_mult", "min_coset_rep", "beta", "beta_inverse", "sqrt_rational",
]


def sqrt_rational(q):
    q = Fraction(q)
    num, den = q.numerator, q.denominator
    rn, rd = _isqrt(num), _isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ValueError("q = %s is not the square of a rational" % q)
    return Fraction(rn, rd)


def _isqrt(n):
    import math
    return math.isqrt(n)


def perm_length(w):
    return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])


def right_mult(w, i):
    """w s_i in one-line notation (1-based i): swap positions i, i+1."""
    w = list(w)
    w[i - 1], w[i] = w[i], w[i - 1]
    return tuple(w)


@lru_cache(maxsize=None)
def reduced_word(w):
    """Indices i_1..i_k with w = s_{i_1} ... s_{i_k}."""
    word = []
    w = tuple(w)
    while True:
        d = next((i for i in range(1, len(w)) if w[i - 1] > w[i]), None)
        if d is None:
            break
        word.append(d)
        w = right_mult(w, d)
    return tuple(reversed(word))


def min_coset_rep(w, blocks):
    """Split w = w^J w_J with w^J increasing on each block of positions."""
    out = list(w)
    pos = 0
    for b in blocks:
        out[pos:pos + b] = sorted(out[pos:pos + b])
        pos += b
    return tuple(out)


@dataclass(frozen=True)
class HeckeAlgebra:
    n: int
    s: Fraction
    p: Fraction
    name: str = ""

    @property
    def identity_perm(self):
        return tuple(range(1, self.n + 1))

    def zero(self):
        return Element(self, {})

    def one(self):
        return Element(self, {(self.identity_perm, (0,) * self.n): Fraction(1)})

    def scalar(self, c):
        return self.one() * Fraction(c)

    def T(self, i):
        return Element(self, {(right_mult(self.identity_perm, i), (0,) * self.n): Fraction(1)})

    def T_word(self, w):
        return Element(self, {(tuple(w), (0,) * self.n): Fraction(1)})

    def Y(self, x):
        """Y^x for an integer vector x; Y(j) with an int is the generator Y_j."""
        if isinstance(x, int):
            x = tuple(int(k == x) for k in range(1, self.n + 1))
        return Element(self, {(self.identity_perm, tuple(x)): Fraction(1)})

    def random_element(self, rng, terms=3, spread=1):
        from itertools import permutations
        perms = list(permutations(range(1, self.n + 1)))
        out = {}
        for _ in range(terms):
            w = rng.choice(perms)
            x = tuple(rng.randint(-spread, spread) for _ in range(self.n))
            out[(w, x)] = out.get((w, x), 0) + Fraction(rng.randint(-3, 3) or 1)
        return Element(self, out)

    # --- commutation kernel --------------------------------------------------------
    def _y_past_t(self, x, i):
        """Y^x T_i = T_i A + B, returned as two dicts exponent -> coefficient."""
        s, p = self.s, self.p
        a, b = x[i - 1], x[i]
        base = list(x)
        m = min(a, b)
        base[i - 1] -= a - m
        base[i] -= b - m
        # base is T_i-invariant in positions i, i+1 (equal exponents there)

        def mono(da, db):
            y = list(base)
            y[i - 1] += da
            y[i] += db
            return tuple(y)

        A = {(0, 0): Fraction(1)}
        B = {}
        if a > b:
            for k in range(1, a - b + 1):
                A = {(da, db + 1): p * c for (da, db), c in A.items()}
                nb = {(da, db + 1): p * c for (da, db), c in B.items()}
                nb[(k, 0)] = nb.get((k, 0), 0) + s
                B = nb
        elif b > a:
            for k in range(1, b - a + 1):
                A = {(da + 1, db): c / p for (da, db), c in A.items()}
                nb = {(da + 1, db): c / p for (da, db), c in B.items()}
                key = (1, k - 1)
                nb[key] = nb.get(key, 0) - s / p
                B = nb
        return ({mono(*k): c for k, c in A.items() if c},
                {mono(*k): c for k, c in B.items() if c})


class Element:
    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {k: Fraction(c) for k, c in terms.items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return Element(self.alg, out)

    def __neg__(self):
        return Element(self.alg, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return isinstance(other, Element) and self.alg == other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def times_T(self, i):
        """Right multiplication by T_i."""
        alg = self.alg
        out = {}

        def add(w, y, c):
            key = (w, y)
            out[key] = out.get(key, 0) + c

        for (w, x), c in self.terms.items():
            A, B = alg._y_past_t(x, i)
            ws = right_mult(w, i)
            longer = w[i - 1] < w[i]
            for y, cy in A.items():
                if longer:
                    add(ws, y, c * cy)
                else:
                    add(w, y, c * cy * alg.s)
                    add(ws, y, c * cy * alg.p)
            for y, cy in B.items():
                add(w, y, c * cy)
        return Element(alg, out)

    def times_Y(self, x):
        out = {}
        for (w, y), c in self.terms.items():
            key = (w, tuple(a + b for a, b in zip(y, x)))
            out[key] = out.get(key, 0) + c
        return Element(self.alg, out)

    def __mul__(self, other):
        if not isinstance(other, Element):
            c = Fraction(other)
            return Element(self.alg, {k: v * c for k, v in self.terms.items()})
        total = self.alg.zero()
        for (w, x), c in other.terms.items():
            part = self
            for i in reduced_word(w):
                part = part.times_T(i)
            total = total + part.times_Y(x) * c
        return total

    def __rmul__(self, c):
        return self * c

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (w, x), c in sorted(self.terms.items()):
            parts.append("%s*T%s*Y%s" % (c, "".join(map(str, w)), x))
        return " + ".join(parts)


def bernstein(n, q):
    v = sqrt_rational(q)
    return HeckeAlgebra(n, v - 1 / v, Fraction(1), "bernstein")


def iwahori(n, q):
    q = Fraction(q)
    return HeckeAlgebra(n, q - 1, q, "iwahori")


def _beta_scale(w, x, n, v, sign):
    # T_i -> v^-1 S_i and theta_j -> q^(j - (n+1)/2) X_j = v^(2j - n - 1) X_j
    exp = -perm_length(w) + sum((2 * j - n - 1) * xj for j, xj in enumerate(x, start=1))
    return v ** (sign * exp)


def beta(e, q):
    """Bernstein-presentation element -> Iwahori-Matsumoto presentation."""
    n = e.alg.n
    v = sqrt_rational(q)
    target = iwahori(n, q)
    return Element(target, {(w, x): c * _beta_scale(w, x, n, v, 1) for (w, x), c in e.terms.items()})


def beta_inverse(e, q):
    n = e.alg.n
    v = sqrt_rational(q)
    target = bernstein(n, q)
    return Element(target, {(w, x): c * _beta_scale(w, x, n, v, -1) for (w, x), c in e.terms.items()})
