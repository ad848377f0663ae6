"""
Sparse Laurent polynomials in one variable with exact coefficients.

The same class serves two roles: polynomials in q with integer
coefficients (fiber counts, stalks, orbit sizes) and Laurent polynomials
in v = sqrt(q) for the parameter matrices. Exponents are ints or
Fractions, coefficients are ints or Fractions.
"""

from fractions import Fraction

__all__ = ["Poly", "gaussian_binomial", "q_int", "gl_order"]


class Poly:
    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        if coeffs is None:
            coeffs = {}
        elif isinstance(coeffs, (list, tuple)):
            coeffs = dict(enumerate(coeffs))
        self._c = {e: c for e, c in coeffs.items() if c}

    @classmethod
    def const(cls, c):
        return cls({0: c})

    @classmethod
    def monomial(cls, exp, coeff=1):
        return cls({exp: coeff})

    # --- structure ---------------------------------------------------------
    def terms(self):
        return sorted(self._c.items())

    def coeff(self, e):
        return self._c.get(e, 0)

    def is_zero(self):
        return not self._c

    def degree(self):
        return max(self._c) if self._c else None

    def low_degree(self):
        return min(self._c) if self._c else None

    def is_polynomial(self):
        """Only nonnegative integer exponents."""
        return all(isinstance(e, int) and e >= 0 for e in self._c)

    def coefficients(self):
        """Dense coefficient list indexed by power (polynomials only)."""
        if not self._c:
            return []
        if not self.is_polynomial():
            raise ValueError("not an ordinary polynomial: %s" % self)
        out = [0] * (self.degree() + 1)
        for e, c in self._c.items():
            out[e] = c
        return out

    def __call__(self, x):
        x = Fraction(x)
        total = Fraction(0)
        for e, c in self._c.items():
            if isinstance(e, Fraction) and e.denominator != 1:
                raise ValueError("cannot evaluate fractional power exactly")
            total += c * x ** int(e)
        return total

    def substitute_power(self, k):
        """p(x) -> p(x**k)."""
        return Poly({e * k: c for e, c in self._c.items()})

    # --- arithmetic --------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._c)
        for e, c in other._c.items():
            out[e] = out.get(e, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self._c.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            if len(self._c) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._c.items()
            return Poly({e * k: Fraction(c) ** k})
        result = Poly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other)
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def is_palindromic(self, center2):
        """Coefficient of x^e equals that of x^(center2 - e)."""
        return all(self.coeff(center2 - e) == c for e, c in self._c.items())

    def __repr__(self):
        return "Poly(%s)" % str(self)

    def __str__(self, var="q"):
        if not self._c:
            return "0"
        parts = []
        for e, c in self.terms():
            if e == 0:
                parts.append(str(c))
                continue
            mono = var if e == 1 else "%s^%s" % (var, e if not isinstance(e, Fraction) or e.denominator == 1 else "(%s)" % e)
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append("%s*%s" % (c, mono))
        return " + ".join(parts).replace("+ -", "- ")

    def format(self, var="q"):
        return self.__str__(var)


def q_int(n):
    """[n]_q = 1 + q + ... + q^(n-1)."""
    return Poly({i: 1 for i in range(n)})


_BINOM_CACHE = {}


def gaussian_binomial(n, k):
    """Number of k-dimensional subspaces of F_q^n, as a polynomial in q."""
    if k < 0 or k > n:
        return Poly()
    key = (n, k)
    if key not in _BINOM_CACHE:
        if k == 0 or k == n:
            val = Poly.const(1)
        else:
            # [n,k] = [n-1,k-1] + q^k [n-1,k]
            val = gaussian_binomial(n - 1, k - 1) + Poly.monomial(k) * gaussian_binomial(n - 1, k)
        _BINOM_CACHE[key] = val
    return _BINOM_CACHE[key]


def gl_order(n):
    """|GL_n(F_q)| as a polynomial in q."""
    result = Poly.monomial(n * (n - 1) // 2)
    for i in range(1, n + 1):
        result = result * (Poly.monomial(i) - 1)
    return result
