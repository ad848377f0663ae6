"""
Exact linear algebra over the rationals.

Matrices are plain lists of row lists whose entries are ints or
`fractions.Fraction`. Everything here is dense and written for the small
dimensions that show up in the engine (a few dozen rows at most), so the
code favours clarity over asymptotics.
"""

from fractions import Fraction

__all__ = [
    "identity", "zeros", "matmul", "matvec", "transpose", "mat_add",
    "mat_scale", "mat_sub", "mat_pow", "rref", "rank", "nullspace",
    "column_space", "is_zero", "solve_in_span", "SpanBuilder",
]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def zeros(rows, cols):
    return [[Fraction(0)] * cols for _ in range(rows)]


def matmul(a, b):
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        acc = [Fraction(0)] * cols
        for k in range(inner):
            r = row[k]
            if r:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        acc[j] += r * bk[j]
        out.append(acc)
    return out


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def mat_pow(a, k):
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def is_zero(a):
    return all(not x for row in a for x in row)


def rref(a):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in a]
    if not m:
        return [], []
    cols = len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(a):
    return len(rref(a)[1])


def nullspace(a, cols=None):
    """Basis (list of vectors) of {x : a x = 0}."""
    if not a:
        n = cols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    n = len(a[0])
    rows, pivots = rref(a)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return basis


def column_space(a):
    """Basis of the column span of `a`, as vectors."""
    return rref(transpose(a))[0]


class SpanBuilder:
    """
    Incrementally maintained echelon basis of a subspace.

    `add` reports whether the vector enlarged the span; `basis` keeps the
    original (unreduced) vectors in insertion order so callers can use them
    as a basis of the span.
    """

    def __init__(self, dim):
        self.dim = dim
        self._rows = []      # reduced rows, each with a leading pivot
        self._pivots = []
        self.basis = []

    def __len__(self):
        return len(self.basis)

    def reduce(self, v):
        w = [Fraction(x) for x in v]
        for row, p in zip(self._rows, self._pivots):
            if w[p]:
                f = w[p]
                w = [x - f * y for x, y in zip(w, row)]
        return w

    def contains(self, v):
        return not any(self.reduce(v))

    def add(self, v):
        w = self.reduce(v)
        p = next((i for i, x in enumerate(w) if x), None)
        if p is None:
            return False
        inv = 1 / w[p]
        w = [x * inv for x in w]
        for i, row in enumerate(self._rows):
            if row[p]:
                f = row[p]
                self._rows[i] = [x - f * y for x, y in zip(row, w)]
        self._rows.append(w)
        self._pivots.append(p)
        self.basis.append([Fraction(x) for x in v])
        return True


def solve_in_span(basis, v):
    """Coordinates c with sum c_i basis_i = v, or None when v is outside the span."""
    if not basis:
        return [] if not any(v) else None
    k = len(basis)
    aug = [[basis[j][i] for j in range(k)] + [Fraction(v[i])] for i in range(len(v))]
    rows, pivots = rref(aug)
    if k in pivots:
        return None
    coords = [Fraction(0)] * k
    for row, p in zip(rows, pivots):
        coords[p] = row[k]
    return coords
