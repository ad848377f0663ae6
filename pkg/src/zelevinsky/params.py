"""
Langlands-side data attached to a multisegment.

A segment [rho(a), rho(b)] contributes the summands rho(a), rho(a+1), ...,
rho(b) to the infinitesimal parameter and one Jordan string to the nilpotent
part. Inside one inertial class the q-eigenspace of Frobenius only links
exponents that differ by exactly one, so the Vogan variety is a product of
graded spaces E_phi, one per class.

Matrices over Z[v, v^-1] (v^2 = q) are lists of lists of `Poly` in v.
"""

from collections import Counter
from dataclasses import dataclass

from .multiseg import Exponent, Multisegment, Segment, TRIVIAL
from .poly import Poly

__all__ = [
    "InfinitesimalParameter", "WeilDeligneDatum", "VoganDescriptor", "HeckeParameterData",
    "infinitesimal_parameter", "rec_datum", "vogan_descriptor", "hecke_parameter_data",
    "simple_normalize", "central_character_trivial", "frobenius_matrix", "nilpotent_matrix",
    "adjoint_scales_by_q", "class_offset",
]

V = Poly.monomial(1)


@dataclass(frozen=True)
class InfinitesimalParameter:
    summands: tuple  # sorted (label, exponent) pairs, one per unramified line

    @property
    def dimension(self):
        return sum(rho.d for rho, _ in self.summands)

    def __eq__(self, other):
        return isinstance(other, InfinitesimalParameter) and Counter(self.summands) == Counter(other.summands)

    def __hash__(self):
        return hash(tuple(sorted(self.summands)))


def infinitesimal_parameter(a):
    out = []
    for s in a:
        for k in range(s.length):
            out.append((s.rho, s.start + k))
    return InfinitesimalParameter(tuple(sorted(out)))


@dataclass(frozen=True)
class WeilDeligneDatum:
    lam: InfinitesimalParameter
    nilpotent: Multisegment

    def matrix(self):
        return nilpotent_matrix(self.nilpotent)

    def frobenius(self):
        return frobenius_matrix(self.nilpotent)


def _block_diag(blocks):
    n = sum(len(b) for b in blocks)
    out = [[Poly() for _ in range(n)] for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                out[off + i][off + j] = x
        off += len(b)
    return out


def nilpotent_matrix(a):
    """X_a = sum of J(n_i)^t (x) I_d: lower Jordan strings, one per segment."""
    blocks = []
    for s in a:
        n = s.length * s.rho.d
        m = [[Poly() for _ in range(n)] for _ in range(n)]
        for k in range(s.length - 1):
            for t in range(s.rho.d):
                m[(k + 1) * s.rho.d + t][k * s.rho.d + t] = Poly.const(1)
        blocks.append(m)
    return _block_diag(blocks)


def frobenius_matrix(a):
    """lambda(Frob) on the same basis: q^(a_i + k) = v^(2(a_i + k)) along each string."""
    blocks = []
    for s in a:
        n = s.length * s.rho.d
        m = [[Poly() for _ in range(n)] for _ in range(n)]
        for k in range(s.length):
            for t in range(s.rho.d):
                i = k * s.rho.d + t
                m[i][i] = Poly.monomial(2 * (s.start.re + k))
        blocks.append(m)
    return _block_diag(blocks)


def _matmul(a, b):
    n, m, p = len(a), len(b), len(b[0]) if b else 0
    return [[sum((a[i][k] * b[k][j] for k in range(m)), Poly()) for j in range(p)] for i in range(n)]


def adjoint_scales_by_q(s, x):
    """s x = q x s for diagonal invertible s, i.e. Ad(s) x = q x."""
    q = Poly.monomial(2)
    lhs = _matmul(s, x)
    rhs = _matmul(x, s)
    return all(lhs[i][j] == q * rhs[i][j] for i in range(len(x)) for j in range(len(x)))


def rec_datum(a):
    return WeilDeligneDatum(infinitesimal_parameter(a), a)


@dataclass(frozen=True)
class VoganDescriptor:
    blocks: tuple   # (class key, {grade: multiplicity})
    dim_V: int
    dim_H: int

    def to_json(self):
        return {
            "blocks": [{"class": _class_str(k), "phi": {str(j): n for j, n in sorted(phi.items())}}
                       for k, phi in self.blocks],
            "dimV": self.dim_V,
            "dimH": self.dim_H,
        }


def _class_str(key):
    ident, im, frac = key
    return {"label": ident, "im": str(im), "re_mod_1": str(frac)}


def vogan_descriptor(lam):
    classes = {}
    for rho, e in lam.summands:
        key = (rho.id, e.im, e.re % 1)
        grade = int(e.re - e.re % 1)
        phi = classes.setdefault(key, Counter())
        phi[grade] += 1
    blocks = tuple((k, dict(classes[k])) for k in sorted(classes))
    dim_v = sum(phi[j] * phi.get(j + 1, 0) for _, phi in blocks for j in phi)
    dim_h = sum(n * n for _, phi in blocks for n in phi.values())
    return VoganDescriptor(blocks, dim_v, dim_h)


@dataclass(frozen=True)
class HeckeParameterData:
    n_vec: tuple     # block sizes, last segment first
    z_vec: tuple     # q^(-a_i) per block, as Poly in v
    x: list          # sum of J(n_i), upper Jordan blocks
    s: list          # diagonal, entries q^(-(a_i + k - 1)) as Poly in v


def hecke_parameter_data(a):
    if any(s.rho != TRIVIAL or s.start.im or s.start.re.denominator != 1 for s in a):
        raise ValueError("normalize first: trivial support with integer exponents required")
    segs = list(reversed(a.segments))
    n_vec = tuple(s.length for s in segs)
    z_vec = tuple(Poly.monomial(-2 * int(s.start.re)) for s in segs)
    xs, ss = [], []
    for s, z in zip(segs, z_vec):
        n = s.length
        xs.append([[Poly.const(1) if j == i + 1 else Poly() for j in range(n)] for i in range(n)])
        # z * v^(1-n) * D(n), with D(n) = diag(v^(n+1-2k))
        ss.append([[z * V ** (1 - n) * V ** (n + 1 - 2 * (k + 1)) if k == j else Poly()
                    for j in range(n)] for k in range(n)])
    return HeckeParameterData(n_vec, z_vec, _block_diag(xs), _block_diag(ss))


def class_offset(a):
    """The exponent subtracted by `simple_normalize`."""
    keys = a.classes()
    if len(keys) != 1:
        raise ValueError("decompose first: %d inertial classes" % len(keys))
    _, im, frac = keys[0]
    return Exponent(frac, im)


def simple_normalize(a, return_offset=False):
    """
    Simple-support multisegment -> trivial label and integer exponents.

    The label is replaced by the trivial one and every exponent is shifted by
    the class representative (real part mod Z and imaginary tag).
    """
    if not len(a):
        return (a, Exponent(0)) if return_offset else a
    off = class_offset(a)
    out = Multisegment(tuple(Segment(TRIVIAL, s.start - off, s.end - off) for s in a))
    return (out, off) if return_offset else out


def central_character_trivial(a):
    total = sum((e for _, e in infinitesimal_parameter(a).summands), Exponent(0))
    return total == Exponent(0)
