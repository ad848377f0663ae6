"""
Segments and multisegments.

A segment [rho(a), rho(b)] is stored with its supercuspidal label and its
two end exponents. Exponents are exact: a rational real part and a rational
"imaginary" tag, and two exponents are integrally related when the tags
agree and the real parts differ by an integer.

`Multisegment` is an immutable multiset kept in a canonical order: classes
by `class_key`, then midpoints descending inside each class. Midpoint
descending order never lets an earlier segment precede a later one, so
every stored multisegment satisfies the Does-Not-Precede condition.

The partial order is the one generated by elementary operations: b <= a
when b is reached from a by repeatedly replacing a linked pair with its
union and intersection. The all-singletons multisegment is therefore the
top of its poset.
"""

from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction

__all__ = [
    "Exponent", "SupercuspidalLabel", "TRIVIAL", "Segment", "Multisegment",
    "PosetTooLarge", "seg", "ms", "is_linked", "precedes", "midpoint",
    "unitary_midpoint", "dnp_sort", "satisfies_dnp", "elementary_covers",
    "leq", "leq_bfs", "lower_set", "inertial_decompose", "twist",
    "langlands_triple", "is_square_integrable", "end_dim", "intervals",
    "content", "DEFAULT_MAX_POSET",
]

DEFAULT_MAX_POSET = 20000


class PosetTooLarge(RuntimeError):
    """Raised when an enumeration would exceed the configured size cap."""


def _frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True, order=True)
class Exponent:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", _frac(self.re))
        object.__setattr__(self, "im", _frac(self.im))

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Exponent):
            return x
        if isinstance(x, tuple):
            return cls(*x)
        return cls(x)

    def __add__(self, other):
        if isinstance(other, Exponent):
            return Exponent(self.re + other.re, self.im + other.im)
        return Exponent(self.re + other, self.im)

    def __sub__(self, other):
        if isinstance(other, Exponent):
            return Exponent(self.re - other.re, self.im - other.im)
        return Exponent(self.re - other, self.im)

    def __neg__(self):
        return Exponent(-self.re, -self.im)

    def related(self, other):
        """Integrally related: same tag, real parts differ by an integer."""
        return self.im == other.im and (self.re - other.re).denominator == 1

    def __str__(self):
        if not self.im:
            return str(self.re)
        sign = "-" if self.im < 0 else "+"
        return "%s%s%si" % (self.re, sign, abs(self.im))


@dataclass(frozen=True, order=True)
class SupercuspidalLabel:
    """Opaque supercuspidal rho of GL_d; rho(-unitary_offset) is unitary."""
    id: str = "triv"
    d: int = 1
    unitary_offset: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "id", str(self.id))
        object.__setattr__(self, "unitary_offset", _frac(self.unitary_offset))
        if self.d < 1:
            raise ValueError("label dimension must be positive")

    @property
    def is_trivial(self):
        return self == TRIVIAL


TRIVIAL = SupercuspidalLabel()


@dataclass(frozen=True)
class Segment:
    rho: SupercuspidalLabel
    start: Exponent
    end: Exponent

    def __post_init__(self):
        object.__setattr__(self, "start", Exponent.coerce(self.start))
        object.__setattr__(self, "end", Exponent.coerce(self.end))
        if not self.start.related(self.end) or self.end.re < self.start.re:
            raise ValueError("not a segment: [%s, %s]" % (self.start, self.end))

    @property
    def length(self):
        return int(self.end.re - self.start.re) + 1

    @property
    def class_key(self):
        """Inertial class: label id, imaginary tag, real part mod Z."""
        return (self.rho.id, self.start.im, self.start.re % 1)

    def points(self):
        return [self.start + k for k in range(self.length)]

    def shifted(self, c):
        return Segment(self.rho, self.start + c, self.end + c)

    def contains(self, other):
        return (self.class_key == other.class_key
                and self.start.re <= other.start.re and other.end.re <= self.end.re)

    def _sort_key(self):
        mid = (self.start.re + self.end.re) / 2
        return (self.class_key, -mid, -self.start.re, -self.length)

    def __str__(self):
        from .dsl import format_segment
        return format_segment(self)


def seg(a, b=None, rho=TRIVIAL):
    """Convenience constructor: seg(0, 1) is [0,1], seg(2) is [2]."""
    a = Exponent.coerce(a)
    b = a if b is None else Exponent.coerce(b)
    return Segment(rho, a, b)


@dataclass(frozen=True)
class Multisegment:
    segments: tuple = field(default=())

    def __post_init__(self):
        segs = tuple(sorted(self.segments, key=Segment._sort_key))
        labels = {}
        for s in segs:
            prev = labels.setdefault(s.rho.id, s.rho)
            if prev != s.rho:
                raise ValueError("label id %r used with different data" % s.rho.id)
        object.__setattr__(self, "segments", segs)

    def __iter__(self):
        return iter(self.segments)

    def __len__(self):
        return len(self.segments)

    def __add__(self, other):
        return Multisegment(self.segments + tuple(other.segments))

    @property
    def size(self):
        """n with the multisegment living on GL_n: sum of d * length."""
        return sum(s.rho.d * s.length for s in self.segments)

    def classes(self):
        return sorted({s.class_key for s in self.segments})

    def __str__(self):
        from .dsl import format_multisegment
        return format_multisegment(self)

    def __repr__(self):
        return "Multisegment(%r)" % str(self)


def ms(*items, rho=TRIVIAL):
    """ms((0, 1), 2) builds {[0,1],[2]} with trivial label."""
    segs = []
    for it in items:
        if isinstance(it, Segment):
            segs.append(it)
        elif isinstance(it, tuple):
            segs.append(seg(*it, rho=rho))
        else:
            segs.append(seg(it, rho=rho))
    return Multisegment(tuple(segs))


# --- linking -------------------------------------------------------------------

def is_linked(d1, d2):
    """Neither segment contains the other and their union is a segment."""
    if d1.rho.id != d2.rho.id or not d1.start.related(d2.start):
        return False
    a, b = d1.start.re, d1.end.re
    c, d = d2.start.re, d2.end.re
    return (a < c and c - 1 <= b < d) or (c < a and a - 1 <= d < b)


def precedes(d1, d2):
    return is_linked(d1, d2) and d2.start.re > d1.start.re


def midpoint(d):
    return Exponent((d.start.re + d.end.re) / 2, d.start.im)


def unitary_midpoint(d):
    """Real midpoint measured against the unitary representative of the label."""
    return (d.start.re + d.end.re) / 2 + d.rho.unitary_offset


def is_square_integrable(d):
    return unitary_midpoint(d) == 0


def dnp_sort(a):
    if isinstance(a, Multisegment):
        return Multisegment(a.segments)
    return Multisegment(tuple(a))


def satisfies_dnp(segments):
    segs = list(segments)
    return not any(precedes(segs[i], segs[j])
                   for i in range(len(segs)) for j in range(i + 1, len(segs)))


# --- the partial order -----------------------------------------------------------

def _union_intersection(d1, d2):
    lo = min(d1.start, d2.start, key=lambda e: e.re)
    hi = max(d1.end, d2.end, key=lambda e: e.re)
    out = [Segment(d1.rho, lo, hi)]
    s = max(d1.start, d2.start, key=lambda e: e.re)
    e = min(d1.end, d2.end, key=lambda e: e.re)
    if s.re <= e.re:
        out.append(Segment(d1.rho, s, e))
    return out


def elementary_covers(a):
    """All results of one elementary operation on a linked pair of `a`."""
    segs = a.segments
    out = set()
    seen = set()
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            pair = (segs[i], segs[j])
            if pair in seen or not is_linked(*pair):
                continue
            seen.add(pair)
            rest = segs[:i] + segs[i + 1:j] + segs[j + 1:]
            out.add(Multisegment(rest + tuple(_union_intersection(*pair))))
    return out


def content(a):
    """The multiset of (label id, exponent) points, i.e. the cuspidal support."""
    return Counter((s.rho.id, p) for s in a for p in s.points())


def _hom_dim(d1, d2):
    # interval modules of the equioriented type A quiver
    if d1.class_key != d2.class_key:
        return 0
    a, b = d1.start.re, d1.end.re
    c, d = d2.start.re, d2.end.re
    return int(c <= a <= d <= b)


def end_dim(a):
    """Dimension of the endomorphism algebra of the quiver representation of `a`."""
    segs = a.segments
    return sum(_hom_dim(x, y) for x in segs for y in segs)


def intervals(a):
    """
    Integer picture of a single-class multisegment.

    Returns sorted (start, end) integer pairs obtained by subtracting the class
    representative (real part mod Z, imaginary tag) from every exponent.
    """
    keys = a.classes()
    if len(keys) > 1:
        raise ValueError("multisegment has %d inertial classes" % len(keys))
    if not keys:
        return ()
    _, im, frac = keys[0]
    base = Exponent(frac, im)
    return tuple(sorted((int((s.start - base).re), int((s.end - base).re)) for s in a))


def leq_bfs(b, a, max_size=DEFAULT_MAX_POSET):
    """Reference order test: is b reachable from a by elementary operations."""
    if b == a:
        return True
    if content(a) != content(b):
        return False
    seen = {a}
    queue = deque([a])
    target = end_dim(b)
    while queue:
        x = queue.popleft()
        for y in elementary_covers(x):
            if y == b:
                return True
            # end_dim strictly drops along operations, so prune below the target
            if y not in seen and end_dim(y) > target:
                seen.add(y)
                if len(seen) > max_size:
                    raise PosetTooLarge("poset exceeds %d elements" % max_size)
                queue.append(y)
    return False


def leq(b, a):
    """b <= a, decided class by class with the rank criterion."""
    from .geometry import closure_leq

    if content(a) != content(b):
        return False
    parts_a = {p.classes()[0]: p for p in inertial_decompose(a)}
    parts_b = {p.classes()[0]: p for p in inertial_decompose(b)}
    if parts_a.keys() != parts_b.keys():
        return False
    return all(closure_leq(parts_b[k], parts_a[k]) for k in parts_a)


def _shape(b):
    """Per class, segments as (start above the class minimum, length): label and shift free."""
    out = []
    for part in inertial_decompose(b):
        base = min(seg.start.re for seg in part)
        out.append(tuple((seg.start.re - base, seg.length) for seg in part))
    return tuple(out)


def _topo_key(b):
    return (-end_dim(b), _shape(b), str(b))


def lower_set(a, max_size=DEFAULT_MAX_POSET):
    """
    Every b <= a, larger elements first.

    The order is by decreasing endomorphism dimension (equivalently increasing
    orbit dimension), so each element appears before everything below it.
    """
    seen = {a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in elementary_covers(x):
            if y not in seen:
                seen.add(y)
                if len(seen) > max_size:
                    raise PosetTooLarge("poset exceeds %d elements" % max_size)
                queue.append(y)
    return sorted(seen, key=_topo_key)


def inertial_decompose(a):
    """Split `a` into its inertial classes, in class-key order."""
    groups = {}
    for s in a:
        groups.setdefault(s.class_key, []).append(s)
    return [Multisegment(tuple(groups[k])) for k in sorted(groups)]


def twist(a, c):
    c = Exponent.coerce(c)
    return Multisegment(tuple(s.shifted(c) for s in a))


def langlands_triple(a):
    """
    Group segments by their unitary midpoint, largest first.

    Each entry is (Exponent(m), block) where block lists the centred segments:
    same label, unitary midpoint 0, imaginary tag kept. Twisting every segment
    of a block back by m recovers the original segments.
    """
    groups = {}
    for s in Multisegment(tuple(a)):
        groups.setdefault(unitary_midpoint(s), []).append(s)
    out = []
    for m in sorted(groups, reverse=True):
        block = Multisegment(tuple(s.shifted(-m) for s in groups[m]))
        out.append((Exponent(m), block))
    return out


def from_langlands_triple(triple):
    segs = []
    for m, block in triple:
        segs.extend(s.shifted(m.re) for s in block)
    return Multisegment(tuple(segs))


__all__.append("from_langlands_triple")
