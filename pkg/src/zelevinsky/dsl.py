"""
Text format for multisegments.

    multisegment := seg ( "+" seg )*
    seg          := [ label ":" ] "[" exp [ "," exp ] "]"
    exp          := rational [ ("+" | "-") rational "i" ]
    label        := "rho(" id "," dim [ "," offset ] ")"

Whitespace is ignored. The empty string is the empty multisegment. The
canonical form prints segments in stored order, rationals in lowest terms,
singletons as "[a]" and omits the trivial label.
"""

from fractions import Fraction

from .multiseg import Exponent, Multisegment, Segment, SupercuspidalLabel, TRIVIAL

__all__ = ["ParseError", "parse_multisegment", "format_multisegment", "format_segment",
           "format_exponent"]


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__("%s at position %d" % (message, position))
        self.position = position


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, s):
        self.skip()
        if not self.text.startswith(s, self.pos):
            raise ParseError("expected %r" % s, self.pos)
        self.pos += len(s)

    def rational(self):
        self.skip()
        start = self.pos
        if self.peek() in "+-":
            self.pos += 1
        self.skip()
        digits = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isdigit() or self.text[self.pos] == "/"):
            self.pos += 1
        token = self.text[start:self.pos].replace(" ", "")
        if self.pos == digits:
            raise ParseError("expected a rational number", start)
        try:
            return Fraction(token)
        except (ValueError, ZeroDivisionError):
            raise ParseError("bad rational %r" % token, start) from None

    def exponent(self):
        re = self.rational()
        if self.peek() in "+-":
            save = self.pos
            im = self.rational()
            if self.peek() == "i":
                self.pos += 1
                return Exponent(re, im)
            raise ParseError("expected 'i' after imaginary part", save)
        return Exponent(re)

    def label(self):
        self.expect("rho(")
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ",)":
            self.pos += 1
        ident = self.text[start:self.pos].strip()
        if not ident:
            raise ParseError("empty label id", start)
        self.expect(",")
        self.skip()
        dpos = self.pos
        d = self.rational()
        if d.denominator != 1 or d < 1:
            raise ParseError("label dimension must be a positive integer", dpos)
        offset = Fraction(0)
        if self.peek() == ",":
            self.pos += 1
            offset = self.rational()
        self.expect(")")
        return SupercuspidalLabel(ident, int(d), offset)

    def segment(self):
        rho = TRIVIAL
        if self.peek() == "r":
            rho = self.label()
            self.expect(":")
        self.expect("[")
        a = self.exponent()
        b = a
        if self.peek() == ",":
            self.pos += 1
            b = self.exponent()
        pos = self.pos
        self.expect("]")
        try:
            return Segment(rho, a, b)
        except ValueError as exc:
            raise ParseError(str(exc), pos) from None

    def multisegment(self):
        segs = []
        if self.peek() == "":
            return Multisegment(())
        segs.append(self.segment())
        while self.peek() == "+":
            self.pos += 1
            segs.append(self.segment())
        if self.peek() != "":
            raise ParseError("unexpected %r" % self.peek(), self.pos)
        try:
            return Multisegment(tuple(segs))
        except ValueError as exc:
            raise ParseError(str(exc), 0) from None


def parse_multisegment(text):
    return _Parser(text).multisegment()


def format_exponent(e):
    return str(e)


def format_label(rho):
    if rho.unitary_offset:
        return "rho(%s,%d,%s)" % (rho.id, rho.d, rho.unitary_offset)
    return "rho(%s,%d)" % (rho.id, rho.d)


def format_segment(s):
    prefix = "" if s.rho == TRIVIAL else format_label(s.rho) + ":"
    if s.start == s.end:
        return "%s[%s]" % (prefix, s.start)
    return "%s[%s,%s]" % (prefix, s.start, s.end)


def format_multisegment(a):
    return "+".join(format_segment(s) for s in a)
