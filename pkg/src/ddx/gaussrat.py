"""Exact arithmetic over the Gaussian rationals.

Values are complex numbers whose real and imaginary parts are arbitrary
precision rationals.  Everything downstream (matrices, subspaces, cohomology)
reduces to this field, so rank decisions are tolerance-free.

The canonical text form is the one used in all file formats and CLI output:
``"3"``, ``"-1/2"``, ``"2+1/3i"``, ``"-i"``.  Fractions are always reduced and
a denominator of 1 is omitted.
"""

from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class GaussRat:
    """A Gaussian rational: ``re + im*i`` with exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = re if type(re) is Fraction else Fraction(re)
        self.im = im if type(im) is Fraction else Fraction(im)

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other):
        return _new(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return _new(self.re - other.re, self.im - other.im)

    def __neg__(self):
        return _new(-self.re, -self.im)

    def __mul__(self, other):
        a, b, c, d = self.re, self.im, other.re, other.im
        if b or d:
            return _new(a * c - b * d, a * d + b * c)
        return _new(a * c, _ZERO)

    def __truediv__(self, other):
        a, b, c, d = self.re, self.im, other.re, other.im
        if d:
            n = c * c + d * d
            return _new((a * c + b * d) / n, (b * c - a * d) / n)
        return _new(a / c, b / c)

    def inverse(self):
        a, b = self.re, self.im
        if b:
            n = a * a + b * b
            return _new(a / n, -b / n)
        return _new(_ONE / a, _ZERO)

    def conj(self):
        return _new(self.re, -self.im)

    # ------------------------------------------------------------------
    # comparisons and hashing
    # ------------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, GaussRat):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    # ------------------------------------------------------------------
    # text form
    # ------------------------------------------------------------------

    def __str__(self):
        re, im = self.re, self.im
        if not im:
            return str(re)
        if im == 1:
            ipart = "i"
        elif im == -1:
            ipart = "-i"
        else:
            ipart = f"{im}i"
        if not re:
            return ipart
        if im > 0:
            return f"{re}+{ipart}"
        return f"{re}{ipart}"

    def __repr__(self):
        return f"GaussRat({self})"


def _new(re, im):
    g = GaussRat.__new__(GaussRat)
    g.re = re
    g.im = im
    return g


ZERO = GaussRat(0)
ONE = GaussRat(1)
MINUS_ONE = GaussRat(-1)
I = GaussRat(0, 1)


def gauss(re=0, im=0):
    """Shorthand constructor accepting ints, Fractions or strings."""
    if isinstance(re, str):
        return parse_gaussrat(re)
    return GaussRat(re, im)


def parse_gaussrat(text):
    """Parse the canonical coefficient grammar.

    Accepts e.g. ``"3"``, ``"-1/2"``, ``"2+1/3i"``, ``"1-i"``, ``"-i"``,
    ``"2/3i"``.  Raises ValueError on anything else.
    """
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty coefficient")
    if not s.endswith("i"):
        return GaussRat(_parse_rat(s))
    body = s[:-1]
    # find a sign that separates a real part from the imaginary part
    split = -1
    for k in range(1, len(body)):
        if body[k] in "+-" and body[k - 1] not in "+-/":
            split = k
    if split == -1:
        return GaussRat(0, _parse_imag(body))
    return GaussRat(_parse_rat(body[:split]), _parse_imag(body[split:]))


def _parse_rat(s):
    if not s:
        raise ValueError("missing rational part")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {s!r}") from exc


def _parse_imag(s):
    if s in ("", "+"):
        return _ONE
    if s == "-":
        return -_ONE
    return _parse_rat(s)
