"""Exact scalars: the field Q(i, sqrt2), plus a float-complex fallback.

ExactScalar is the coefficient type of every exact matrix in the package.
The field is the smallest extension of Q containing i and sqrt(2); that is
enough for the normalized reflection lifts (which divide by |alpha|) and
for the spinor matrices of every built-in root system.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd

SQRT2_FLOAT = 1.4142135623730951

RationalLike = "int | str | Fraction"


def as_fraction(x) -> Fraction:
    """Coerce an int, Fraction or 'p/q' string to Fraction.

    Raises ValueError on malformed input, including zero denominators.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {x!r}") from exc
    raise ValueError(f"not a rational: {x!r}")


def format_fraction(x: Fraction) -> str:
    """Render p/q, omitting the denominator when it is 1."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _gcd5(a: int, b: int, c: int, d: int, e: int) -> int:
    return gcd(gcd(gcd(abs(a), abs(b)), gcd(abs(c), abs(d))), e)


class ExactScalar:
    """(a + b*sqrt2) + i*(c + d*sqrt2) with rational a, b, c, d.

    Stored as four integers over a common positive denominator, fully
    reduced, so equality and hashing are structural.
    """

    __slots__ = ("_p", "_q", "_r", "_s", "_den")

    def __init__(self, a=0, b=0, c=0, d=0):
        fa, fb, fc, fd = (as_fraction(a), as_fraction(b),
                          as_fraction(c), as_fraction(d))
        den = 1
        for f in (fa, fb, fc, fd):
            den = den * f.denominator // gcd(den, f.denominator)
        self._p = int(fa * den)
        self._q = int(fb * den)
        self._r = int(fc * den)
        self._s = int(fd * den)
        self._den = den
        self._reduce()

    def _reduce(self) -> None:
        if self._den < 0:
            self._p, self._q, self._r, self._s, self._den = (
                -self._p, -self._q, -self._r, -self._s, -self._den)
        g = _gcd5(self._p, self._q, self._r, self._s, self._den)
        if g > 1:
            self._p //= g
            self._q //= g
            self._r //= g
            self._s //= g
            self._den //= g

    @staticmethod
    def _raw(p: int, q: int, r: int, s: int, den: int) -> "ExactScalar":
        self = object.__new__(ExactScalar)
        self._p, self._q, self._r, self._s, self._den = p, q, r, s, den
        self._reduce()
        return self

    # -- component access (as Fractions, per the public contract) --

    @property
    def a(self) -> Fraction:
        return Fraction(self._p, self._den)

    @property
    def b(self) -> Fraction:
        return Fraction(self._q, self._den)

    @property
    def c(self) -> Fraction:
        return Fraction(self._r, self._den)

    @property
    def d(self) -> Fraction:
        return Fraction(self._s, self._den)

    # -- predicates --

    def is_zero(self) -> bool:
        return self._p == 0 and self._q == 0 and self._r == 0 and self._s == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_real(self) -> bool:
        return self._r == 0 and self._s == 0

    def is_rational(self) -> bool:
        return self._q == 0 and self._r == 0 and self._s == 0

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"not rational: {self}")
        return Fraction(self._p, self._den)

    # -- arithmetic --

    @staticmethod
    def _coerce(x):
        if isinstance(x, ExactScalar):
            return x
        if isinstance(x, (int, Fraction)):
            f = as_fraction(x)
            return ExactScalar._raw(f.numerator, 0, 0, 0, f.denominator)
        return None

    def __add__(self, other):
        o = ExactScalar._coerce(other)
        if o is None:
            return NotImplemented
        d1, d2 = self._den, o._den
        return ExactScalar._raw(
            self._p * d2 + o._p * d1,
            self._q * d2 + o._q * d1,
            self._r * d2 + o._r * d1,
            self._s * d2 + o._s * d1,
            d1 * d2)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._raw(-self._p, -self._q, -self._r, -self._s,
                                self._den)

    def __sub__(self, other):
        o = ExactScalar._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = ExactScalar._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = ExactScalar._coerce(other)
        if o is None:
            return NotImplemented
        p1, q1, r1, s1 = self._p, self._q, self._r, self._s
        p2, q2, r2, s2 = o._p, o._q, o._r, o._s
        if q1 == r1 == s1 == 0 and q2 == r2 == s2 == 0:
            return ExactScalar._raw(p1 * p2, 0, 0, 0, self._den * o._den)
        return ExactScalar._raw(
            p1 * p2 + 2 * q1 * q2 - r1 * r2 - 2 * s1 * s2,
            p1 * q2 + q1 * p2 - r1 * s2 - s1 * r2,
            p1 * r2 + r1 * p2 + 2 * (q1 * s2 + s1 * q2),
            p1 * s2 + s1 * p2 + q1 * r2 + r1 * q2,
            self._den * o._den)

    __rmul__ = __mul__

    def inverse(self) -> "ExactScalar":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        p, q, r, s, den = self._p, self._q, self._r, self._s, self._den
        # den^2 |x|^2 = E + F sqrt2, always nonzero for x != 0
        e = p * p + 2 * q * q + r * r + 2 * s * s
        f = 2 * (p * q + r * s)
        norm = e * e - 2 * f * f
        return ExactScalar._raw(
            den * (p * e - 2 * q * f),
            den * (q * e - p * f),
            -den * (r * e - 2 * s * f),
            -den * (s * e - r * f),
            norm)

    def __truediv__(self, other):
        o = ExactScalar._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = ExactScalar._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def conjugate(self) -> "ExactScalar":
        """Complex conjugation: i -> -i."""
        return ExactScalar._raw(self._p, self._q, -self._r, -self._s,
                                self._den)

    def surd_conjugate(self) -> "ExactScalar":
        """Galois twist sqrt2 -> -sqrt2."""
        return ExactScalar._raw(self._p, -self._q, self._r, -self._s,
                                self._den)

    def abs_squared(self) -> "ExactScalar":
        return self * self.conjugate()

    def sign_real(self) -> int:
        """Exact sign of a real field element; raises if imaginary part != 0."""
        if self._r != 0 or self._s != 0:
            raise ValueError(f"sign of non-real scalar: {self}")
        p, q = self._p, self._q
        if p == 0 and q == 0:
            return 0
        if p >= 0 and q >= 0:
            return 1
        if p <= 0 and q <= 0:
            return -1
        # opposite signs: compare p^2 against 2 q^2
        t = p * p - 2 * q * q
        # t == 0 impossible (sqrt2 irrational)
        if p > 0:
            return 1 if t > 0 else -1
        return 1 if t < 0 else -1

    # -- structure --

    def __eq__(self, other):
        o = ExactScalar._coerce(other)
        if o is None:
            return NotImplemented
        return (self._p == o._p and self._q == o._q and self._r == o._r
                and self._s == o._s and self._den == o._den)

    def __hash__(self):
        return hash((self._p, self._q, self._r, self._s, self._den))

    # -- conversions --

    def to_complex(self) -> complex:
        re = (self._p + self._q * SQRT2_FLOAT) / self._den
        im = (self._r + self._s * SQRT2_FLOAT) / self._den
        return complex(re, im)

    def serialize(self) -> list:
        """4-tuple of rational strings [a, b, c, d]."""
        return [format_fraction(x) for x in (self.a, self.b, self.c, self.d)]

    @staticmethod
    def deserialize(parts) -> "ExactScalar":
        if len(parts) != 4:
            raise ValueError(f"expected 4 components, got {parts!r}")
        return ExactScalar(*[as_fraction(p) for p in parts])

    def compact(self) -> str:
        """Single-string form '(a,b,c,d)' used in CSV cells."""
        return "(" + ",".join(self.serialize()) + ")"

    @staticmethod
    def from_compact(text: str) -> "ExactScalar":
        t = text.strip()
        if not (t.startswith("(") and t.endswith(")")):
            raise ValueError(f"malformed scalar cell: {text!r}")
        return ExactScalar.deserialize(t[1:-1].split(","))

    def __str__(self):
        terms = []
        for coef, unit in ((self.a, ""), (self.b, "sqrt2"),
                           (self.c, "i"), (self.d, "i*sqrt2")):
            if coef == 0:
                continue
            if unit == "":
                body = format_fraction(coef)
            elif coef == 1:
                body = unit
            elif coef == -1:
                body = "-" + unit
            else:
                body = f"{format_fraction(coef)}*{unit}"
            terms.append(body)
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def __repr__(self):
        return f"ExactScalar({self})"

    @staticmethod
    def parse(text: str) -> "ExactScalar":
        """Parse the __str__ grammar: signed sums of [coef*][i][*][sqrt2]."""
        t = text.replace(" ", "")
        if not t:
            raise ValueError("empty scalar")
        # split into signed terms
        terms, cur, sign = [], "", 1
        if t[0] in "+-":
            sign = -1 if t[0] == "-" else 1
            t = t[1:]
        for ch in t:
            if ch in "+-":
                terms.append((sign, cur))
                sign = -1 if ch == "-" else 1
                cur = ""
            else:
                cur += ch
        terms.append((sign, cur))
        out = ExactScalar()
        for sgn, body in terms:
            if not body:
                raise ValueError(f"malformed scalar: {text!r}")
            has_i = False
            has_s = False
            rest = body
            while True:
                if rest.endswith("sqrt2") and not has_s:
                    has_s = True
                    rest = rest[:-5].rstrip("*")
                elif rest.endswith("i") and not has_i:
                    has_i = True
                    rest = rest[:-1].rstrip("*")
                else:
                    break
            coef = as_fraction(rest) if rest else Fraction(1)
            coef *= sgn
            idx = (1 if has_s else 0) + (2 if has_i else 0)
            comp = [Fraction(0)] * 4
            comp[idx] = coef
            out = out + ExactScalar(*comp)
        return out


ZERO = ExactScalar(0)
ONE = ExactScalar(1)
SQRT2 = ExactScalar(0, 1)
IUNIT = ExactScalar(0, 0, 1)
HALF = ExactScalar(Fraction(1, 2))


def rat(x) -> ExactScalar:
    """Rational-valued ExactScalar from int, Fraction or 'p/q' string."""
    f = as_fraction(x)
    return ExactScalar._raw(f.numerator, 0, 0, 0, f.denominator)


def sqrt_in_real_subfield(x: ExactScalar):
    """Exact square root of a nonnegative real field element, if it stays
    in Q(sqrt2).  Returns the nonnegative root or None.

    Solves (u + v sqrt2)^2 = a + b sqrt2 over Q.
    """
    if not x.is_real():
        raise ValueError("square root of non-real scalar")
    sgn = x.sign_real()
    if sgn < 0:
        return None
    if sgn == 0:
        return ZERO
    a, b = x.a, x.b
    # u^2 + 2 v^2 = a, 2 u v = b.  u^2 and 2v^2 are the roots of
    # z^2 - a z + b^2 / 2 = 0.
    disc = a * a - 2 * b * b
    sd = _fraction_sqrt(disc)
    if sd is None:
        return None
    for u2 in ((a + sd) / 2, (a - sd) / 2):
        su = _fraction_sqrt(u2)
        if su is None:
            continue
        if su == 0:
            if b != 0:
                continue
            v2 = a / 2
            sv = _fraction_sqrt(v2)
            if sv is None:
                continue
            cand = ExactScalar(0, sv)
        else:
            v = b / (2 * su)
            cand = ExactScalar(su, v)
        if cand * cand == x and cand.sign_real() >= 0:
            return cand
    return None


def _fraction_sqrt(f: Fraction):
    """Exact rational square root, or None."""
    if f < 0:
        return None
    num, den = f.numerator, f.denominator
    rn = _isqrt_exact(num)
    rd = _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n: int):
    from math import isqrt
    r = isqrt(n)
    return r if r * r == n else None


class FloatScalar:
    """Complex float drop-in for ExactScalar, for root systems whose
    lift norms leave Q(i, sqrt2).  Zero tests are tolerance based."""

    __slots__ = ("v",)
    ZERO_TOL = 1e-12

    def __init__(self, v=0.0):
        if isinstance(v, FloatScalar):
            v = v.v
        elif isinstance(v, ExactScalar):
            v = v.to_complex()
        elif isinstance(v, Fraction):
            v = float(v)
        self.v = complex(v)

    def is_zero(self) -> bool:
        return abs(self.v) <= self.ZERO_TOL

    def __bool__(self):
        return not self.is_zero()

    @staticmethod
    def _coerce(x):
        if isinstance(x, FloatScalar):
            return x
        if isinstance(x, (int, float, complex, Fraction, ExactScalar)):
            return FloatScalar(x)
        return None

    def __add__(self, other):
        o = FloatScalar._coerce(other)
        return NotImplemented if o is None else FloatScalar(self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return FloatScalar(-self.v)

    def __sub__(self, other):
        o = FloatScalar._coerce(other)
        return NotImplemented if o is None else FloatScalar(self.v - o.v)

    def __rsub__(self, other):
        o = FloatScalar._coerce(other)
        return NotImplemented if o is None else FloatScalar(o.v - self.v)

    def __mul__(self, other):
        o = FloatScalar._coerce(other)
        return NotImplemented if o is None else FloatScalar(self.v * o.v)

    __rmul__ = __mul__

    def inverse(self):
        return FloatScalar(1.0 / self.v)

    def __truediv__(self, other):
        o = FloatScalar._coerce(other)
        return NotImplemented if o is None else FloatScalar(self.v / o.v)

    def conjugate(self):
        return FloatScalar(self.v.conjugate())

    def sign_real(self) -> int:
        if abs(self.v.imag) > 1e-9:
            raise ValueError(f"sign of non-real scalar: {self.v}")
        x = self.v.real
        if abs(x) <= self.ZERO_TOL:
            return 0
        return 1 if x > 0 else -1

    def to_complex(self) -> complex:
        return self.v

    def __eq__(self, other):
        o = FloatScalar._coerce(other)
        if o is None:
            return NotImplemented
        return abs(self.v - o.v) <= 1e-9

    def __str__(self):
        return str(self.v)

    def __repr__(self):
        return f"FloatScalar({self.v})"
