"""Exact coefficient rings.

Three kinds of scalars appear in the deformed categories:

* ``TwistedScalar``: finite sums ``sum c_r t^r`` with rational exponents,
  the group ring of (Q, +) over Q.  Multi-term inverses live in
  ``TwistedFraction``, a formal fraction compared by cross-multiplication.
* ``GradedLaurent``: Laurent polynomials in ``hbar`` over Q, graded with
  ``deg hbar = 2 - l``.
* ``ModP``: integers modulo a prime.

Ring descriptors (``Rationals``, ``PrimeField``, ``TwistedRing``,
``LaurentRing``, ``Integers``) bundle coercion, parsing and printing so
that the algebra code can stay generic.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational

from .errors import NonHomogeneous, ZeroElement

_SCALARS = (int, Fraction)


def to_fraction(x) -> Fraction:
    """Exact rational from int, Fraction, str or float.

    Floats are read through their shortest decimal repr, so 0.1 becomes
    1/10 rather than the binary expansion.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read {x!r} as a rational")


def _fmt_q(x: Fraction) -> str:
    return str(x)


# ---------------------------------------------------------------------------
# twisted scalars


class TwistedScalar:
    """Finite formal sum of rational powers of t with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        acc: dict[Fraction, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for r, c in items:
                r = to_fraction(r)
                c = to_fraction(c)
                if c:
                    acc[r] = acc.get(r, 0) + c
        self._terms = tuple(sorted((r, c) for r, c in acc.items() if c != 0))
        self._hash = None

    @classmethod
    def monomial(cls, r, c=1) -> "TwistedScalar":
        return cls({r: c})

    @classmethod
    def constant(cls, c) -> "TwistedScalar":
        return cls({0: c})

    @classmethod
    def coerce(cls, x) -> "TwistedScalar":
        if isinstance(x, TwistedScalar):
            return x
        if isinstance(x, _SCALARS):
            return cls.constant(x)
        raise TypeError(f"cannot coerce {x!r} to a twisted scalar")

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return iter(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def exponents(self) -> list:
        return [r for r, _ in self._terms]

    def valuation(self):
        return self._terms[0][0] if self._terms else None

    def specialize(self, t=1):
        """Evaluate at a numeric t; t = 1 gives the exact coefficient sum."""
        if t == 1:
            return sum((c for _, c in self._terms), Fraction(0))
        return sum(float(c) * float(t) ** float(r) for r, c in self._terms)

    # arithmetic
    def __add__(self, other):
        if isinstance(other, TwistedFraction):
            return NotImplemented
        try:
            other = TwistedScalar.coerce(other)
        except TypeError:
            return NotImplemented
        acc = dict(self._terms)
        for r, c in other._terms:
            acc[r] = acc.get(r, 0) + c
        return TwistedScalar(acc)

    __radd__ = __add__

    def __neg__(self):
        return TwistedScalar({r: -c for r, c in self._terms})

    def __sub__(self, other):
        if isinstance(other, TwistedFraction):
            return NotImplemented
        try:
            other = TwistedScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return TwistedScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, TwistedFraction):
            return NotImplemented
        try:
            other = TwistedScalar.coerce(other)
        except TypeError:
            return NotImplemented
        acc: dict[Fraction, Fraction] = {}
        for r, c in self._terms:
            for s, d in other._terms:
                acc[r + s] = acc.get(r + s, 0) + c * d
        return TwistedScalar(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only for monomials")
            return self.inverse() ** (-n)
        out = TwistedScalar.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self):
        """Exact inverse: a twisted scalar for monomials, else a fraction."""
        if not self._terms:
            raise ZeroElement("0 is not invertible")
        if len(self._terms) == 1:
            r, c = self._terms[0]
            return TwistedScalar({-r: 1 / c})
        return TwistedFraction(1, self)

    def __truediv__(self, other):
        if isinstance(other, TwistedFraction):
            return NotImplemented
        other = TwistedScalar.coerce(other)
        if other.is_zero():
            raise ZeroElement("division by zero")
        if other.is_monomial():
            return self * other.inverse()
        return TwistedFraction(self, other)

    def __rtruediv__(self, other):
        return TwistedScalar.coerce(other) / self

    def __eq__(self, other):
        if isinstance(other, TwistedFraction):
            return other == self
        try:
            other = TwistedScalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("K", self._terms))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def __str__(self):
        if not self._terms:
            return "0"
        return ", ".join(f"t^{{{_fmt_q(r)}}}:{_fmt_q(c)}" for r, c in self._terms)

    def __repr__(self):
        return f"TwistedScalar({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "TwistedScalar":
        text = text.strip()
        if text in ("", "0"):
            return cls()
        terms = {}
        for part in text.split(","):
            m = re.fullmatch(r"\s*t\^\{([^}]*)\}\s*:\s*(\S+)\s*", part)
            if not m:
                raise ValueError(f"bad twisted term {part!r}")
            r = Fraction(m.group(1))
            terms[r] = terms.get(r, 0) + Fraction(m.group(2))
        return cls(terms)


def t(r=1, c=1) -> TwistedScalar:
    """Shorthand for the monomial c t^r."""
    return TwistedScalar.monomial(r, c)


def twisted_mul(a: TwistedScalar, b: TwistedScalar) -> TwistedScalar:
    return TwistedScalar.coerce(a) * TwistedScalar.coerce(b)


def twisted_is_invertible(a):
    """Return ``(ok, inverse)``; inverse is None when a is zero."""
    if isinstance(a, TwistedFraction):
        if a.is_zero():
            return False, None
        return True, a.inverse()
    a = TwistedScalar.coerce(a)
    if a.is_zero():
        return False, None
    return True, a.inverse()


class TwistedFraction:
    """Formal quotient num/den of twisted scalars.

    Denominators are scaled so their lowest term is t^0 with coefficient 1,
    and monomial denominators are cleared.  Equality is cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = TwistedScalar.coerce(num) if not isinstance(num, TwistedScalar) else num
        den = TwistedScalar.coerce(den) if not isinstance(den, TwistedScalar) else den
        if den.is_zero():
            raise ZeroElement("zero denominator")
        if num.is_zero():
            den = TwistedScalar.constant(1)
        else:
            r0, c0 = den._terms[0]
            scale = TwistedScalar({-r0: 1 / c0})
            num, den = num * scale, den * scale
            if den.is_monomial():
                num, den = num * den.inverse(), TwistedScalar.constant(1)
        self.num = num
        self.den = den

    @classmethod
    def coerce(cls, x) -> "TwistedFraction":
        if isinstance(x, TwistedFraction):
            return x
        return cls(TwistedScalar.coerce(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_scalar(self) -> bool:
        return self.den == 1

    def to_scalar(self):
        return self.num if self.is_scalar() else None

    def specialize(self, t=1):
        return self.num.specialize(t) / self.den.specialize(t)

    def __add__(self, other):
        try:
            o = TwistedFraction.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == o.den:
            return TwistedFraction(self.num + o.num, self.den)
        return TwistedFraction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return TwistedFraction(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = TwistedFraction.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return TwistedFraction.coerce(other) - self

    def __mul__(self, other):
        try:
            o = TwistedFraction.coerce(other)
        except TypeError:
            return NotImplemented
        return TwistedFraction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "TwistedFraction":
        if self.is_zero():
            raise ZeroElement("0 is not invertible")
        return TwistedFraction(self.den, self.num)

    def __truediv__(self, other):
        return self * TwistedFraction.coerce(other).inverse()

    def __rtruediv__(self, other):
        return TwistedFraction.coerce(other) * self.inverse()

    def __eq__(self, other):
        try:
            o = TwistedFraction.coerce(other)
        except TypeError:
            return NotImplemented
        return self.num * o.den == o.num * self.den

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if self.is_scalar():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"TwistedFraction({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "TwistedFraction":
        m = re.fullmatch(r"\s*\((.*)\)\s*/\s*\((.*)\)\s*", text)
        if m:
            return cls(TwistedScalar.parse(m.group(1)), TwistedScalar.parse(m.group(2)))
        return cls(TwistedScalar.parse(text))


# ---------------------------------------------------------------------------
# prime fields


class ModP:
    __slots__ = ("v", "p")

    def __init__(self, v, p: int):
        if isinstance(v, Fraction):
            v = v.numerator * pow(v.denominator, -1, p)
        self.v = int(v) % p
        self.p = p

    def _c(self, o):
        if isinstance(o, ModP):
            if o.p != self.p:
                raise ValueError("mixed characteristics")
            return o
        if isinstance(o, _SCALARS):
            return ModP(o, self.p)
        raise TypeError

    def __add__(self, o):
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        return ModP(self.v + o.v, self.p)

    __radd__ = __add__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __sub__(self, o):
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        return ModP(self.v - o.v, self.p)

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        return ModP(self.v * o.v, self.p)

    __rmul__ = __mul__

    def inverse(self):
        if self.v == 0:
            raise ZeroElement("0 is not invertible")
        return ModP(pow(self.v, -1, self.p), self.p)

    def __truediv__(self, o):
        return self * self._c(o).inverse()

    def __rtruediv__(self, o):
        return self._c(o) * self.inverse()

    def __eq__(self, o):
        try:
            o = self._c(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.v == o.v

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __str__(self):
        return str(self.v)

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"


# ---------------------------------------------------------------------------
# graded Laurent polynomials


class GradedLaurent:
    """Laurent polynomial in hbar over Q with deg hbar = 2 - l."""

    __slots__ = ("_coeffs", "l")

    def __init__(self, coeffs=None, l: int = 4):
        if not isinstance(l, int) or l < 4 or l % 2:
            raise ValueError(f"l must be an even integer >= 4, got {l!r}")
        acc: dict[int, Fraction] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else coeffs
            for q, c in items:
                c = to_fraction(c)
                if c:
                    acc[int(q)] = acc.get(int(q), 0) + c
        self._coeffs = tuple(sorted((q, c) for q, c in acc.items() if c != 0))
        self.l = l

    @classmethod
    def hbar(cls, q: int = 1, c=1, l: int = 4) -> "GradedLaurent":
        return cls({q: c}, l)

    @classmethod
    def constant(cls, c, l: int = 4) -> "GradedLaurent":
        return cls({0: c}, l)

    def _c(self, o) -> "GradedLaurent":
        if isinstance(o, GradedLaurent):
            if o.l != self.l:
                raise ValueError(f"mixed gradings l={self.l} and l={o.l}")
            return o
        if isinstance(o, _SCALARS):
            return GradedLaurent.constant(o, self.l)
        raise TypeError

    @property
    def coeffs(self) -> dict:
        return dict(self._coeffs)

    def items(self):
        return iter(self._coeffs)

    def exponents(self) -> list:
        return [q for q, _ in self._coeffs]

    def is_zero(self) -> bool:
        return not self._coeffs

    def is_homogeneous(self) -> bool:
        return len(self._coeffs) <= 1

    def hbar_degree(self) -> int:
        """The single hbar exponent of a nonzero homogeneous element."""
        if not self._coeffs:
            raise ZeroElement("0 has no degree")
        if len(self._coeffs) > 1:
            raise NonHomogeneous(f"{self} has several hbar exponents")
        return self._coeffs[0][0]

    def degree(self) -> int:
        return self.hbar_degree() * (2 - self.l)

    def coefficient(self, q: int = None) -> Fraction:
        if q is None:
            return self._coeffs[0][1] if self._coeffs else Fraction(0)
        return dict(self._coeffs).get(q, Fraction(0))

    def __add__(self, o):
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        acc = dict(self._coeffs)
        for q, c in o._coeffs:
            acc[q] = acc.get(q, 0) + c
        return GradedLaurent(acc, self.l)

    __radd__ = __add__

    def __neg__(self):
        return GradedLaurent({q: -c for q, c in self._coeffs}, self.l)

    def __sub__(self, o):
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        acc: dict[int, Fraction] = {}
        for q, c in self._coeffs:
            for r, d in o._coeffs:
                acc[q + r] = acc.get(q + r, 0) + c * d
        return GradedLaurent(acc, self.l)

    __rmul__ = __mul__

    def inverse(self) -> "GradedLaurent":
        return laurent_invert(self)

    def __truediv__(self, o):
        return self * laurent_invert(self._c(o))

    def __rtruediv__(self, o):
        return self._c(o) * laurent_invert(self)

    def __eq__(self, o):
        try:
            o = self._c(o)
        except TypeError:
            return NotImplemented
        except ValueError:
            return False
        return self._coeffs == o._coeffs

    def __hash__(self):
        return hash(("L", self.l, self._coeffs))

    def __bool__(self):
        return bool(self._coeffs)

    def __str__(self):
        if not self._coeffs:
            return "0"
        return ", ".join(f"h^{{{q}}}:{_fmt_q(c)}" for q, c in self._coeffs)

    def __repr__(self):
        return f"GradedLaurent({str(self)!r}, l={self.l})"

    @classmethod
    def parse(cls, text: str, l: int = 4) -> "GradedLaurent":
        text = text.strip()
        if text in ("", "0"):
            return cls({}, l)
        coeffs: dict[int, Fraction] = {}
        for part in text.split(","):
            m = re.fullmatch(r"\s*h\^\{(-?\d+)\}\s*:\s*(\S+)\s*", part)
            if not m:
                raise ValueError(f"bad Laurent term {part!r}")
            q = int(m.group(1))
            coeffs[q] = coeffs.get(q, 0) + Fraction(m.group(2))
        return cls(coeffs, l)


def hbar(q: int = 1, c=1, l: int = 4) -> GradedLaurent:
    return GradedLaurent.hbar(q, c, l)


def laurent_invert(a: GradedLaurent) -> GradedLaurent:
    if a.is_zero():
        raise ZeroElement("0 is not invertible")
    if not a.is_homogeneous():
        raise NonHomogeneous(f"{a} has several hbar exponents")
    q, c = a._coeffs[0]
    return GradedLaurent({-q: 1 / c}, a.l)


# ---------------------------------------------------------------------------
# ring descriptors


class Ring:
    """Descriptor bundling coercion and printing for one coefficient ring."""

    name = "?"
    is_field = True

    def zero(self):
        return self.coerce(0)

    def one(self):
        return self.coerce(1)

    def coerce(self, x):
        raise NotImplementedError

    def to_field(self, x):
        """Image in the field used for linear algebra."""
        return self.coerce(x)

    def parse(self, text: str):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(self.coerce(x))

    def degree(self, x) -> int:
        """Internal degree of a homogeneous coefficient."""
        return 0

    def is_zero(self, x) -> bool:
        return not x

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items()))))

    def __repr__(self):
        return self.name


class Rationals(Ring):
    name = "Q"

    def coerce(self, x):
        return to_fraction(x)

    def parse(self, text):
        return Fraction(str(text).strip())

    def format(self, x):
        return str(to_fraction(x))


class Integers(Ring):
    """Present only so that field-only operations can reject it."""

    name = "Z"
    is_field = False

    def coerce(self, x):
        x = to_fraction(x)
        if x.denominator != 1:
            raise ValueError(f"{x} is not an integer")
        return int(x)

    def parse(self, text):
        return int(str(text).strip())


class PrimeField(Ring):
    def __init__(self, p: int):
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def name(self):
        return f"F_{self.p}"

    def coerce(self, x):
        if isinstance(x, ModP):
            if x.p != self.p:
                raise ValueError("mixed characteristics")
            return x
        if isinstance(x, str):
            x = Fraction(x)
        return ModP(x, self.p)

    def parse(self, text):
        return self.coerce(str(text))


class TwistedRing(Ring):
    """The field K: twisted scalars, with fractions for linear algebra."""

    name = "K"

    def coerce(self, x):
        if isinstance(x, TwistedFraction):
            return x.to_scalar() if x.is_scalar() else x
        if isinstance(x, str):
            return self.parse(x)
        return TwistedScalar.coerce(x)

    def to_field(self, x):
        return TwistedFraction.coerce(x)

    def parse(self, text):
        f = TwistedFraction.parse(str(text))
        return f.to_scalar() if f.is_scalar() else f


class LaurentRing(Ring):
    """The graded ring L = Q[hbar, 1/hbar]; not a field."""

    is_field = False

    def __init__(self, l: int):
        GradedLaurent({}, l)  # validates l
        self.l = l

    @property
    def name(self):
        return f"L:{self.l}"

    def coerce(self, x):
        if isinstance(x, GradedLaurent):
            if x.l != self.l:
                raise ValueError("mixed gradings")
            return x
        if isinstance(x, str):
            return self.parse(x)
        return GradedLaurent.constant(x, self.l)

    def parse(self, text):
        return GradedLaurent.parse(str(text), self.l)

    def degree(self, x) -> int:
        return self.coerce(x).degree()


def parse_ring(text: str) -> Ring:
    """Read a ring descriptor: Q, Z, K, F_p or L:l."""
    s = text.strip()
    if s == "Q":
        return Rationals()
    if s == "Z":
        return Integers()
    if s == "K":
        return TwistedRing()
    m = re.fullmatch(r"F_(\d+)", s)
    if m:
        return PrimeField(int(m.group(1)))
    m = re.fullmatch(r"L:(\d+)", s)
    if m:
        return LaurentRing(int(m.group(1)))
    raise ValueError(f"unknown ring {text!r}")
