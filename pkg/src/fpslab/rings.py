"""Exact coefficient arithmetic: rationals, dense polynomials, ring tags.

All arithmetic in this package is exact.  Scalars are `fractions.Fraction`;
`Poly` is a dense univariate polynomial over Fraction and serves two roles:
polynomials in the formal index variable (tail coefficients of asymptotic
expansions) and polynomials in the expansion variable of binomial-type
families.  A `Series` carries one of the two ring tags below so that the
same truncated-series code runs over either coefficient ring.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Union

from .errors import NonInvertibleLead

RatLike = Union[int, str, Fraction]


def rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction, or "num/den" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(value: Fraction) -> str:
    """Lowest-terms string form: "num/den", or "num" when den == 1."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Poly:
    """Dense exact polynomial over Fraction; coefficient i is the degree-i term.

    Immutable.  Trailing zeros are stripped; the zero polynomial has an
    empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def const(cls, value: RatLike) -> "Poly":
        return cls((rat(value),))

    @classmethod
    def variable(cls) -> "Poly":
        return cls((Fraction(0), Fraction(1)))

    @classmethod
    def monomial(cls, degree: int, coeff: RatLike = 1) -> "Poly":
        return cls((Fraction(0),) * degree + (rat(coeff),))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coeff(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    @property
    def lead(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    @property
    def constant(self) -> Fraction:
        return self.coeff(0)

    def _coerce(self, other) -> "Poly | None":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return Poly(self.coeff(i) + o.coeff(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero or o.is_zero:
            return Poly()
        out = [Fraction(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("polynomial divided by zero scalar")
            inv = Fraction(1) / rat(other)
            return Poly(c * inv for c in self.coeffs)
        if isinstance(other, Poly):
            if other.degree == 0:
                return self / other.constant
            raise NonInvertibleLead("can only divide a Poly by a unit (nonzero constant)")
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("Poly powers must be nonnegative integers")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __call__(self, value):
        """Evaluate by Horner; a Fraction argument gives a Fraction,
        a Poly argument gives the composition."""
        if isinstance(value, (int, str)):
            value = rat(value)
        if isinstance(value, Fraction):
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * value + c
            return acc
        if isinstance(value, Poly):
            acc = Poly()
            for c in reversed(self.coeffs):
                acc = acc * value + c
            return acc
        raise TypeError(f"cannot evaluate Poly at {value!r}")

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i >= 1)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return not self.is_zero

    def format(self, var: str = "t") -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeff(i)
            if c == 0:
                continue
            if i == 0:
                term = rat_str(c)
            else:
                mag = "" if abs(c) == 1 else rat_str(abs(c)) + "*"
                term = f"{mag}{var}" + (f"^{i}" if i > 1 else "")
                if c < 0:
                    term = "-" + term
            if parts and not term.startswith("-"):
                parts.append("+ " + term)
            elif parts:
                parts.append("- " + term[1:])
            else:
                parts.append(term)
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self.format()})"


def falling_factorial(value, n: int):
    """value * (value-1) * ... * (value-n+1); works for Fraction or Poly."""
    acc = value * 0 + 1 if isinstance(value, Poly) else Fraction(1)
    for j in range(n):
        acc = acc * (value - j)
    return acc


def binomial(value, n: int):
    """Generalized binomial coefficient C(value, n) for Fraction or Poly value."""
    acc = falling_factorial(value, n)
    fact = 1
    for j in range(2, n + 1):
        fact *= j
    return acc / Fraction(fact)


class RationalRing:
    """Ring tag for Fraction coefficients."""

    name = "rational"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, value) -> Fraction:
        if isinstance(value, Poly):
            if value.degree <= 0:
                return value.constant
            raise TypeError("cannot lower a non-constant Poly to a rational")
        return rat(value)

    def is_zero(self, c) -> bool:
        return c == 0

    def is_unit(self, c) -> bool:
        return c != 0

    def invert(self, c) -> Fraction:
        if c == 0:
            raise NonInvertibleLead("zero is not a unit")
        return Fraction(1) / c

    def rational_multiple(self, c, q: Fraction):
        return c * q


class PolynomialRing:
    """Ring tag for Poly coefficients (exact polynomials in a formal symbol)."""

    name = "polynomial"
    zero = Poly()
    one = Poly.const(1)

    def coerce(self, value) -> Poly:
        if isinstance(value, Poly):
            return value
        return Poly.const(rat(value))

    def is_zero(self, c) -> bool:
        return c.is_zero

    def is_unit(self, c) -> bool:
        return c.degree == 0 and not c.is_zero

    def invert(self, c) -> Poly:
        if not self.is_unit(c):
            raise NonInvertibleLead("only nonzero constants are units of the polynomial ring")
        return Poly.const(Fraction(1) / c.constant)

    def rational_multiple(self, c, q: Fraction):
        return c * q


RAT = RationalRing()
POLY = PolynomialRing()
