"""Truncated formal power series over an exact ring, with the core transforms.

A `Series` stores the coefficients of x^shift .. x^order (inclusive) over
either the rational ring or the polynomial ring from `rings`.  Negative
shifts (finite Laurent tails) are allowed; exponents above `order` are
unknown, exponents below `shift` are exactly zero.

Order bookkeeping
-----------------
Every operation computes the largest provably-correct output order from its
operands' orders instead of assuming a global truncation depth:

* add/sub:        min(Na, Nb)
* mul:            min(Na + vb, Nb + va)
* div a/b:        (va - vb) + min(Na - va, Nb - vb)
* compose(f, g):  sound multiply/add bookkeeping through the Horner loop,
                  clamped at (Nf + 1)*vg - 1 (the first exponent touched by
                  f's unknown coefficients); for vf = vg = 1 this reduces to
                  min(Nf, Ng)
* derivative:     N - 1        integral: N + 1       x d/dx: N (diagonal)
* exp/log/pow:    N            reversion: N
* f/f', its preimage, and the reverted conjugate all preserve N (the lost
  derivative order is recovered because f' has valuation 0 while f has
  valuation 1; the div rule above yields min(N, (N-1)+1) = N).

In the formulas above a series that is identically zero up to its order
participates with effective valuation N + 1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

from . import errors
from .rings import POLY, RAT, Poly, rat

Scalar = Union[int, str, Fraction, Poly]


class Series:
    """Immutable truncated series; `coeffs[i]` is the coefficient of x^(shift+i)."""

    __slots__ = ("ring", "shift", "coeffs", "order")

    def __init__(self, ring, shift: int, coeffs: Iterable, order: int):
        cs = [ring.coerce(c) for c in coeffs]
        first = 0
        while first < len(cs) and ring.is_zero(cs[first]):
            first += 1
        cs = cs[first:]
        shift += first
        if not cs:
            shift = order + 1
        elif shift + len(cs) - 1 != order:
            raise ValueError("coefficient count does not match order")
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "shift", shift)
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    # ---------------------------------------------------------------- builders

    @classmethod
    def from_terms(cls, terms: Mapping[int, Scalar], order: int, ring=RAT) -> "Series":
        """Series with given {exponent: coefficient}, zero elsewhere up to order."""
        if terms:
            if any(e > order for e in terms):
                raise ValueError("term exponent beyond requested order")
            lo = min(terms)
        else:
            lo = order + 1
        coeffs = [terms.get(e, 0) for e in range(lo, order + 1)]
        return cls(ring, lo, coeffs, order)

    @classmethod
    def zero(cls, order: int, ring=RAT) -> "Series":
        return cls(ring, order + 1, (), order)

    @classmethod
    def one(cls, order: int, ring=RAT) -> "Series":
        return cls.from_terms({0: 1}, order, ring)

    @classmethod
    def x(cls, order: int, ring=RAT) -> "Series":
        return cls.from_terms({1: 1}, order, ring)

    # ---------------------------------------------------------------- accessors

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def valuation(self) -> int | None:
        """Exponent of the first nonzero coefficient; None when zero to order."""
        return self.shift if self.coeffs else None

    @property
    def _bound_valuation(self) -> int:
        return self.shift if self.coeffs else self.order + 1

    def coeff(self, exponent: int):
        """Coefficient of x^exponent; raises OrderExhausted beyond the order."""
        if exponent > self.order:
            raise errors.OrderExhausted(
                f"coefficient of x^{exponent} unknown (order {self.order})")
        i = exponent - self.shift
        if i < 0:
            return self.ring.zero
        return self.coeffs[i]

    def __getitem__(self, exponent: int):
        return self.coeff(exponent)

    def coeff_list(self, lo: int, hi: int) -> list:
        return [self.coeff(e) for e in range(lo, hi + 1)]

    @property
    def is_normalized(self) -> bool:
        """True when the series lies in x + x^2 * ring[[x]]."""
        return (self.valuation == 1 and self.coeffs[0] == self.ring.one
                and self.order >= 1)

    def require_normalized(self, what: str = "operation") -> None:
        if not self.is_normalized:
            raise errors.NotNormalized(
                f"{what} requires a series of the form x + x^2*ring[[x]]")

    def truncated(self, order: int) -> "Series":
        if order > self.order:
            raise errors.OrderExhausted(
                f"cannot extend a series of order {self.order} to {order}")
        keep = [c for i, c in enumerate(self.coeffs) if self.shift + i <= order]
        return Series(self.ring, self.shift, keep, order)

    def with_coeff(self, exponent: int, value: Scalar) -> "Series":
        """Copy with one coefficient replaced (fault-injection seam for tests)."""
        if exponent > self.order:
            raise errors.OrderExhausted("cannot set a coefficient beyond the order")
        terms = {self.shift + i: c for i, c in enumerate(self.coeffs)}
        terms[exponent] = self.ring.coerce(value)
        lo = min(terms)
        coeffs = [terms.get(e, self.ring.zero) for e in range(lo, self.order + 1)]
        return Series(self.ring, lo, coeffs, self.order)

    def lifted(self, ring) -> "Series":
        """Re-coerce coefficients into another ring (Fraction -> Poly constants)."""
        return Series(ring, self.shift, [ring.coerce(c) for c in self.coeffs], self.order)

    def map_coeffs(self, fn) -> "Series":
        """Apply fn(exponent, value) -> value to every stored coefficient."""
        return Series(self.ring,
                      self.shift,
                      [fn(self.shift + i, c) for i, c in enumerate(self.coeffs)],
                      self.order)

    # ---------------------------------------------------------------- arithmetic

    def _check_ring(self, other: "Series") -> None:
        if self.ring is not other.ring:
            raise TypeError("series live over different coefficient rings")

    def _coerce_scalar(self, value):
        if isinstance(value, Series):
            return None
        try:
            return self.ring.coerce(value)
        except (TypeError, ValueError):
            return None

    def __add__(self, other):
        if isinstance(other, Series):
            self._check_ring(other)
            order = min(self.order, other.order)
            lo = min(self._bound_valuation, other._bound_valuation, order + 1)
            coeffs = [self.coeff(e) + other.coeff(e) for e in range(lo, order + 1)]
            return Series(self.ring, lo, coeffs, order)
        c = self._coerce_scalar(other)
        if c is None:
            return NotImplemented
        if self.order < 0:
            raise errors.OrderExhausted("series of negative order cannot absorb a constant")
        lo = min(self._bound_valuation, 0)
        coeffs = [self.coeff(e) + (c if e == 0 else self.ring.zero)
                  for e in range(lo, self.order + 1)]
        return Series(self.ring, lo, coeffs, self.order)

    __radd__ = __add__

    def __neg__(self):
        return Series(self.ring, self.shift, [-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        if isinstance(other, Series):
            return self + (-other)
        c = self._coerce_scalar(other)
        if c is None:
            return NotImplemented
        return self + (-c)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Series):
            self._check_ring(other)
            order = min(self.order + other._bound_valuation,
                        other.order + self._bound_valuation)
            if self.is_zero or other.is_zero:
                return Series.zero(order, self.ring)
            lo = self.shift + other.shift
            out = [self.ring.zero] * (order - lo + 1)
            for i, a in enumerate(self.coeffs):
                if self.ring.is_zero(a):
                    continue
                base = self.shift + i + other.shift
                for j, b in enumerate(other.coeffs):
                    e = base + j
                    if e > order:
                        break
                    if not self.ring.is_zero(b):
                        out[e - lo] = out[e - lo] + a * b
            return Series(self.ring, lo, out, order)
        c = self._coerce_scalar(other)
        if c is None:
            return NotImplemented
        if self.ring.is_zero(c):
            return Series.zero(self.order + self._bound_valuation, self.ring)
        return Series(self.ring, self.shift, [a * c for a in self.coeffs], self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Series):
            return divide(self, other)
        c = self._coerce_scalar(other)
        if c is None:
            return NotImplemented
        inv = self.ring.invert(c)
        return self * inv

    def __rtruediv__(self, other):
        c = self._coerce_scalar(other)
        if c is None:
            return NotImplemented
        num = Series.from_terms({0: c}, self.order + abs(self.shift) + 2, self.ring)
        return divide(num, self)

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("use power() for non-integer exponents")
        if n < 0:
            return 1 / (self ** (-n))
        if n == 0:
            return Series.one(self.order, self.ring)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # ---------------------------------------------------------------- calculus

    def derivative(self) -> "Series":
        coeffs = [(self.shift + i) * c for i, c in enumerate(self.coeffs)]
        return Series(self.ring, self.shift - 1, coeffs, self.order - 1)

    def integral(self) -> "Series":
        """Definite integral from 0; rejects an x^-1 term."""
        out = []
        for i, c in enumerate(self.coeffs):
            e = self.shift + i
            if e == -1:
                if not self.ring.is_zero(c):
                    raise errors.NonIntegrableTerm("cannot integrate an x^-1 term")
                out.append(self.ring.zero)
            else:
                out.append(self.ring.rational_multiple(c, Fraction(1, e + 1)))
        return Series(self.ring, self.shift + 1, out, self.order + 1)

    def x_d_dx(self, times: int = 1) -> "Series":
        """(x d/dx)^times, the diagonal map x^e -> e^times * x^e; keeps the order."""
        coeffs = [((self.shift + i) ** times) * c for i, c in enumerate(self.coeffs)]
        return Series(self.ring, self.shift, coeffs, self.order)

    # ---------------------------------------------------------------- comparison

    def same_to(self, other: "Series", order: int | None = None) -> bool:
        """Coefficientwise equality up to min known order (or the given order)."""
        return self.first_mismatch(other, order, strict=True) is None

    def first_mismatch(self, other: "Series", order: int | None = None,
                       strict: bool = False) -> int | None:
        """Smallest exponent where the two series differ, or None."""
        top = min(self.order, other.order)
        if order is not None:
            if strict and order > top:
                raise errors.OrderExhausted(
                    f"comparison to order {order} exceeds known order {top}")
            top = min(order, top)
        lo = min(self._bound_valuation, other._bound_valuation, top)
        for e in range(lo, top + 1):
            if self.coeff(e) != other.coeff(e):
                return e
        return None

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return (self.ring is other.ring and self.shift == other.shift
                and self.coeffs == other.coeffs and self.order == other.order)

    def __hash__(self):
        return hash((id(self.ring), self.shift, self.coeffs, self.order))

    def format(self, var: str = "x") -> str:
        if self.is_zero:
            return f"O({var}^{self.order + 1})"
        parts = []
        for i, c in enumerate(self.coeffs):
            if self.ring.is_zero(c):
                continue
            e = self.shift + i
            if isinstance(c, Poly):
                body, neg = f"({c.format('s')})", False
            else:
                neg = c < 0
                body = "" if abs(c) == 1 and e != 0 else str(abs(c))
            if e == 0:
                term = body or "1"
            else:
                xs = var if e == 1 else f"{var}^{e}"
                term = f"{body}*{xs}" if body else xs
            if parts:
                parts.append(("- " if neg else "+ ") + term)
            else:
                parts.append(("-" if neg else "") + term)
        parts.append(f"+ O({var}^{self.order + 1})")
        return " ".join(parts)

    def __repr__(self):
        return f"Series({self.format()})"


# -------------------------------------------------------------------- division


def divide(a: Series, b: Series) -> Series:
    """Exact long division a/b, Laurent-shifted when valuations differ."""
    a._check_ring(b)
    ring = a.ring
    if b.is_zero:
        raise errors.DivByZero("division by a series that is zero to its order")
    if not ring.is_unit(b.coeffs[0]):
        raise errors.NonInvertibleLead(
            "divisor's leading coefficient is not a unit of the ring")
    if a.is_zero:
        return Series.zero(a.order - b.shift, ring)
    lead_inv = ring.invert(b.coeffs[0])
    rel_order = min(a.order - a.shift, b.order - b.shift)
    av = list(a.coeffs[:rel_order + 1]) + [ring.zero] * (rel_order + 1 - len(a.coeffs))
    bv = list(b.coeffs[:rel_order + 1]) + [ring.zero] * (rel_order + 1 - len(b.coeffs))
    out = []
    for k in range(rel_order + 1):
        acc = av[k]
        for j in range(k):
            if not ring.is_zero(out[j]) and not ring.is_zero(bv[k - j]):
                acc = acc - out[j] * bv[k - j]
        out.append(acc * lead_inv)
    lo = a.shift - b.shift
    return Series(ring, lo, out, lo + rel_order)


# -------------------------------------------------------------------- composition


def compose(outer: Series, inner: Series) -> Series:
    """outer(inner); inner must have valuation >= 1 (or be zero to its order)."""
    outer._check_ring(inner)
    ring = outer.ring
    if inner.valuation is not None and inner.valuation < 1:
        raise errors.InnerConstantTerm("inner series has a nonzero constant term")
    if outer.shift < 0 and not outer.is_zero:
        raise errors.InnerConstantTerm("cannot compose a Laurent series")
    vin = inner._bound_valuation
    clamp = (outer.order + 1) * vin - 1
    if outer.is_zero:
        return Series.zero(clamp, ring)
    # Horner with an exact-zero accumulator; multiply/add bookkeeping is sound,
    # the clamp accounts for outer's own truncation.
    acc = Series.zero(clamp + inner.order + 2, ring)
    for c in reversed(outer.coeffs):
        acc = acc * inner + c
    if outer.shift:
        acc = acc * (inner ** outer.shift)
    return acc.truncated(clamp) if acc.order > clamp else acc


# ------------------------------------------------------------ exp / log / pow


def exponential(f: Series) -> Series:
    """exp(f) for valuation >= 1, via E' = f'E; preserves the order."""
    ring = f.ring
    if f._bound_valuation < 1:
        raise errors.BadConstantTerm("exp needs a series of valuation >= 1")
    n = f.order
    fc = [f.coeff(e) for e in range(0, n + 1)]
    out = [ring.one] + [ring.zero] * n
    for k in range(1, n + 1):
        acc = ring.zero
        for j in range(1, k + 1):
            if not ring.is_zero(fc[j]) and not ring.is_zero(out[k - j]):
                acc = acc + ring.rational_multiple(fc[j] * out[k - j], Fraction(j, k))
        out[k] = acc
    return Series(ring, 0, out, n)


def logarithm(u: Series) -> Series:
    """log(u) for constant term 1: integral of u'/u; preserves the order."""
    ring = u.ring
    if u.valuation != 0 or u.coeffs[0] != ring.one:
        raise errors.BadConstantTerm("log needs constant term exactly 1")
    return divide(u.derivative(), u).integral()


def power(u: Series, exponent) -> Series:
    """u^exponent = exp(exponent * log u); exponent is rational or a Poly.

    A Poly exponent lifts a rational-coefficient series into the polynomial
    ring, so (x/f)^s acquires polynomial coefficients in the formal index.
    """
    if isinstance(exponent, int):
        return u ** exponent
    if isinstance(exponent, Poly) and u.ring is RAT:
        u = u.lifted(POLY)
    return exponential(logarithm(u) * exponent)


# ------------------------------------------------------------------ reversion


def reversion(f: Series) -> Series:
    """Compositional inverse g with f(g(x)) = x, by coefficientwise solve.

    Requires f in x + x^2*ring[[x]]; the round trip is re-checked before
    returning.
    """
    ring = f.ring
    if f.valuation != 1 or f.coeffs[0] != ring.one:
        raise errors.NotInvertible(
            "compositional inverse needs valuation 1 and leading coefficient 1")
    n = f.order
    g = [ring.zero, ring.one]
    for k in range(2, n + 1):
        partial = Series(ring, 1, g[1:] + [ring.zero], k)
        residue = compose(f.truncated(k), partial).coeff(k)
        g.append(-residue)
    out = Series(ring, 1, g[1:], n)
    if not compose(f, out).same_to(Series.x(n, ring)):
        raise AssertionError("reversion failed its internal round-trip check")
    return out


# ------------------------------------------------------- the core transforms


def inverse_dlog(f: Series) -> Series:
    """f / f', the inverse logarithmic derivative; keeps x + x^2*ring[[x]].

    The order is preserved: f' is only known to order N-1, but it has
    valuation 0 while f has valuation 1, so the division rule yields N.
    """
    f.require_normalized("inverse logarithmic derivative")
    return divide(f, f.derivative())


def inverse_dlog_preimage(f: Series) -> Series:
    """The g with g/g' = f, via g = x * exp(integral of (1/f - 1/x))."""
    f.require_normalized("inverse-dlog preimage")
    inv_f = 1 / f                                # valuation -1, order N - 2
    inv_x = Series.from_terms({-1: 1}, inv_f.order, f.ring)
    integrand = inv_f - inv_x                    # the x^-1 terms cancel exactly
    return Series.x(f.order, f.ring) * exponential(integrand.integral())


def reverted_inverse_dlog(f: Series) -> Series:
    """reversion . inverse_dlog . reversion — the conjugated transform."""
    return reversion(inverse_dlog(reversion(f)))


def power_conjugate(f: Series, n: int) -> Series:
    """Conjugation by x^n:  f -> x * (f(x^n)/x^n)^(1/n)."""
    f.require_normalized("power conjugation")
    if n < 1:
        raise ValueError("conjugation exponent must be a positive integer")
    fx_terms = {n * (f.shift + i): c for i, c in enumerate(f.coeffs)}
    fx = Series.from_terms(fx_terms, n * f.order + n - 1, f.ring)
    unit = Series(f.ring, fx.shift - n, list(fx.coeffs), fx.order - n)
    root = power(unit, Fraction(1, n))
    return Series.x(root.order + 1, f.ring) * root


# ------------------------------------------------------------- named series


def exp_minus_one(order: int, scale: Scalar = 1) -> Series:
    """exp(scale * x) - 1."""
    return exponential(Series.from_terms({1: rat(scale)}, order)) - 1


def log_one_plus(order: int) -> Series:
    """log(1 + x)."""
    return logarithm(Series.from_terms({0: 1, 1: 1}, order))


def forward_delta(p: Scalar, order: int) -> Series:
    """(exp(p*x) - 1)/p, the scaled forward-difference symbol; x at p = 0."""
    p = rat(p)
    if p == 0:
        return Series.x(order)
    return exp_minus_one(order, p) / p


def damped_delta(p: Scalar, order: int) -> Series:
    """forward_delta(p) * exp(-x)."""
    return forward_delta(p, order) * exponential(Series.from_terms({1: -1}, order))


def damped_exponential(order: int) -> Series:
    """x * exp(-x)."""
    return Series.x(order) * exponential(Series.from_terms({1: -1}, order))
