"""Formal asymptotic calculus in a large parameter.

An `AlphaExpr` represents

    sum_k plain[k](s) * a^(base_a + base_b*s - k)
  + sum_k logs[k](s)  * a^(base_a + base_b*s - k) * ln(a)

with polynomial-in-the-index tail coefficients.  Exponents above the base
are exactly zero; exponents below base - (depth-1) are unknown.  The
derivation D = d/da acts by the rule

    D a^q ln(a) = a^(q-1) + q a^(q-1) ln(a)

and the log degree is capped at 1: any operation that would create
ln(a)^2 raises instead of silently extending the model.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import errors
from .rings import Poly, rat
from .series import Series


def _as_poly(v) -> Poly:
    return v if isinstance(v, Poly) else Poly.const(rat(v))


@dataclass(frozen=True)
class AlphaExpr:
    base_a: int
    base_b: int
    plain: tuple[Poly, ...]
    logs: tuple[Poly, ...]

    def __post_init__(self):
        if len(self.plain) != len(self.logs):
            raise ValueError("plain and log tails must have equal depth")
        if not self.plain:
            raise ValueError("an AlphaExpr needs at least one known level")

    # ----------------------------------------------------------- constructors

    @classmethod
    def build(cls, base_a: int, base_b: int, plain=(), logs=(),
              depth: int | None = None) -> "AlphaExpr":
        plain = [_as_poly(c) for c in plain]
        logs = [_as_poly(c) for c in logs]
        depth = depth if depth is not None else max(len(plain), len(logs), 1)
        plain += [Poly()] * (depth - len(plain))
        logs += [Poly()] * (depth - len(logs))
        return cls(base_a, base_b, tuple(plain[:depth]), tuple(logs[:depth]))

    @classmethod
    def log_element(cls, depth: int) -> "AlphaExpr":
        """The bare formal logarithm ln(a), exact to any depth."""
        return cls.build(0, 0, (), (Poly.const(1),), depth=depth)

    @classmethod
    def monomial(cls, a: int, b: int, depth: int, coeff=1) -> "AlphaExpr":
        """coeff * alpha^(a + b*s), exact (deeper levels are true zeros)."""
        return cls.build(a, b, (coeff,), (), depth=depth)

    @classmethod
    def from_alpha_poly(cls, poly: Poly, depth: int) -> "AlphaExpr":
        """A polynomial in alpha as an exact expression (zeros below degree 0)."""
        if poly.is_zero:
            return cls.build(0, 0, (0,), (), depth=depth)
        d = poly.degree
        plain = [Poly.const(poly.coeff(d - k)) for k in range(d + 1)]
        return cls.build(d, 0, plain, (), depth=max(depth, d + 1))

    # -------------------------------------------------------------- accessors

    @property
    def depth(self) -> int:
        return len(self.plain)

    @property
    def floor_a(self) -> int:
        """Lowest exponent offset with a known coefficient."""
        return self.base_a - self.depth + 1

    @property
    def has_log(self) -> bool:
        return any(not c.is_zero for c in self.logs)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.plain) and not self.has_log

    def plain_at(self, a_exp: int) -> Poly:
        return self._at(self.plain, a_exp)

    def log_at(self, a_exp: int) -> Poly:
        return self._at(self.logs, a_exp)

    def _at(self, tail, a_exp: int) -> Poly:
        if a_exp > self.base_a:
            return Poly()
        k = self.base_a - a_exp
        if k >= self.depth:
            raise errors.OrderExhausted(
                f"coefficient at offset {a_exp} below known depth")
        return tail[k]

    def exponent_label(self, a_exp: int) -> str:
        if self.base_b == 0:
            return f"a^{a_exp}"
        b = self.base_b
        bs = ("s" if b == 1 else "-s" if b == -1 else f"{b}s")
        if a_exp == 0:
            return f"a^({bs})"
        return f"a^({a_exp}{'+' if b > 0 else '-'}{bs.lstrip('-')})"

    # ------------------------------------------------------------- arithmetic

    def _compatible(self, other: "AlphaExpr") -> None:
        if self.is_zero or other.is_zero:
            return
        if self.base_b != other.base_b:
            raise ValueError(
                f"incompatible exponent families: s-slopes {self.base_b} "
                f"and {other.base_b}")

    def __add__(self, other):
        if not isinstance(other, AlphaExpr):
            return NotImplemented
        self._compatible(other)
        b = self.base_b if not self.is_zero else other.base_b
        top = max(self.base_a, other.base_a)
        floor = max(self.floor_a, other.floor_a)
        if floor > top:
            raise errors.OrderExhausted("operands share no known levels")
        plain, logs = [], []
        for a_exp in range(top, floor - 1, -1):
            plain.append(self.plain_at(a_exp) + other.plain_at(a_exp))
            logs.append(self.log_at(a_exp) + other.log_at(a_exp))
        return AlphaExpr(top, b, tuple(plain), tuple(logs))

    def __neg__(self):
        return AlphaExpr(self.base_a, self.base_b,
                         tuple(-c for c in self.plain),
                         tuple(-c for c in self.logs))

    def __sub__(self, other):
        if not isinstance(other, AlphaExpr):
            return NotImplemented
        return self + (-other)

    def scaled(self, factor) -> "AlphaExpr":
        f = _as_poly(factor)
        return AlphaExpr(self.base_a, self.base_b,
                         tuple(c * f for c in self.plain),
                         tuple(c * f for c in self.logs))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Poly)):
            return self.scaled(other)
        if not isinstance(other, AlphaExpr):
            return NotImplemented
        if self.has_log and other.has_log:
            raise errors.LogDegreeOverflow(
                "product would create a square of the formal logarithm")
        depth = min(self.depth, other.depth)
        base_a = self.base_a + other.base_a
        base_b = self.base_b + other.base_b
        plain = [Poly()] * depth
        logs = [Poly()] * depth
        for i in range(min(self.depth, depth)):
            sp, sl = self.plain[i], self.logs[i]
            if sp.is_zero and sl.is_zero:
                continue
            for j in range(min(other.depth, depth - i)):
                op, ol = other.plain[j], other.logs[j]
                k = i + j
                if not sp.is_zero and not op.is_zero:
                    plain[k] = plain[k] + sp * op
                if not sp.is_zero and not ol.is_zero:
                    logs[k] = logs[k] + sp * ol
                if not sl.is_zero and not op.is_zero:
                    logs[k] = logs[k] + sl * op
        return AlphaExpr(base_a, base_b, tuple(plain), tuple(logs))

    __rmul__ = scaled

    def alpha_shift(self, k: int) -> "AlphaExpr":
        """Multiply by alpha^k."""
        return AlphaExpr(self.base_a + k, self.base_b, self.plain, self.logs)

    def inverted(self) -> "AlphaExpr":
        """Reciprocal of a log-free expression with unit leading coefficient."""
        if self.has_log:
            raise errors.BadLead("cannot invert an expression with a log part")
        if self.plain[0] != Poly.const(1):
            raise errors.BadLead("inversion needs leading tail coefficient 1")
        d = self.depth
        inv = [Poly.const(1)] + [Poly()] * (d - 1)
        for k in range(1, d):
            acc = Poly()
            for j in range(k):
                if not inv[j].is_zero and not self.plain[k - j].is_zero:
                    acc = acc + inv[j] * self.plain[k - j]
            inv[k] = -acc
        return AlphaExpr(-self.base_a, -self.base_b, tuple(inv),
                         tuple(Poly() for _ in range(d)))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scaled(Fraction(1) / rat(other))
        if isinstance(other, AlphaExpr):
            return self * other.inverted()
        return NotImplemented

    # ---------------------------------------------------------------- calculus

    def log(self) -> "AlphaExpr":
        """Formal logarithm: (a + b s) ln(alpha) + Mercator series of the tail."""
        if self.has_log:
            raise errors.BadLead("logarithm of an expression with a log part")
        if self.plain[0] != Poly.const(1):
            raise errors.BadLead("logarithm needs leading tail coefficient 1")
        d = self.depth
        # log(1 + u) via L' bookkeeping on tail indices: k*L[k] = k*u[k] -
        # sum_{j<k} j*L[j]*u[k-j]
        lcoef = [Poly()] * d
        for k in range(1, d):
            acc = self.plain[k] * k
            for j in range(1, k):
                if not lcoef[j].is_zero and not self.plain[k - j].is_zero:
                    acc = acc - lcoef[j] * self.plain[k - j] * j
            lcoef[k] = acc / Fraction(k)
        logs = [Poly((self.base_a, self.base_b))] + [Poly()] * (d - 1)
        return AlphaExpr(0, 0, tuple(lcoef), tuple(logs))

    def d_alpha(self) -> "AlphaExpr":
        """The derivation D = d/dalpha, using D a^q ln a = a^(q-1) + q a^(q-1) ln a."""
        plain, logs = [], []
        for k in range(self.depth):
            q = Poly((self.base_a - k, self.base_b))
            plain.append(self.plain[k] * q + self.logs[k])
            logs.append(self.logs[k] * q)
        return AlphaExpr(self.base_a - 1, self.base_b, tuple(plain), tuple(logs))

    def apply_operator(self, g: Series) -> "AlphaExpr":
        """g(D) = sum_k g_k D^k applied termwise.

        A term g_k D^k needs the input only at offsets >= e + k when
        producing offset e, so terms beyond the input depth still
        contribute near their own (lower) top; the result is valid down to

            max(base - g.order,  base - depth + 1 - valuation(g)).
        """
        if g.order < 0:
            raise errors.OrderExhausted("operator series has no known coefficients")
        if not g.is_zero and g.valuation < 0:
            raise ValueError("operator series must have valuation >= 0")
        if g.is_zero:
            return AlphaExpr.build(self.base_a, self.base_b, (0,), (),
                                   depth=g.order + 1)
        kmax = min(g.order, self.depth - 1 + g.valuation)
        term = self
        acc = None
        for k in range(0, kmax + 1):
            c = g.coeff(k)
            if not g.ring.is_zero(c):
                piece = term.scaled(c)
                acc = piece if acc is None else acc + piece
            if k < kmax:
                term = term.d_alpha()
        if acc is None:
            return AlphaExpr.build(self.base_a, self.base_b, (0,), (),
                                   depth=min(self.depth, g.order + 1))
        floor = max(acc.floor_a, self.base_a - g.order)
        keep = acc.base_a - floor + 1
        if keep <= 0:
            raise errors.OrderExhausted("operator application exhausted the depth")
        return AlphaExpr(acc.base_a, acc.base_b, acc.plain[:keep], acc.logs[:keep])

    def d_index(self) -> "AlphaExpr":
        """d/ds: differentiates tails and sends a^(bs) to b a^(bs) ln(a)."""
        if self.base_b != 0 and self.has_log:
            raise errors.LogDegreeOverflow(
                "d/ds of an s-dependent exponent with a log part")
        plain, logs = [], []
        for k in range(self.depth):
            plain.append(self.plain[k].derivative())
            logs.append(self.logs[k].derivative() + self.plain[k] * self.base_b)
        return AlphaExpr(self.base_a, self.base_b, tuple(plain), tuple(logs))

    def substitute_index(self, sub: Poly | Fraction | int) -> "AlphaExpr":
        """Replace the index s by an affine polynomial (or a constant)."""
        sub = _as_poly(sub)
        if sub.degree > 1:
            raise ValueError("index substitution must be affine")
        c0, c1 = sub.coeff(0), sub.coeff(1)
        a_shift = self.base_b * c0
        new_b = self.base_b * c1
        if a_shift.denominator != 1 or new_b.denominator != 1:
            raise ValueError("substituted exponent leaves the integer lattice")
        plain = tuple(c(sub) for c in self.plain)
        logs = tuple(c(sub) for c in self.logs)
        return AlphaExpr(self.base_a + int(a_shift), int(new_b), plain, logs)

    def at_index(self, value) -> "AlphaExpr":
        return self.substitute_index(Poly.const(rat(value)))

    # -------------------------------------------------------------- comparison

    def with_plain_coeff(self, a_exp: int, value) -> "AlphaExpr":
        """Copy with one plain tail coefficient replaced (fault seam)."""
        k = self.base_a - a_exp
        if not (0 <= k < self.depth):
            raise errors.OrderExhausted("offset outside the known levels")
        plain = list(self.plain)
        plain[k] = _as_poly(value)
        return AlphaExpr(self.base_a, self.base_b, tuple(plain), self.logs)

    def first_mismatch(self, other: "AlphaExpr"):
        """(offset, kind, got, want) of the first differing level, or None."""
        self._compatible(other)
        top = max(self.base_a, other.base_a)
        floor = max(self.floor_a, other.floor_a)
        if floor > top:
            raise errors.OrderExhausted("expressions share no known levels")
        for a_exp in range(top, floor - 1, -1):
            got, want = self.plain_at(a_exp), other.plain_at(a_exp)
            if got != want:
                return (a_exp, "plain", got, want)
            got, want = self.log_at(a_exp), other.log_at(a_exp)
            if got != want:
                return (a_exp, "log", got, want)
        return None

    def same_to(self, other: "AlphaExpr", levels: int | None = None) -> bool:
        if levels is not None:
            top = max(self.base_a, other.base_a)
            floor = max(self.floor_a, other.floor_a)
            if top - floor + 1 < levels:
                raise errors.OrderExhausted(
                    f"only {top - floor + 1} common levels, need {levels}")
        return self.first_mismatch(other) is None

    def known_levels_with(self, other: "AlphaExpr") -> int:
        top = max(self.base_a, other.base_a)
        floor = max(self.floor_a, other.floor_a)
        return top - floor + 1

    def format(self) -> str:
        pieces = []
        for k in range(self.depth):
            label = self.exponent_label(self.base_a - k)
            if not self.plain[k].is_zero:
                pieces.append(f"({self.plain[k].format('s')})*{label}")
            if not self.logs[k].is_zero:
                pieces.append(f"({self.logs[k].format('s')})*{label}*ln(a)")
        body = " + ".join(pieces) if pieces else "0"
        return f"{body} + O({self.exponent_label(self.floor_a - 1)})"

    def __repr__(self):
        return f"AlphaExpr({self.format()})"


# ------------------------------------------------------------- adapted logs


def adapted_log(g: Series, depth: int) -> AlphaExpr:
    """The unique log-like element with g(D) * it = alpha^(-1):

        ln(a) + sum_{n>=1} (-1)^(n-1) A_n / n * a^(-n),   x/g = sum A_n x^n/n!

    The defining condition is re-checked before returning.
    """
    from .series import divide

    g.require_normalized("adapted logarithm")
    if g.order < depth:
        raise errors.OrderExhausted(
            f"need g to order {depth} for depth {depth}")
    ratio = divide(Series.x(g.order + 2, g.ring), g)
    plain = [Poly()]
    fact = 1
    for n in range(1, depth):
        fact *= n
        a_n = ratio.coeff(n) * fact
        plain.append(Poly.const(Fraction((-1) ** (n - 1), n) * a_n))
    out = AlphaExpr.build(0, 0, plain, (Poly.const(1),), depth=depth)
    target = AlphaExpr.monomial(-1, 0, depth, 1)
    if out.apply_operator(g).first_mismatch(target) is not None:
        raise AssertionError("adapted log failed its defining condition")
    return out
