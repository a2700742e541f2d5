"""Exact arithmetic: rationals, projective rationals, quadratic surds, HJ continued fractions.

Everything here is exact.  Floating point only appears in ``__float__``
methods used for display; no computation depends on it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Chain = tuple[int, ...]


class DomainError(ValueError):
    """An argument is outside the domain of an exact operation."""


# ---------------------------------------------------------------------------
# rational (de)serialization: "num/den" strings, "inf" for the point at infinity


def frac_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def frac_from_str(s: str) -> Fraction:
    s = s.strip()
    if s == "inf":
        raise DomainError("expected a finite rational, got inf")
    if "/" in s:
        num, den = s.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(s))


# ---------------------------------------------------------------------------
# projective extended rationals


@dataclass(frozen=True)
class ExtRational:
    """A rational number or the point at infinity, stored as p/q with q >= 0.

    Infinity is uniquely 1/0.  The pair is always in lowest terms.
    """

    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if q == 0:
            if p == 0:
                raise DomainError("0/0 is not a projective rational")
            p = 1
        else:
            g = math.gcd(p, q)
            if q < 0:
                g = -g
            p //= g
            q //= g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def of(cls, x) -> "ExtRational":
        if isinstance(x, ExtRational):
            return x
        f = Fraction(x)
        return cls(f.numerator, f.denominator)

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise DomainError("infinity has no Fraction value")
        return Fraction(self.p, self.q)

    def __str__(self) -> str:
        return "inf" if self.is_infinite else frac_to_str(self.as_fraction())


INF = ExtRational(1, 0)


# ---------------------------------------------------------------------------
# Hirzebruch-Jung continued fractions  [b1,...,br] = b1 - 1/(b2 - 1/(...))


def cf_eval(chain: Sequence[int]) -> ExtRational:
    """Projective value of the chain; the empty chain evaluates to infinity."""
    value, _ = cf_eval_details(chain)
    return value


def cf_eval_details(chain: Sequence[int]) -> tuple[ExtRational, bool]:
    """Evaluate right to left, also reporting whether any suffix hit zero.

    A zero suffix is exactly the classical "division by zero" failure; the
    projective value still makes sense (b - 1/0 = inf) and is returned.
    """
    p, q = 1, 0  # empty suffix = inf
    saw_zero = False
    for b in reversed(chain):
        if p == 0:
            saw_zero = True
        # b - q/p, projectively
        p, q = b * p - q, p
    return ExtRational(p, q), saw_zero


def cf_expand(x: Fraction) -> Chain:
    """The unique HJ chain with all entries >= 2 evaluating to x (requires x > 1)."""
    x = Fraction(x)
    if x <= 1:
        raise DomainError(f"cf_expand needs x > 1, got {x}")
    entries = []
    num, den = x.numerator, x.denominator
    while den > 0:
        b = -(-num // den)  # ceil
        entries.append(b)
        num, den = den, b * den - num
    return tuple(entries)


def wahl_chain(p: int, q: int) -> Chain:
    """HJ chain of the p^2/(pq-1) vertex; the smooth cases p = 1 give the empty chain."""
    if p == 1:
        return ()
    if not (0 < q < p):
        raise DomainError(f"need 0 < q < p, got (p, q) = ({p}, {q})")
    if math.gcd(p, q) != 1:
        raise DomainError(f"p and q must be coprime, got ({p}, {q})")
    return cf_expand(Fraction(p * p, p * q - 1))


def recognize_wahl(chain: Sequence[int]) -> Optional[tuple[int, int]]:
    """Invert wahl_chain: (p, q) if the chain's value is p^2/(pq-1), else None."""
    if not chain:
        return None
    value = cf_eval(chain)
    if value.is_infinite or value.p <= 1:
        return None
    P, Q = value.p, value.q
    p = math.isqrt(P)
    if p * p != P or (Q + 1) % p != 0:
        return None
    q = (Q + 1) // p
    if not (0 < q < p) or math.gcd(p, q) != 1:
        return None
    return (p, q)


# ---------------------------------------------------------------------------
# quadratic surds a + b*sqrt(d)


@dataclass(frozen=True)
class QuadraticSurd:
    """Exact number a + b*sqrt(d) with d a fixed nonnegative integer.

    Two surds are only comparable when their discriminants match; mixing
    discriminants is a bug in the caller, not a representable quantity.
    """

    a: Fraction
    b: Fraction
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise DomainError("discriminant must be nonnegative")
        object.__setattr__(self, "a", Fraction(self.a))
        object.__setattr__(self, "b", Fraction(self.b))

    @classmethod
    def rational(cls, x, d: int) -> "QuadraticSurd":
        return cls(Fraction(x), Fraction(0), d)

    def _check(self, other: "QuadraticSurd"):
        if self.d != other.d:
            raise DomainError(f"discriminant mismatch: {self.d} vs {other.d}")

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d), with no floating point."""
        a, b, d = self.a, self.b, self.d
        if d == 0 or b == 0:
            return (a > 0) - (a < 0)
        sa, sb = (a > 0) - (a < 0), (b > 0) - (b < 0)
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # opposite signs: compare a^2 with b^2 d
        lhs, rhs = a * a, b * b * d
        if lhs == rhs:
            return 0
        return sa if lhs > rhs else sb

    def __add__(self, other):
        other = self._coerce(other)
        self._check(other)
        return QuadraticSurd(self.a + other.a, self.b + other.b, self.d)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        return QuadraticSurd(-self.a, -self.b, self.d)

    def __mul__(self, other):
        other = self._coerce(other)
        self._check(other)
        return QuadraticSurd(
            self.a * other.a + self.b * other.b * self.d,
            self.a * other.b + self.b * other.a,
            self.d,
        )

    def inverse(self) -> "QuadraticSurd":
        norm = self.a * self.a - self.b * self.b * self.d
        if norm == 0:
            raise DomainError("surd is zero or a zero divisor")
        return QuadraticSurd(self.a / norm, -self.b / norm, self.d)

    def _coerce(self, x) -> "QuadraticSurd":
        if isinstance(x, QuadraticSurd):
            return x
        return QuadraticSurd.rational(x, self.d)

    def is_rational(self) -> bool:
        return self.b == 0 or self.d == 0

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * math.sqrt(self.d)

    def floor(self) -> int:
        """Exact floor via integer square roots."""
        a, b, d = self.a, self.b, self.d
        if b == 0 or d == 0:
            return a.numerator // a.denominator
        # b*sqrt(d) = sign(b) * sqrt(b^2 d); reduce to floor of (p + sqrt(n))/q
        n = b * b * Fraction(d)
        q = a.denominator * n.denominator
        # value = (a*q + s*sqrt(n*q^2)) / q with s = sign(b)
        m = n * q * q
        assert m.denominator == 1
        r = math.isqrt(m.numerator)
        p = a * q
        assert p.denominator == 1
        p = p.numerator
        if b > 0:
            return (p + r) // q
        # sqrt part negative: use -ceil(sqrt) adjustments
        exact = r * r == m.numerator
        return (p - r - (0 if exact else 1)) // q

    def to_json(self) -> dict:
        return {"a": frac_to_str(self.a), "b": frac_to_str(self.b), "d": self.d}


def surd_cmp(x: QuadraticSurd, y: QuadraticSurd) -> int:
    """-1, 0 or 1 according to the exact real ordering (equal discriminants only)."""
    x._check(y)
    return (x - y).sign()


def eigenvalues(delta: int) -> tuple[QuadraticSurd, QuadraticSurd]:
    """(lambda-, lambda+) of [[0,1],[-1,delta]], discriminant delta^2 - 4."""
    if delta < 2:
        raise DomainError(f"need delta >= 2, got {delta}")
    d = delta * delta - 4
    half = Fraction(delta, 2)
    return (
        QuadraticSurd(half, Fraction(-1, 2), d),
        QuadraticSurd(half, Fraction(1, 2), d),
    )


def surd_convergent_below(x: QuadraticSurd, depth: int = 20) -> Fraction:
    """A continued-fraction convergent of x lying strictly below it.

    Requires x > 0 and irrational-or-rational alike; for rational x, returns
    a value strictly below x.
    """
    if x.sign() <= 0:
        raise DomainError("need a positive value")
    if x.is_rational():
        return x.a - Fraction(1, 10**depth)
    # ordinary continued fraction of x; even-indexed convergents lie below
    coeffs = []
    cur = x
    for _ in range(depth):
        a0 = cur.floor()
        coeffs.append(a0)
        frac = cur - QuadraticSurd.rational(a0, cur.d)
        if frac.sign() == 0:
            break
        cur = frac.inverse()
    # fold into convergents, keep the last even-indexed one
    h0, h1 = 1, coeffs[0]
    k0, k1 = 0, 1
    best = Fraction(h1, k1) if len(coeffs) % 2 else None
    candidates = [Fraction(h1, k1)]
    for a in coeffs[1:]:
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        candidates.append(Fraction(h1, k1))
    below = [c for c in candidates if surd_cmp(QuadraticSurd.rational(c, x.d), x) < 0]
    assert below, "no convergent below the target"
    return below[-1]
