"""Initial antiflip, its inverse flip, bounded-subpolygon bookkeeping, cohomology paths."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

from .exactmath import DomainError, QuadraticSurd, frac_to_str
from .mori import Budget, budget, is_infinitely_right_mutable, max_antiflip_param
from .mutate import MinusOneSphere, classify, delta_of, minus_one_sphere, mutate
from .wedge import WedgeParams, sigma, validate


class NoIntegralFlip(DomainError):
    """No integral K-positive wedge inverts the antiflip of this input."""


@dataclass(frozen=True)
class AntiflipResult:
    minus: WedgeParams  # K-negative, c = 1
    delta_used: int
    q1_adjusted: bool  # whether the smooth-side convention swap fired

    def to_json(self) -> dict:
        return {
            "minus": self.minus.to_json(),
            "delta_used": self.delta_used,
            "q1_adjusted": self.q1_adjusted,
        }


def initial_antiflip(plus: WedgeParams, a_minus) -> AntiflipResult:
    """K-positive Pi(p0,q0,p1,q1,c,a+) to K-negative Pi(p1,q1',p2,q2,1,a-).

    delta = sigma(plus); p2 = delta p1 + p0; q2 = (delta + p2 q1')/p1 with
    q1' = 0 when the (1,1) vertex moves to the left slot.  Delta and Omega
    are preserved and sigma negates.
    """
    a_minus = Fraction(a_minus)
    if a_minus <= 0:
        raise DomainError("a_minus must be positive")
    d = sigma(plus)
    if d <= 0:
        raise DomainError(f"need a K-positive wedge, got sigma = {d}")
    p0, q0, p1, q1 = plus.p1, plus.q1, plus.p2, plus.q2
    adjusted = (p1, q1) == (1, 1)
    q1p = 0 if adjusted else q1
    p2 = d * p1 + p0
    num = d + p2 * q1p
    assert num % p1 == 0, "divisibility delta + p2 q1' by p1 failed"
    q2 = num // p1
    minus = validate((p1, q1p, p2, q2, 1, a_minus))
    assert sigma(minus) == -d
    return AntiflipResult(minus, d, adjusted)


def antiflip_in_bounds(
    plus: WedgeParams, l1, l2, a_minus
) -> tuple[AntiflipResult, tuple[Fraction, Fraction], Optional[Budget]]:
    """Antiflip inside the truncation (l1, l2); bounds become (l1 + a+, l2 - a-).

    A budget certificate is attached when the remaining room l2 - a- strictly
    exceeds a^-/(lambda+^2 - 1).
    """
    l1, l2, a_minus = Fraction(l1), Fraction(l2), Fraction(a_minus)
    if l1 <= 0 or l2 <= 0:
        raise DomainError("truncation lengths must be positive")
    if a_minus >= l2:
        raise DomainError(f"no room: a_minus = {a_minus} >= l2 = {l2} (deficit {a_minus - l2})")
    res = initial_antiflip(plus, a_minus)
    new_bounds = (l1 + plus.a, l2 - a_minus)
    # a FitsForever budget certifies infinite mutability; a FitsUpTo/Exceeds
    # budget is still returned so the caller sees how far the room goes
    certificate = None
    try:
        if is_infinitely_right_mutable(res.minus):
            certificate = budget(res.minus, new_bounds[1], 10)
    except DomainError:
        certificate = None
    return res, new_bounds, certificate


@dataclass(frozen=True)
class FlipResult:
    kind: Literal["FlipTo", "DivisorialContraction"]
    plus: Optional[WedgeParams]
    sphere: Optional[MinusOneSphere]
    descent_orbit: tuple[WedgeParams, ...]  # the left-mutation descent

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "plus": None if self.plus is None else self.plus.to_json(),
            "sphere": None if self.sphere is None else self.sphere.to_json(),
            "descent_orbit": [w.to_json() for w in self.descent_orbit],
        }


def flip(minus: WedgeParams, a_plus) -> FlipResult:
    """Left-mutation descent, then either a divisorial contraction or the inverse antiflip."""
    a_plus = Fraction(a_plus)
    if a_plus <= 0:
        raise DomainError("a_plus must be positive")
    if minus.c != 1 or sigma(minus) >= 0:
        raise DomainError(f"flip needs a K-negative wedge with c = 1, got {minus}")
    orbit = [minus]
    cur = minus
    while classify(cur, "left").status == "mutable":
        cur = mutate(cur, "left")
        orbit.append(cur)
    status = classify(cur, "left").status
    if status == "borderline":
        return FlipResult("DivisorialContraction", None, minus_one_sphere(cur, "left"), tuple(orbit))
    # invert the antiflip: cur = Pi(p1, q1, p2, q2, 1, a)
    d = -sigma(cur)
    p1, q1, p2 = cur.p1, cur.q1, cur.p2
    p0 = p2 - d * p1
    if p0 <= 0:
        raise NoIntegralFlip(f"p0 = p2 - delta p1 = {p0} is not positive")
    # the smooth-vertex convention swap reverses on the way back
    q1_plus = 1 if (p1, q1) == (1, 0) else q1
    # q0 solves p1 q0 = delta (mod p0); the vertices need not be coprime
    # across slots, so solve the congruence in general.  Shifting q0 by
    # p0/g changes the shear numerator by p0 p1 / g, so at most one
    # residue makes the shear integral: the inversion stays unique.
    if p0 == 1:
        candidates = [0]
    else:
        g = math.gcd(p1, p0)
        if d % g != 0:
            raise NoIntegralFlip(
                f"p1 q0 = delta (mod p0) has no solution (gcd {g} does not divide {d})"
            )
        m = p0 // g
        base = ((d // g) * pow(p1 // g, -1, m)) % m if m > 1 else 0
        candidates = [base + k * m for k in range(g)]
    plus = None
    for q0 in candidates:
        if math.gcd(p0, q0) != 1:
            continue
        num = d - p1 * q0 + p0 * q1_plus
        if num % (p0 * p1) != 0:
            continue
        c = num // (p0 * p1) + 1
        try:
            cand = validate((p0, q0, p1, q1_plus, c, a_plus))
        except DomainError:
            continue
        if sigma(cand) <= 0:
            continue
        assert plus is None, "shear integrality selects at most one residue"
        plus = cand
    if plus is None:
        raise NoIntegralFlip(
            f"no integral K-positive wedge inverts (p1, p2, delta) = ({p1}, {p2}, {d})"
        )
    return FlipResult("FlipTo", plus, None, tuple(orbit))


# ---------------------------------------------------------------------------
# cohomology path with the gap window


@dataclass(frozen=True)
class CohomologyPath:
    start: Fraction  # a+ p0 p1 = delta
    end: Fraction  # -a- p1 p2 of the antiflipped wedge
    affine_distance: Fraction
    gap_low: Fraction  # = delta
    gap_high: QuadraticSurd  # delta + epsilon, epsilon = C p1 p2
    epsilon: QuadraticSurd

    def to_json(self) -> dict:
        return {
            "start": frac_to_str(self.start),
            "end": frac_to_str(self.end),
            "affine_distance": frac_to_str(self.affine_distance),
            "gap_low": frac_to_str(self.gap_low),
            "gap_high": self.gap_high.to_json(),
            "epsilon": self.epsilon.to_json(),
        }


def cohomology_path(plus: WedgeParams, a_minus, l2) -> CohomologyPath:
    """Path endpoints in affine length, with the certified gap window (delta, delta + eps].

    Requires the canonical normalization a+ = delta / (p0 p1); epsilon uses
    the largest certified antiflip room C = l2 (1 - lambda-^2).
    """
    a_minus, l2 = Fraction(a_minus), Fraction(l2)
    d = sigma(plus)
    if d <= 0:
        raise DomainError(f"need a K-positive wedge, got sigma = {d}")
    if plus.a != Fraction(d, plus.p1 * plus.p2):
        raise DomainError(
            f"not canonically normalized: a+ = {plus.a} != delta/(p0 p1) = "
            f"{Fraction(d, plus.p1 * plus.p2)}"
        )
    res = initial_antiflip(plus, a_minus)
    m = res.minus
    start = Fraction(d)
    end = -a_minus * m.p1 * m.p2
    cap, _ = max_antiflip_param(l2, d)
    p1p2 = QuadraticSurd.rational(m.p1 * m.p2, cap.d)
    eps = cap * p1p2
    gap_high = QuadraticSurd.rational(start, cap.d) + eps
    return CohomologyPath(start, end, start - end, start, gap_high, eps)
