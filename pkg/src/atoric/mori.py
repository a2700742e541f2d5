"""Mori sequences, asymptotic classification, and affine-length budgets."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

from .exactmath import (
    DomainError,
    QuadraticSurd,
    cf_eval_details,
    eigenvalues,
    frac_to_str,
    surd_cmp,
    surd_convergent_below,
    wahl_chain,
)
from .mutate import delta_of, mutate
from .wedge import WedgeParams, sigma

Classification = Literal[
    "IncreasingToLambdaPlus", "DecreasingTerminating", "BetweenEigenrays"
]


@dataclass(frozen=True)
class MoriSeed:
    p1: int
    q1: int
    p2: int
    q2: int
    delta: int

    def to_json(self) -> dict:
        return {
            "p1": self.p1,
            "q1": self.q1,
            "p2": self.p2,
            "q2": self.q2,
            "delta": self.delta,
        }


def validate_seed(p1: int, q1: int, p2: int, q2: int) -> MoriSeed:
    """Check coprimality, q <= p, delta > 0, Delta_seed > 0, CF well-definedness."""
    if (p1, q1) == (1, 1):  # canonical storage uses the left convention
        q1 = 0
    if not (0 <= q1 <= p1) or math.gcd(p1, q1) != 1:
        raise DomainError(f"(p1,q1)=({p1},{q1}) must be coprime with 0 <= q1 <= p1")
    if not (0 <= q2 <= p2) or math.gcd(p2, q2) != 1:
        raise DomainError(f"(p2,q2)=({p2},{q2}) must be coprime with 0 <= q2 <= p2")
    delta = p1 * q2 - p2 * q1
    if delta <= 0:
        raise DomainError(f"delta = p1 q2 - p2 q1 = {delta} must be positive")
    d_seed = p1 * p1 + p2 * p2 - delta * p1 * p2
    if d_seed <= 0:
        raise DomainError(f"Delta_seed = p1^2 + p2^2 - delta p1 p2 = {d_seed} must be positive")
    chain = wahl_chain(p1, q1 if (p1, q1) != (1, 1) else 0) + (1,) + wahl_chain(
        p2, q2 if (p2, q2) != (1, 0) else 1
    )
    _, saw_zero = cf_eval_details(chain)
    if saw_zero:
        raise DomainError("marked chain continued fraction hits an internal zero")
    return MoriSeed(p1, q1, p2, q2, delta)


@dataclass(frozen=True)
class MoriSequence:
    seed: MoriSeed
    pairs: tuple[tuple[int, int], ...]
    classification: Classification

    def display_pairs(self) -> tuple[tuple[int, int], ...]:
        """First pair shown right-convention: a leading (1,0) prints as (1,1)."""
        if self.pairs and self.pairs[0] == (1, 0):
            return ((1, 1),) + self.pairs[1:]
        return self.pairs

    def to_json(self) -> dict:
        return {
            "seed": self.seed.to_json(),
            "pairs": [list(p) for p in self.pairs],
            "display_pairs": [list(p) for p in self.display_pairs()],
            "classification": self.classification,
        }


def generate(seed: MoriSeed, n: int) -> MoriSequence:
    """First n pairs of the recursion x_{i+2} = delta x_{i+1} - x_i.

    Truncates early when a term leaves the positive quadrant.
    """
    d = seed.delta
    pairs: list[tuple[int, int]] = []
    pq = (seed.p1, seed.q1)
    nxt = (seed.p2, seed.q2)
    for _ in range(n):
        if pq[0] <= 0 or pq[1] < 0:
            break
        pairs.append(pq)
        pq, nxt = nxt, (d * nxt[0] - pq[0], d * nxt[1] - pq[1])
    return MoriSequence(seed, tuple(pairs), classify_asymptotics(seed)[0])


def classify_asymptotics(seed: MoriSeed):
    """(classification, data): exact comparison of p2 against the eigenrays.

    For IncreasingToLambdaPlus, data holds the first ratios p_{i+1}/p_i,
    strictly decreasing to lambda+ from above.
    """
    d = seed.delta
    if d < 2:
        return "DecreasingTerminating", None
    lam_minus, lam_plus = eigenvalues(d)
    p1s = QuadraticSurd.rational(seed.p1, lam_plus.d)
    p2s = QuadraticSurd.rational(seed.p2, lam_plus.d)
    if surd_cmp(p2s, lam_plus * p1s) > 0:
        seq = generate_p_only(seed, 8)
        ratios = [Fraction(seq[i + 1], seq[i]) for i in range(len(seq) - 1)]
        return "IncreasingToLambdaPlus", ratios
    if surd_cmp(p2s, lam_minus * p1s) < 0:
        return "DecreasingTerminating", None
    return "BetweenEigenrays", None


def generate_p_only(seed: MoriSeed, n: int) -> list[int]:
    out = []
    a, b = seed.p1, seed.p2
    for _ in range(n):
        if a <= 0:
            break
        out.append(a)
        a, b = b, seed.delta * b - a
    return out


def is_infinitely_right_mutable(w: WedgeParams) -> bool:
    """delta >= 2 and p1 <= p2, for a K-negative wedge with c = 1."""
    if w.c != 1:
        raise DomainError(f"need c = 1, got c = {w.c}")
    if sigma(w) >= 0:
        raise DomainError(f"need a K-negative wedge, got sigma = {sigma(w)}")
    return delta_of(w) >= 2 and w.p1 <= w.p2


# ---------------------------------------------------------------------------
# budgets


@dataclass(frozen=True)
class Budget:
    a_minus: Fraction
    consumed: tuple[Fraction, ...]
    partial_sums: tuple[Fraction, ...]
    bound: QuadraticSurd  # a_minus / (lambda+^2 - 1)
    l2: Fraction
    verdict: Literal["FitsForever", "FitsUpTo", "Exceeds"]
    fits_steps: Optional[int]  # for FitsUpTo: how many mutations fit
    overflow_sum: Optional[Fraction]  # first partial sum reaching l2
    note: str = ""

    def to_json(self) -> dict:
        return {
            "a_minus": frac_to_str(self.a_minus),
            "consumed": [frac_to_str(x) for x in self.consumed],
            "partial_sums": [frac_to_str(x) for x in self.partial_sums],
            "bound": self.bound.to_json(),
            "l2": frac_to_str(self.l2),
            "verdict": self.verdict,
            "fits_steps": self.fits_steps,
            "overflow_sum": None if self.overflow_sum is None else frac_to_str(self.overflow_sum),
            "note": self.note,
        }


def budget(w: WedgeParams, l2, n: int) -> Budget:
    """n consumed lengths a_k = a_{k-1} p_k / p_{k+2}, exact verdict vs l2.

    FitsForever needs l2 strictly above the closed-form bound
    a^- / (lambda+^2 - 1); exact equality fails only in the limit and is
    reported as Exceeds with a note.
    """
    l2 = Fraction(l2)
    if l2 <= 0:
        raise DomainError("l2 must be positive")
    if not is_infinitely_right_mutable(w):
        raise DomainError(f"{w} is not infinitely right-mutable")
    d = delta_of(w)
    if d == 2:
        raise DomainError(
            "unbounded-room-required: the budget bound degenerates at delta = 2"
        )
    seed = MoriSeed(w.p1, w.q1, w.p2, w.q2, d)
    _, lam_plus = eigenvalues(d)
    lam_sq_minus_1 = lam_plus * lam_plus - QuadraticSurd.rational(1, lam_plus.d)
    bound = lam_sq_minus_1.inverse() * QuadraticSurd(w.a, Fraction(0), lam_plus.d)

    horizon = max(n, 1000)
    ps = generate_p_only(seed, horizon + 2)
    consumed: list[Fraction] = []
    sums: list[Fraction] = []
    total = Fraction(0)
    a_prev = w.a
    overflow_at = None
    overflow_sum = None
    for k in range(1, horizon + 1):
        if k + 1 >= len(ps):
            break
        a_k = a_prev * ps[k - 1] / ps[k + 1]
        a_prev = a_k
        total += a_k
        if k <= n:
            consumed.append(a_k)
            sums.append(total)
        if overflow_at is None and total >= l2:
            overflow_at = k
            overflow_sum = total
            if k > n:
                break

    l2_surd = QuadraticSurd.rational(l2, bound.d)
    cmp_bound = surd_cmp(l2_surd, bound)
    if cmp_bound > 0:
        verdict, fits, note = "FitsForever", None, ""
    elif cmp_bound == 0:
        verdict, fits = "Exceeds", None
        note = "l2 equals the bound exactly; the budget is exhausted only in the limit"
    elif overflow_at is None:
        verdict, fits = "FitsUpTo", horizon
        note = f"no overflow within the first {horizon} steps (l2 below the bound)"
    elif overflow_at == 1:
        verdict, fits, note = "Exceeds", 0, ""
    else:
        verdict, fits, note = "FitsUpTo", overflow_at - 1, ""
    return Budget(
        a_minus=w.a,
        consumed=tuple(consumed),
        partial_sums=tuple(sums),
        bound=bound,
        l2=l2,
        verdict=verdict,
        fits_steps=fits,
        overflow_sum=overflow_sum,
        note=note,
    )


def max_antiflip_param(l2, delta: int) -> tuple[QuadraticSurd, Fraction]:
    """Supremum l2 (1 - lambda-^2) of admissible a^-, with a rational under-approximation."""
    l2 = Fraction(l2)
    if delta < 2:
        raise DomainError(f"need delta >= 2, got {delta}")
    if l2 <= 0:
        raise DomainError("l2 must be positive")
    lam_minus, _ = eigenvalues(delta)
    one = QuadraticSurd.rational(1, lam_minus.d)
    exact = (one - lam_minus * lam_minus) * QuadraticSurd.rational(l2, lam_minus.d)
    if exact.sign() == 0:  # delta = 2: lambda- = 1, no room at all
        return exact, Fraction(0)
    return exact, surd_convergent_below(exact)


def mutation_orbit(w: WedgeParams, n: int, unchecked: bool = False) -> list[WedgeParams]:
    """w and its first n right mutations; pairs match generate()'s."""
    if not unchecked and not is_infinitely_right_mutable(w):
        raise DomainError(f"{w} is not infinitely right-mutable")
    orbit = [w]
    for _ in range(n):
        orbit.append(mutate(orbit[-1], "right"))
    return orbit
