"""Shared corpora of random wedges (seeded, deterministic)."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from atoric.wedge import WedgeParams, sigma, validate
from atoric.exactmath import DomainError


def _random_vertex(rng: random.Random, side: str, pmax: int) -> tuple[int, int]:
    p = rng.randint(1, pmax)
    if p == 1:
        return (1, 0) if side == "left" else (1, 1)
    qs = [q for q in range(1, p) if math.gcd(p, q) == 1]
    return p, rng.choice(qs)


def random_wedges(n: int, seed: int, pmax: int = 10, cmax: int = 4, want_sigma=None):
    """n valid wedges; want_sigma filters on the sign of sigma (+1, -1 or None)."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        p1, q1 = _random_vertex(rng, "left", pmax)
        p2, q2 = _random_vertex(rng, "right", pmax)
        c = rng.randint(1, cmax)
        a = Fraction(rng.randint(1, 12), rng.randint(1, 12))
        try:
            w = validate((p1, q1, p2, q2, c, a))
        except DomainError:
            continue
        if want_sigma is not None and (sigma(w) > 0) - (sigma(w) < 0) != want_sigma:
            continue
        out.append(w)
    return out


@pytest.fixture(scope="session")
def k_positive_corpus() -> list[WedgeParams]:
    return random_wedges(200, seed=20230817, want_sigma=1)


@pytest.fixture(scope="session")
def mutable_corpus() -> list[WedgeParams]:
    """K-negative, c = 1, delta >= 2, p1 <= p2: infinitely right-mutable."""
    from atoric.flip import initial_antiflip
    from atoric.mori import is_infinitely_right_mutable

    rng = random.Random(991)
    out = []
    for w in random_wedges(900, seed=424242, want_sigma=1):
        if sigma(w) < 2:
            continue
        m = initial_antiflip(w, Fraction(rng.randint(1, 9), rng.randint(10, 30))).minus
        if is_infinitely_right_mutable(m):
            out.append(m)
        if len(out) == 500:
            break
    assert len(out) == 500
    return out
