"""Z-affine plane geometry: unimodular maps, vertex types, monodromies, resolutions.

Orientation convention used everywhere: at a vertex, the two outgoing edge
directions (v1, v2) are ordered so that det(v1, v2) > 0 (v1 to v2 is
counterclockwise).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import DomainError, cf_expand, frac_to_str

Vec = tuple[int, int]
Point = tuple[Fraction, Fraction]


def det2(v: Vec, w) -> int:
    return v[0] * w[1] - v[1] * w[0]


def is_primitive(v: Vec) -> bool:
    return (v[0], v[1]) != (0, 0) and math.gcd(abs(v[0]), abs(v[1])) == 1


def primitive(v) -> Vec:
    """Primitive integer vector along v (v may have rational coordinates)."""
    x, y = Fraction(v[0]), Fraction(v[1])
    if x == 0 and y == 0:
        raise DomainError("zero vector has no direction")
    den = math.lcm(x.denominator, y.denominator)
    ix, iy = int(x * den), int(y * den)
    g = math.gcd(abs(ix), abs(iy))
    return (ix // g, iy // g)


def parallel(v, w) -> bool:
    return Fraction(v[0]) * Fraction(w[1]) == Fraction(v[1]) * Fraction(w[0])


def point(x, y) -> Point:
    return (Fraction(x), Fraction(y))


@dataclass(frozen=True)
class ZAffineMap:
    """x -> M x + t with M in SL(2, Z) (orientation preserving)."""

    m: tuple[tuple[int, int], tuple[int, int]]
    t: Point = (Fraction(0), Fraction(0))

    def __post_init__(self):
        (a, b), (c, d) = self.m
        if a * d - b * c != 1:
            raise DomainError(f"matrix {self.m} has determinant != 1")
        object.__setattr__(self, "t", (Fraction(self.t[0]), Fraction(self.t[1])))

    @classmethod
    def identity(cls) -> "ZAffineMap":
        return cls(((1, 0), (0, 1)))

    @classmethod
    def translation(cls, t) -> "ZAffineMap":
        return cls(((1, 0), (0, 1)), (Fraction(t[0]), Fraction(t[1])))

    def apply_vector(self, v: Vec) -> Vec:
        (a, b), (c, d) = self.m
        return (a * v[0] + b * v[1], c * v[0] + d * v[1])

    def apply_point(self, p) -> Point:
        (a, b), (c, d) = self.m
        x, y = Fraction(p[0]), Fraction(p[1])
        return (a * x + b * y + self.t[0], c * x + d * y + self.t[1])

    def compose(self, other: "ZAffineMap") -> "ZAffineMap":
        """self after other."""
        (a, b), (c, d) = self.m
        (e, f), (g, h) = other.m
        m = ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))
        t = self.apply_point(other.t)
        return ZAffineMap(m, t)

    def inverse(self) -> "ZAffineMap":
        (a, b), (c, d) = self.m
        m = ((d, -b), (-c, a))
        tx = d * self.t[0] - b * self.t[1]
        ty = -c * self.t[0] + a * self.t[1]
        return ZAffineMap(m, (-tx, -ty))

    def conjugate_at(self, p) -> "ZAffineMap":
        """Translate p to the origin, apply self, translate back."""
        t = ZAffineMap.translation(p)
        return t.compose(self.compose(t.inverse()))

    def to_json(self) -> dict:
        return {
            "m": [list(self.m[0]), list(self.m[1])],
            "t": [frac_to_str(self.t[0]), frac_to_str(self.t[1])],
        }


def unimodular_sending_to_e2(v: Vec) -> ZAffineMap:
    """Some M in SL(2, Z) with M v = (0, 1); v must be primitive."""
    if not is_primitive(v):
        raise DomainError(f"{v} is not primitive")
    x, y = v
    g, c, d = _ext_gcd(x, y)
    assert g == 1
    return ZAffineMap(((y, -x), (c, d)))


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r != 0:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


VertexType = tuple[int, int]


def vertex_type(v1: Vec, v2: Vec) -> VertexType:
    """Cyclic quotient type 1/P(1, Q) of the corner with outgoing edges v1, v2.

    P = det(v1, v2); Q is read off after normalizing v2 to (0, 1).  The answer
    does not depend on the normalizing matrix (shears fixing (0,1) change the
    intermediate value by multiples of P).
    """
    if not (is_primitive(v1) and is_primitive(v2)):
        raise DomainError("vertex edges must be primitive")
    P = det2(v1, v2)
    if P <= 0:
        raise DomainError(f"det(v1, v2) = {P} must be positive")
    M = unimodular_sending_to_e2(v2)
    w = M.apply_vector(v1)
    assert w[0] == P
    return (P, w[1] % P)


def vertex_normalizer(v1: Vec, v2: Vec) -> ZAffineMap:
    """The unimodular map taking (v1, v2) to ((P, Q), (0, 1)) of the standard model."""
    P, Q = vertex_type(v1, v2)
    M = unimodular_sending_to_e2(v2)
    w = M.apply_vector(v1)
    k = (w[1] - Q) // P
    shear = ZAffineMap(((1, 0), (-k, 1)))
    return shear.compose(M)


def monodromy_b1(p1: int, q1: int) -> ZAffineMap:
    """Affine monodromy of the left branch cut; fixes (p1 - q1, p1)."""
    return ZAffineMap(
        (
            (1 + p1 * q1 - p1 * p1, (p1 - q1) ** 2),
            (-p1 * p1, 1 - p1 * q1 + p1 * p1),
        )
    )


def monodromy_b2(p2: int, q2: int, c: int) -> ZAffineMap:
    """Affine monodromy of the right branch cut; fixes (c p2 - q2, p2)."""
    return ZAffineMap(
        (
            (c * p2 * p2 - p2 * q2 + 1, -((c * p2 - q2) ** 2)),
            (p2 * p2, 1 + p2 * q2 - c * p2 * p2),
        )
    )


def resolution_profile(t: VertexType) -> list[tuple[Vec, int]]:
    """Edges of the minimal resolution of a 1/P(1,Q) corner, anticlockwise.

    Returns (direction, self-intersection) pairs in the standard model where
    the corner has outgoing edges (P, Q) and (0, 1).  Directions satisfy the
    convergent recursion v_{i+1} = b_i v_i - v_{i-1} seeded by (0,-1), (1,0);
    the recursion closes up on (P, Q).
    """
    P, Q = t
    if P <= 1:
        raise DomainError("nothing to resolve at a smooth corner")
    entries = cf_expand(Fraction(P, Q))
    prev: Vec = (0, -1)
    cur: Vec = (1, 0)
    out = []
    for b in entries:
        out.append((cur, -b))
        prev, cur = cur, (b * cur[0] - prev[0], b * cur[1] - prev[1])
    assert cur == (P, Q)
    return out
