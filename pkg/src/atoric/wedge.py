"""Decorated truncated wedges: parameters, invariants, realization, chains."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .exactmath import (
    Chain,
    DomainError,
    ExtRational,
    cf_eval,
    frac_from_str,
    frac_to_str,
    recognize_wahl,
    wahl_chain,
)
from .lattice import (
    Point,
    Vec,
    ZAffineMap,
    det2,
    monodromy_b1,
    monodromy_b2,
    point,
    primitive,
    unimodular_sending_to_e2,
    vertex_type,
)


class WedgeError(DomainError):
    """Invalid truncated-wedge data."""


@dataclass(frozen=True)
class WedgeParams:
    p1: int
    q1: int
    p2: int
    q2: int
    c: int
    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))

    def to_json(self) -> dict:
        return {
            "p1": self.p1,
            "q1": self.q1,
            "p2": self.p2,
            "q2": self.q2,
            "c": self.c,
            "a": frac_to_str(self.a),
        }

    @classmethod
    def from_json(cls, d: dict) -> "WedgeParams":
        a = d["a"]
        if isinstance(a, str):
            a = frac_from_str(a)
        return validate((d["p1"], d["q1"], d["p2"], d["q2"], d["c"], a))

    def __str__(self) -> str:
        return f"Pi({self.p1},{self.q1},{self.p2},{self.q2},{self.c},{self.a})"


def validate(raw) -> WedgeParams:
    """Check coprimality, side conventions, a > 0 and Delta > 0."""
    p1, q1, p2, q2, c, a = raw
    a = Fraction(a)
    if p1 < 1 or p2 < 1:
        raise WedgeError(f"p1, p2 must be positive, got {p1}, {p2}")
    if (p1, q1) == (1, 1):
        raise WedgeError("smooth left vertex must be written (1,0), not (1,1)")
    if not (0 <= q1 < p1 or (p1, q1) == (1, 0)):
        raise WedgeError(f"need 0 <= q1 < p1, got (p1,q1)=({p1},{q1})")
    if math.gcd(p1, q1) != 1:
        raise WedgeError(f"p1, q1 must be coprime, got ({p1},{q1})")
    if (p2, q2) == (1, 0):
        raise WedgeError("smooth right vertex must be written (1,1), not (1,0)")
    if not (0 < q2 <= p2):
        raise WedgeError(f"need 0 < q2 <= p2, got (p2,q2)=({p2},{q2})")
    if math.gcd(p2, q2) != 1:
        raise WedgeError(f"p2, q2 must be coprime, got ({p2},{q2})")
    if a <= 0:
        raise WedgeError(f"edge length a must be positive, got {a}")
    w = WedgeParams(p1, q1, p2, q2, c, a)
    if delta_invariant(w) <= 0:
        raise WedgeError("rays intersect -- not a truncated wedge (Delta <= 0)")
    return w


def sigma(w: WedgeParams) -> int:
    return (w.c - 1) * w.p1 * w.p2 + w.p2 * w.q1 - w.p1 * w.q2


def delta_invariant(w: WedgeParams) -> int:
    return w.p1 * w.p1 + w.p2 * w.p2 + sigma(w) * w.p1 * w.p2


@dataclass(frozen=True)
class WedgeInvariants:
    sigma: int
    Delta: int
    Omega: int
    shear: int
    k_sign: int  # sign of sigma: +1 K-positive, -1 K-negative, 0 flagged

    def to_json(self) -> dict:
        return {
            "sigma": self.sigma,
            "Delta": self.Delta,
            "Omega": self.Omega,
            "shear": self.shear,
            "k_sign": self.k_sign,
        }


def invariants(w: WedgeParams) -> WedgeInvariants:
    s = sigma(w)
    Delta = delta_invariant(w)
    Omega = (
        w.p1 * w.q1 + w.p2 * w.q2 - 1 + s * w.p2 * w.q1 - (w.c - 1) * w.p2 * w.p2
    ) % Delta
    return WedgeInvariants(s, Delta, Omega, w.c, (s > 0) - (s < 0))


# ---------------------------------------------------------------------------
# marked chains


@dataclass(frozen=True)
class MarkedChain:
    left: Chain
    c: int
    right: Chain

    def concatenated(self) -> Chain:
        return tuple(self.left) + (self.c,) + tuple(self.right)

    def to_json(self) -> dict:
        return {"left": list(self.left), "c": self.c, "right": list(self.right)}

    def __str__(self) -> str:
        return f"{list(self.left)}-{self.c}-{list(self.right)}"


def boundary_chain(w: WedgeParams) -> MarkedChain:
    return MarkedChain(wahl_chain(w.p1, w.q1), w.c, wahl_chain(w.p2, w.q2))


def marked_cf(mc: MarkedChain) -> ExtRational:
    return cf_eval(mc.concatenated())


def from_chain(mc: MarkedChain, a: Fraction) -> WedgeParams:
    """Wedge whose boundary chain is mc; empty blocks get the side conventions."""
    if mc.left:
        left = recognize_wahl(mc.left)
        if left is None:
            raise WedgeError(f"left block {list(mc.left)} is not a Wahl chain")
    else:
        left = (1, 0)
    if mc.right:
        right = recognize_wahl(mc.right)
        if right is None:
            raise WedgeError(f"right block {list(mc.right)} is not a Wahl chain")
    else:
        right = (1, 1)
    return validate((left[0], left[1], right[0], right[1], mc.c, a))


# ---------------------------------------------------------------------------
# geometric realization


@dataclass(frozen=True)
class BranchCut:
    base: Point
    terminus: Point
    direction: Vec
    monodromy: ZAffineMap
    coorientation: Vec

    def transform(self, m: ZAffineMap) -> "BranchCut":
        return BranchCut(
            m.apply_point(self.base),
            m.apply_point(self.terminus),
            m.apply_vector(self.direction),
            m.compose(self.monodromy.compose(m.inverse())),
            m.apply_vector(self.coorientation),
        )

    def to_json(self) -> dict:
        return {
            "base": [frac_to_str(self.base[0]), frac_to_str(self.base[1])],
            "terminus": [frac_to_str(self.terminus[0]), frac_to_str(self.terminus[1])],
            "direction": list(self.direction),
            "monodromy": self.monodromy.to_json(),
            "coorientation": list(self.coorientation),
        }


@dataclass(frozen=True)
class GeoPolygon:
    """Convex polygon, possibly with two unbounded rays, plus branch cuts.

    For an unbounded polygon, rays[0] is attached to vertices[0] and rays[1]
    to vertices[-1]; the boundary runs in from infinity along -rays[0],
    through the vertices in order, and back out along rays[1].  A compact
    polygon (rays is None) lists its vertices counterclockwise.
    """

    vertices: tuple[Point, ...]
    rays: Optional[tuple[Vec, Vec]]
    cuts: tuple[BranchCut, ...]

    def transform(self, m: ZAffineMap) -> "GeoPolygon":
        rays = None
        if self.rays is not None:
            rays = (m.apply_vector(self.rays[0]), m.apply_vector(self.rays[1]))
        return GeoPolygon(
            tuple(m.apply_point(v) for v in self.vertices),
            rays,
            tuple(c.transform(m) for c in self.cuts),
        )

    def to_json(self) -> dict:
        return {
            "vertices": [[frac_to_str(x), frac_to_str(y)] for x, y in self.vertices],
            "rays": None if self.rays is None else [list(self.rays[0]), list(self.rays[1])],
            "cuts": [c.to_json() for c in self.cuts],
        }


def ray_dirs(w: WedgeParams) -> tuple[Vec, Vec]:
    r1 = (w.p1 * (w.p1 - w.q1) - 1, w.p1 * w.p1)
    r2 = (w.c * w.p2 * w.p2 - w.p2 * w.q2 + 1, w.p2 * w.p2)
    return primitive(r1), primitive(r2)


def cut_dirs(w: WedgeParams) -> tuple[Vec, Vec]:
    return (w.p1 - w.q1, w.p1), (w.c * w.p2 - w.q2, w.p2)


def realize(w: WedgeParams, cut_param: Optional[Fraction] = None) -> GeoPolygon:
    """Normal-form polygon: x1 at the origin, the compact edge on the x-axis.

    The focus-focus termini sit at affine parameter cut_param (default a/3)
    along the cut directions; their position carries no invariant data.
    """
    t = Fraction(cut_param) if cut_param is not None else w.a / 3
    if t <= 0:
        raise WedgeError("cut parameter must be positive")
    x1 = point(0, 0)
    x2 = point(w.a, 0)
    r1, r2 = ray_dirs(w)
    b1, b2 = cut_dirs(w)
    cut1 = BranchCut(
        base=x1,
        terminus=(x1[0] + t * b1[0], x1[1] + t * b1[1]),
        direction=b1,
        monodromy=monodromy_b1(w.p1, w.q1),
        coorientation=(-b1[1], b1[0]),  # left normal
    )
    cut2 = BranchCut(
        base=x2,
        terminus=(x2[0] + t * b2[0], x2[1] + t * b2[1]),
        direction=b2,
        monodromy=monodromy_b2(w.p2, w.q2, w.c),
        coorientation=(b2[1], -b2[0]),  # right normal
    )
    return GeoPolygon((x1, x2), (r1, r2), (cut1, cut2))


def bounded(w: WedgeParams, l1: Fraction, l2: Fraction) -> GeoPolygon:
    """Compact hull of x1, x2 and the points at affine distance l_i along the rays."""
    l1, l2 = Fraction(l1), Fraction(l2)
    if l1 <= 0 or l2 <= 0:
        raise WedgeError("truncation lengths must be positive")
    base = realize(w, cut_param=min(w.a, l1, l2) / 3)
    x1, x2 = base.vertices
    r1, r2 = base.rays
    y1 = (x1[0] + l1 * r1[0], x1[1] + l1 * r1[1])
    y2 = (x2[0] + l2 * r2[0], x2[1] + l2 * r2[1])
    return GeoPolygon((x1, x2, y2, y1), None, base.cuts)


def pairing_data(w: WedgeParams) -> tuple[Fraction, Fraction]:
    """(symplectic area of the homology generator, K . C) = (p1 p2 a, sigma/(p1 p2))."""
    return (Fraction(w.p1 * w.p2) * w.a, Fraction(sigma(w), w.p1 * w.p2))


# ---------------------------------------------------------------------------
# recognition: recover WedgeParams and the normalizing map from a wedge-shaped
# polygon (used to cross-validate geometric against parametric mutation)


def _wahl_pq(t: tuple[int, int], side: str) -> tuple[int, int]:
    P, Q = t
    if P == 1:
        return (1, 0) if side == "left" else (1, 1)
    p = math.isqrt(P)
    if p * p != P or (Q + 1) % p != 0:
        raise WedgeError(f"vertex type {t} is not of Wahl form")
    return p, (Q + 1) // p


def recognize_wedge(poly: GeoPolygon) -> tuple[WedgeParams, ZAffineMap]:
    """Identify a two-vertex, two-ray polygon as realize(w) up to Z-affine maps.

    Returns (w, N) with N mapping poly onto realize(w) (cut termini aside).
    """
    if poly.rays is None or len(poly.vertices) != 2:
        raise WedgeError("not a wedge-shaped polygon")
    u, v = poly.vertices
    ru, rv = poly.rays
    e = primitive((v[0] - u[0], v[1] - u[1]))
    # orientation: interior to the left walking x1 -> x2
    if det2(e, ru) > 0 and det2(rv, (-e[0], -e[1])) > 0:
        x1, x2, r1, r2 = u, v, ru, rv
    else:
        x1, x2, r1, r2 = v, u, rv, ru
        e = (-e[0], -e[1])
        if not (det2(e, r1) > 0 and det2(r2, (-e[0], -e[1])) > 0):
            raise WedgeError("polygon is not convex in wedge position")
    p1, q1 = _wahl_pq(vertex_type(e, r1), "left")
    p2, q2 = _wahl_pq(vertex_type(r2, (-e[0], -e[1])), "right")
    # edge length in multiples of the primitive direction
    dx, dy = x2[0] - x1[0], x2[1] - x1[1]
    a = dx / e[0] if e[0] != 0 else dy / e[1]
    # linear part: e -> (1, 0), then shear so R1 hits its model direction
    m0 = unimodular_sending_to_e2(e)
    l0 = ZAffineMap(((0, 1), (-1, 0))).compose(m0)  # e -> (0,1) -> (1,0)
    assert l0.apply_vector(e) == (1, 0)
    w1 = l0.apply_vector(r1)
    assert w1[1] == p1 * p1
    target_x = p1 * (p1 - q1) - 1
    if (target_x - w1[0]) % (p1 * p1) != 0:
        raise WedgeError("left vertex does not normalize to the model")
    mshear = (target_x - w1[0]) // (p1 * p1)
    lin = ZAffineMap(((1, mshear), (0, 1))).compose(l0)
    w2 = lin.apply_vector(r2)
    if w2[1] != p2 * p2 or (w2[0] + p2 * q2 - 1) % (p2 * p2) != 0:
        raise WedgeError("right vertex does not normalize to the model")
    c = (w2[0] + p2 * q2 - 1) // (p2 * p2)
    origin = lin.apply_point(x1)
    n = ZAffineMap.translation((-origin[0], -origin[1])).compose(lin)
    w = validate((p1, q1, p2, q2, c, a))
    return w, n


def renormalize(poly: GeoPolygon) -> tuple[WedgeParams, GeoPolygon]:
    """Map a wedge-shaped polygon back to normal form; returns (params, polygon)."""
    w, n = recognize_wedge(poly)
    return w, poly.transform(n)
