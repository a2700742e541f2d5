"""Mutability classification and mutation, parametric and geometric."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

from .exactmath import DomainError, frac_to_str
from .lattice import Point, Vec, primitive
from .wedge import (
    BranchCut,
    GeoPolygon,
    WedgeParams,
    cut_dirs,
    ray_dirs,
    realize,
    validate,
)

Side = Literal["left", "right"]


class NotMutable(DomainError):
    """Mutation requested on a side that is not mutable."""


class ObstructedCut(DomainError):
    """The mutation chord meets another branch cut."""


def delta_of(w: WedgeParams) -> int:
    """delta = p1 q2 - p2 q1 = -sigma when c = 1."""
    return w.p1 * w.q2 - w.p2 * w.q1


@dataclass(frozen=True)
class Mutability:
    status: Literal["mutable", "borderline", "immutable"]
    # mutable: intersection point of the extended cut with the far ray;
    # borderline: the shared primitive direction; immutable: a short reason.
    witness: object


def _cross(u, v) -> Fraction:
    return Fraction(u[0]) * Fraction(v[1]) - Fraction(u[1]) * Fraction(v[0])


def _line_meet(p: Point, u, q: Point, v) -> Optional[tuple[Fraction, Fraction]]:
    """(s, t) with p + s u = q + t v, or None if u, v are parallel."""
    den = _cross(u, v)
    if den == 0:
        return None
    w = (q[0] - p[0], q[1] - p[1])
    return (_cross(w, v) / den, _cross(w, u) / den)


def classify(w: WedgeParams, side: Side) -> Mutability:
    """Mutability of the given side, with a geometric witness.

    The arithmetic criterion (c = 1 and delta p - p' > 0) and the geometric
    one (extended cut meets the far ray) are computed independently and must
    agree.
    """
    d = delta_of(w)
    b1, b2 = cut_dirs(w)
    r1, r2 = ray_dirs(w)
    poly = realize(w)
    x1, x2 = poly.vertices
    if side == "right":
        margin = d * w.p2 - w.p1
        cut_base, cut_dir, far_base, far_dir = x1, b1, x2, r2
    else:
        margin = d * w.p1 - w.p2
        cut_base, cut_dir, far_base, far_dir = x2, b2, x1, r1
    arithmetic = "immutable"
    if w.c == 1 and margin > 0:
        arithmetic = "mutable"
    elif w.c == 1 and margin == 0:
        arithmetic = "borderline"

    meet = _line_meet(cut_base, cut_dir, far_base, far_dir)
    if meet is None:
        geometric = "borderline"
        witness: object = primitive(cut_dir)
    else:
        s, t = meet
        if s > 0 and t > 0:
            geometric = "mutable"
            witness = (cut_base[0] + s * cut_dir[0], cut_base[1] + s * cut_dir[1])
        else:
            geometric = "immutable"
            witness = f"extended cut misses the far ray (s={s}, t={t})"
    assert arithmetic == geometric, (w, side, arithmetic, geometric)
    return Mutability(geometric, witness)


def mutate(w: WedgeParams, side: Side) -> WedgeParams:
    """One mutation step; preserves sigma, Delta, Omega."""
    m = classify(w, side)
    if m.status != "mutable":
        raise NotMutable(f"{w} is not {side}-mutable: {m.status} ({m.witness})")
    d = delta_of(w)
    if side == "right":
        p3, q3 = d * w.p2 - w.p1, d * w.q2 - w.q1
        p_new, q_new = w.p2, w.q2
        if (p_new, q_new) == (1, 1):  # smooth vertex moving to the left slot
            q_new = 0
        return validate((p_new, q_new, p3, q3, 1, w.a * w.p1 / p3))
    p0, q0 = d * w.p1 - w.p2, d * w.q1 - w.q2
    p_new, q_new = w.p1, w.q1
    if (p_new, q_new) == (1, 0):  # smooth vertex moving to the right slot
        q_new = 1
    return validate((p0, q0, p_new, q_new, 1, w.a * w.p2 / p0))


# ---------------------------------------------------------------------------
# geometric mutation


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """Proper crossing test (shared endpoints do not count)."""
    ab = (b[0] - a[0], b[1] - a[1])
    cd = (d[0] - c[0], d[1] - c[1])
    d1 = _sign(_cross(ab, (c[0] - a[0], c[1] - a[1])))
    d2 = _sign(_cross(ab, (d[0] - a[0], d[1] - a[1])))
    d3 = _sign(_cross(cd, (a[0] - c[0], a[1] - c[1])))
    d4 = _sign(_cross(cd, (b[0] - c[0], b[1] - c[1])))
    return d1 * d2 < 0 and d3 * d4 < 0


def _dedup(points) -> list[Point]:
    out: list[Point] = []
    for p in points:
        if not out or out[-1] != p:
            out.append(p)
    return out


def _drop_collinear_compact(vertices) -> tuple[Point, ...]:
    verts = list(vertices)
    changed = True
    while changed and len(verts) > 3:
        changed = False
        for i in range(len(verts)):
            prev = verts[i - 1]
            cur = verts[i]
            nxt = verts[(i + 1) % len(verts)]
            if _cross((cur[0] - prev[0], cur[1] - prev[1]), (nxt[0] - cur[0], nxt[1] - cur[1])) == 0:
                verts.pop(i)
                changed = True
                break
    return tuple(verts)


def _drop_collinear_unbounded(vertices, rays) -> tuple[tuple[Point, ...], tuple[Vec, Vec]]:
    verts = list(vertices)
    r0, r1 = rays
    i = 1
    while i < len(verts) - 1:
        prev, cur, nxt = verts[i - 1], verts[i], verts[i + 1]
        if _cross((cur[0] - prev[0], cur[1] - prev[1]), (nxt[0] - cur[0], nxt[1] - cur[1])) == 0:
            verts.pop(i)
        else:
            i += 1
    # end vertices swallowed by their rays
    while len(verts) > 1 and _cross((verts[1][0] - verts[0][0], verts[1][1] - verts[0][1]), r0) == 0:
        verts.pop(0)
    while len(verts) > 1 and _cross((verts[-1][0] - verts[-2][0], verts[-1][1] - verts[-2][1]), r1) == 0:
        verts.pop()
    return tuple(verts), (r0, r1)


def geometric_mutate(poly: GeoPolygon, cut_index: int) -> GeoPolygon:
    """Mutate along poly.cuts[cut_index].

    The full line through the cut splits the polygon in two; the piece on the
    far side of the coorientation is transformed by the cut's monodromy
    (conjugated so the cut line is fixed pointwise).  The cut is reversed --
    rebased at the chord's other end, direction negated, monodromy inverted --
    while its coorientation is kept.
    """
    cut = poly.cuts[cut_index]
    base, u = cut.base, cut.direction
    a_lin = cut.monodromy
    a_aff = a_lin.conjugate_at(base)
    upper_sign = _sign(_cross(u, cut.coorientation))
    assert upper_sign != 0, "coorientation is parallel to the cut"
    lower = -upper_sign

    def side_of(p: Point) -> int:
        return _sign(_cross(u, (p[0] - base[0], p[1] - base[1])))

    def map_pts(pts):
        return [a_aff.apply_point(p) for p in pts]

    if poly.rays is None:
        far, chain1, s1, chain2 = _split_compact(poly, base, u, side_of)
        _check_obstruction(poly, cut_index, base, far, side_of)
        if s1 == lower:
            verts = _dedup([base] + map_pts(chain1) + [far] + chain2)
        else:
            verts = _dedup([base] + chain1 + [far] + map_pts(chain2))
        verts = _drop_collinear_compact(verts)
        rays = None
    else:
        far, before, middle, after, s_mid, rays = _split_unbounded(poly, base, u, side_of)
        _check_obstruction(poly, cut_index, base, far, side_of)
        if s_mid == lower:
            verts = _dedup(before + map_pts(middle) + after)
        else:
            verts = _dedup(map_pts(before) + middle + map_pts(after))
            rays = (a_lin.apply_vector(rays[0]), a_lin.apply_vector(rays[1]))
        verts, rays = _drop_collinear_unbounded(verts, rays)

    new_cuts = []
    for j, other in enumerate(poly.cuts):
        if j == cut_index:
            new_cuts.append(
                BranchCut(
                    base=far,
                    terminus=cut.terminus,
                    direction=(-u[0], -u[1]),
                    monodromy=a_lin.inverse(),
                    coorientation=cut.coorientation,
                )
            )
        elif side_of(other.terminus) == lower:
            new_cuts.append(other.transform(a_aff))
        else:
            new_cuts.append(other)
    return GeoPolygon(tuple(verts), rays, tuple(new_cuts))


def _check_obstruction(poly: GeoPolygon, cut_index: int, base: Point, far: Point, side_of):
    """The chord from base to far must not meet any other branch cut."""
    for j, other in enumerate(poly.cuts):
        if j == cut_index:
            continue
        if side_of(other.terminus) == 0:
            raise ObstructedCut("another cut's terminus lies on the mutation line")
        if _segments_cross(base, far, other.base, other.terminus):
            raise ObstructedCut("mutation chord crosses another branch cut")


def _split_compact(poly: GeoPolygon, base: Point, u, side_of):
    """Second boundary point on the cut line and the two open boundary chains.

    Walking counterclockwise from base: chain1 (strictly on side s1), the far
    point, then chain2 (strictly on side -s1).
    """
    verts = list(poly.vertices)
    n = len(verts)
    try:
        bi = verts.index(base)
    except ValueError:
        raise DomainError("cut base must be a polygon vertex")
    far = None
    far_k: Fraction | int | None = None
    far_is_vertex = False
    for k in range(1, n + 1):
        vi = verts[(bi + k - 1) % n]
        vj = verts[(bi + k) % n]
        if k > 1 and side_of(vi) == 0:
            far, far_k, far_is_vertex = vi, k - 1, True
            break
        si, sj = side_of(vi), side_of(vj)
        if si * sj < 0:
            _, t = _line_meet(base, u, vi, (vj[0] - vi[0], vj[1] - vi[1]))
            far = (vi[0] + t * (vj[0] - vi[0]), vi[1] + t * (vj[1] - vi[1]))
            far_k = k - Fraction(1, 2)  # between walk positions k-1 and k
            break
    if far is None:
        raise DomainError("mutation line does not exit through the boundary")
    chain1: list[Point] = []
    chain2: list[Point] = []
    for k in range(1, n):
        v = verts[(bi + k) % n]
        if far_is_vertex and k == far_k:
            continue
        (chain1 if k < far_k else chain2).append(v)
    s1 = next((side_of(p) for p in chain1 if side_of(p) != 0), 0)
    s2 = next((side_of(p) for p in chain2 if side_of(p) != 0), 0)
    assert s1 != 0 and s2 == -s1, "degenerate split"
    return far, chain1, s1, chain2


def _split_unbounded(poly: GeoPolygon, base: Point, u, side_of):
    """Split an unbounded polygon's boundary walk at base and the far point.

    Returns (far, before, middle, after, s_mid, rays) where the boundary walk
    is before + middle + after, the first piece ends and the last begins with
    the split points {base, far} in walk order, and the open middle lies
    strictly on side s_mid.
    """
    verts = list(poly.vertices)
    r0, r1 = poly.rays
    n = len(verts)
    bi = verts.index(base)
    # candidate second intersections, keyed by walk position:
    # (-1, -t) on ray0, (i, 0) at vertex i, (i, t in (0,1)) on edge i, (n, t) on ray1
    hits: list[tuple[tuple, Point]] = []
    m = _line_meet(base, u, verts[0], r0)
    if m is not None and m[1] > 0:
        hits.append(((-1, -m[1]), (verts[0][0] + m[1] * r0[0], verts[0][1] + m[1] * r0[1])))
    for i in range(n):
        if verts[i] != base and side_of(verts[i]) == 0:
            hits.append(((i, Fraction(0)), verts[i]))
        if i < n - 1:
            vi, vj = verts[i], verts[i + 1]
            m = _line_meet(base, u, vi, (vj[0] - vi[0], vj[1] - vi[1]))
            if m is not None and 0 < m[1] < 1:
                hits.append(
                    ((i, m[1]), (vi[0] + m[1] * (vj[0] - vi[0]), vi[1] + m[1] * (vj[1] - vi[1])))
                )
    m = _line_meet(base, u, verts[-1], r1)
    if m is not None and m[1] > 0:
        hits.append(((n, m[1]), (verts[-1][0] + m[1] * r1[0], verts[-1][1] + m[1] * r1[1])))
    if len(hits) != 1:
        raise DomainError(
            f"mutation line must exit the boundary exactly once more, found {len(hits)}"
        )
    far_pos, far = hits[0]
    base_pos = (bi, Fraction(0))
    (p_lo, lo_pt), (p_hi, hi_pt) = sorted([(far_pos, far), (base_pos, base)])

    before: list[Point] = []
    middle: list[Point] = []
    after: list[Point] = []
    for i, v in enumerate(verts):
        if v == base or v == far:
            continue
        pos = (i, Fraction(0))
        if pos < p_lo:
            before.append(v)
        elif pos < p_hi:
            middle.append(v)
        else:
            after.append(v)
    s_mid = next((side_of(p) for p in middle if side_of(p) != 0), 0)
    if s_mid == 0:
        # no middle vertices: the chord's near boundary piece is a single
        # segment; sample its midpoint
        sample = ((lo_pt[0] + hi_pt[0]) / 2, (lo_pt[1] + hi_pt[1]) / 2)
        s_mid = side_of(sample)
        if s_mid == 0:
            raise DomainError("cut line lies along the boundary")
    return far, before + [lo_pt], middle, [hi_pt] + after, s_mid, (r0, r1)


# ---------------------------------------------------------------------------
# borderline: the visible -1-sphere


@dataclass(frozen=True)
class MinusOneSphere:
    start: Point  # focus-focus terminus of the opposite cut
    direction: Vec  # parallel to the borderline pair
    hits: str  # name of the far edge ("R1" or "R2")
    hit_point: Point  # intersection with the far edge's line

    def to_json(self) -> dict:
        return {
            "start": [frac_to_str(self.start[0]), frac_to_str(self.start[1])],
            "direction": list(self.direction),
            "hits": self.hits,
            "hit_point": [frac_to_str(self.hit_point[0]), frac_to_str(self.hit_point[1])],
        }


def _canon_dir(v: Vec) -> Vec:
    v = primitive(v)
    if v[1] < 0 or (v[1] == 0 and v[0] < 0):
        return (-v[0], -v[1])
    return v


def minus_one_sphere(w: WedgeParams, side: Side) -> MinusOneSphere:
    """Divisorial-contraction sphere for a borderline side.

    For a right-borderline wedge (extended left cut parallel to R2), the
    sphere runs from the right focus-focus point z2, parallel to that shared
    direction, to the edge R1; the left-borderline case mirrors this.  The
    hit point is on the far edge's line; sliding the focus-focus point along
    its cut moves the segment onto the edge itself.
    """
    m = classify(w, side)
    if m.status != "borderline":
        raise DomainError(f"{w} is not {side}-borderline (status: {m.status})")
    poly = realize(w)
    x1, x2 = poly.vertices
    r1, r2 = poly.rays
    b1, b2 = cut_dirs(w)
    if side == "right":
        u = _canon_dir(b1)
        start = poly.cuts[1].terminus
        far_base, far_dir, name = x1, r1, "R1"
    else:
        u = _canon_dir(b2)
        start = poly.cuts[0].terminus
        far_base, far_dir, name = x2, r2, "R2"
    meet = _line_meet(start, u, far_base, far_dir)
    assert meet is not None, "borderline sphere direction parallel to the far edge"
    _, t = meet
    hit = (far_base[0] + t * far_dir[0], far_base[1] + t * far_dir[1])
    return MinusOneSphere(start, u, name, hit)
