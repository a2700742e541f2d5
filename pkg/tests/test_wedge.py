from fractions import Fraction

import pytest

from atoric.exactmath import ExtRational, cf_eval
from atoric.wedge import (
    MarkedChain,
    WedgeError,
    WedgeParams,
    boundary_chain,
    bounded,
    cut_dirs,
    delta_invariant,
    from_chain,
    invariants,
    marked_cf,
    pairing_data,
    ray_dirs,
    realize,
    recognize_wedge,
    renormalize,
    sigma,
    validate,
)


class TestValidate:
    def test_quintic_pair(self):
        w = validate((2, 1, 1, 1, 3, Fraction(3, 2)))
        assert sigma(w) == 3
        m = validate((1, 0, 5, 3, 1, Fraction(1, 10)))
        assert sigma(m) == -3

    def test_convention_violations(self):
        with pytest.raises(WedgeError):
            validate((1, 1, 5, 3, 1, 1))  # smooth left must be (1,0)
        with pytest.raises(WedgeError):
            validate((1, 0, 1, 0, 1, 1))  # smooth right must be (1,1)

    def test_coprimality(self):
        with pytest.raises(WedgeError):
            validate((4, 2, 5, 3, 1, 1))

    def test_positive_length(self):
        with pytest.raises(WedgeError):
            validate((1, 0, 5, 3, 1, 0))

    def test_rays_intersect(self):
        # delta <= 0: not a wedge
        with pytest.raises(WedgeError, match="rays intersect"):
            validate((2, 1, 9, 8, 1, 1))


class TestInvariants:
    def test_quintic_numbers(self):
        inv = invariants(validate((2, 1, 1, 1, 3, Fraction(3, 2))))
        assert (inv.sigma, inv.Delta, inv.Omega) == (3, 11, 3)
        minv = invariants(validate((1, 0, 5, 3, 1, 1)))
        assert (minv.sigma, minv.Delta, minv.Omega) == (-3, 11, 3)

    def test_godeaux_numbers(self):
        inv = invariants(validate((4, 3, 5, 2, 1, Fraction(7, 20))))
        assert inv.sigma == 7
        minv = invariants(validate((5, 2, 39, 17, 1, 1)))
        assert (minv.Delta, minv.Omega) == (inv.Delta, inv.Omega)
        assert minv.sigma == -7

    def test_delta_positive_for_all_valid(self):
        # Delta > 0 is part of validation
        assert delta_invariant(validate((1, 0, 5, 3, 1, 1))) == 11


class TestChains:
    def test_boundary_chain_quintic(self):
        mc = boundary_chain(validate((2, 1, 1, 1, 3, 1)))
        assert (mc.left, mc.c, mc.right) == ((4,), 3, ())
        assert marked_cf(mc) == ExtRational(11, 3)

    def test_boundary_chain_godeaux(self):
        mc = boundary_chain(validate((4, 3, 5, 2, 1, 1)))
        assert (mc.left, mc.c, mc.right) == ((2, 2, 6), 1, (3, 5, 2))
        assert marked_cf(mc) == ExtRational(181, 126)

    def test_from_chain_round_trip(self):
        mc = MarkedChain((2, 5, 3), 2, (4,))
        w = from_chain(mc, Fraction(1))
        assert (w.p1, w.q1, w.p2, w.q2, w.c) == (5, 3, 2, 1, 2)
        assert boundary_chain(w) == mc

    def test_from_chain_conventions(self):
        w = from_chain(MarkedChain((), 3, ()), Fraction(2))
        assert (w.p1, w.q1, w.p2, w.q2) == (1, 0, 1, 1)

    def test_from_chain_rejects_non_wahl(self):
        with pytest.raises(WedgeError):
            from_chain(MarkedChain((2, 2), 1, (4,)), Fraction(1))


class TestRealize:
    def test_normal_form(self):
        w = validate((1, 0, 5, 3, 1, 1))
        poly = realize(w)
        assert poly.vertices == ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)))
        assert poly.rays == ((0, 1), (11, 25))
        b1, b2 = cut_dirs(w)
        assert (b1, b2) == ((1, 1), (2, 5))
        assert poly.cuts[0].direction == b1
        assert poly.cuts[1].direction == b2

    def test_ray_directions(self):
        r1, r2 = ray_dirs(validate((5, 3, 14, 9, 1, 1)))
        assert r1 == (9, 25)
        assert r2 == (71, 196)

    def test_monodromy_consistency(self):
        w = validate((5, 3, 14, 9, 1, 1))
        poly = realize(w)
        for cut in poly.cuts:
            assert cut.monodromy.apply_vector(cut.direction) == cut.direction

    def test_bounded_quadrilateral(self):
        w = validate((1, 0, 5, 3, 1, 1))
        poly = bounded(w, Fraction(2), Fraction(3))
        assert len(poly.vertices) == 4
        assert poly.rays is None
        assert poly.vertices[3] == (Fraction(0), Fraction(2))

    def test_pairing_data(self):
        area, k = pairing_data(validate((2, 1, 1, 1, 3, Fraction(3, 2))))
        assert area == Fraction(3)
        assert k == Fraction(3, 2)


class TestRecognize:
    def test_identity_on_normal_form(self):
        w = validate((5, 3, 14, 9, 1, Fraction(7, 3)))
        got, n = recognize_wedge(realize(w))
        assert got == w
        assert n.m == ((1, 0), (0, 1))

    def test_recovers_after_transform(self):
        from atoric.lattice import ZAffineMap, point

        w = validate((4, 3, 5, 2, 1, Fraction(7, 20)))
        m = ZAffineMap(((2, 1), (1, 1)), point(-3, 5))
        got, back = renormalize(realize(w).transform(m))
        assert got == w
        assert back.vertices == realize(w).vertices

    def test_rejects_non_wedge(self):
        from atoric.wedge import GeoPolygon
        from atoric.lattice import point

        tri = GeoPolygon((point(0, 0), point(1, 0), point(0, 1)), None, ())
        with pytest.raises(WedgeError):
            recognize_wedge(tri)


def test_json_round_trip():
    w = validate((5, 2, 39, 17, 1, Fraction(1, 100)))
    assert WedgeParams.from_json(w.to_json()) == w
