from fractions import Fraction

import pytest

from atoric.exactmath import DomainError, QuadraticSurd
from atoric.flip import (
    NoIntegralFlip,
    antiflip_in_bounds,
    cohomology_path,
    flip,
    initial_antiflip,
)
from atoric.wedge import invariants, sigma, validate


QUINTIC_PLUS = validate((2, 1, 1, 1, 3, Fraction(3, 2)))
GODEAUX_PLUS = validate((4, 3, 5, 2, 1, Fraction(7, 20)))


class TestInitialAntiflip:
    def test_quintic(self):
        res = initial_antiflip(QUINTIC_PLUS, Fraction(1, 10))
        m = res.minus
        assert (m.p1, m.q1, m.p2, m.q2, m.c) == (1, 0, 5, 3, 1)
        assert m.a == Fraction(1, 10)
        assert res.delta_used == 3
        assert res.q1_adjusted  # the (1,1) vertex moved to the left slot

    def test_godeaux(self):
        res = initial_antiflip(GODEAUX_PLUS, Fraction(1, 100))
        m = res.minus
        assert (m.p1, m.q1, m.p2, m.q2, m.c) == (5, 2, 39, 17, 1)
        assert res.delta_used == 7
        assert not res.q1_adjusted

    def test_invariants_preserved_sigma_negated(self):
        for plus, am in [(QUINTIC_PLUS, Fraction(1, 10)), (GODEAUX_PLUS, Fraction(1, 100))]:
            res = initial_antiflip(plus, am)
            ip, im = invariants(plus), invariants(res.minus)
            assert (im.Delta, im.Omega) == (ip.Delta, ip.Omega)
            assert im.sigma == -ip.sigma

    def test_k_negative_input_rejected(self):
        with pytest.raises(DomainError):
            initial_antiflip(validate((1, 0, 5, 3, 1, 1)), Fraction(1, 10))

    def test_nonpositive_length_rejected(self):
        with pytest.raises(DomainError):
            initial_antiflip(QUINTIC_PLUS, 0)


class TestAntiflipInBounds:
    def test_quintic_bounds_and_certificate(self):
        res, bounds, cert = antiflip_in_bounds(QUINTIC_PLUS, 1, 1, Fraction(1, 10))
        assert bounds == (Fraction(5, 2), Fraction(9, 10))
        assert cert is not None
        assert cert.verdict == "FitsForever"
        assert cert.a_minus == Fraction(1, 10)

    def test_no_room(self):
        with pytest.raises(DomainError, match="no room"):
            antiflip_in_bounds(QUINTIC_PLUS, 1, Fraction(1, 10), Fraction(1, 10))


class TestFlip:
    def test_quintic_round_trip(self):
        minus = initial_antiflip(QUINTIC_PLUS, Fraction(1, 10)).minus
        res = flip(minus, Fraction(3, 2))
        assert res.kind == "FlipTo"
        assert res.plus == QUINTIC_PLUS
        assert res.descent_orbit[0] == minus

    def test_godeaux_round_trip(self):
        minus = initial_antiflip(GODEAUX_PLUS, Fraction(1, 100)).minus
        res = flip(minus, Fraction(7, 20))
        assert res.kind == "FlipTo"
        assert res.plus == GODEAUX_PLUS

    def test_descent_from_deep_wedge(self):
        # two right mutations in, the flip must first descend back
        from atoric.mutate import mutate

        minus = initial_antiflip(QUINTIC_PLUS, Fraction(1, 10)).minus
        deep = mutate(mutate(minus, "right"), "right")
        res = flip(deep, Fraction(3, 2))
        assert res.kind == "FlipTo"
        assert res.plus == QUINTIC_PLUS
        assert len(res.descent_orbit) == 3
        assert res.descent_orbit[-1] == minus

    def test_divisorial_contraction(self):
        res = flip(validate((1, 0, 1, 1, 1, 2)), Fraction(1, 2))
        assert res.kind == "DivisorialContraction"
        assert res.plus is None
        assert res.sphere is not None

    def test_k_positive_input_rejected(self):
        with pytest.raises(DomainError):
            flip(QUINTIC_PLUS, 1)

    def test_result_is_k_positive(self):
        minus = initial_antiflip(GODEAUX_PLUS, Fraction(1, 100)).minus
        res = flip(minus, Fraction(7, 20))
        assert sigma(res.plus) == 7


class TestCohomologyPath:
    def test_quintic_numbers(self):
        p = cohomology_path(QUINTIC_PLUS, Fraction(1, 10), 1)
        assert p.start == 3
        assert p.end == Fraction(-1, 2)
        assert p.affine_distance == Fraction(7, 2)
        assert p.gap_low == 3
        assert p.epsilon.sign() == 1

    def test_godeaux_numbers(self):
        p = cohomology_path(GODEAUX_PLUS, Fraction(1, 100), Fraction(1, 20))
        assert p.start == 7
        assert p.end == Fraction(-39, 20)
        assert p.affine_distance == 7 + Fraction(39, 20)

    def test_epsilon_formula(self):
        # epsilon = l2 (1 - lambda-^2) p1 p2 of the antiflipped wedge
        from atoric.mori import max_antiflip_param

        p = cohomology_path(QUINTIC_PLUS, Fraction(1, 10), 1)
        cap, _ = max_antiflip_param(1, 3)
        assert p.epsilon == cap * QuadraticSurd.rational(5, cap.d)
        assert p.gap_high == QuadraticSurd.rational(3, cap.d) + p.epsilon

    def test_requires_normalized_length(self):
        bad = validate((2, 1, 1, 1, 3, 1))
        with pytest.raises(DomainError, match="normalized"):
            cohomology_path(bad, Fraction(1, 10), 1)
