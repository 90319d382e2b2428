import random
from fractions import Fraction

import pytest

from locglob.arith import is_prime
from locglob.elliptic import (Curve, divisible_by_2k, group_law,
                              halve_point, negate, points_equal,
                              propagation_check, quad_local_roots, scalar_mul)
from locglob.errors import InputError
from locglob.oracles import duplication_x, propagation_by_torsion_translates
from locglob.padics import Place

DZ = Curve(Fraction(-15), Fraction(5), Fraction(10))
DZ_P = DZ.point(Fraction(1561, 144), Fraction(19459, 1728))
TRIPLE = ((Fraction(0), Fraction(1)), (Fraction(0), Fraction(5)),
          (Fraction(0), Fraction(-5)))

ODD_PRIMES_100 = [p for p in range(3, 100) if is_prime(p)]


def _random_rational_points(curve, rng, count):
    """Random points generated from the known rational points by the group
    law, so associativity checks run on honest curve data."""
    base = [DZ_P] + curve.two_torsion()[1:]
    out = []
    while len(out) < count:
        p = curve.infinity()
        for _ in range(rng.randrange(1, 4)):
            q = rng.choice(base)
            if rng.random() < 0.5:
                q = negate(q)
            p = group_law(curve, p, q)
        out.append(p)
    return out


def test_curve_validation():
    with pytest.raises(InputError):
        Curve(Fraction(1), Fraction(1), Fraction(2))
    with pytest.raises(InputError):
        DZ.point(Fraction(0), Fraction(1))


def test_group_law_identity_and_inverse():
    assert points_equal(group_law(DZ, DZ_P, DZ.infinity()), DZ_P)
    assert group_law(DZ, DZ_P, negate(DZ_P)).infinity
    t = DZ.point(Fraction(-15), Fraction(0))
    assert scalar_mul(DZ, 2, t).infinity


def test_group_law_associativity_spot_checks():
    rng = random.Random(8)
    pts = _random_rational_points(DZ, rng, 12)
    for _ in range(25):
        a, b, c = (rng.choice(pts) for _ in range(3))
        lhs = group_law(DZ, group_law(DZ, a, b), c)
        rhs = group_law(DZ, a, group_law(DZ, b, c))
        assert points_equal(lhs, rhs)


def test_halve_origin_gives_torsion_fiber():
    fiber = halve_point(DZ, DZ.infinity())
    assert len(fiber) == 4
    assert sorted(str(q.x) for q in fiber if not q.infinity) == ["-15", "10", "5"]


def test_global_halves_frozen_values():
    # derived by exact rational square roots and verified by doubling:
    # x(P) - e_i are (61/12)^2, (29/12)^2, (11/12)^2
    assert (DZ_P.x - DZ.e1) == Fraction(3721, 144) == Fraction(61, 12) ** 2
    assert (DZ_P.x - DZ.e2) == Fraction(841, 144) == Fraction(29, 12) ** 2
    assert (DZ_P.x - DZ.e3) == Fraction(121, 144) == Fraction(11, 12) ** 2
    halves = halve_point(DZ, DZ_P)
    xs = sorted(str(h.x) for h in halves)
    assert xs == ["-35/9", "1", "30", "65/4"]
    for h in halves:
        assert points_equal(scalar_mul(DZ, 2, h), DZ_P)
        assert duplication_x(DZ, h.x) == DZ_P.x


def test_halves_double_back_locally():
    for p in (3, 5, 17):
        place = Place.finite(p)
        halves = halve_point(DZ, DZ_P, place)
        assert halves
        for h in halves:
            doubled = group_law(DZ, h, h)
            assert (doubled.x - DZ_P.x).is_zero
            assert (doubled.y - DZ_P.y).is_zero


def test_no_second_halving_at_two():
    halves = halve_point(DZ, DZ_P, Place.finite(2))
    assert len(halves) == 4
    for h in halves:
        assert halve_point(DZ, h, Place.finite(2)) == []


def test_divisibility_table_small():
    for p in ODD_PRIMES_100:
        assert divisible_by_2k(DZ, DZ_P, 2, Place.finite(p))
    assert not divisible_by_2k(DZ, DZ_P, 2, Place.finite(2))
    assert divisible_by_2k(DZ, DZ_P, 2, Place.real())
    assert divisible_by_2k(DZ, DZ.infinity(), 7, Place.finite(2))


def test_global_implies_local():
    # 4 * DZ_P is divisible by 4 globally; check the implication at many places
    q = scalar_mul(DZ, 4, DZ_P)
    assert divisible_by_2k(DZ, q, 2, None)
    for p in ODD_PRIMES_100:
        assert divisible_by_2k(DZ, q, 2, Place.finite(p))
    assert divisible_by_2k(DZ, q, 2, Place.finite(2))
    assert divisible_by_2k(DZ, q, 2, Place.real())


def test_two_divisibility_square_criterion():
    # for P not 2-torsion, halvable at v iff all x(P) - e_i are squares in Q_v
    from locglob.padics import is_nth_power
    rng = random.Random(31)
    pts = [p for p in _random_rational_points(DZ, rng, 10) if not p.infinity
           and p.y != 0]
    for pt in pts:
        for p in (2, 3, 5, 7, 11):
            place = Place.finite(p)
            expect = all(is_nth_power(pt.x - e, 2, place) if pt.x != e else True
                         for e in DZ.roots)
            got = bool(halve_point(DZ, pt, place))
            assert got == expect, (pt, p)


def test_halving_two_torsion():
    # (10, 0): x - e_i = (25, 5, 0); the zero square root collapses the
    # sign patterns and the fiber solvability is governed by 5
    t = DZ.point(Fraction(10), Fraction(0))
    assert halve_point(DZ, t) == []                       # 5 is not a rational square
    assert halve_point(DZ, t, Place.finite(5)) == []      # odd valuation
    from locglob.oracles import is_square_mod_prime_brute
    assert is_square_mod_prime_brute(5, 41)
    local = halve_point(DZ, t, Place.finite(41))
    assert len(local) == 4
    for h in local:
        doubled = group_law(DZ, h, h)
        assert (doubled.x - t.x).is_zero and (doubled.y - t.y).is_zero
    # over R the fiber splits across both components
    real = halve_point(DZ, t, Place.real())
    assert len(real) == 4
    assert sorted(round(h.x, 3) for h in real) == [-1.18, -1.18, 21.18, 21.18]
    egg = DZ.point(Fraction(-15), Fraction(0))
    assert halve_point(DZ, egg, Place.real()) == []


def test_real_divisibility_component_rule():
    egg_point = DZ.point(Fraction(-15), Fraction(0))   # leftmost root: egg
    assert not divisible_by_2k(DZ, egg_point, 1, Place.real())
    top = DZ.point(Fraction(10), Fraction(0))
    assert divisible_by_2k(DZ, top, 1, Place.real())
    assert divisible_by_2k(DZ, DZ_P, 3, Place.real())


def test_halving_completeness_local():
    # halving 2Q must recover Q: random local points, several curves and
    # primes, so missed sign patterns would surface as divisibility
    # false negatives
    from locglob.elliptic import CurvePoint, _double
    from locglob.padics import PadicNumber
    rng = random.Random(31337)
    curves = [DZ, Curve(Fraction(0), Fraction(1), Fraction(-1)),
              Curve(Fraction(-2), Fraction(3), Fraction(7))]
    total = 0
    for curve in curves:
        for p in (3, 5, 7, 2):
            place = Place.finite(p)
            tries = 0
            pts = []
            while len(pts) < 4 and tries < 300:
                tries += 1
                x = Fraction(rng.randrange(-40, 40), rng.randrange(1, 12))
                if x in curve.roots:
                    continue
                rhs = PadicNumber.from_rational(curve.rhs(x), p, 64)
                if rhs.is_zero or not rhs.is_square():
                    continue
                pts.append(CurvePoint(PadicNumber.from_rational(x, p, 64),
                                      rhs.sqrt(), False))
            for q in pts:
                twice = _double(curve, q)
                if twice.infinity:
                    continue
                halves = halve_point(curve, twice, place)
                assert any(points_equal(h, q) for h in halves)
                total += 1
    assert total >= 30


def test_quad_local_roots():
    assert not quad_local_roots(TRIPLE, Place.finite(2))
    assert quad_local_roots(TRIPLE, Place.finite(3))
    assert quad_local_roots(TRIPLE, Place.real())
    for p in ODD_PRIMES_100:
        assert quad_local_roots(TRIPLE, Place.finite(p))
    # general quadratics via discriminant, incl. a rational double root
    assert quad_local_roots([(Fraction(2), Fraction(1))], Place.finite(7))
    assert not quad_local_roots([(Fraction(0), Fraction(1))], Place.real())


def test_propagation_examples():
    assert propagation_check(DZ, DZ.infinity(), 4, 2, Place.finite(2))
    assert propagation_check(DZ, DZ_P, 4, 2, Place.finite(3))
    assert not propagation_check(DZ, DZ_P, 4, 2, Place.finite(2))
    with pytest.raises(InputError):
        propagation_check(DZ, DZ_P, 3, 2, Place.finite(3))


def test_propagation_matches_torsion_translate_oracle():
    for p in (2, 3, 5, 7):
        direct = propagation_check(DZ, DZ_P, 4, 2, Place.finite(p))
        oracle = propagation_by_torsion_translates(DZ, DZ_P, 4, 2, Place.finite(p))
        assert direct == oracle, p
