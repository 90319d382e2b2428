import random
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from locglob.arith import is_prime, nth_root_mod_prime
from locglob.errors import InputError
from locglob.oracles import hilbert_symbol_search, is_square_mod_prime_brute
from locglob.padics import (PadicNumber, Place, hilbert_symbol, is_nth_power,
                            nth_root, product_formula_check,
                            square_class_approximate)

SMALL_PRIMES = [p for p in range(2, 100) if is_prime(p)]

rationals = st.fractions(min_value=Fraction(-200), max_value=Fraction(200),
                         max_denominator=60).filter(lambda q: q != 0)


def test_place_validation():
    assert str(Place.finite(7)) == "7"
    assert str(Place.real()) == "inf"
    assert Place.parse("inf").is_real
    assert Place.parse(" 13 ").prime == 13
    with pytest.raises(InputError):
        Place.finite(6)
    with pytest.raises(InputError):
        Place.parse("seven")


# --- PadicNumber arithmetic ---------------------------------------------

@given(rationals, rationals, st.sampled_from([2, 3, 7, 13]))
@settings(max_examples=120, deadline=None)
def test_field_ops_match_rationals(a, b, p):
    xa = PadicNumber.from_rational(a, p, 48)
    xb = PadicNumber.from_rational(b, p, 48)
    assert (xa + xb).equals_to_precision(PadicNumber.from_rational(a + b, p, 40))
    assert (xa * xb).equals_to_precision(PadicNumber.from_rational(a * b, p, 40))
    assert (xa - xb).equals_to_precision(PadicNumber.from_rational(a - b, p, 40))
    assert (xa / xb).equals_to_precision(PadicNumber.from_rational(a / b, p, 40))


def test_cancellation_tracks_precision():
    x = PadicNumber.from_rational(Fraction(1, 3), 5, 10)
    y = x - Fraction(1, 3)
    assert y.is_zero
    x2 = PadicNumber.from_rational(1 + 5 ** 6, 5, 10)
    d = x2 - 1
    assert d.valuation == 6
    assert d.precision == 4          # carries consumed six digits


def test_padic_square_and_sqrt():
    for p in (2, 3, 5, 7, 13):
        for q in (Fraction(4), Fraction(9, 16), Fraction(p * p)):
            x = PadicNumber.from_rational(q, p, 40)
            assert x.is_square()
            r = x.sqrt()
            assert (r * r).equals_to_precision(x)
    x = PadicNumber.from_rational(5, 2, 40)
    assert not x.is_square()         # 5 = 101_2 is not 1 mod 8
    assert PadicNumber.from_rational(17, 2, 40).is_square()


# --- n-th power decisions ------------------------------------------------

def test_wang_example():
    assert is_nth_power(16, 8, Place.finite(7))
    assert not is_nth_power(16, 8, Place.finite(2))
    assert is_nth_power(16, 8, Place.real())
    assert is_nth_power(1, 11, Place.finite(3))


def test_wang_sweep_small():
    for p in SMALL_PRIMES:
        assert is_nth_power(16, 8, Place.finite(p)) == (p != 2)


def test_power_errors():
    with pytest.raises(InputError):
        is_nth_power(0, 2, Place.finite(3))
    with pytest.raises(InputError):
        is_nth_power(4, 0, Place.finite(3))


@given(rationals, st.integers(1, 12), st.sampled_from(SMALL_PRIMES))
@settings(max_examples=150, deadline=None)
def test_perfect_powers_recognized(a, n, p):
    assert is_nth_power(a ** n, n, Place.finite(p))
    assert is_nth_power(a ** n, n, Place.real())


@given(rationals, st.integers(2, 4), st.integers(2, 3), st.sampled_from(SMALL_PRIMES))
@settings(max_examples=100, deadline=None)
def test_power_divisor_property(a, n1, n2, p):
    v = Place.finite(p)
    if is_nth_power(a, n1 * n2, v):
        assert is_nth_power(a, n1, v)


def test_negative_and_odd_powers_at_real_place():
    assert is_nth_power(-8, 3, Place.real())
    assert not is_nth_power(-4, 2, Place.real())


def test_structure_criterion_matches_hensel_search():
    # where the sweep modulus is feasible, the unit-group criterion used for
    # huge n must agree with the documented mod p^(2t+1) search
    from locglob.padics import _unit_power_criterion
    rng = random.Random(12)
    checked = 0
    for p, t in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]:
        mod = p ** (2 * t + 1)
        for _ in range(40):
            n = p ** t * rng.choice([x for x in (1, 3, 5, 7, 9, 11) if x % p])
            u = rng.randrange(1, mod)
            if u % p == 0:
                continue
            search = any(pow(x, n, mod) == u for x in range(1, mod) if x % p)
            assert search == _unit_power_criterion(Fraction(u), n, p, t)
            checked += 1
    assert checked > 150


def test_huge_power_degree_terminates():
    # principal units: (Z_2^x)^(2^t) = 1 + 2^(t+2) Z_2
    assert is_nth_power(Fraction(1 + 2 ** 30), 2 ** 28, Place.finite(2))
    assert not is_nth_power(Fraction(1 + 2 ** 29), 2 ** 28, Place.finite(2))
    assert not is_nth_power(Fraction(3), 2 ** 28, Place.finite(2))
    assert is_nth_power(Fraction(1 + 5 ** 12), 5 ** 11, Place.finite(5))
    assert not is_nth_power(Fraction(2 + 5 ** 12), 5 ** 11, Place.finite(5))


def test_nth_root_witnesses():
    r = nth_root(1, 9, Place.finite(5), 20)
    assert (r - 1).is_zero
    r = nth_root(16, 8, Place.finite(7), 32)
    target = PadicNumber.from_rational(16, 7, 32)
    assert (r ** 8).equals_to_precision(target)
    assert nth_root(16, 8, Place.finite(2), 16) is None
    real_root = nth_root(Fraction(27, 8), 3, Place.real())
    assert abs(real_root - 1.5) < 1e-12


@given(st.sampled_from([p for p in SMALL_PRIMES if p > 2]),
       st.integers(2, 50), st.integers(2, 20))
@settings(max_examples=120, deadline=None)
def test_nth_root_mod_prime(p, x, n):
    assume(x % p)
    u = pow(x, n, p)
    r = nth_root_mod_prime(u, n, p)
    assert r is not None
    assert pow(r, n, p) == u


def test_nth_root_hensel_at_dividing_prime():
    # 3-adic cube roots where val_3(n) = 1
    r = nth_root(Fraction(217 ** 3), 3, Place.finite(3), 24)
    assert (r ** 3).equals_to_precision(PadicNumber.from_rational(217 ** 3, 3, 24))


# --- Hilbert symbols ------------------------------------------------------

def test_hilbert_examples():
    assert hilbert_symbol(1, Fraction(-5, 7), Place.finite(3)) == 1
    assert hilbert_symbol(-1, -1, Place.finite(2)) == -1
    assert hilbert_symbol(-1, -1, Place.real()) == -1
    assert hilbert_symbol(3, 5, Place.finite(5)) == -1
    # legendre oracle: 3 is a nonresidue mod 5
    assert not is_square_mod_prime_brute(3, 5)


def test_hilbert_zero_rejected():
    with pytest.raises(InputError):
        hilbert_symbol(0, 3, Place.finite(5))


@pytest.mark.parametrize("p", [2, 3, 5, 7, 11, 13])
def test_hilbert_against_search_oracle(p):
    rng = random.Random(p * 1009)
    for _ in range(25):
        a = rng.randrange(-50, 51) or 1
        b = rng.randrange(-50, 51) or 1
        assert hilbert_symbol(a, b, Place.finite(p)) == hilbert_symbol_search(a, b, p)


@given(rationals, rationals, rationals,
       st.sampled_from([Place.finite(2), Place.finite(3), Place.finite(5),
                        Place.finite(7), Place.real()]))
@settings(max_examples=150, deadline=None)
def test_hilbert_bilinearity(a, b, c, v):
    s = hilbert_symbol
    assert s(a, b, v) == s(b, a, v)
    assert s(a * c, b, v) == s(a, b, v) * s(c, b, v)
    assert s(a, -a, v) == 1
    assert s(a, a * a, v) == 1


def test_product_formula_trivial_first_argument():
    rep = product_formula_check(1, 17)
    assert all(s == 1 for s in rep.symbols)
    assert rep.product == 1


@given(rationals, rationals)
@settings(max_examples=200, deadline=None)
def test_product_formula(a, b):
    rep = product_formula_check(a, b)
    assert rep.product == 1
    prod = 1
    for s in rep.symbols:
        prod *= s
    assert prod == 1


# --- square classes -------------------------------------------------------

def test_square_class_examples():
    assert square_class_approximate({Place.real(): Fraction(1)}) == 1
    x = square_class_approximate({Place.finite(3): Fraction(2)})
    assert is_nth_power(x * 2, 2, Place.finite(3))
    targets = {Place.finite(3): Fraction(2), Place.finite(7): Fraction(5),
               Place.real(): Fraction(1)}
    x = square_class_approximate(targets)
    for v, t in targets.items():
        assert is_nth_power(x * t, 2, v)


def test_square_class_random():
    rng = random.Random(42)
    odd = [p for p in SMALL_PRIMES if p > 2]
    for _ in range(60):
        places = rng.sample(odd, rng.randrange(1, 4))
        targets = {Place.finite(p): Fraction(rng.randrange(1, 400)) for p in places}
        if rng.random() < 0.5:
            targets[Place.finite(2)] = Fraction(rng.choice((3, 5, 7, 2, 6, 10)))
        if rng.random() < 0.5:
            targets[Place.real()] = Fraction(rng.choice((-1, 1, -7, 3)))
        x = square_class_approximate(targets)
        for v, t in targets.items():
            assert is_nth_power(x * t, 2, v)


def test_square_class_rejects_bad_targets():
    with pytest.raises(InputError):
        square_class_approximate({Place.finite(3): Fraction(0)})
    with pytest.raises(InputError):
        square_class_approximate({"3": Fraction(2)})
