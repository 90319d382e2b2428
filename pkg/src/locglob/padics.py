"""Places of Q, exact p-adic arithmetic at finite precision, n-th power
tests by Hensel lifting, Hilbert symbols, the product-formula check, and
constructive approximation of square classes.

Rationals are kept exact (Fraction); truncation to a PadicNumber happens
only when a value is embedded.  Decisions about exact rational inputs are
therefore exact, with no precision horizon.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .arith import (factorize, int_valuation, is_prime, legendre_symbol,
                    rational_unit_mod, rational_valuation, sqrt_mod_prime)
from .errors import InputError, PrecisionError, SelfCheckError

DEFAULT_PRECISION = 64
_EXACT = 10 ** 9            # precision sentinel for exact zero
_MIN_MARGIN = 8             # verdicts this close to the horizon are retried


@dataclass(frozen=True)
class Place:
    """A place of Q: a finite prime or the real place (prime None)."""

    prime: int | None

    def __post_init__(self):
        if self.prime is not None:
            if self.prime < 2 or not is_prime(self.prime):
                raise InputError("finite place must be a prime: %r" % (self.prime,))

    @classmethod
    def finite(cls, p: int) -> "Place":
        return cls(int(p))

    @classmethod
    def real(cls) -> "Place":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "Place":
        text = str(text).strip()
        if text in ("inf", "oo", "infinity"):
            return cls.real()
        try:
            return cls.finite(int(text))
        except ValueError:
            raise InputError("cannot parse place %r" % text) from None

    @property
    def is_real(self) -> bool:
        return self.prime is None

    def __str__(self):
        return "inf" if self.prime is None else str(self.prime)


def parse_rational(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise InputError("cannot parse rational %r" % (text,)) from None


@dataclass(frozen=True)
class PadicNumber:
    """p^valuation * unit with unit invertible mod p^precision.

    unit == 0 encodes a zero; then `precision` is the absolute exponent to
    which the value is known to vanish (_EXACT for a true zero).  For
    nonzero values `precision` counts known digits of the unit part, and
    arithmetic tracks it pessimistically.
    """

    prime: int
    valuation: int
    unit: int
    precision: int

    def __post_init__(self):
        if self.unit:
            mod = self.prime ** self.precision
            object.__setattr__(self, "unit", self.unit % mod)
            if self.unit % self.prime == 0:
                raise InputError("unit part is divisible by p")
        if self.precision < 1:
            raise PrecisionError("p-adic precision exhausted")

    # -- constructors

    @classmethod
    def zero(cls, p: int, abs_precision: int = _EXACT) -> "PadicNumber":
        return cls(p, 0, 0, abs_precision)

    @classmethod
    def from_rational(cls, q, p: int, precision: int = DEFAULT_PRECISION) -> "PadicNumber":
        q = Fraction(q)
        if q == 0:
            return cls.zero(p)
        v = rational_valuation(q, p)
        u = rational_unit_mod(q, p, p ** precision)
        return cls(p, v, u, precision)

    # -- predicates

    @property
    def is_zero(self) -> bool:
        return self.unit == 0

    @property
    def abs_known(self) -> int:
        """Absolute exponent to which the value is known."""
        if self.is_zero:
            return self.precision
        return self.valuation + self.precision

    def exact_valuation(self) -> int:
        if self.is_zero:
            raise PrecisionError("valuation of an (approximate) zero")
        return self.valuation

    # -- arithmetic

    def _check_prime(self, other):
        if self.prime != other.prime:
            raise InputError("mixed primes in p-adic arithmetic")

    def _hint(self) -> int:
        return self.precision if (not self.is_zero and self.precision < _EXACT) \
            else DEFAULT_PRECISION

    def __neg__(self):
        if self.is_zero:
            return self
        return PadicNumber(self.prime, self.valuation,
                           self.prime ** self.precision - self.unit, self.precision)

    def __add__(self, other):
        other = _coerce(other, self.prime, self._hint())
        self._check_prime(other)
        p = self.prime
        if self.is_zero and other.is_zero:
            return PadicNumber.zero(p, min(self.precision, other.precision))
        if self.is_zero:
            return other._truncate_abs(self.precision)
        if other.is_zero:
            return self._truncate_abs(other.precision)
        v = min(self.valuation, other.valuation)
        k = min(self.abs_known, other.abs_known) - v
        if k < 1:
            raise PrecisionError("complete cancellation of known digits")
        mod = p ** k
        s = (self.unit * p ** (self.valuation - v)
             + other.unit * p ** (other.valuation - v)) % mod
        if s == 0:
            return PadicNumber.zero(p, v + k)
        shift = int_valuation(s, p)
        if shift >= k:
            return PadicNumber.zero(p, v + k)
        return PadicNumber(p, v + shift, s // p ** shift, k - shift)

    def __radd__(self, other):
        return self + other

    def __sub__(self, other):
        return self + (-_coerce(other, self.prime, self._hint()))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other, self.prime, self._hint())
        self._check_prime(other)
        p = self.prime
        if self.is_zero or other.is_zero:
            if self.is_zero and other.is_zero:
                return PadicNumber.zero(p, min(_EXACT, self.precision + other.precision))
            z, nz = (self, other) if self.is_zero else (other, self)
            if z.precision >= _EXACT:
                return PadicNumber.zero(p)
            return PadicNumber.zero(p, z.precision + nz.valuation)
        n = min(self.precision, other.precision)
        return PadicNumber(p, self.valuation + other.valuation,
                           (self.unit * other.unit) % p ** n, n)

    def __rmul__(self, other):
        return self * other

    def __truediv__(self, other):
        other = _coerce(other, self.prime, self._hint())
        self._check_prime(other)
        if other.is_zero:
            raise PrecisionError("division by an (approximate) zero")
        p = self.prime
        if self.is_zero:
            if self.precision >= _EXACT:
                return PadicNumber.zero(p)
            return PadicNumber.zero(p, self.precision - other.valuation)
        n = min(self.precision, other.precision)
        inv = pow(other.unit % p ** n, -1, p ** n)
        return PadicNumber(p, self.valuation - other.valuation,
                           (self.unit * inv) % p ** n, n)

    def __rtruediv__(self, other):
        return _coerce(other, self.prime, self._hint()) / self

    def __pow__(self, k: int):
        if k < 0:
            return PadicNumber.from_rational(1, self.prime, DEFAULT_PRECISION) / self ** (-k)
        out = PadicNumber.from_rational(1, self.prime,
                                        self.precision if not self.is_zero else DEFAULT_PRECISION)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def _truncate_abs(self, abs_prec: int) -> "PadicNumber":
        """Forget digits above absolute exponent abs_prec."""
        if abs_prec >= self.abs_known:
            return self
        if self.is_zero:
            return PadicNumber.zero(self.prime, abs_prec)
        k = abs_prec - self.valuation
        if k < 1:
            return PadicNumber.zero(self.prime, abs_prec)
        return PadicNumber(self.prime, self.valuation,
                           self.unit % self.prime ** k, k)

    def equals_to_precision(self, other) -> bool:
        diff = self - _coerce(other, self.prime, self._hint())
        return diff.is_zero

    def residue(self, digits: int) -> int:
        """The integer value mod p^digits; requires valuation >= 0."""
        if self.is_zero:
            return 0
        if self.valuation < 0:
            raise InputError("negative valuation has no residue")
        if self.abs_known < digits:
            raise PrecisionError("not enough digits for the requested residue")
        return (self.unit * self.prime ** self.valuation) % self.prime ** digits

    def __str__(self):
        if self.is_zero:
            return "O(%d^%s)" % (self.prime, self.precision if self.precision < _EXACT else "oo")
        return "%d^%d * (%d + O(%d^%d))" % (self.prime, self.valuation,
                                            self.unit, self.prime, self.precision)

    def is_square(self) -> bool:
        """Exact for the represented approximation; raises when undecidable."""
        if self.is_zero:
            if self.precision >= _EXACT:
                return True
            raise PrecisionError("squareness of an approximate zero")
        p = self.prime
        need = 3 if p == 2 else 1
        if self.precision < need + _MIN_MARGIN:
            raise PrecisionError("squareness verdict too close to the horizon")
        if self.valuation % 2:
            return False
        if p == 2:
            return self.unit % 8 == 1
        return legendre_symbol(self.unit % p, p) == 1

    def sqrt(self) -> "PadicNumber":
        """A square root; ValueError if is_square() is false."""
        if not self.is_square():
            raise InputError("p-adic number is not a square")
        p = self.prime
        if self.is_zero:
            return self
        n = self.precision
        if p == 2:
            root = _sqrt_unit_2adic(self.unit, n)
            return PadicNumber(p, self.valuation // 2, root % 2 ** (n - 1), n - 1)
        root = _sqrt_unit_odd(self.unit, p, n)
        return PadicNumber(p, self.valuation // 2, root, n)


def _coerce(x, p: int, precision: int = DEFAULT_PRECISION) -> PadicNumber:
    if isinstance(x, PadicNumber):
        return x
    return PadicNumber.from_rational(Fraction(x), p, precision)


def _sqrt_unit_odd(u: int, p: int, n: int) -> int:
    x = sqrt_mod_prime(u % p, p)
    if x is None:
        raise InputError("unit is not a square mod p")
    k = 1
    mod = p
    while k < n:
        k = min(2 * k, n)
        mod = p ** k
        # Newton: x <- x - (x^2 - u) / (2x)
        x = (x - (x * x - u) * pow(2 * x, -1, mod)) % mod
    return x % p ** n


def _sqrt_unit_2adic(u: int, n: int) -> int:
    if u % 8 != 1:
        raise InputError("2-adic unit is not a square")
    x = 1
    for j in range(3, n):
        if (x * x - u) % 2 ** (j + 1):
            x += 2 ** (j - 1)
    return x % 2 ** n


# ---------------------------------------------------------------------------
# n-th power decisions (exact for rational inputs)


_SEARCH_MODULUS_LIMIT = 2 ** 20


def is_nth_power(a, n: int, place: Place) -> bool:
    """Whether a lies in (Q_v^x)^n; exact.

    Finite v: n must divide the valuation and the unit part must have an
    n-th root.  The unit decision reduces to the residue test mod p when
    p does not divide n, and otherwise to a search mod p^(2 val_p(n) + 1),
    the Hensel sufficiency modulus for x^n - u; when that modulus is too
    large to sweep, the equivalent unit-group criterion decides instead
    (u^(p-1) = 1 mod p^(t+1) for odd p, u = 1 mod 2^(t+2) at p = 2).
    """
    a = Fraction(a)
    if a == 0:
        raise InputError("zero is excluded from power tests")
    if n < 1:
        raise InputError("power degree must be >= 1")
    if n == 1:
        return True
    if place.is_real:
        return a > 0 or n % 2 == 1
    p = place.prime
    v = rational_valuation(a, p)
    if v % n:
        return False
    t = int_valuation(n, p) if n % p == 0 else 0
    if t == 0:
        g = gcd(n, p - 1)
        u = rational_unit_mod(a, p, p)
        return pow(u, (p - 1) // g, p) == 1
    mod = p ** (2 * t + 1)
    if mod <= _SEARCH_MODULUS_LIMIT:
        u = rational_unit_mod(a, p, mod)
        return any(pow(x, n, mod) == u for x in range(1, mod) if x % p)
    return _unit_power_criterion(a, n, p, t)


def _unit_power_criterion(a, n: int, p: int, t: int) -> bool:
    """(Z_p^x)^n membership through the unit-group structure: the principal
    units form a Z_p-module where p^t-th powers sit at depth t further, and
    the prime-to-p part is the cyclic residue test."""
    n_odd = n // p ** t
    if p == 2:
        # {+-1} x (1 + 4 Z_2): odd powers are everything, 2^t-th powers are
        # exactly 1 + 2^(t+2) Z_2
        u = rational_unit_mod(a, 2, 2 ** (t + 2))
        return u == 1
    g = gcd(n_odd, p - 1)
    u1 = rational_unit_mod(a, p, p)
    if pow(u1, (p - 1) // g, p) != 1:
        return False
    u = rational_unit_mod(a, p, p ** (t + 1))
    return pow(u, p - 1, p ** (t + 1)) == 1


def nth_root(a, n: int, place: Place, precision: int = DEFAULT_PRECISION):
    """A witness root when is_nth_power holds: a PadicNumber at the stated
    precision (finite v, verified by re-powering) or a float (real place);
    None when the power test fails."""
    a = Fraction(a)
    if a == 0 or n < 1:
        raise InputError("invalid root request")
    if not is_nth_power(a, n, place):
        return None
    if place.is_real:
        mag = abs(a) ** Fraction(1, n)
        root = float(mag) if a > 0 or n % 2 == 1 else 0.0
        if a < 0:
            root = -root
        assert abs(root ** n - float(a)) <= 1e-9 * abs(float(a))
        return root
    p = place.prime
    v = rational_valuation(a, p)
    t = int_valuation(n, p) if n % p == 0 else 0
    work = precision + 2 * t + 2
    mod = p ** work
    u = rational_unit_mod(a, p, mod)
    x = _unit_nth_root(u, n, p, t, work)
    root = PadicNumber(p, v // n, x % p ** precision, precision)
    check = root ** n
    target = PadicNumber.from_rational(a, p, precision)
    if not (check - target).is_zero:
        raise SelfCheckError("re-powered root does not match the input")
    return root


def _unit_nth_root(u: int, n: int, p: int, t: int, work: int) -> int:
    """x with x^n == u mod p^work for a unit u known to be an n-th power.

    Digit-by-digit lifting: with f(x) = 0 mod p^j for j >= 2t + 1, the update
    x += y p^(j-t) with y = -(f(x)/p^j) / (f'(x)/p^t) mod p gains one digit
    per step, exactly.
    """
    from .arith import nth_root_mod_prime
    mod = p ** work
    if t == 0:
        x = nth_root_mod_prime(u % p, n, p)
        if x is None:
            raise SelfCheckError("power test and root construction disagree")
        j = 1
    else:
        seed_mod = p ** (2 * t + 1)
        if seed_mod > _SEARCH_MODULUS_LIMIT:
            raise InputError("root witness construction needs a sweep mod p^%d; "
                             "use is_nth_power for the decision alone" % (2 * t + 1))
        x = next(x for x in range(1, seed_mod)
                 if x % p and pow(x, n, seed_mod) == u % seed_mod)
        j = 2 * t + 1
    n0 = n // p ** t
    while j < work:
        pj1 = p ** (j + 1)
        fx = (pow(x, n, pj1) - u) % pj1
        if fx:
            c = (fx // p ** j) % p
            d0 = (n0 * pow(x, n - 1, p)) % p
            y = (-c) * pow(d0, -1, p) % p
            x = (x + y * p ** (j - t)) % mod
        j += 1
    if pow(x, n, mod) != u % mod:
        raise SelfCheckError("Hensel lifting failed to converge")
    return x


# ---------------------------------------------------------------------------
# Hilbert symbols


def hilbert_symbol(a, b, place: Place) -> int:
    """(a, b)_v in {+1, -1}: solvability of z^2 = a x^2 + b y^2 over Q_v.

    Classical residue formulas: the tame formula for odd p, the epsilon/omega
    unit formulas at p = 2, sign inspection at the real place.
    """
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 or b == 0:
        raise InputError("Hilbert symbol arguments must be nonzero")
    if place.is_real:
        return -1 if a < 0 and b < 0 else 1
    p = place.prime
    alpha = rational_valuation(a, p)
    beta = rational_valuation(b, p)
    if p != 2:
        u = rational_unit_mod(a, p, p)
        w = rational_unit_mod(b, p, p)
        sign = 1
        if (alpha * beta) % 2 and (p - 1) // 2 % 2:
            sign = -sign
        if beta % 2:
            sign *= legendre_symbol(u, p)
        if alpha % 2:
            sign *= legendre_symbol(w, p)
        return sign
    u = rational_unit_mod(a, 2, 8)
    w = rational_unit_mod(b, 2, 8)
    eps_u = (u - 1) // 2 % 2
    eps_w = (w - 1) // 2 % 2
    om_u = (u * u - 1) // 8 % 2
    om_w = (w * w - 1) // 8 % 2
    e = eps_u * eps_w + alpha * om_w + beta * om_u
    return -1 if e % 2 else 1


@dataclass(frozen=True)
class ProductReport:
    places: tuple
    symbols: tuple
    product: int


def product_formula_check(a, b) -> ProductReport:
    """Hilbert symbols of (a, b) at every place where they can be -1.

    The product over all places must be +1; a violation raises, since it
    would mean the symbol formulas are broken.
    """
    a = Fraction(a)
    b = Fraction(b)
    if a == 0 or b == 0:
        raise InputError("arguments must be nonzero")
    primes = {2}
    for q in (a, b):
        primes.update(factorize(q.numerator))
        primes.update(factorize(q.denominator))
    places = [Place.finite(p) for p in sorted(primes)] + [Place.real()]
    symbols = tuple(hilbert_symbol(a, b, v) for v in places)
    prod = 1
    for s in symbols:
        prod *= s
    if prod != 1:
        raise SelfCheckError("Hilbert product formula violated for (%s, %s)" % (a, b))
    return ProductReport(tuple(places), symbols, prod)


# ---------------------------------------------------------------------------
# constructive weak approximation for square classes


def square_class_approximate(targets: dict) -> Fraction:
    """A rational x with x * t a square in Q_v for every (v, t) given.

    Chinese-remainder assembly: match the valuation parity and the unit
    residue (mod p for odd p, mod 8 at p = 2) at each finite place, then fix
    the sign for the real place.  The output is verified post hoc with the
    exact square test at every listed place; failure raises.
    """
    if not targets:
        return Fraction(1)
    norm: dict[Place, Fraction] = {}
    for v, t in targets.items():
        if not isinstance(v, Place):
            raise InputError("targets must be keyed by Place")
        t = Fraction(t)
        if t == 0:
            raise InputError("target square classes must be nonzero")
        if v in norm:
            raise InputError("duplicate place in targets")
        norm[v] = t

    sign = 1
    real_target = None
    for v, t in norm.items():
        if v.is_real:
            real_target = t
            sign = 1 if t > 0 else -1
    finite = sorted(((v.prime, t) for v, t in norm.items() if not v.is_real))

    base = Fraction(sign)
    for p, t in finite:
        if rational_valuation(t, p) % 2:
            base *= p
    # unit congruences at each finite place
    residues = []
    moduli = []
    for p, t in finite:
        mod = 8 if p == 2 else p
        want = rational_unit_mod(t, p, mod)
        have = rational_unit_mod(base, p, mod)
        residues.append(want * pow(have, -1, mod) % mod)
        moduli.append(mod)
    mult = 1
    if moduli:
        m_all = 1
        for m in moduli:
            m_all *= m
        x = 0
        for r, m in zip(residues, moduli):
            other = m_all // m
            x += r * other * pow(other, -1, m)
        mult = x % m_all
        if mult == 0:
            mult = m_all
    out = base * mult
    for v, t in norm.items():
        if not is_nth_power(out * t, 2, v):
            raise SelfCheckError("square-class construction failed verification at %s" % v)
    if real_target is None and out < 0:
        raise SelfCheckError("sign drift in square-class construction")
    return out
