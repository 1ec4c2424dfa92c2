"""Exact integer/rational arithmetic with p-adic valuations.

Every scalar in this package is an exact rational (``fractions.Fraction``,
re-exported here as ``Rational``) or an exact integer.  No floating point is
used anywhere: every downstream statement is a congruence or a valuation
inequality, and both are decided exactly.

Valuations are values of type :class:`ValP`: either a rational number or the
distinguished +infinity (the valuation of zero).  Half-integer valuations
arise from composite expressions such as r/2 - n - v_p(L); comparisons
against thresholds like r/2 - j therefore stay within ValP.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt

Rational = Fraction

__all__ = [
    "Rational",
    "ValP",
    "InvalidPrimeError",
    "is_prime",
    "check_prime",
    "vp_int",
    "vp",
    "vp_total",
    "vp_factorial",
    "falling_factorial",
    "binom",
    "binom_mod",
    "harmonic",
    "rational_mod",
    "as_rational",
]


class InvalidPrimeError(ValueError):
    """Raised when an argument that must be prime is not."""


@lru_cache(maxsize=None)
def is_prime(p: int) -> bool:
    """Deterministic primality by trial division (inputs here are small)."""
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0 or p % 3 == 0:
        return False
    d = 5
    while d <= isqrt(p):
        if p % d == 0 or p % (d + 2) == 0:
            return False
        d += 6
    return True


def check_prime(p: int, minimum: int = 2) -> int:
    if not is_prime(p) or p < minimum:
        raise InvalidPrimeError(f"p = {p} is not a prime >= {minimum}")
    return p


class ValP:
    """A p-adic valuation value: an exact rational or +infinity.

    Instances are immutable.  Ordering and addition treat INF as absorbing,
    so checks like ``term.slack > 0`` are defined even for terms whose
    coefficient vanishes identically.
    """

    __slots__ = ("_value",)

    def __init__(self, value: Fraction | int | None):
        # None encodes +infinity
        object.__setattr__(self, "_value", None if value is None else Fraction(value))

    def __setattr__(self, name, value):  # pragma: no cover - guard
        raise AttributeError("ValP is immutable")

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @property
    def value(self) -> Fraction:
        if self._value is None:
            raise ValueError("+infinity has no finite value")
        return self._value

    def __eq__(self, other) -> bool:
        if isinstance(other, ValP):
            return self._value == other._value
        if isinstance(other, (int, Fraction)):
            return self._value is not None and self._value == other
        return NotImplemented

    def __lt__(self, other) -> bool:
        if isinstance(other, ValP):
            if self._value is None:
                return False
            if other._value is None:
                return True
            return self._value < other._value
        if self._value is None:
            return False
        return self._value < other

    def __le__(self, other) -> bool:
        if isinstance(other, ValP):
            if other._value is None:
                return True
            if self._value is None:
                return False
            return self._value <= other._value
        if self._value is None:
            return False
        return self._value <= other

    def __gt__(self, other) -> bool:
        if isinstance(other, ValP):
            if self._value is None:
                return other._value is not None
            if other._value is None:
                return False
            return self._value > other._value
        return self._value is None or self._value > other

    def __ge__(self, other) -> bool:
        if isinstance(other, ValP):
            if self._value is None:
                return True
            if other._value is None:
                return False
            return self._value >= other._value
        return self._value is None or self._value >= other

    def __add__(self, other) -> "ValP":
        if isinstance(other, ValP):
            if self._value is None or other._value is None:
                return INF
            return ValP(self._value + other._value)
        if self._value is None:
            return INF
        return ValP(self._value + other)

    __radd__ = __add__

    def __sub__(self, other) -> "ValP":
        if isinstance(other, ValP):
            if other._value is None:
                raise ValueError("cannot subtract +infinity")
            other = other._value
        if self._value is None:
            return INF
        return ValP(self._value - other)

    def __hash__(self) -> int:
        return hash(self._value)

    def __str__(self) -> str:
        return "inf" if self._value is None else str(self._value)

    def __repr__(self) -> str:
        return f"ValP({self})"


INF = ValP(None)
ValP.INF = INF


def vp_int(n: int, p: int) -> int:
    """Exponent of p in a nonzero integer (p assumed prime by the caller)."""
    if n == 0:
        raise ValueError("vp_int(0) is undefined; use vp_total")
    n = abs(n)
    v = 0
    while n % p == 0:
        v += 1
        n //= p
    return v


def vp(q: Fraction | int, p: int) -> int:
    """p-adic valuation of a nonzero rational: vp(num) - vp(den)."""
    check_prime(p)
    q = Fraction(q)
    if q == 0:
        raise ValueError("vp(0) is undefined; use vp_total")
    return vp_int(q.numerator, p) - vp_int(q.denominator, p)


def vp_total(q: Fraction | int, p: int) -> ValP:
    """Total wrapper around :func:`vp`: vp_total(0) = +infinity."""
    check_prime(p)
    q = Fraction(q)
    if q == 0:
        return INF
    return ValP(vp_int(q.numerator, p) - vp_int(q.denominator, p))


def vp_factorial(n: int, p: int) -> int:
    """v_p(n!) by Legendre's formula: sum over e >= 1 of floor(n / p^e)."""
    check_prime(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = 0
    q = p
    while q <= n:
        total += n // q
        q *= p
    return total


def falling_factorial(n: int, m: int) -> int:
    """n (n - 1) ... (n - m + 1); the empty product (m = 0) is 1.

    n may be negative: the product formula is total even though only
    nonnegative n occurs downstream.
    """
    if m < 0:
        raise ValueError("m must be nonnegative")
    out = 1
    for k in range(m):
        out *= n - k
    return out


def binom(n: int, k: int) -> int:
    """Exact C(n, k) for n >= 0, with C(n, k) = 0 outside 0 <= k <= n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def binom_mod(n: int, k: int, modulus: int) -> int:
    """Exact C(n, k) reduced mod ``modulus``."""
    if modulus <= 0:
        raise ValueError("modulus must be positive")
    return binom(n, k) % modulus


@lru_cache(maxsize=None)
def harmonic(n: int) -> Fraction:
    """H_n = 1 + 1/2 + ... + 1/n exactly; H_0 = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(0)
    return harmonic(n - 1) + Fraction(1, n)


def rational_mod(q: Fraction | int, modulus: int) -> int:
    """Reduce a rational with denominator invertible mod ``modulus``.

    This is how residues of expressions like p*H_eps are taken mod p^2:
    the denominator is coprime to p, so it has an inverse.
    """
    q = Fraction(q)
    den = q.denominator % modulus
    try:
        inv = pow(den, -1, modulus)
    except ValueError as exc:
        raise ValueError(
            f"denominator {q.denominator} is not invertible mod {modulus}"
        ) from exc
    return (q.numerator % modulus) * inv % modulus


def as_rational(text: str | int | Fraction) -> Fraction:
    """Parse an exact rational literal ("a/b" or "a"); no decimals."""
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise ValueError(f"rational literal expected (got {text!r}); decimals are not accepted")
    return Fraction(text)
