"""Congruence lemmas: Lucas classical and mod p^2, Stirling numbers.

Stirling numbers of the second kind {t brace s} follow the conventions
{t brace s} = 0 for s > t or s < 0, {0 brace 0} = 1.  They are computed two
ways on purpose: by the recurrence {t brace s} = s {t-1 brace s} +
{t-1 brace s-1} (cached, used everywhere) and by the alternating definition
sum divided by s! (used as an independent oracle in the tests).

The mod p^2 refinement of Lucas' theorem used here reads, for digits
0 <= s <= r' <= p - 1 and any a, b >= 0:

    C(pa + r', pb + s) = C(a, b) C(r', s)
        (1 + pa (H_{r'} - H_{r'-s}) + pb (H_{r'-s} - H_s))   mod p^2.

When the digit condition s <= r' fails the lemma does not apply and
``binom_mod_p2`` falls back to reducing the exact binomial, tagging the
result so property tests can score the lemma path separately.
"""

from __future__ import annotations

from typing import NamedTuple

from padicelim.exactnum import (
    Rational,
    binom,
    check_prime,
    harmonic,
    rational_mod,
)

__all__ = [
    "lucas_mod_p",
    "Mod2Residue",
    "binom_mod_p2",
    "stirling2",
    "stirling2_def",
    "StirlingTable",
    "stirling_lucas_check",
]

_STIRLING_CACHE: dict[tuple[int, int], int] = {(0, 0): 1}


def stirling2(t: int, s: int) -> int:
    """{t brace s} by the recurrence, cached globally (values are p-free)."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    if s < 0 or s > t:
        return 0
    key = (t, s)
    cached = _STIRLING_CACHE.get(key)
    if cached is not None:
        return cached
    # fill row by row so lookups never recurse deeply
    for tt in range(1, t + 1):
        for ss in range(0, tt + 1):
            if (tt, ss) not in _STIRLING_CACHE:
                if ss == 0:
                    _STIRLING_CACHE[(tt, ss)] = 0
                elif ss == tt:
                    _STIRLING_CACHE[(tt, ss)] = 1
                else:
                    _STIRLING_CACHE[(tt, ss)] = (
                        ss * _STIRLING_CACHE[(tt - 1, ss)]
                        + _STIRLING_CACHE[(tt - 1, ss - 1)]
                    )
    return _STIRLING_CACHE[key]


def stirling2_def(t: int, s: int) -> int:
    """{t brace s} straight from the definition sum (independent oracle).

    (1/s!) sum_{j=0}^{s} (-1)^j C(s, j) (s - j)^t, with 0^0 = 1.
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    if s < 0 or s > t:
        return 0
    total = 0
    for j in range(s + 1):
        total += (-1) ** j * binom(s, j) * (s - j) ** t
    fact = 1
    for m in range(2, s + 1):
        fact *= m
    if total % fact != 0:
        raise ArithmeticError(f"definition sum for {{{t} brace {s}}} not divisible by {s}!")
    return total // fact


class StirlingTable:
    """Immutable table of {t brace s} for t, s <= t_max with residues mod p^k.

    Precision defaults to k = 2: the congruence bookkeeping only ever needs
    Stirling residues mod p and mod p^2.
    """

    def __init__(self, p: int, t_max: int, precision: int = 2):
        check_prime(p)
        if t_max < 0 or precision < 1:
            raise ValueError("t_max >= 0 and precision >= 1 required")
        self._p = p
        self._t_max = t_max
        self._precision = precision
        self._modulus = p**precision
        self._values = tuple(
            tuple(stirling2(t, s) for s in range(t_max + 1)) for t in range(t_max + 1)
        )
        self._residues = tuple(
            tuple(v % self._modulus for v in row) for row in self._values
        )

    @property
    def p(self) -> int:
        return self._p

    @property
    def t_max(self) -> int:
        return self._t_max

    @property
    def precision(self) -> int:
        return self._precision

    def value(self, t: int, s: int) -> int:
        if t < 0 or t > self._t_max:
            raise IndexError(f"t = {t} outside cached range [0, {self._t_max}]")
        if s < 0 or s > self._t_max:
            return 0
        return self._values[t][s]

    def residue(self, t: int, s: int, precision: int | None = None) -> int:
        if precision is None:
            precision = self._precision
        if precision > self._precision:
            raise ValueError("requested precision exceeds table precision")
        return self.value(t, s) % self._p**precision


def lucas_mod_p(n_big: int, k_big: int, p: int) -> int:
    """C(N, K) mod p as the digit product of base-p binomials."""
    check_prime(p)
    if n_big < 0 or k_big < 0:
        raise ValueError("N, K must be nonnegative")
    out = 1
    while n_big or k_big:
        out = out * binom(n_big % p, k_big % p) % p
        n_big //= p
        k_big //= p
    return out


class Mod2Residue(NamedTuple):
    value: int
    via_lemma: bool


def binom_mod_p2(n_big: int, k_big: int, p: int) -> Mod2Residue:
    """C(N, K) mod p^2 via the digit formula, or exact reduction as fallback.

    ``via_lemma`` is True when the digit hypothesis s <= r' held and the
    formula path was used.
    """
    check_prime(p)
    if n_big < 0 or k_big < 0:
        raise ValueError("N, K must be nonnegative")
    modulus = p * p
    a, r_digit = divmod(n_big, p)
    b, s_digit = divmod(k_big, p)
    if s_digit > r_digit:
        return Mod2Residue(binom(n_big, k_big) % modulus, False)
    ha = harmonic(r_digit)
    hm = harmonic(r_digit - s_digit)
    hs = harmonic(s_digit)
    correction = 1 + p * a * (ha - hm) + p * b * (hm - hs)
    value = binom(a, b) * binom(r_digit, s_digit) * Rational(correction)
    return Mod2Residue(rational_mod(value, modulus), True)


def stirling_lucas_check(y: int, x: int, i: int, p: int) -> tuple[int, int]:
    """Both sides of the Stirling congruence, reduced mod p.

    lhs = {y + p^i brace x},  rhs = {y + 1 brace x} + sum_{j=1}^{i} {y brace x - p^j}.
    The pair is returned so callers assert lhs == rhs.
    """
    check_prime(p)
    if y < 0 or x < 0 or i < 1:
        raise ValueError("y, x >= 0 and i >= 1 required")
    lhs = stirling2(y + p**i, x) % p
    rhs = stirling2(y + 1, x)
    for j in range(1, i + 1):
        rhs += stirling2(y, x - p**j)
    return lhs, rhs % p
