"""Homogeneous bivariate polynomials over F_p and the shallow-kill checks.

A homogeneous polynomial of degree d is a coefficient tuple (c_0, ..., c_d)
with c_j the coefficient of X^j Y^(d-j), every entry reduced mod p.  The
degree is part of the data, so the zero polynomial of degree d is the
all-zero tuple of length d + 1.

A 2x2 matrix m = ((a, b), (c, d)) acts by substitution:

    act(m, f)(X, Y) = f(aX + bY, cX + dY).

This convention is pinned by reproducing the displayed transformation
(0 1; 1 -lam): X^(p-1) Y^(r-p+1) - Y^r  |->  Y^(p-1) (X - lam Y)^(r-p+1)
- (X - lam Y)^r, and it makes act(m1 @ m2, f) = act(m2, act(m1, f)) (a right
action).  The Dickson polynomial theta = X^p Y - X Y^p transforms under any
invertible m by the determinant character.

The vanishing certificate for the sub-quotient indexed by i - 1 (i >= 1,
r >= i(p+1) - 1) has two halves:

  (a) f_i = Y^(r - i(p+1) + 1) (-theta)^i / X is a polynomial whose
      coefficient at X^(i-1) Y^(r-i+1) is a unit, so it projects to a
      generator;
  (b) every summand (X - lam Y)^(r - i(p+1) + 1) theta^i / Y has minimal
      X-degree >= i, so it projects to zero.

The power-of-X claim in (b) is sometimes phrased as a *largest* power where
the divisibility argument (theta^i is divisible by X^i) supports *smallest*;
the check verifies the min-degree statement and flags the reading in the
report.
"""

from __future__ import annotations

from dataclasses import dataclass

from padicelim.errors import InvalidRangeError, NotPolynomialError
from padicelim.exactnum import check_prime

__all__ = [
    "HPoly",
    "Matrix2",
    "ACTION_CONVENTION",
    "theta",
    "linear_form_power",
    "act",
    "mat_mul",
    "shallow_summand",
    "pure_y_defect",
    "ShallowReport",
    "shallow_kill_check",
]

Matrix2 = tuple[tuple[int, int], tuple[int, int]]

ACTION_CONVENTION = "((a,b),(c,d)) sends f(X, Y) to f(aX + bY, cX + dY)"


@dataclass(frozen=True)
class HPoly:
    """Homogeneous polynomial; coeffs[j] multiplies X^j Y^(degree - j)."""

    p: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.p)
        if not self.coeffs:
            raise ValueError("coefficient sequence must have length degree + 1 >= 1")
        object.__setattr__(self, "coeffs", tuple(c % self.p for c in self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def min_x_degree(self) -> int:
        for j, c in enumerate(self.coeffs):
            if c:
                return j
        raise ValueError("min_x_degree undefined on the zero polynomial")

    def max_x_degree(self) -> int:
        for j in range(self.degree, -1, -1):
            if self.coeffs[j]:
                return j
        raise ValueError("max_x_degree undefined on the zero polynomial")

    def coeff(self, x_power: int) -> int:
        """Coefficient of X^x_power Y^(degree - x_power)."""
        if not (0 <= x_power <= self.degree):
            return 0
        return self.coeffs[x_power]

    def evaluate(self, x: int, y: int) -> int:
        return sum(
            c * pow(x, j, self.p) * pow(y, self.degree - j, self.p)
            for j, c in enumerate(self.coeffs)
        ) % self.p

    def __add__(self, other: "HPoly") -> "HPoly":
        self._compat(other)
        if other.degree != self.degree:
            raise ValueError("cannot add homogeneous polynomials of different degree")
        return HPoly(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "HPoly") -> "HPoly":
        return self + (-other)

    def __neg__(self) -> "HPoly":
        return HPoly(self.p, tuple(-c for c in self.coeffs))

    def __mul__(self, other: "HPoly") -> "HPoly":
        self._compat(other)
        out = [0] * (self.degree + other.degree + 1)
        # iterate nonzeros of the sparser factor (theta powers are sparse)
        left, right = self, other
        if sum(1 for c in left.coeffs if c) > sum(1 for c in right.coeffs if c):
            left, right = right, left
        for j, cj in enumerate(left.coeffs):
            if cj:
                for k, ck in enumerate(right.coeffs):
                    if ck:
                        out[j + k] = (out[j + k] + cj * ck) % left.p
        return HPoly(self.p, tuple(out))

    def scale(self, s: int) -> "HPoly":
        return HPoly(self.p, tuple(s * c for c in self.coeffs))

    def power(self, e: int) -> "HPoly":
        if e < 0:
            raise ValueError("negative power")
        out = HPoly(self.p, (1,))
        for _ in range(e):
            out = out * self
        return out

    def mul_x(self, k: int = 1) -> "HPoly":
        return HPoly(self.p, (0,) * k + self.coeffs)

    def mul_y(self, k: int = 1) -> "HPoly":
        return HPoly(self.p, self.coeffs + (0,) * k)

    def div_x(self) -> "HPoly":
        if self.coeffs[0] != 0:
            raise NotPolynomialError("not divisible by X: pure Y term present")
        if self.degree == 0:
            raise NotPolynomialError("cannot divide a constant by X")
        return HPoly(self.p, self.coeffs[1:])

    def div_y(self) -> "HPoly":
        if self.coeffs[-1] != 0:
            raise NotPolynomialError("not divisible by Y: pure X term present")
        if self.degree == 0:
            raise NotPolynomialError("cannot divide a constant by Y")
        return HPoly(self.p, self.coeffs[:-1])

    def _compat(self, other: "HPoly") -> None:
        if self.p != other.p:
            raise ValueError("mixed characteristics")

    def __str__(self) -> str:
        d = self.degree
        parts = [
            f"{c}*X^{j}*Y^{d - j}" for j, c in enumerate(self.coeffs) if c
        ]
        return " + ".join(parts) if parts else "0"


def linear_form_power(p: int, a: int, b: int, e: int) -> HPoly:
    """(aX + bY)^e expanded by the binomial theorem."""
    check_prime(p)
    out = HPoly(p, (1,))
    form = HPoly(p, (b, a))  # coeffs[1] is the X coefficient
    for _ in range(e):
        out = out * form
    return out


def theta(p: int) -> HPoly:
    """The Dickson polynomial X^p Y - X Y^p (degree p + 1)."""
    check_prime(p)
    coeffs = [0] * (p + 2)
    coeffs[p] = 1
    coeffs[1] = -1
    return HPoly(p, tuple(coeffs))


def mat_mul(m1: Matrix2, m2: Matrix2) -> Matrix2:
    (a1, b1), (c1, d1) = m1
    (a2, b2), (c2, d2) = m2
    return (
        (a1 * a2 + b1 * c2, a1 * b2 + b1 * d2),
        (c1 * a2 + d1 * c2, c1 * b2 + d1 * d2),
    )


def _lin_mul(coeffs: list[int], x_coef: int, y_coef: int, p: int) -> list[int]:
    """Multiply a coefficient list by the linear form x_coef*X + y_coef*Y."""
    out = [0] * (len(coeffs) + 1)
    for k, ck in enumerate(coeffs):
        if ck:
            out[k] = (out[k] + ck * y_coef) % p
            out[k + 1] = (out[k + 1] + ck * x_coef) % p
    return out


def act(m: Matrix2, f: HPoly) -> HPoly:
    """Substitute X -> aX + bY, Y -> cX + dY (Horner in the second form)."""
    (a, b), (c, d) = m
    p = f.p
    deg = f.degree
    acc = [f.coeffs[deg]]
    vpow = [1]
    for j in range(deg - 1, -1, -1):
        vpow = _lin_mul(vpow, c, d, p)
        acc = _lin_mul(acc, a, b, p)
        cj = f.coeffs[j]
        if cj:
            for k, vk in enumerate(vpow):
                acc[k] = (acc[k] + cj * vk) % p
    return HPoly(p, tuple(acc))


def shallow_summand(p: int, r: int, i: int, lam: int) -> HPoly:
    """(X - lam Y)^(r - i(p+1) + 1) * theta^i / Y, exact over F_p."""
    check_prime(p)
    if i < 1:
        raise InvalidRangeError("i must be >= 1")
    k = r - i * (p + 1) + 1
    if k < 0:
        raise NotPolynomialError(
            f"r = {r} < i(p+1) - 1 = {i * (p + 1) - 1}: the quotient is not a polynomial"
        )
    base = theta(p).power(i).div_y()
    return linear_form_power(p, 1, -lam, k) * base


def pure_y_defect(p: int, r: int, lam: int) -> int:
    """Coefficient of Y^r after acting with (0 1; 1 -lam) on X^(p-1)Y^(r-p+1) - Y^r.

    Zero for every lam once r >= p; at r = p - 1 the lam = 0 defect survives.
    """
    check_prime(p)
    if r < p - 1:
        raise InvalidRangeError("r must be at least p - 1")
    coeffs = [0] * (r + 1)
    coeffs[0] = -1
    coeffs[p - 1] = (coeffs[p - 1] + 1) % p
    f = HPoly(p, tuple(coeffs))
    g = act(((0, 1), (1, -lam)), f)
    return g.coeff(0)


@dataclass(frozen=True)
class ShallowReport:
    """Evidence that the sub-quotient indexed by i - 1 vanishes.

    ``generator_unit`` is the X^(i-1) Y^(r-i+1) coefficient of f_i;
    ``summand_min_x`` maps lam to the minimal X-degree of its summand.
    ``min_degree_reading`` records that the check interprets the power-of-X
    claim as a minimum, not a maximum.
    """

    p: int
    r: int
    i: int
    generator_unit: int
    summand_min_x: tuple[tuple[int, int], ...]
    pure_y_defects: tuple[int, ...] | None
    action_convention: str
    min_degree_reading: str
    failures: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.failures


def shallow_kill_check(p: int, r: int, i: int) -> ShallowReport:
    """Certify the vanishing of the sub-quotient indexed by i - 1."""
    check_prime(p, minimum=5)
    if i < 1 or r < i * (p + 1) - 1 or r > p * p - p - 1:
        raise InvalidRangeError(
            f"(p, r, i) = ({p}, {r}, {i}) violates 1 <= i, i(p+1)-1 <= r <= p^2-p-1"
        )
    failures: list[str] = []

    k = r - i * (p + 1) + 1
    f_i = theta(p).power(i).div_x().mul_y(k)
    if i % 2:
        f_i = -f_i
    unit = f_i.coeff(i - 1)
    if unit % p == 0:
        failures.append(f"f_{i} has no unit at X^{i - 1}Y^{r - i + 1}")

    min_degrees = []
    for lam in range(p):
        s = shallow_summand(p, r, i, lam)
        md = s.min_x_degree()
        min_degrees.append((lam, md))
        if md < i:
            failures.append(f"summand at lam = {lam} has X-degree {md} < {i}")

    defects: tuple[int, ...] | None = None
    if i == 1 and r >= p:
        defects = tuple(pure_y_defect(p, r, lam) for lam in range(p))
        for lam, defect in enumerate(defects):
            if defect != 0:
                failures.append(f"pure Y^r coefficient survives at lam = {lam}")

    return ShallowReport(
        p=p,
        r=r,
        i=i,
        generator_unit=unit,
        summand_min_x=tuple(min_degrees),
        pure_y_defects=defects,
        action_convention=ACTION_CONVENTION,
        min_degree_reading="power-of-X claim verified as a minimum over the summand",
        failures=tuple(failures),
    )
