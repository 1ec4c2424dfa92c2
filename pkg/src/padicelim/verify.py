"""Desk-scale exhaustive verification sweeps behind ``padicelim verify``.

Each sweep re-checks one lemma family over its full small-prime range and
returns a :class:`VerifyResult`.  Failures are hard (exit code 1 at the
CLI); observations record expected deviations, like the mod-p^2 class
congruence at b = 0, without failing the sweep.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from padicelim.combinat import binom_mod_p2, lucas_mod_p, stirling2, stirling2_def, stirling_lucas_check
from padicelim.congruence import inequality_suite, make_params, star_full, star_mod_p2
from padicelim.exactnum import harmonic, rational_mod
from padicelim.fp_poly import pure_y_defect, shallow_kill_check
from padicelim.lambda_solver import lambda_closed, solve_lambda, verify_lambda

__all__ = [
    "VerifyResult",
    "verify_lucas2",
    "verify_stirling_lucas",
    "verify_lambda_sweep",
    "verify_shallow",
    "verify_star",
    "verify_inequalities",
    "VERIFIERS",
]


@dataclass
class VerifyResult:
    name: str
    primes: tuple[int, ...]
    checked: int = 0
    failures: list[str] = field(default_factory=list)
    observations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "primes": list(self.primes),
            "checked": self.checked,
            "passed": self.passed,
            "failures": self.failures,
            "observations": self.observations,
        }


def verify_lucas2(primes: tuple[int, ...] = (5, 7, 11)) -> VerifyResult:
    """Digit formula vs exact binomials mod p^2, exhaustively for N < p^2."""
    res = VerifyResult("lucas2", primes)
    for p in primes:
        mod2 = p * p
        lemma_hits = 0
        for n_big in range(p * p):
            for k_big in range(n_big + 1):
                got = binom_mod_p2(n_big, k_big, p)
                expected = math.comb(n_big, k_big) % mod2
                if got.value != expected:
                    res.failures.append(
                        f"p={p}: C({n_big},{k_big}) = {expected} mod p^2, formula gave {got.value}"
                    )
                if got.via_lemma:
                    lemma_hits += 1
                if lucas_mod_p(n_big, k_big, p) != math.comb(n_big, k_big) % p:
                    res.failures.append(f"p={p}: classical digit product wrong at ({n_big},{k_big})")
                res.checked += 1
        res.observations.append(f"p={p}: {lemma_hits} pairs took the digit-formula path")
    return res


def verify_stirling_lucas(primes: tuple[int, ...] = (5, 7)) -> VerifyResult:
    """lhs = rhs for y <= 2p, x <= y + p^i, i in {1, 2}; recurrence vs definition."""
    res = VerifyResult("stirling-lucas", primes)
    for p in primes:
        for i in (1, 2):
            for y in range(2 * p + 1):
                for x in range(y + p**i + 1):
                    lhs, rhs = stirling_lucas_check(y, x, i, p)
                    if lhs != rhs:
                        res.failures.append(f"p={p}: lhs {lhs} != rhs {rhs} at (y={y}, x={x}, i={i})")
                    res.checked += 1
    for t in range(61):
        for s in range(t + 1):
            if stirling2(t, s) != stirling2_def(t, s):
                res.failures.append(f"recurrence and definition disagree at ({t}, {s})")
            res.checked += 1
    return res


def verify_lambda_sweep(primes: tuple[int, ...] = (5, 7, 11, 13)) -> VerifyResult:
    """Solve vs closed form entry-wise plus all four bullets, all (b, n)."""
    res = VerifyResult("lambda", primes)
    for p in primes:
        for b in range(p - 1):
            for n in range(b * p, (b + 1) * p):
                vec = solve_lambda(p, b, n)
                for i in range(n + 1):
                    if Fraction(vec[i]) != lambda_closed(p, b, n, i):
                        res.failures.append(f"p={p}, b={b}, n={n}: solve != closed at i={i}")
                report = verify_lambda(vec)
                if vec[(b + 1) * p] != -1:
                    res.failures.append(f"p={p}, b={b}, n={n}: top entry is not -1")
                res.failures.extend(
                    f"p={p}, b={b}, n={n}: {msg}" for msg in report.failures
                )
                if report.bullet2_deviations and b == 0:
                    a0, j0 = report.bullet2_deviations[0]
                    res.observations.append(
                        f"p={p}, n={n}: class congruence observed failing at b=0 "
                        f"(first at a={a0}, j={j0})"
                    )
                res.checked += 1
    return res


def verify_shallow(primes: tuple[int, ...] = (5, 7, 11)) -> VerifyResult:
    """All certificates for i <= r/p, i(p+1)-1 <= r <= p^2-p-1, plus the r = p-1 defect."""
    res = VerifyResult("shallow", primes)
    for p in primes:
        for r in range(p, p * p - p):
            for i in range(1, r // p + 1):
                if r < i * (p + 1) - 1:
                    continue
                report = shallow_kill_check(p, r, i)
                res.failures.extend(
                    f"p={p}, r={r}, i={i}: {msg}" for msg in report.failures
                )
                res.checked += 1
        defect = pure_y_defect(p, p - 1, 0)
        if defect == 0:
            res.failures.append(f"p={p}: expected nonzero pure-Y defect at r = p - 1, lam = 0")
        else:
            res.observations.append(
                f"p={p}: r = p - 1 cancellation fails at lam = 0 as expected (defect {defect})"
            )
        res.checked += 1
    return res


def _admissible_rn(p: int):
    for r in range(p, p * p - p):
        for n in range(r // 2 + 1, r + 1):
            b = n // p
            if b > p - 2 or 2 * n < r + 2 * b + 2:
                continue
            yield r, n, b


def verify_star(primes: tuple[int, ...] = (5, 7)) -> VerifyResult:
    """Full vs simplified star coefficient and the mod-p / mod-p^2 case table."""
    res = VerifyResult("star", primes)
    for p in primes:
        mod2 = p * p
        for r, n, b in _admissible_rn(p):
            params = make_params(p, r, n, Fraction(r, 2) - n - 1, mode="strict")
            eps = params.eps
            fact_b1 = math.factorial(b + 1)
            ph_eps = p * harmonic(eps)
            for j in range((r + 1) // 2 - 1, n):
                full = star_full(params, j)
                simple = star_mod_p2(params, j)
                if rational_mod(full, mod2) != simple:
                    res.failures.append(f"p={p}, r={r}, n={n}, j={j}: full != simplified mod p^2")
                got_p = rational_mod(full, p)
                got_p2 = rational_mod(full, mod2)
                if j >= n - b and got_p != 0:
                    res.failures.append(f"p={p}, r={r}, n={n}, j={j}: expected 0 mod p")
                if j == n - b - 1 and got_p != (-fact_b1) % p:
                    res.failures.append(f"p={p}, r={r}, n={n}, j={j}: expected -(b+1)! mod p")
                if n - b + 1 <= j <= n - 1 and got_p2 != 0:
                    res.failures.append(f"p={p}, r={r}, n={n}, j={j}: expected 0 mod p^2")
                if j == n - b and got_p2 != rational_mod(-ph_eps * fact_b1, mod2):
                    res.failures.append(f"p={p}, r={r}, n={n}, j={j}: expected -pH_eps(b+1)! mod p^2")
                if j == n - b - 1:
                    want = rational_mod(
                        -fact_b1 - ph_eps * fact_b1 * math.comb(b + 1, 2), mod2
                    )
                    if got_p2 != want:
                        res.failures.append(
                            f"p={p}, r={r}, n={n}, j={j}: expected case value {want} mod p^2"
                        )
                res.checked += 1
    return res


def verify_inequalities(primes: tuple[int, ...] = (5, 7, 11)) -> VerifyResult:
    """Every inequality family over all weak-mode admissible (p, r, n)."""
    res = VerifyResult("inequalities", primes)
    for p in primes:
        for r, n, _b in _admissible_rn(p):
            report = inequality_suite(p, r, n)
            for fam in report.families:
                if not fam.passed:
                    res.failures.append(
                        f"p={p}, r={r}, n={n}: family {fam.name} fails ({dict(fam.witness)})"
                    )
            res.checked += 1
    return res


def verify_vl_independence(primes: tuple[int, ...] = (5, 7)) -> VerifyResult:
    """master_terms total valuations agree across two admissible vL choices."""
    from padicelim.congruence import master_terms

    res = VerifyResult("vl-independence", primes)
    for p in primes:
        for r, n, _b in _admissible_rn(p):
            bound = Fraction(r, 2) - n
            t1 = master_terms(make_params(p, r, n, bound - 1, mode="strict"))
            t2 = master_terms(make_params(p, r, n, bound - Fraction(7, 2), mode="strict"))
            if [(t.key(), t.total_val) for t in t1] != [(t.key(), t.total_val) for t in t2]:
                res.failures.append(f"p={p}, r={r}, n={n}: total valuations depend on vL")
            res.checked += 1
    return res


VERIFIERS = {
    "lucas2": verify_lucas2,
    "stirling-lucas": verify_stirling_lucas,
    "lambda": verify_lambda_sweep,
    "shallow": verify_shallow,
    "star": verify_star,
    "inequalities": verify_inequalities,
    "vl-independence": verify_vl_independence,
}
