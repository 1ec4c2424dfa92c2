"""The master congruence: parameters, terms, valuations, kill audits.

Fix a prime p >= 5, an exponent r with p <= r <= p^2 - p - 1, a degree n
with r/2 + b + 1 <= n <= r (b = floor(n/p), eps = n - bp) and a valuation
vL = v_p(L) with vL < r/2 - n (strict mode) or <= (weak mode).  Writing
vFall = v_p([n]_{b+1}) and x = r/2 - n - vFall - vL, the congruence
expresses zero as a sum of locally polynomial terms

    p^(x + n - j) * C * L * (z - a)^j  on  a + pZ_p,

in two families ("lines"):

  line 1, 1 <= a <= eps, ceil(r/2) <= j <= n - 1:
    C = C(n,j) C(eps,a) ((-1)^(a+j+b+1)/a) C((b+1)p, n+1) (n+1) b! {n-j brace b}
  line 2, a = 0, ceil(r/2) - 1 <= j <= n - 1:
    C = C(n,j) (-1)^(n-j) * star_j

where star_j is the exact rational computed by :func:`star_full` and
simplified mod p^2 by :func:`star_mod_p2`.

The total valuation of a term is x + (n - j) + vL + v_p(C), which collapses
to (r/2 - j - vFall) + v_p(C): it does not depend on vL.  The *slack* of a
term is its total valuation minus the filtration threshold r/2 - j, i.e.
v_p(C) - vFall.  All elimination decisions reduce to slack thresholds:

    slack > 0                          the term dies outright
    slack >= 0                         the term is integral and can be
                                       projected off on deeper sub-quotients
    slack == 0 with a unit coefficient generator of the targeted sub-quotient

and a term below the filtration window (j < ceil(r/2)) only needs
slack >= 0.  These thresholds are the package's single integrality axiom
pair (the external lattice criteria are not re-proved here); the audits
re-derive every divisibility fact they rely on by exact arithmetic instead
of assuming it.

Three audits package the three elimination arguments: ``audit_good`` (one
congruence at an n with vFall = 0, generator at degree n - b - 1),
``audit_bad`` (n = 2p + 1, vFall = 1) and ``audit_ugly`` (two congruences,
n = cp + c with vFall = 1 leaving a residual family at degree cp, then
n = cp + c + 1 with vFall = 0 certifying the residual sits on deeper
sub-quotients).  ``inequality_suite`` verifies, exactly, the arithmetic
inequality families that the supporting lemmas reduce to.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from padicelim.combinat import stirling2
from padicelim.errors import (
    DigitError,
    InvalidDegreeError,
    InvalidRangeError,
    NotGoodCandidateError,
    VLBoundError,
    WindowError,
)
from padicelim.exactnum import (
    INF,
    Rational,
    ValP,
    binom,
    check_prime,
    falling_factorial,
    harmonic,
    rational_mod,
    vp_factorial,
    vp_int,
)

__all__ = [
    "CongruenceParams",
    "CongruenceTerm",
    "TermDisposition",
    "KillAudit",
    "make_params",
    "star_full",
    "star_mod_p2",
    "master_terms",
    "audit_good",
    "audit_bad",
    "audit_ugly",
    "FamilyResult",
    "InequalityReport",
    "inequality_suite",
]


# --------------------------------------------------------------------------
# parameters

@dataclass(frozen=True)
class CongruenceParams:
    """Validated congruence parameters with all derived quantities."""

    p: int
    r: int
    n: int
    vL: Fraction
    mode: str  # "strict" | "weak"
    b: int
    eps: int
    v_fall: int
    x: Fraction

    @property
    def ceil_half_r(self) -> int:
        return (self.r + 1) // 2

    @property
    def half_r(self) -> Fraction:
        return Fraction(self.r, 2)


def make_params(
    p: int, r: int, n: int, vL: Fraction | int | str, mode: str = "strict"
) -> CongruenceParams:
    """Validate the hypotheses and compute b, eps, vFall and x.

    Each violated hypothesis raises its own error class: InvalidPrimeError,
    InvalidRangeError (r), WindowError (n), DigitError (b), VLBoundError.
    """
    check_prime(p, minimum=5)
    if mode not in ("strict", "weak"):
        raise ValueError(f"mode must be 'strict' or 'weak', got {mode!r}")
    if not (p <= r <= p * p - p - 1):
        raise InvalidRangeError(f"r = {r} outside [{p}, {p * p - p - 1}]")
    if n < 0 or n > r:
        raise WindowError(f"n = {n} outside [ceil(r/2 + b + 1), {r}]")
    b, eps = divmod(n, p)
    if b > p - 2:
        raise DigitError(f"b = {b} exceeds p - 2 = {p - 2}")
    if 2 * n < r + 2 * b + 2:
        raise WindowError(f"n = {n} violates n >= r/2 + b + 1 = {Fraction(r, 2) + b + 1}")
    vL = Fraction(vL)
    bound = Fraction(r, 2) - n
    if mode == "strict":
        if not vL < bound:
            raise VLBoundError(f"strict mode needs vL < r/2 - n = {bound}, got {vL}")
    elif not vL <= bound:
        raise VLBoundError(f"weak mode needs vL <= r/2 - n = {bound}, got {vL}")
    v_fall = vp_int(falling_factorial(n, b + 1), p)
    x = Fraction(r, 2) - n - v_fall - vL
    # consequences of the hypotheses; cf. the bound x >= -vFall >= -1
    assert x >= -v_fall >= -1
    assert n - v_fall > Fraction(r, 2)
    return CongruenceParams(p=p, r=r, n=n, vL=vL, mode=mode, b=b, eps=eps, v_fall=v_fall, x=x)


# --------------------------------------------------------------------------
# the star coefficient

def _check_star_degree(params: CongruenceParams, j: int) -> None:
    lo = params.ceil_half_r - 1
    hi = params.n - 1
    if not (lo <= j <= hi):
        raise InvalidDegreeError(f"j = {j} outside [{lo}, {hi}]")


def _star_constants(params: CongruenceParams) -> tuple[int, Fraction, int]:
    b1 = params.b + 1
    fact_b1 = math.factorial(b1)
    ph = params.p * harmonic(params.eps)
    sign_n = -1 if params.n % 2 else 1
    lead = binom(b1 * params.p - 1, params.n) * sign_n
    return fact_b1, ph, lead


def _star_full_at(params: CongruenceParams, j: int, consts: tuple[int, Fraction, int]) -> Rational:
    fact_b1, ph, lead = consts
    b1 = params.b + 1
    m = params.n - j
    sign_b1 = -1 if b1 % 2 else 1
    bracket = sign_b1 * (
        stirling2(m, b1) * fact_b1
        + ph * stirling2(m + 1, b1) * fact_b1
        - b1**m
        - ph * b1 ** (m + 1)
    )
    return lead * bracket - b1**m


def star_full(params: CongruenceParams, j: int) -> Rational:
    """The exact a = 0 coefficient (full closed form, no reduction)."""
    _check_star_degree(params, j)
    return _star_full_at(params, j, _star_constants(params))


def star_mod_p2(params: CongruenceParams, j: int) -> int:
    """The simplified residue: -{n-j brace b+1}(b+1)! - pH_eps {n-j brace b}(b+1)! mod p^2."""
    _check_star_degree(params, j)
    p, n, b, eps = params.p, params.n, params.b, params.eps
    fact_b1 = math.factorial(b + 1)
    m = n - j
    value = -stirling2(m, b + 1) * fact_b1 - p * harmonic(eps) * stirling2(m, b) * fact_b1
    return rational_mod(value, p * p)


# --------------------------------------------------------------------------
# terms

@dataclass(frozen=True)
class CongruenceTerm:
    """One summand p^(x+n-j) * coeff * L * (z - a)^j on a + pZ_p.

    ``a`` = 0 means support pZ_p (line 2).  ``total_val`` and ``slack`` are
    +infinity when the coefficient vanishes identically.  ``unit_residue``
    is the residue mod p^2 of coeff / p^(v_p(coeff)).
    """

    a: int
    line: int
    j: int
    coeff: Rational
    total_val: ValP
    slack: ValP
    unit_residue: int | None

    def key(self) -> tuple[int, int, int]:
        return (self.line, self.a, self.j)


def _build_term(
    params: CongruenceParams, a: int, line: int, j: int, coeff: Rational, base_val: Fraction
) -> CongruenceTerm:
    p = params.p
    if coeff == 0:
        return CongruenceTerm(a=a, line=line, j=j, coeff=coeff, total_val=INF, slack=INF, unit_residue=None)
    num, den = coeff.numerator, coeff.denominator
    v_c = vp_int(num, p) - vp_int(den, p)
    # base_val is x + vL = r/2 - n - vFall: the vL dependence cancels
    total = base_val + (params.n - j + v_c)
    # strip the p-part; the reduced fraction carries p in at most one place
    if v_c > 0:
        num //= p**v_c
    elif v_c < 0:
        den //= p**-v_c
    modulus = p * p
    unit_residue = num % modulus
    if den != 1:
        unit_residue = unit_residue * pow(den % modulus, -1, modulus) % modulus
    return CongruenceTerm(
        a=a,
        line=line,
        j=j,
        coeff=coeff,
        total_val=ValP(total),
        slack=ValP(v_c - params.v_fall),
        unit_residue=unit_residue,
    )


def master_terms(params: CongruenceParams) -> tuple[CongruenceTerm, ...]:
    """All terms of the congruence, line 1 then line 2, ordered by (a, j)."""
    if params.mode != "strict":
        raise VLBoundError("the master congruence requires strict-mode parameters")
    p, n, b, eps = params.p, params.n, params.b, params.eps
    ceil_half = params.ceil_half_r
    base_val = params.x + params.vL
    prefactor = binom((b + 1) * p, n + 1) * (n + 1) * math.factorial(b)
    terms: list[CongruenceTerm] = []
    for a in range(1, eps + 1):
        base = binom(eps, a) * prefactor
        for j in range(ceil_half, n):
            sign = -1 if (a + j + b + 1) % 2 else 1
            coeff = Fraction(binom(n, j) * sign * base * stirling2(n - j, b), a)
            terms.append(_build_term(params, a, 1, j, coeff, base_val))
    consts = _star_constants(params)
    for j in range(ceil_half - 1, n):
        sign = -1 if (n - j) % 2 else 1
        coeff = binom(n, j) * sign * _star_full_at(params, j, consts)
        terms.append(_build_term(params, 0, 2, j, coeff, base_val))
    return tuple(terms)


# --------------------------------------------------------------------------
# audits

DEAD = "dead"
DEEPER = "deeper-integral"
BELOW = "below-range"
GENERATOR = "generator"
ZERO = "zero"
RESIDUAL = "residual"


@dataclass(frozen=True)
class TermDisposition:
    term: CongruenceTerm
    status: str


@dataclass(frozen=True)
class KillAudit:
    """The audited elimination of one sub-quotient index.

    ``witness_n`` holds the degree(s) n the congruence was instantiated at:
    one entry for the single-congruence methods, two for the two-phase one.
    A passing audit has every term above the target dead (or residual, for
    the two-phase method's first pass), the target generated by a slack-0
    unit, and everything below integral.
    """

    method: str
    p: int
    r: int
    vL: Fraction
    witness_n: tuple[int, ...]
    target_j: int
    target_i: int
    dispositions: tuple[TermDisposition, ...]
    generator: CongruenceTerm | None
    notes: tuple[str, ...]
    failures: tuple[str, ...]
    phases: tuple["KillAudit", ...] = ()

    @property
    def passed(self) -> bool:
        return not self.failures and all(not ph.failures for ph in self.phases)

    def slack_table(self) -> tuple[tuple[int, str], ...]:
        """Degree -> slack for the line-2 terms (the z^j 1_{pZp} family)."""
        return tuple(
            (d.term.j, str(d.term.slack)) for d in self.dispositions if d.term.line == 2
        )


def _classify(
    params: CongruenceParams,
    terms: tuple[CongruenceTerm, ...],
    target_j: int,
    residual_degrees: frozenset[int] = frozenset(),
    must_die: frozenset[int] = frozenset(),
) -> tuple[tuple[TermDisposition, ...], CongruenceTerm | None, list[str]]:
    ceil_half = params.ceil_half_r
    p = params.p
    dispositions: list[TermDisposition] = []
    generator: CongruenceTerm | None = None
    failures: list[str] = []

    def fail(term: CongruenceTerm, need: str) -> None:
        failures.append(
            f"term (line {term.line}, a={term.a}, j={term.j}) has slack {term.slack}, needs {need}"
        )

    for term in terms:
        j = term.j
        if term.coeff == 0:
            dispositions.append(TermDisposition(term, ZERO))
            continue
        if j in must_die:
            if term.slack > 0:
                dispositions.append(TermDisposition(term, DEAD))
            else:
                fail(term, "> 0 (forced dead)")
            continue
        if j > target_j:
            if j in residual_degrees:
                if term.slack >= 0:
                    dispositions.append(TermDisposition(term, RESIDUAL))
                else:
                    fail(term, ">= 0 (residual)")
            elif term.slack > 0:
                dispositions.append(TermDisposition(term, DEAD))
            else:
                fail(term, "> 0 (above target)")
        elif j == target_j:
            if term.line == 2:
                if term.slack == 0 and term.unit_residue is not None and term.unit_residue % p != 0:
                    dispositions.append(TermDisposition(term, GENERATOR))
                    generator = term
                else:
                    fail(term, "== 0 with unit residue (generator)")
            elif term.slack > 0:
                dispositions.append(TermDisposition(term, DEAD))
            else:
                fail(term, "> 0 (line 1 at target)")
        elif j >= ceil_half:
            if term.slack >= 0:
                dispositions.append(TermDisposition(term, DEEPER))
            else:
                fail(term, ">= 0 (deeper integral)")
        elif term.slack >= 0:
            dispositions.append(TermDisposition(term, BELOW))
        else:
            fail(term, ">= 0 (below range)")

    if generator is None:
        failures.append(f"no generator found at degree {target_j}")
    return tuple(dispositions), generator, failures


def audit_good(p: int, r: int, n: int, vL: Fraction | int | str) -> KillAudit:
    """Single-congruence kill at an n with vFall = 0: target j* = n - b - 1."""
    params = make_params(p, r, n, vL, mode="strict")
    if params.v_fall != 0:
        raise NotGoodCandidateError(
            f"v_p([{n}]_{params.b + 1}) = {params.v_fall} != 0: n is not a good candidate"
        )
    target_j = n - params.b - 1
    terms = master_terms(params)
    dispositions, generator, failures = _classify(params, terms, target_j)
    notes = [
        f"v_p(C({n}, {params.b + 1})) = {vp_int(binom(n, params.b + 1), p)} (unit binomial at the target)",
    ]
    return KillAudit(
        method="good",
        p=p,
        r=r,
        vL=params.vL,
        witness_n=(n,),
        target_j=target_j,
        target_i=r - target_j,
        dispositions=dispositions,
        generator=generator,
        notes=tuple(notes),
        failures=tuple(failures),
    )


def audit_bad(p: int, r: int, vL: Fraction | int | str) -> KillAudit:
    """The n = 2p + 1 kill (vFall = 1): target j* = 2p - 2, i* = r - 2p + 2."""
    check_prime(p, minimum=5)
    if not (2 * p + 4 <= r <= 3 * p - 1):
        raise InvalidRangeError(f"r = {r} outside [{2 * p + 4}, {3 * p - 1}]")
    n = 2 * p + 1
    params = make_params(p, r, n, vL, mode="strict")
    assert params.v_fall == 1 and params.b == 2
    target_j = 2 * p - 2
    terms = master_terms(params)
    dispositions, generator, failures = _classify(params, terms, target_j)
    notes = [
        f"v_p(C({n}, 3)) = {vp_int(binom(n, 3), p)} (target binomial contributes exactly one p)",
    ]
    if r == 2 * p + 4:
        # only here does degree p + 1 enter the window, as its below-range
        # edge; the Stirling values at t = p vanish mod p and rescue it
        notes.append(
            f"stirling rescue at j = p + 1: {{p brace {params.b}}} = {stirling2(p, params.b)} "
            f"= {stirling2(p, params.b) % p} mod p, "
            f"{{p brace {params.b + 1}}} = {stirling2(p, params.b + 1) % p} mod p"
        )
        if stirling2(p, params.b) % p != 0 or stirling2(p, params.b + 1) % p != 0:
            failures.append(f"stirling rescue fails at j = {p + 1}")
    return KillAudit(
        method="bad",
        p=p,
        r=r,
        vL=params.vL,
        witness_n=(n,),
        target_j=target_j,
        target_i=r - target_j,
        dispositions=dispositions,
        generator=generator,
        notes=tuple(notes),
        failures=tuple(failures),
    )


def audit_ugly(p: int, r: int, vL: Fraction | int | str, c: int) -> KillAudit:
    """Two-phase kill of j* = cp - 1 (i* = r - cp + 1) for c in {1, 2}.

    Phase one instantiates the congruence at n = cp + c (vFall = 1); the
    degree-cp terms of both lines survive as an integral residual family.
    Phase two reapplies it at n = cp + c + 1 (vFall = 0), where the
    degree-cp term is a generator and the degree-(cp - 1) term is forced
    dead (the binomial C(cp+c+1, cp-1) is divisible by p); this certifies
    that the residual is supported on sub-quotients deeper than the target.
    """
    check_prime(p, minimum=5)
    if c not in (1, 2):
        raise InvalidRangeError(f"c = {c} must be 1 or 2")
    if not (c * p + c + 2 <= r <= (c + 1) * p - 1):
        raise InvalidRangeError(f"r = {r} outside [{c * p + c + 2}, {(c + 1) * p - 1}]")
    vL = Fraction(vL)
    if not vL < Fraction(r, 2) - (c * p + c + 1):
        raise VLBoundError(
            f"ugly method needs vL < r/2 - (cp + c + 1) = {Fraction(r, 2) - (c * p + c + 1)}"
        )
    target_j = c * p - 1
    target_i = r - c * p + 1

    n1 = c * p + c
    params1 = make_params(p, r, n1, vL, mode="strict")
    assert params1.v_fall == 1 and params1.b == c
    terms1 = master_terms(params1)
    disp1, gen1, fail1 = _classify(
        params1, terms1, target_j, residual_degrees=frozenset({c * p})
    )
    phase1 = KillAudit(
        method="ugly-phase1",
        p=p,
        r=r,
        vL=vL,
        witness_n=(n1,),
        target_j=target_j,
        target_i=target_i,
        dispositions=disp1,
        generator=gen1,
        notes=(f"v_p(C({n1}, {c + 1})) = {vp_int(binom(n1, c + 1), p)} = vFall",),
        failures=tuple(fail1),
    )

    n2 = c * p + c + 1
    params2 = make_params(p, r, n2, vL, mode="strict")
    assert params2.v_fall == 0 and params2.b == c
    terms2 = master_terms(params2)
    disp2, gen2, fail2 = _classify(
        params2, terms2, c * p, must_die=frozenset({c * p - 1})
    )
    below_binom = binom(n2, c * p - 1)
    notes2 = [
        f"p | C({n2}, {c * p - 1}): v_p = {vp_int(below_binom, p) if below_binom else 'inf'}",
    ]
    if below_binom % p != 0:
        fail2 = fail2 + [f"C({n2}, {c * p - 1}) is a p-unit; residual certificate fails"]
    phase2 = KillAudit(
        method="ugly-phase2",
        p=p,
        r=r,
        vL=vL,
        witness_n=(n2,),
        target_j=c * p,
        target_i=r - c * p,
        dispositions=disp2,
        generator=gen2,
        notes=tuple(notes2),
        failures=tuple(fail2),
    )

    residuals = [d for d in disp1 if d.status == RESIDUAL]
    notes = (
        f"residual family at degree {c * p}: {len(residuals)} integral term(s), "
        f"discharged by the phase-two certificate",
    )
    return KillAudit(
        method="ugly",
        p=p,
        r=r,
        vL=vL,
        witness_n=(n1, n2),
        target_j=target_j,
        target_i=target_i,
        dispositions=disp1,
        generator=gen1,
        notes=notes,
        failures=(),
        phases=(phase1, phase2),
    )


# --------------------------------------------------------------------------
# inequality families

@dataclass(frozen=True)
class FamilyResult:
    name: str
    passed: bool
    witness: tuple[tuple[str, str], ...]
    observations: tuple[str, ...] = ()


@dataclass(frozen=True)
class InequalityReport:
    p: int
    r: int
    n: int
    families: tuple[FamilyResult, ...]

    @property
    def passed(self) -> bool:
        return all(f.passed for f in self.families)


def _ilog(m: int, p: int) -> int:
    """floor(log_p m) for m >= 1, exactly."""
    if m < 1:
        raise ValueError("m must be >= 1")
    e = 0
    q = p
    while q <= m:
        e += 1
        q *= p
    return e


def _power_exceeds(p: int, exponent2: int, rhs: int, strict: bool) -> bool:
    """Compare p^(exponent2 / 2) against rhs > 0 exactly (no rounding).

    Exponents are doubled by the callers so they are integers even when
    r is odd; the comparison squares the right side instead of taking
    roots.  Negative exponents compare 1 against rhs^2 p^(-exponent2).
    """
    if rhs <= 0:
        return True
    lhs2, rhs2 = (p**exponent2, rhs * rhs) if exponent2 >= 0 else (1, rhs * rhs * p**-exponent2)
    return lhs2 > rhs2 if strict else lhs2 >= rhs2


def _geometric_step_ok(p: int, exponent2: int) -> bool:
    """Induction step for families p^(e + l) vs an RHS growing by <= itself.

    If p^(e+l) beats the RHS at l then p^(e+l+1) = p * p^(e+l) beats
    RHS + increment as long as the ratio is >= 2 and the left side is >= 1
    (squared form: ratio p^2 >= 4 >= ((R+1)/R)^2 for R >= 1).  The checks
    here are exactly those two facts.
    """
    return p >= 2 and exponent2 >= 0


def inequality_suite(p: int, r: int, n: int) -> InequalityReport:
    """Exact verification of the four inequality families for one (p, r, n).

    Every family is an infinite family in a shift l >= 1; each is certified
    by an exact base case plus the discrete form of the growth argument
    (geometric left side versus affine right side).  Comparisons involving
    r/2 clear the half by doubling exponents and squaring the right side.
    """
    params = make_params(p, r, n, Fraction(r, 2) - n, mode="weak")
    b, v_fall = params.b, params.v_fall
    families: list[FamilyResult] = []

    # tail bound for the Taylor expansion near the singular point:
    #   p^(2(n - r/2) + l - vFall) > n + l for l >= 1
    e_base = 2 * n - r - v_fall + 1
    base_ok = _power_exceeds(p, 2 * e_base, n + 1, strict=True)
    chain_ok = e_base >= 2 and p * p > n + 1
    step_ok = _geometric_step_ok(p, 2 * e_base)
    families.append(
        FamilyResult(
            name="telescoping-zp",
            passed=base_ok and chain_ok and step_ok,
            witness=(
                ("base", f"{p}^{e_base} > {n + 1}"),
                ("chain", f"exponent {e_base} >= 2 and {p * p} > {n + 1}"),
            ),
        )
    )

    # second telescoping function, affine family
    #   2(n - 1 - r/2 + l) - vFall > (n - 1 + l)/(p - 1) for l >= 1,
    # weakened through n - r/2 >= b + 1 to 2(b + l) - vFall > (n-1+l)/(p-1).
    # The further shortcut that bounds vFall by 1 and lands on
    # 2b + 1 > n/(p - 1) loses too much exactly at b = 0, n = p - 1, where
    # vFall = 0; the forms with vFall retained hold everywhere, so those are
    # asserted and the shortcut's outcome is only recorded.
    pre_base = (2 * n - r - v_fall) * (p - 1) > n
    window_base = (2 * (b + 1) - v_fall) * (p - 1) > n
    slope_ok = 2 * (p - 1) - 1 > 0
    shortcut = (2 * b + 1) * (p - 1) > n
    families.append(
        FamilyResult(
            name="telescoping-pzp",
            passed=pre_base and window_base and slope_ok,
            witness=(
                ("window base", f"(2(b+1)-vFall)(p-1) = {(2 * (b + 1) - v_fall) * (p - 1)} > n = {n}"),
                ("pre-reduction base", f"(2n-r-vFall)(p-1) = {(2 * n - r - v_fall) * (p - 1)} > n = {n}"),
            ),
            observations=(
                f"printed shortcut (2b+1)(p-1) = {(2 * b + 1) * (p - 1)} > n = {n}: "
                f"{'holds' if shortcut else 'fails (b = 0 edge; vFall-retained form asserted instead)'}",
            ),
        )
    )

    # derivative tail on pZ_p: p^(-1 + r/2 - n + m + l - v_p(j!)) > l for
    # l >= n - m + 1; at the base l the exponent is r/2 - v_p(j!), bounded
    # below by r/2 - v_p(r!), and the base RHS is at most n + 1 <= r + 1.
    v_r_fact = vp_factorial(r, p)
    q_base = _power_exceeds(p, r - 2 * v_r_fact, r + 1, strict=True)
    q_monotone = all(vp_factorial(j, p) <= v_r_fact for j in range(n))
    q_step = _geometric_step_ok(p, r - 2 * v_r_fact)
    families.append(
        FamilyResult(
            name="qp-zp",
            passed=q_base and q_monotone and (n + 1 <= r + 1) and q_step,
            witness=(
                ("base", f"{p}^(({r} - 2*{v_r_fact})/2) > {r + 1}"),
                ("rhs bound", f"n + 1 = {n + 1} <= r + 1 = {r + 1}"),
            ),
        )
    )

    # master congruence log-truncation bounds:
    #   l = n - j boundary:  n - vFall - floor(log_p(n - j)) >= r/2
    #   l >= n - j + 1:      p^(-r/2 + j - vFall + l) >= l
    boundary_ok = all(
        2 * (n - v_fall - _ilog(n - j, p)) >= r for j in range(n)
    )
    m_exp2 = 2 * n - r + 2 - 2 * v_fall  # doubled exponent at l = n - j + 1
    m_base = _power_exceeds(p, m_exp2, n + 1, strict=False)
    m_chain = p ** (b + 2 - v_fall) >= r + 1 and 2 * n >= r + 2 * b + 2
    m_step = _geometric_step_ok(p, m_exp2)
    lambda_tail_ok = 2 * (n - v_fall - _ilog(n, p)) >= r
    families.append(
        FamilyResult(
            name="master-tail",
            passed=boundary_ok and m_base and m_chain and m_step and lambda_tail_ok,
            witness=(
                ("boundary", f"2(n - vFall - floor(log_p(n - j))) >= r for all j < n"),
                ("base", f"{p}^({m_exp2}/2) >= {n + 1}"),
                ("chain", f"{p}^{b + 2 - v_fall} >= {r + 1}"),
            ),
        )
    )

    return InequalityReport(p=p, r=r, n=n, families=tuple(families))
