"""The elimination engine: kill every sub-quotient but one, then label it.

For prime p >= 5 and r in [p+3, 2p-1] or [2p+4, 3p-1] the filtration has
sub-quotients indexed by i in [0, r], with the index-i piece generated (on
pZ_p) by z^j for j = r - i; smaller i is shallower.  The engine eliminates:

  * i > floor(r/2)          outright (quoted lemma; no computation needed)
  * i <= c - 1, c = r//p    via the polynomial certificate (shallow kill)
  * each i with a good n    single congruence at n, vFall = 0
  * i = r - 2p + 2 (c = 2)  the n = 2p + 1 congruence (bad kill)
  * i = r - cp + 1          the two-phase kill at n = cp + c, cp + c + 1

and certifies that exactly the index i = c survives.  The two-phase kill is
only run when its target degree cp - 1 lies inside the filtration window
(equivalently r <= 2cp - 2); at r = 2p - 1 the window excludes it and the
good kills already cover every deeper index.

The surviving index is mapped to the label ind omega2^(r+1) through a pure
lookup guarded by the non-congruence conditions r - 2c != 1, p - 2 mod
p - 1; no representation theory is computed.  r = 2p - 1 fails the guard,
which is why no prediction is emitted there.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from padicelim.congruence import KillAudit, audit_bad, audit_good, audit_ugly
from padicelim.errors import (
    EliminationIncompleteError,
    InvalidRangeError,
    PredictionUnavailableError,
    VLBoundError,
)
from padicelim.exactnum import as_rational, check_prime, falling_factorial, vp_int

__all__ = [
    "SubquotientEntry",
    "KillTrace",
    "ReductionResult",
    "BadRow",
    "bad_candidate_table",
    "good_candidates",
    "run_elimination",
    "predict",
    "theorem_r_values",
    "trace_from_dict",
]


@dataclass(frozen=True)
class SubquotientEntry:
    """One row of the kill trace: what happened to F at index i."""

    i: int
    j: int
    status: str  # "killed" | "survivor"
    method: str | None  # trivial | shallow | good | bad | ugly | None
    witness_n: tuple[int, ...] | None
    slack_table: tuple[tuple[int, str], ...] | None


@dataclass(frozen=True)
class KillTrace:
    """The full elimination record for one (p, r, vL)."""

    p: int
    r: int
    c: int
    vL: Fraction
    entries: tuple[SubquotientEntry, ...]
    audits: dict[int, KillAudit] = field(compare=False, repr=False, default_factory=dict)
    duplicates: tuple[tuple[int, str, tuple[int, ...]], ...] = ()

    @property
    def survivor(self) -> int:
        for e in self.entries:
            if e.status == "survivor":
                return e.i
        raise EliminationIncompleteError("trace has no survivor")

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "r": self.r,
            "c": self.c,
            "vL": str(self.vL),
            "subquotients": [
                {
                    "i": e.i,
                    "j": e.j,
                    "status": e.status,
                    "method": e.method,
                    "witness_n": list(e.witness_n) if e.witness_n is not None else None,
                    "slack_table": (
                        {str(j): s for j, s in e.slack_table}
                        if e.slack_table is not None
                        else None
                    ),
                }
                for e in self.entries
            ],
        }


def trace_from_dict(data: dict) -> KillTrace:
    """Rebuild a KillTrace from its JSON form (audit objects are not carried)."""
    entries = tuple(
        SubquotientEntry(
            i=row["i"],
            j=row["j"],
            status=row["status"],
            method=row["method"],
            witness_n=tuple(row["witness_n"]) if row["witness_n"] is not None else None,
            slack_table=(
                tuple(sorted((int(j), s) for j, s in row["slack_table"].items()))
                if row["slack_table"] is not None
                else None
            ),
        )
        for row in data["subquotients"]
    )
    return KillTrace(
        p=data["p"], r=data["r"], c=data["c"], vL=as_rational(data["vL"]), entries=entries
    )


@dataclass(frozen=True)
class ReductionResult:
    """The predicted reduction: label ind omega2^(r+1) plus the guard data."""

    p: int
    r: int
    survivor: int
    weight: int
    exponent: int
    label: str
    irreducibility_residue: int
    excluded_residues: tuple[int, int]
    trace: KillTrace

    def to_dict(self) -> dict:
        data = self.trace.to_dict()
        data["prediction"] = {
            "label": self.label,
            "exponent": self.exponent,
            "irreducibility": {
                "residue": self.irreducibility_residue,
                "excluded": list(self.excluded_residues),
            },
        }
        return data


@dataclass(frozen=True)
class BadRow:
    d: int
    degrees: tuple[int, ...]
    flagged: int  # first-column degree, ignorable: reachable from n = dp - 1


def bad_candidate_table(p: int, c: int) -> tuple[BadRow, ...]:
    """Rows of degrees j = n - b - 1 coming from n with vFall = 1.

    Row d (listed d = c down to 1) holds dp - d - 1, ..., dp - 1.  The first
    entry of each row is flagged: the same degree arises from n = dp - 1,
    which has vFall = 0, so the single-congruence kill already covers it.
    """
    check_prime(p, minimum=5)
    if not (1 <= c <= p - 3):
        raise InvalidRangeError(f"c = {c} outside [1, {p - 3}]")
    rows = []
    for d in range(c, 0, -1):
        degrees = tuple(range(d * p - d - 1, d * p))
        n_flag = d * p - 1
        assert vp_int(falling_factorial(n_flag, (n_flag // p) + 1), p) == 0
        rows.append(BadRow(d=d, degrees=degrees, flagged=degrees[0]))
    return tuple(rows)


def good_candidates(p: int, r: int) -> tuple[int, ...]:
    """All n <= r in the window n >= r/2 + b + 1 with v_p([n]_{b+1}) = 0."""
    out = []
    for n in range(r // 2 + 1, r + 1):
        b = n // p
        if 2 * n < r + 2 * b + 2:
            continue
        if vp_int(falling_factorial(n, b + 1), p) == 0:
            out.append(n)
    return tuple(out)


def _accepted_r(p: int, r: int) -> bool:
    return (p + 3 <= r <= 2 * p - 1) or (2 * p + 4 <= r <= 3 * p - 1)


def run_elimination(p: int, r: int, vL: Fraction | int | str | None = None) -> KillTrace:
    """Produce the complete kill trace, or raise on any gap or failed audit."""
    # import here: fp_poly is only needed for the shallow certificates
    from padicelim.fp_poly import shallow_kill_check

    check_prime(p, minimum=5)
    if not _accepted_r(p, r):
        raise InvalidRangeError(
            f"r = {r} outside [{p + 3}, {2 * p - 1}] u [{2 * p + 4}, {3 * p - 1}]"
        )
    if vL is None:
        vL = Fraction(-(r + 1), 2)
    else:
        vL = as_rational(vL)
    if not vL < Fraction(-r, 2):
        raise VLBoundError(f"vL = {vL} must be < -r/2 = {Fraction(-r, 2)}")

    c = r // p
    half = r // 2
    kills: dict[int, tuple[str, tuple[int, ...] | None, KillAudit | None]] = {}
    duplicates: list[tuple[int, str, tuple[int, ...]]] = []

    def record(i: int, method: str, witness: tuple[int, ...] | None, audit: KillAudit | None):
        if i == c:
            raise EliminationIncompleteError(
                f"method {method} targets the surviving index i = {c}"
            )
        if i in kills:
            duplicates.append((i, method, witness or ()))
            return
        kills[i] = (method, witness, audit)

    for i in range(c):
        if r < (i + 1) * (p + 1) - 1:
            raise EliminationIncompleteError(f"shallow bound fails at i = {i}")
        report = shallow_kill_check(p, r, i + 1)
        if not report.passed:
            raise EliminationIncompleteError(
                f"shallow certificate failed at i = {i}: {report.failures}"
            )
        record(i, "shallow", None, None)

    for n in good_candidates(p, r):
        audit = audit_good(p, r, n, vL)
        if not audit.passed:
            raise EliminationIncompleteError(
                f"good audit failed at n = {n}: {audit.failures}"
            )
        record(audit.target_i, "good", (n,), audit)

    if c == 2:
        audit = audit_bad(p, r, vL)
        if not audit.passed:
            raise EliminationIncompleteError(f"bad audit failed: {audit.failures}")
        record(audit.target_i, "bad", audit.witness_n, audit)

    # the two-phase kill is needed (and its window holds) iff its target
    # degree cp - 1 is inside the filtration window
    if 2 * (c * p - 1) >= r:
        audit = audit_ugly(p, r, vL, c)
        if not audit.passed:
            raise EliminationIncompleteError(
                f"ugly audit failed: {audit.failures or [ph.failures for ph in audit.phases]}"
            )
        record(audit.target_i, "ugly", audit.witness_n, audit)

    for i in range(half + 1, r + 1):
        record(i, "trivial", None, None)

    missing = [i for i in range(half + 1) if i != c and i not in kills]
    if missing:
        raise EliminationIncompleteError(f"no kill found for indices {missing}")

    entries = []
    audits: dict[int, KillAudit] = {}
    for i in range(r + 1):
        if i == c:
            entries.append(
                SubquotientEntry(i=i, j=r - i, status="survivor", method=None,
                                 witness_n=None, slack_table=None)
            )
            continue
        method, witness, audit = kills[i]
        table = None
        if audit is not None:
            audits[i] = audit
            table = audit.slack_table()
        entries.append(
            SubquotientEntry(i=i, j=r - i, status="killed", method=method,
                             witness_n=witness, slack_table=table)
        )
    return KillTrace(
        p=p, r=r, c=c, vL=vL, entries=tuple(entries),
        audits=audits, duplicates=tuple(duplicates),
    )


def theorem_r_values(p: int) -> tuple[int, ...]:
    """The r values covered by the prediction: [p+3, 2p-2] and [2p+4, 3p-1]."""
    return tuple(range(p + 3, 2 * p - 1)) + tuple(range(2 * p + 4, 3 * p))


def predict(p: int, r: int) -> ReductionResult:
    """Run the elimination with the default vL and emit the reduction label.

    The default vL = -(r+1)/2 is the weakest rational strictly below -r/2
    with denominator at most 2.
    """
    check_prime(p, minimum=5)
    if r == 2 * p - 1:
        raise PredictionUnavailableError(
            f"prediction unavailable: r = 2p-1 = {r} (the reducibility guard fails)"
        )
    if r not in theorem_r_values(p):
        raise InvalidRangeError(
            f"r = {r} outside [{p + 3}, {2 * p - 2}] u [{2 * p + 4}, {3 * p - 1}]"
        )
    trace = run_elimination(p, r)
    c = r // p
    if trace.survivor != c:
        raise EliminationIncompleteError(
            f"survivor {trace.survivor} differs from c = {c}"
        )
    residue = (r - 2 * c) % (p - 1)
    if residue in (1 % (p - 1), (p - 2) % (p - 1)):
        raise PredictionUnavailableError(
            f"prediction unavailable: r - 2c = {r - 2 * c} is congruent to "
            f"{residue} mod p - 1"
        )
    return ReductionResult(
        p=p,
        r=r,
        survivor=c,
        weight=r + 2,
        exponent=r + 1,
        label=f"ind omega2^{r + 1}",
        irreducibility_residue=residue,
        excluded_residues=(1, p - 2),
        trace=trace,
    )
