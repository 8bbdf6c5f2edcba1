"""The Barker predicate and the classical identities odd-length Barker
sequences must satisfy, each exposed as a raw predicate.

The identity checks deliberately do NOT require the input to be Barker:
the search pruner and the property tests both need them on arbitrary
sequences. ``full_report`` aggregates the verdicts and records which
checks are not applicable (and why) for the given input.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from barkerlab import kernels
from barkerlab.correlation import product_identity_holds
from barkerlab.errors import InvariantViolationError
from barkerlab.sequence import BinarySequence


def is_barker(seq: BinarySequence) -> bool:
    """True iff every nontrivial |C(u)| <= 1. Requires n >= 2."""
    if seq.n < 2:
        raise ValueError("the Barker property is defined for length >= 2")
    return kernels.psl_leq_bits(seq.bits, seq.n, 1)


def check_skew_symmetry(seq: BinarySequence) -> bool:
    """Check A(k)*A(n-k+1) == (-1)^((n+1)/2 + k) for every k. Odd n only."""
    n = seq.n
    if n % 2 == 0:
        raise ValueError("skew-symmetry is an odd-length identity")
    entries = seq.entries
    base = (n + 1) // 2
    for k in range(1, n + 1):
        expected = -1 if (base + k) % 2 else 1
        if entries[k - 1] * entries[n - k] != expected:
            return False
    return True


def check_doubling(seq: BinarySequence) -> bool:
    """Check A(k)A(k+1) == A(2k)A(2k+1) for 1 <= k <= (n-3)/2.

    Vacuously true for n = 3. Odd n >= 3 only.
    """
    n = seq.n
    if n % 2 == 0 or n < 3:
        raise ValueError("the doubling identity needs odd length >= 3")
    entries = seq.entries
    for k in range(1, (n - 3) // 2 + 1):
        if entries[k - 1] * entries[k] != entries[2 * k - 1] * entries[2 * k]:
            return False
    return True


def check_congruences(seq: BinarySequence) -> tuple[bool, ...]:
    """Per-shift verdicts of C(u) == 0 (mod 4) for odd u, == n (mod 4) for even u.

    Index u-1 of the result is the verdict for shift u (1 <= u < n). These
    congruences are a theorem for odd-length Barker sequences; on other
    inputs the verdicts are observational.
    """
    n = seq.n
    values = kernels.acf_bits(seq.bits, n)
    verdicts = []
    for u in range(1, n):
        target = 0 if u % 2 else n % 4
        verdicts.append(values[u] % 4 == target)
    return tuple(verdicts)


_ODD_CHECKS = ("c1_zero", "congruences", "skew_symmetry", "doubling")


@dataclass(frozen=True)
class LemmaReport:
    """Aggregated verdicts; None marks a value that was not computable.

    For any input with ``barker`` true and odd length, every other verdict
    must be true; ``full_report`` enforces that as a hard invariant.
    """

    n: int
    barker: bool | None
    c1_zero: bool | None
    congruences: tuple[bool, ...] | None
    skew_symmetric: bool | None
    doubling_ok: bool | None
    product_identity_ok: bool
    not_applicable: dict[str, str] = field(default_factory=dict)

    @property
    def congruences_ok(self) -> bool | None:
        if self.congruences is None:
            return None
        return all(self.congruences)

    def to_json_dict(self) -> dict:
        def render(name: str, value: bool | None) -> str:
            if name in self.not_applicable:
                return f"n/a: {self.not_applicable[name]}"
            assert value is not None
            return "pass" if value else "fail"

        return {
            "barker": render("barker", self.barker),
            "c1_zero": render("c1_zero", self.c1_zero),
            "congruences": render("congruences", self.congruences_ok),
            "skew_symmetry": render("skew_symmetry", self.skew_symmetric),
            "doubling": render("doubling", self.doubling_ok),
            "product_identity": render("product_identity", self.product_identity_ok),
        }


def full_report(seq: BinarySequence) -> LemmaReport:
    """Evaluate every applicable check on the sequence.

    Odd-length identity checks are still evaluated on odd non-Barker input
    (their verdicts are then observational and also recorded under
    ``not_applicable``); even-length input skips them entirely.
    """
    n = seq.n
    na: dict[str, str] = {}
    odd = n % 2 == 1

    barker: bool | None = None
    if n >= 2:
        barker = is_barker(seq)
    else:
        na["barker"] = "length < 2"

    c1_zero = congruences = skew = doubling = None
    if odd and n >= 2:
        values = kernels.acf_bits(seq.bits, n)
        c1_zero = values[1] == 0
        congruences = check_congruences(seq)
        skew = check_skew_symmetry(seq)
        doubling = check_doubling(seq) if n >= 3 else None
        if n < 3:
            na["doubling"] = "length < 3"
        if not barker:
            for name in _ODD_CHECKS:
                na.setdefault(name, "not a Barker sequence; verdict is observational")
    else:
        reason = "even length" if n >= 2 else "length < 2"
        for name in _ODD_CHECKS:
            na[name] = reason

    report = LemmaReport(
        n=n,
        barker=barker,
        c1_zero=c1_zero,
        congruences=congruences,
        skew_symmetric=skew,
        doubling_ok=doubling,
        product_identity_ok=product_identity_holds(seq),
        not_applicable=na,
    )

    if barker and odd:
        musts = [
            report.c1_zero,
            report.congruences_ok,
            report.skew_symmetric,
            report.product_identity_ok,
        ]
        if n >= 3:
            musts.append(report.doubling_ok)
        if not all(musts):
            raise InvariantViolationError(
                f"odd-length Barker sequence {seq} failed a mandatory identity: "
                f"{report.to_json_dict()}"
            )
    return report
