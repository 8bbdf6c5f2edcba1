"""Run-structure machinery that bounds the length of odd Barker sequences.

The chain: for an odd-length Barker sequence whose first run is longer
than 1, the first run length and the first off-grid boundary are both odd
and squeeze the length into a narrow corridor; inside the corridor the
difference of two specific autocorrelations has an exact closed form of
magnitude >= 4 whenever the length exceeds pivot+1, which is impossible
for a Barker sequence. The surviving corridor cases are classified and
pinned to lengths 7, 11 and 13.

Everything here evaluates raw predicates on concrete sequences; the
sums behind the closed form are computed from their definitions and
separately from their evaluated shortcuts, and the two routes are
cross-asserted whenever the premises hold.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from barkerlab import kernels
from barkerlab.catalogue import catalogue_sequences
from barkerlab.errors import InvariantViolationError
from barkerlab.lemmas import check_skew_symmetry, full_report
from barkerlab.sequence import BinarySequence, runs

CASE1 = "case1"
CASE2A = "case2a"
CASE2B = "case2b"
CASE2_REJECT9 = "case2_reject9"
CASE3_REJECT = "case3_reject"
OUT_OF_SCOPE = "out_of_scope"


@dataclass(frozen=True)
class Lemma2Verdict:
    """Parity and length bounds tied to the first off-grid boundary.

    The three conjuncts are raw predicates; for an odd-length Barker
    sequence with first run longer than 1 all three must hold.
    """

    n: int
    applicable: bool
    reason: str | None
    first_run_odd: bool | None
    offgrid_boundary_odd: bool | None
    length_ok: bool | None  # n >= 2*offgrid_boundary - 3

    @property
    def passed(self) -> bool | None:
        if self.first_run_odd is None:
            return None
        return bool(self.first_run_odd and self.offgrid_boundary_odd and self.length_ok)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "applicable": self.applicable,
            "reason": self.reason,
            "first_run_odd": self.first_run_odd,
            "offgrid_boundary_odd": self.offgrid_boundary_odd,
            "length_ok": self.length_ok,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class BoundsVerdict:
    """The corridor 2*offgrid_boundary - 3 <= n <= first_run + offgrid_boundary + 1."""

    n: int
    applicable: bool
    reason: str | None
    first_run: int | None
    offgrid_boundary: int | None
    lower_ok: bool | None
    upper_ok: bool | None
    gap: int | None  # offgrid_boundary - first_run
    gap_within_four: bool | None  # consequence of the corridor being nonempty

    @property
    def passed(self) -> bool | None:
        if self.lower_ok is None:
            return None
        return bool(self.lower_ok and self.upper_ok)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "applicable": self.applicable,
            "reason": self.reason,
            "first_run": self.first_run,
            "offgrid_boundary": self.offgrid_boundary,
            "lower_ok": self.lower_ok,
            "upper_ok": self.upper_ok,
            "gap": self.gap,
            "gap_within_four": self.gap_within_four,
            "passed": self.passed,
        }


@dataclass(frozen=True)
class Lemma3Breakdown:
    """Both routes to the correlation-difference closed form.

    ``delta`` is C(n-pivot+1) - C(n-pivot-1) computed from the actual
    autocorrelation; ``run_terms`` and ``tail_term`` are the per-run
    telescoped sums and the cross-boundary tail sum computed from their
    defining summations; ``closed_form`` is the evaluated shortcut
    (-1)^((n+1)/2) * (8*(-1)^e - 2*A(pivot) + 2*A(pivot+1)) with e the
    off-grid run index. When ``applicable`` all of delta == closed_form,
    |delta| >= 4, tail_term == 2*(-1)^e and the run-term pattern are
    asserted; a failure raises InvariantViolationError.

    Entries enter through the first-entry-normalized view (all signs
    flipped when entry 1 is -1): the correlation delta is unaffected but
    the closed form's A(pivot) terms require the normalization.
    """

    n: int
    first_run: int | None
    offgrid_index: int | None
    offgrid_boundary: int | None
    pivot: int | None
    applicable: bool
    reason: str | None
    delta: int | None
    run_terms: tuple[int, ...] | None
    tail_term: int | None
    closed_form: int | None

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "first_run": self.first_run,
            "offgrid_index": self.offgrid_index,
            "offgrid_boundary": self.offgrid_boundary,
            "pivot": self.pivot,
            "applicable": self.applicable,
            "reason": self.reason,
            "delta": self.delta,
            "run_terms": list(self.run_terms) if self.run_terms is not None else None,
            "tail_term": self.tail_term,
            "closed_form": self.closed_form,
        }


@dataclass(frozen=True)
class CaseVerdict:
    """Resolution of one corridor case.

    Accepting verdicts pin the length and carry the catalogue witness;
    rejecting verdicts carry the violated condition in ``reason``.
    """

    case_id: str
    n: int | None
    first_run: int
    profile: tuple[int, ...]
    witness: BinarySequence | None
    reason: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "case_id": self.case_id,
            "n": self.n,
            "first_run": self.first_run,
            "profile": list(self.profile),
            "witness": str(self.witness) if self.witness is not None else None,
            "reason": self.reason,
        }


def lemma2_check(seq: BinarySequence) -> Lemma2Verdict:
    """Evaluate: first run odd, off-grid boundary odd, n >= 2*boundary - 3.

    Applicable to odd n > 5 with first run longer than 1 and an off-grid
    boundary present; outside that the verdict is marked not applicable
    (conjuncts still reported when computable).
    """
    n = seq.n
    profile = runs(seq)
    reasons = []
    if n % 2 == 0:
        reasons.append("even length")
    if n <= 5:
        reasons.append("length <= 5")
    if profile.first_run_length <= 1:
        reasons.append("first run has length 1")
    if profile.offgrid_index is None:
        reasons.append("no off-grid boundary")
    applicable = not reasons

    if profile.offgrid_index is None:
        return Lemma2Verdict(n, False, "; ".join(reasons), None, None, None)
    se = profile.offgrid_boundary
    return Lemma2Verdict(
        n=n,
        applicable=applicable,
        reason="; ".join(reasons) or None,
        first_run_odd=profile.first_run_length % 2 == 1,
        offgrid_boundary_odd=se % 2 == 1,
        length_ok=n >= 2 * se - 3,
    )


def bounds_chain(seq: BinarySequence) -> BoundsVerdict:
    """Evaluate the corridor inequalities and the derived gap bound."""
    n = seq.n
    profile = runs(seq)
    if profile.offgrid_index is None:
        return BoundsVerdict(
            n, False, "no off-grid boundary", None, None, None, None, None, None
        )
    s1 = profile.first_run_length
    se = profile.offgrid_boundary
    return BoundsVerdict(
        n=n,
        applicable=True,
        reason=None,
        first_run=s1,
        offgrid_boundary=se,
        lower_ok=2 * se - 3 <= n,
        upper_ok=n <= s1 + se + 1,
        gap=se - s1,
        gap_within_four=se <= s1 + 4,
    )


def _normalized_entries(seq: BinarySequence) -> tuple[int, ...]:
    if seq.entries[0] == 1:
        return seq.entries
    return tuple(-x for x in seq.entries)


def lemma3_breakdown(seq: BinarySequence) -> Lemma3Breakdown:
    """Compute both sides of the correlation-difference identity.

    Sums are evaluated whenever their index ranges are valid (n >= pivot+1);
    the identity itself needs the full premises (odd n, skew-symmetric,
    off-grid boundary present, first run and boundary odd, n >= pivot+3),
    under which the cross-checks are asserted.
    """
    n = seq.n
    profile = runs(seq)
    if profile.offgrid_index is None:
        return Lemma3Breakdown(
            n, profile.first_run_length if profile.first_run_length > 1 else None,
            None, None, None, False, "no off-grid boundary",
            None, None, None, None,
        )

    s1 = profile.first_run_length
    e = profile.offgrid_index
    se = profile.offgrid_boundary
    v = profile.pivot

    reasons = []
    if n % 2 == 0:
        reasons.append("even length")
    elif not check_skew_symmetry(seq):
        reasons.append("not skew-symmetric")
    if s1 % 2 == 0:
        reasons.append("first run length is even")
    if se % 2 == 0:
        reasons.append("off-grid boundary is even")
    if n < v + 3:
        reasons.append(f"length {n} below pivot+3 = {v + 3}")
    applicable = not reasons

    delta = run_terms = tail_term = closed_form = None
    if n >= v + 1:
        entries = _normalized_entries(seq)

        def a(k: int) -> int:  # 1-based, normalized so a(1) == +1
            return entries[k - 1]

        values = kernels.acf_bits(seq.bits, n)
        delta = values[n - v + 1] - values[n - v - 1]

        terms = []
        for j in range(e):
            lo, hi = profile.boundaries[j], profile.boundaries[j + 1]
            total = 0
            for k in range(lo + 1, hi + 1):
                parity = -1 if k % 2 else 1
                total += parity * (a(v - k) - a(v - k + 2))
            terms.append(total)
        run_terms = tuple(terms)

        tail_term = 0
        for k in range(se + 1, v):
            parity = -1 if k % 2 else 1
            tail_term += parity * a(k) * (a(v - k) - a(v - k + 2))

        half_sign = -1 if ((n + 1) // 2) % 2 else 1
        e_sign = -1 if e % 2 else 1
        closed_form = half_sign * (8 * e_sign - 2 * a(v) + 2 * a(v + 1))

        if applicable:
            # Both routes must agree exactly; these equalities ARE the result.
            lhs = half_sign * delta
            rhs = sum((-1 if j % 2 else 1) * terms[j] for j in range(e))
            rhs += tail_term - a(v) + a(v + 1)
            checks = [
                lhs == rhs,
                delta == closed_form,
                abs(delta) >= 4,
                tail_term == 2 * e_sign,
                all(terms[j] == 0 for j in range(2, e - 1)),
            ]
            if e == 2:
                checks.append(terms[1] == -4)
            else:
                checks.append(terms[1] == -2 * e_sign)
                checks.append(terms[e - 1] == -2)
            if not all(checks):
                raise InvariantViolationError(
                    f"correlation-difference identity failed on {seq}: "
                    f"delta={delta} closed_form={closed_form} "
                    f"run_terms={terms} tail_term={tail_term}"
                )

    return Lemma3Breakdown(
        n=n,
        first_run=s1,
        offgrid_index=e,
        offgrid_boundary=se,
        pivot=v,
        applicable=applicable,
        reason="; ".join(reasons) or None,
        delta=delta,
        run_terms=run_terms,
        tail_term=tail_term,
        closed_form=closed_form,
    )


def structured_fill_width(length: int, offgrid_boundary: int) -> int:
    """Number of free positions in structured_skew_sequence for these parameters."""
    return (length + 1) // 2 - offgrid_boundary - 1


def structured_skew_sequence(
    length: int,
    first_run: int,
    offgrid_index: int,
    offgrid_boundary: int,
    fill_bits: int,
) -> BinarySequence:
    """Build a structured skew-symmetric sequence; the oracle generator for
    the correlation-difference identity tests.

    Positions 1..offgrid_boundary realize runs on the first_run grid (run j
    ends at j*first_run for j < offgrid_index, the off-grid run ends at
    offgrid_boundary); the next position starts a fresh run; the remaining
    free positions up to the midpoint (length+1)/2 are taken from the bits
    of ``fill_bits`` (bit 0 = first free position, set bit = +1); the
    second half is forced by skew-symmetry. Entry 1 is +1.

    Every output satisfies the premises of the correlation-difference
    identity, so its breakdown is applicable and exact.
    """
    n, s1, e, se = length, first_run, offgrid_index, offgrid_boundary
    if n % 2 == 0:
        raise ValueError("length must be odd")
    if s1 < 3 or s1 % 2 == 0:
        raise ValueError("first run length must be odd and >= 3")
    if e < 2:
        raise ValueError("the off-grid index is at least 2")
    if se % 2 == 0 or se % s1 == 0 or se <= (e - 1) * s1:
        raise ValueError(
            "off-grid boundary must be odd, off the first-run grid, and leave "
            "room for the on-grid runs"
        )
    m = (n + 1) // 2
    if se + 1 > m:
        raise ValueError("pinned prefix must fit inside the free half")
    if n < s1 + se + 3:
        raise ValueError("length must be at least pivot + 3")
    width = structured_fill_width(n, se)
    if not 0 <= fill_bits < (1 << width):
        raise ValueError(f"fill_bits must be in [0, 2^{width})")

    entries = [0] * (n + 1)  # 1-based scratch
    bounds = [j * s1 for j in range(e)] + [se]
    sign = 1
    for j in range(e):
        for k in range(bounds[j] + 1, bounds[j + 1] + 1):
            entries[k] = sign
        sign = -sign
    entries[se + 1] = sign  # fresh run after the off-grid boundary
    for i in range(width):
        entries[se + 2 + i] = 1 if (fill_bits >> i) & 1 else -1
    for k in range(m + 1, n + 1):
        mirror = n + 1 - k
        twin_sign = -1 if (m + mirror) % 2 else 1
        entries[k] = entries[mirror] * twin_sign
    return BinarySequence(tuple(entries[1:]))


def classify_case(
    first_run: int,
    offgrid_index: int,
    offgrid_boundary: int,
    length: int | None = None,
) -> CaseVerdict:
    """Resolve one corridor case to the known endgame table.

    With ``length`` given the verdict is for that corridor branch; with
    ``length`` None the surviving branch's verdict is returned. Inputs
    outside the corridor produce an out_of_scope verdict carrying the
    violated condition.
    """
    s1, e, se = first_run, offgrid_index, offgrid_boundary
    profile = (s1, 2 * s1, se) if e == 3 else (s1, se)

    def scope(reason: str) -> CaseVerdict:
        return CaseVerdict(OUT_OF_SCOPE, length, s1, profile, None, reason)

    if s1 < 3 or s1 % 2 == 0:
        return scope("first run length must be odd and >= 3")
    if se % 2 == 0:
        return scope("off-grid boundary must be odd")
    if se <= s1 or se % s1 == 0:
        return scope("off-grid boundary must exceed the first run length and sit off its grid")
    if e not in (2, 3):
        return scope("the corridor forces the off-grid index into {2, 3}")

    if e == 3:
        if (s1, se) != (3, 7):
            return scope(
                "with two on-grid runs the corridor forces boundaries (3, 6, 7)"
            )
        if length not in (None, 11):
            return scope("the corridor pins the length to 11")
        return CaseVerdict(CASE1, 11, 3, (3, 6, 7), catalogue_sequences(11)[0])

    if se - s1 not in (2, 4):
        return scope("the corridor forces the boundary gap into {2, 4}")

    if se == s1 + 4:
        n = 2 * s1 + 5
        if length not in (None, n):
            return scope(f"the corridor pins the length to {n}")
        return CaseVerdict(
            CASE3_REJECT,
            n,
            s1,
            profile,
            None,
            reason=(
                "the tail must end with first_run alternating entries preceded "
                f"by four more, so n >= 2*offgrid_boundary - 1 = {2 * se - 1} "
                f"> {n}"
            ),
        )

    # gap 2: corridor allows n = 2*s1 + 1 or n = 2*s1 + 3
    def branch(n: int) -> CaseVerdict:
        if n == 2 * s1 + 1:
            if s1 == 3:
                return CaseVerdict(CASE2A, 7, 3, (3, 5), catalogue_sequences(7)[0])
            return scope(
                "n = 2*first_run + 1 places an equal adjacent pair inside the "
                "alternating tail unless first_run = 3"
            )
        if s1 == 3:
            return CaseVerdict(
                CASE2_REJECT9,
                9,
                3,
                (3, 5),
                None,
                reason=(
                    "skew-symmetry forces entries 6 and 7 equal while the "
                    "doubling identity forces their product to -1"
                ),
            )
        if s1 == 5:
            return CaseVerdict(CASE2B, 13, 5, (5, 7), catalogue_sequences(13)[0])
        return scope(
            "n = 2*first_run + 3 places an equal adjacent pair inside the "
            "alternating tail unless first_run is 3 or 5"
        )

    if length is not None:
        if length not in (2 * s1 + 1, 2 * s1 + 3):
            return scope(
                f"the corridor allows only lengths {2 * s1 + 1} and {2 * s1 + 3}"
            )
        return branch(length)

    for n in (2 * s1 + 1, 2 * s1 + 3):
        verdict = branch(n)
        if verdict.witness is not None:
            return verdict
    return scope("no length in the corridor survives the tail constraints")


_GAP_CANDIDATES = (2, 4)


def _classifier_lengths(max_length: int) -> set[int]:
    """Lengths > 5 that survive the corridor case analysis."""
    lengths: set[int] = set()
    for s1 in range(3, max_length // 2 + 3, 2):
        for e, se in ((2, s1 + 2), (2, s1 + 4), (3, 7)):
            if e == 3 and s1 != 3:
                continue
            verdict = classify_case(s1, e, se)
            if verdict.witness is not None and verdict.n is not None:
                if verdict.n <= max_length:
                    lengths.add(verdict.n)
    return lengths


@dataclass(frozen=True)
class ScanRow:
    """Search result vs classifier expectation for one odd length."""

    n: int
    witnesses: tuple[BinarySequence, ...]
    classifier_exists: bool

    @property
    def barker_count(self) -> int:
        return len(self.witnesses)

    @property
    def agree(self) -> bool:
        return (self.barker_count > 0) == self.classifier_exists


def theorem_scan(
    max_length: int, *, workers: int = 1, allow_large: bool = False
) -> list[ScanRow]:
    """Exhaustive skew search vs corridor classifier for every odd length.

    Lengths 3 and 5 are settled by the catalogue (the corridor analysis
    assumes length > 5). A disagreement between search and classifier
    raises InvariantViolationError; none can occur.
    """
    from barkerlab.search import search_barker  # deferred: search imports us not

    if max_length < 3 or max_length % 2 == 0:
        raise ValueError("max_length must be odd and >= 3")
    expected = {3, 5} | _classifier_lengths(max_length)
    rows = []
    for n in range(3, max_length + 1, 2):
        outcome = search_barker(
            n, "skew", workers=workers, allow_large=allow_large
        )
        row = ScanRow(n, outcome.found, n in expected)
        if not row.agree:
            raise InvariantViolationError(
                f"search and corridor classifier disagree at length {n}: "
                f"search found {row.barker_count}, classifier says "
                f"{'exists' if row.classifier_exists else 'none'}"
            )
        rows.append(row)
    return rows


def scan_to_csv(rows: list[ScanRow]) -> str:
    """CSV table with columns n, barker_count, witnesses (';'-joined)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "barker_count", "witnesses"])
    for row in rows:
        writer.writerow(
            [row.n, row.barker_count, ";".join(str(w) for w in row.witnesses)]
        )
    return buf.getvalue()


def scan_to_json(rows: list[ScanRow]) -> dict:
    """JSON report with a per-witness audit trail for each length."""
    report_rows = []
    for row in rows:
        audits = []
        for w in row.witnesses:
            audits.append(
                {
                    "sequence": str(w),
                    "lemma_report": full_report(w).to_json_dict(),
                    "run_bounds": lemma2_check(w).to_json_dict(),
                    "corridor": bounds_chain(w).to_json_dict(),
                    "correlation_difference": lemma3_breakdown(w).to_json_dict(),
                }
            )
        report_rows.append(
            {
                "n": row.n,
                "barker_count": row.barker_count,
                "classifier_exists": row.classifier_exists,
                "agree": row.agree,
                "witnesses": audits,
            }
        )
    return {"rows": report_rows}
