"""Exact aperiodic and periodic autocorrelation, PSL, merit factor.

All quantities are exact integers (the merit factor an exact rational);
floating point never enters. The fast path packs the sequence into machine
words and counts disagreements with popcount via C(u) = (n-u) - 2*d(u);
the textbook double loop ships alongside as the reference implementation
and the two are compared in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from barkerlab import kernels
from barkerlab.sequence import BinarySequence


@dataclass(frozen=True)
class CorrelationProfile:
    """The full autocorrelation vector C(0..n-1) plus derived figures.

    ``psl`` is None for n < 2 (no nontrivial shifts); ``merit_factor`` is
    None when the sidelobe energy is zero (again only possible at n = 1).
    """

    values: tuple[int, ...]
    n: int
    psl: int | None
    merit_factor: Fraction | None

    @classmethod
    def from_values(cls, values: tuple[int, ...]) -> "CorrelationProfile":
        n = len(values)
        sidelobes = values[1:]
        psl = max(abs(c) for c in sidelobes) if sidelobes else None
        energy = sum(c * c for c in sidelobes)
        merit = Fraction(n * n, 2 * energy) if energy else None
        return cls(values, n, psl, merit)

    def to_json_dict(self) -> dict:
        merit = None
        if self.merit_factor is not None:
            merit = {
                "num": self.merit_factor.numerator,
                "den": self.merit_factor.denominator,
            }
        return {"n": self.n, "c": list(self.values), "psl": self.psl, "merit_factor": merit}


def acf(seq: BinarySequence) -> CorrelationProfile:
    """Aperiodic autocorrelation profile (accelerated popcount path)."""
    return CorrelationProfile.from_values(tuple(kernels.acf_bits(seq.bits, seq.n)))


def acf_reference(seq: BinarySequence) -> list[int]:
    """Direct double-loop autocorrelation; the reference the fast path must match."""
    entries = seq.entries
    n = len(entries)
    out = []
    for u in range(n):
        total = 0
        for k in range(n - u):
            total += entries[k] * entries[k + u]
        out.append(total)
    return out


def periodic_acf(seq: BinarySequence) -> tuple[int, ...]:
    """Cyclic autocorrelation; entry u equals C(u) + C(n-u) for 0 < u < n."""
    return tuple(kernels.periodic_bits(seq.bits, seq.n))


def psl(seq: BinarySequence) -> int:
    """Peak sidelobe level max |C(u)|, 1 <= u < n. Requires n >= 2."""
    if seq.n < 2:
        raise ValueError("PSL needs length >= 2 (no nontrivial shifts otherwise)")
    return kernels.psl_bits(seq.bits, seq.n)


def product_identity_holds(seq: BinarySequence) -> bool:
    """Check prod_{k=1}^{n-u} A(k)A(k+u) == (-1)^((n-u-C(u))/2) at every shift.

    The identity holds for every ±1 sequence: the left side multiplies the
    same terms C(u) sums, so both reduce to the count of -1 terms. The two
    sides are computed by independent routes (direct product loop vs the
    correlation values).
    """
    entries = seq.entries
    n = len(entries)
    values = kernels.acf_bits(seq.bits, n)
    for u in range(n):
        prod = 1
        for k in range(n - u):
            prod *= entries[k] * entries[k + u]
        exponent = (n - u - values[u]) // 2
        rhs = -1 if exponent % 2 else 1
        if prod != rhs:
            return False
    return True
