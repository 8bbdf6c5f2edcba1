"""Binary ±1 sequences: parsing, sign symmetries, canonical form, run structure.

Sequences are immutable, and 1-indexed in every documented contract:
``entry(1)`` is the first element, matching the usual conventions for
aperiodic autocorrelation. Entries are mirrored into a bit-packed integer
(bit k-1 set <=> entry k == +1) that the correlation and search kernels
operate on; the packing is an implementation detail and never leaks into
the API, which only speaks ±1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from barkerlab.errors import ParseError

_SIGN_ALPHABET = {"+": 1, "-": -1, "−": -1}  # accept the unicode minus too
_BIT_ALPHABET = {"1": 1, "0": -1}


@dataclass(frozen=True)
class BinarySequence:
    """A finite sequence over {-1, +1}."""

    entries: tuple[int, ...]
    bits: int = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.entries) < 1:
            raise ValueError("a sequence needs at least one entry")
        packed = 0
        for i, x in enumerate(self.entries):
            if x == 1:
                packed |= 1 << i
            elif x != -1:
                raise ValueError(f"entry {i + 1} is {x!r}, expected -1 or +1")
        object.__setattr__(self, "bits", packed)

    @classmethod
    def from_bits(cls, bits: int, n: int) -> "BinarySequence":
        return cls(tuple(1 if (bits >> i) & 1 else -1 for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def entry(self, k: int) -> int:
        """1-based access: entry(1) is the first element."""
        if not 1 <= k <= len(self.entries):
            raise IndexError(f"entry index {k} outside 1..{len(self.entries)}")
        return self.entries[k - 1]

    def __len__(self) -> int:
        return len(self.entries)

    def __str__(self) -> str:
        return "".join("+" if x == 1 else "-" for x in self.entries)


@dataclass(frozen=True)
class TransformParams:
    """Parameters (a, b) of the sign transform entry k -> entry k * (-1)^(a+bk)."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a not in (0, 1) or self.b not in (0, 1):
            raise ValueError("transform parameters must be bits (0 or 1)")


@dataclass(frozen=True)
class RunProfile:
    """Run decomposition of a sequence.

    ``boundaries`` is the strictly increasing tuple (0, ..., n) of positions
    where the sign flips (plus the two ends); run j occupies positions
    boundaries[j-1]+1 .. boundaries[j] and consecutive runs alternate sign.

    The first run length (the position of the first sign change) acts as a
    grid: ``offgrid_index`` is the smallest j >= 1 whose boundary is not a
    multiple of it, ``offgrid_boundary`` that boundary, and ``pivot`` their
    sum (first run length + offgrid boundary). All three are None when the
    first run has length 1 or every boundary sits on the grid.
    """

    boundaries: tuple[int, ...]
    run_count: int
    offgrid_index: int | None
    offgrid_boundary: int | None
    pivot: int | None

    @property
    def first_run_length(self) -> int:
        return self.boundaries[1]

    def to_json_dict(self) -> dict:
        return {
            "boundaries": list(self.boundaries),
            "run_count": self.run_count,
            "offgrid_index": self.offgrid_index,
            "offgrid_boundary": self.offgrid_boundary,
            "pivot": self.pivot,
        }


def parse(text: str) -> BinarySequence:
    """Parse ``+``/``-`` or ``1``/``0`` text into a sequence.

    The alphabet is fixed by the first character; mixing the two raises a
    ParseError naming the first offending position.
    """
    if not text:
        raise ParseError("empty sequence text")
    if text[0] in _SIGN_ALPHABET:
        alphabet, kind = _SIGN_ALPHABET, "sign (+/-)"
    elif text[0] in _BIT_ALPHABET:
        alphabet, kind = _BIT_ALPHABET, "binary (1/0)"
    else:
        raise ParseError(f"illegal character {text[0]!r} at position 1", position=1)
    entries = []
    for pos, ch in enumerate(text, start=1):
        sign = alphabet.get(ch)
        if sign is None:
            raise ParseError(
                f"illegal character {ch!r} at position {pos}"
                f" (sequence uses the {kind} alphabet)",
                position=pos,
            )
        entries.append(sign)
    return BinarySequence(tuple(entries))


def transform(seq: BinarySequence, t: TransformParams) -> BinarySequence:
    """Apply the sign transform entry k -> entry k * (-1)^(a+bk).

    Applying the same transform twice restores the input.
    """
    flipped = tuple(
        x * (-1 if (t.a + t.b * k) % 2 else 1)
        for k, x in enumerate(seq.entries, start=1)
    )
    return BinarySequence(flipped)


def canonicalize(seq: BinarySequence) -> tuple[BinarySequence, TransformParams]:
    """Return the unique transform image with entries 1 and 2 both +1.

    The four (a, b) transforms hit the four sign patterns of the first two
    entries exactly once, so the canonical image exists and is unique.
    Idempotent on its own output.
    """
    if seq.n < 2:
        raise ValueError("canonical form needs length >= 2")
    a = 0 if seq.entry(2) == 1 else 1  # entry 2 picks up (-1)^a
    b = 0 if seq.entry(1) * (-1 if a else 1) == 1 else 1  # entry 1 picks up (-1)^(a+b)
    t = TransformParams(a, b)
    return transform(seq, t), t


def runs(seq: BinarySequence) -> RunProfile:
    """Decompose the sequence into maximal runs of equal entries."""
    entries = seq.entries
    n = len(entries)
    boundaries = [0]
    for k in range(1, n):
        if entries[k] != entries[k - 1]:
            boundaries.append(k)
    boundaries.append(n)
    bounds = tuple(boundaries)
    run_count = len(bounds) - 1

    offgrid_index = offgrid_boundary = pivot = None
    first = bounds[1]
    if first > 1:
        for j in range(1, run_count + 1):
            if bounds[j] % first:
                offgrid_index = j
                offgrid_boundary = bounds[j]
                pivot = first + bounds[j]
                break
    return RunProfile(bounds, run_count, offgrid_index, offgrid_boundary, pivot)


def sequence_from_runs(boundaries: tuple[int, ...], first_sign: int) -> BinarySequence:
    """Rebuild a sequence from its run boundaries and the sign of entry 1."""
    if first_sign not in (-1, 1):
        raise ValueError("first_sign must be -1 or +1")
    entries: list[int] = []
    sign = first_sign
    for lo, hi in zip(boundaries, boundaries[1:]):
        if hi <= lo:
            raise ValueError("boundaries must be strictly increasing")
        entries.extend([sign] * (hi - lo))
        sign = -sign
    return BinarySequence(tuple(entries))


def reverse(seq: BinarySequence) -> BinarySequence:
    """Entry k of the output is entry n-k+1 of the input."""
    return BinarySequence(seq.entries[::-1])
