"""The complete catalogue of known Barker sequences, in canonical form.

Canonical form = entries 1 and 2 both +1. A sequence and its reversal are
listed separately when both are canonical (the two length-4 entries).
"""

from barkerlab.sequence import BinarySequence, parse

KNOWN_BARKER: dict[int, tuple[str, ...]] = {
    2: ("++",),
    3: ("++-",),
    4: ("+++-", "++-+"),
    5: ("+++-+",),
    7: ("+++--+-",),
    11: ("+++---+--+-",),
    13: ("+++++--++-+-+",),
}

BARKER_LENGTHS: tuple[int, ...] = tuple(sorted(KNOWN_BARKER))
ODD_BARKER_LENGTHS: tuple[int, ...] = (3, 5, 7, 11, 13)


def catalogue_count(n: int) -> int:
    """Number of canonical Barker sequences of length n (0 if none known)."""
    return len(KNOWN_BARKER.get(n, ()))


def catalogue_sequences(n: int) -> tuple[BinarySequence, ...]:
    return tuple(parse(s) for s in KNOWN_BARKER.get(n, ()))
