"""Exhaustive and pruned searches for Barker and minimum-PSL sequences.

Strategies
  full    depth-first over all completions, PSL-checked at the leaves.
  pruned  left-to-right with the corridor cut: a branch dies as soon as
          some partial correlation can no longer return to |C(u)| <= 1.
  skew    odd lengths only; entries are placed in shells from both ends,
          the far entry forced by the skew-symmetry identity (which every
          odd Barker sequence satisfies), and each fully determined shift
          is checked as soon as it closes.

The canonical restriction (entries 1 and 2 pinned to +1) shrinks the space
fourfold and is on by default; disable it to count raw sequences (exactly
4x the canonical count for n >= 2).

Parallel runs split the prefix tree at a fixed depth into independent
subtasks and merge results in deterministic prefix order, so witness sets
do not depend on scheduling. Node counters are reproducible run-to-run for
workers=1; with more workers they sum over subtasks (prefix replays are
not counted).
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from barkerlab import kernels
from barkerlab.catalogue import KNOWN_BARKER, catalogue_count
from barkerlab.errors import GuardRailError, InvariantViolationError
from barkerlab.sequence import BinarySequence, canonicalize, reverse

STRATEGIES = {
    "full": kernels.STRATEGY_FULL,
    "pruned": kernels.STRATEGY_PRUNED,
    "skew": kernels.STRATEGY_SKEW,
}

# Size rails; CI cannot accidentally launch an infeasible search. Lifted by
# allow_large=True (the kernel word size still caps everything at 62).
FULL_MAX_LENGTH = 28
PRUNED_MAX_LENGTH = 32
SKEW_MAX_LENGTH = 49
VERIFY_ALL_MAX = 28
VERIFY_ODD_MAX = 45
EXHAUSTIVE_PSL_MAX = 20

DEFAULT_SAMPLE_BUDGET = 10**6
DEFAULT_SEED = 12345
SPLIT_DEPTH = 8
MIN_PSL_WITNESS_CAP = 64
MAX_NODES_ENV = "BARKER_LAB_MAX_NODES"


@dataclass(frozen=True)
class SearchOutcome:
    """Result of one search at one length.

    ``found`` holds canonical witnesses in lexicographic order ('+' sorts
    before '-'). For barker mode it is ALL canonical Barker sequences of
    the length; for min_psl mode, optimal witnesses (all of them for the
    exhaustive path, capped at MIN_PSL_WITNESS_CAP; the first achiever for
    the sampling path). ``wall_time`` is informational and excluded from
    serialized output so identical inputs give identical bytes.
    """

    n: int
    mode: str  # "barker" | "min_psl"
    strategy: str
    canonical: bool
    found: tuple[BinarySequence, ...]
    best_psl: int | None
    nodes_visited: int
    nodes_pruned: int
    wall_time: float
    samples_used: int | None = None
    bound_floor: int | None = None  # floor(2n * ln(2n)), min_psl mode only
    bound_holds: bool | None = None  # best_psl^2 <= bound_floor

    def to_json_dict(self) -> dict:
        out = {
            "n": self.n,
            "mode": self.mode,
            "strategy": self.strategy,
            "canonical": self.canonical,
            "found": [str(w) for w in self.found],
            "best_psl": self.best_psl,
            "nodes_visited": self.nodes_visited,
            "nodes_pruned": self.nodes_pruned,
        }
        if self.mode == "min_psl":
            out["samples_used"] = self.samples_used
            out["bound"] = {"floor_2n_log_2n": self.bound_floor, "holds": self.bound_holds}
        return out


def _resolve_max_nodes(max_nodes: int | None) -> int:
    if max_nodes is not None:
        if max_nodes < 0:
            raise ValueError("max_nodes must be nonnegative")
        return max_nodes
    env = os.environ.get(MAX_NODES_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise GuardRailError(f"{MAX_NODES_ENV}={env!r} is not an integer") from None
        if value < 0:
            raise GuardRailError(f"{MAX_NODES_ENV} must be nonnegative")
        return value
    return 0


def _check_rail(n: int, limit: int, what: str, allow_large: bool) -> None:
    if n > kernels.DFS_MAX_LENGTH:
        raise GuardRailError(
            f"{what} at n={n} exceeds the kernel word size ({kernels.DFS_MAX_LENGTH})"
        )
    if n > limit and not allow_large:
        raise GuardRailError(
            f"{what} at n={n} exceeds the size rail ({limit}); "
            f"pass allow_large=True (CLI: --allow-large) to override"
        )


def _skew_root(n: int) -> tuple[int, int]:
    """Canonical skew start: entries 1,2 = +1 plus their forced twins."""
    m = (n + 1) // 2
    bits = 0b11
    for k in (1, 2):
        twin = n + 1 - k
        if twin <= k or twin <= 2:
            continue
        if (m + k) % 2 == 0:  # twin keeps the +1 sign
            bits |= 1 << (twin - 1)
    return bits, 2


def _root(n: int, strategy: str, canonical: bool) -> tuple[int, int]:
    if not canonical:
        return 0, 0
    if strategy == "skew":
        return _skew_root(n)
    return 0b11, 2


def _subtask_roots(
    n: int, strategy: str, canonical: bool, split_depth: int
) -> list[tuple[int, int]]:
    """Prefixes at the split depth, in the order the single DFS would visit them."""
    bits0, depth0 = _root(n, strategy, canonical)
    limit = (n + 1) // 2 if strategy == "skew" else n
    target = min(split_depth, limit)
    width = target - depth0
    if width <= 0:
        return [(bits0, depth0)]
    m = (n + 1) // 2
    roots = []
    for combo in range((1 << width) - 1, -1, -1):  # all-ones first = '+' first
        bits = bits0
        for i in range(width):
            k = depth0 + 1 + i
            vbit = (combo >> (width - 1 - i)) & 1
            bits |= vbit << (k - 1)
            if strategy == "skew":
                twin = n + 1 - k
                if twin > k:
                    tbit = vbit ^ ((m + k) % 2)
                    bits |= tbit << (twin - 1)
        roots.append((bits, target))
    return roots


def _barker_subtask(args: tuple[int, int, int, int, int]):
    n, code, bits, depth, max_nodes = args
    return kernels.barker_dfs(n, code, bits, depth, max_nodes)


def _min_psl_subtask(args: tuple[int, int, int, int, int]):
    n, bits, depth, cap, max_nodes = args
    return kernels.min_psl_dfs(n, bits, depth, cap, max_nodes)


def _run_parallel(fn, tasks: list, workers: int) -> list:
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def _dedupe_reversal(
    found: list[BinarySequence], canonical: bool
) -> list[BinarySequence]:
    kept = []
    seen = set()
    for w in found:
        partner = reverse(w)
        if canonical and partner.n >= 2:
            partner = canonicalize(partner)[0]
        key = min(str(w), str(partner))
        if key not in seen:
            seen.add(key)
            kept.append(w)
    return kept


def search_barker(
    n: int,
    strategy: str = "pruned",
    *,
    canonical: bool = True,
    workers: int = 1,
    allow_large: bool = False,
    max_nodes: int | None = None,
    dedupe_reversal: bool = False,
    split_depth: int = SPLIT_DEPTH,
) -> SearchOutcome:
    """Find ALL (canonical) Barker sequences of length n.

    All strategies return identical witness sets where they apply; the
    skew strategy requires odd n. Rails: full <= 28, pruned <= 32,
    skew <= 49, each liftable with allow_large.
    """
    if n < 2:
        raise ValueError("Barker search needs n >= 2")
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; pick one of {sorted(STRATEGIES)}")
    if strategy == "skew" and n % 2 == 0:
        raise ValueError("skew strategy requires odd n")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    rail = {"full": FULL_MAX_LENGTH, "pruned": PRUNED_MAX_LENGTH, "skew": SKEW_MAX_LENGTH}
    _check_rail(n, rail[strategy], f"{strategy} search", allow_large)
    budget = _resolve_max_nodes(max_nodes)
    code = STRATEGIES[strategy]

    start = time.perf_counter()
    roots = _subtask_roots(n, strategy, canonical, split_depth) if workers > 1 else None
    if workers == 1 or roots is None or len(roots) == 1:
        bits0, depth0 = _root(n, strategy, canonical)
        witness_bits, visited, pruned = kernels.barker_dfs(n, code, bits0, depth0, budget)
    else:
        tasks = [(n, code, bits, depth, budget) for bits, depth in roots]
        results = _run_parallel(_barker_subtask, tasks, workers)
        witness_bits = [w for wl, _, _ in results for w in wl]
        visited = sum(v for _, v, _ in results)
        pruned = sum(p for _, _, p in results)
    elapsed = time.perf_counter() - start

    found = sorted(
        (BinarySequence.from_bits(b, n) for b in witness_bits), key=str
    )
    if dedupe_reversal:
        found = _dedupe_reversal(found, canonical)
    return SearchOutcome(
        n=n,
        mode="barker",
        strategy=strategy,
        canonical=canonical,
        found=tuple(found),
        best_psl=1 if found else None,
        nodes_visited=visited,
        nodes_pruned=pruned,
        wall_time=elapsed,
    )


def sidelobe_bound_floor(n: int) -> int:
    """floor(2n * ln(2n)): the squared reference level for random-sequence PSL."""
    return math.floor(2 * n * math.log(2 * n))


def search_min_psl(
    n: int,
    budget: int = DEFAULT_SAMPLE_BUDGET,
    *,
    seed: int = DEFAULT_SEED,
    canonical: bool = True,
    workers: int = 1,
    allow_large: bool = False,
    max_nodes: int | None = None,
    split_depth: int = SPLIT_DEPTH,
) -> SearchOutcome:
    """Minimum PSL at length n: exact for n <= 20, sampled above.

    The exhaustive path treats ``budget`` as a node cap on top of any
    BARKER_LAB_MAX_NODES/max_nodes limit and returns every optimal witness
    (capped). The sampling path draws ``budget`` sequences from a seeded
    deterministic stream (single stream; workers has no effect there) and
    reports whether best_psl^2 <= floor(2n*ln(2n)), an informational
    comparison against the random-sequence sidelobe level.
    """
    if n < 2:
        raise ValueError("min-PSL search needs n >= 2")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    force = 0b11 if canonical else 0

    start = time.perf_counter()
    if n <= EXHAUSTIVE_PSL_MAX:
        cap = _resolve_max_nodes(max_nodes)
        node_budget = min(budget, cap) if cap else budget
        strategy = "exhaustive"
        samples_used = None
        if workers > 1:
            roots = _subtask_roots(n, "pruned", canonical, split_depth)
        else:
            roots = None
        if workers == 1 or roots is None or len(roots) == 1:
            bits0, depth0 = _root(n, "pruned", canonical)
            best, witness_bits, visited, pruned = kernels.min_psl_dfs(
                n, bits0, depth0, MIN_PSL_WITNESS_CAP, node_budget
            )
        else:
            tasks = [
                (n, bits, depth, MIN_PSL_WITNESS_CAP, node_budget)
                for bits, depth in roots
            ]
            results = _run_parallel(_min_psl_subtask, tasks, workers)
            best = min(r[0] for r in results)
            witness_bits = [w for r in results if r[0] == best for w in r[1]]
            witness_bits = witness_bits[:MIN_PSL_WITNESS_CAP]
            visited = sum(r[2] for r in results)
            pruned = sum(r[3] for r in results)
    else:
        if n > kernels.SAMPLE_MAX_LENGTH:
            raise GuardRailError(
                f"min-PSL sampling handles n <= {kernels.SAMPLE_MAX_LENGTH}"
            )
        strategy = "sampling"
        best, wbits, samples_used = kernels.min_psl_sample(n, budget, seed, force)
        witness_bits = [wbits]
        visited = samples_used
        pruned = 0
    elapsed = time.perf_counter() - start

    found = tuple(
        sorted((BinarySequence.from_bits(b, n) for b in witness_bits), key=str)
    )
    floor_val = sidelobe_bound_floor(n)
    return SearchOutcome(
        n=n,
        mode="min_psl",
        strategy=strategy,
        canonical=canonical,
        found=found,
        best_psl=best,
        nodes_visited=visited,
        nodes_pruned=pruned,
        wall_time=elapsed,
        samples_used=samples_used,
        bound_floor=floor_val,
        bound_holds=best * best <= floor_val,
    )


@dataclass(frozen=True)
class RangeRow:
    n: int
    count: int
    witnesses: tuple[BinarySequence, ...]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "count": self.count,
            "witnesses": [str(w) for w in self.witnesses],
        }


@dataclass(frozen=True)
class RangeSummary:
    n_lo: int
    n_hi: int
    odd_only: bool
    rows: tuple[RangeRow, ...] = field(default_factory=tuple)

    @property
    def matches_catalogue(self) -> bool:
        return True  # verify_range raises before returning otherwise

    def to_json_dict(self) -> dict:
        return {
            "n_lo": self.n_lo,
            "n_hi": self.n_hi,
            "odd_only": self.odd_only,
            "rows": [r.to_json_dict() for r in self.rows],
            "matches_catalogue": self.matches_catalogue,
        }


def verify_range(
    n_lo: int,
    n_hi: int,
    odd_only: bool = False,
    *,
    workers: int = 1,
    allow_large: bool = False,
    max_nodes: int | None = None,
) -> RangeSummary:
    """Count canonical Barker sequences per length and check the catalogue.

    Uses the pruned strategy for all lengths, or the skew strategy when
    odd_only. Raises InvariantViolationError if any count or witness set
    deviates from the catalogue (<= 13) or from emptiness (above 13).
    """
    if n_lo < 2 or n_hi < n_lo:
        raise ValueError("need 2 <= n_lo <= n_hi")
    limit = VERIFY_ODD_MAX if odd_only else VERIFY_ALL_MAX
    _check_rail(n_hi, limit, "range verification", allow_large)

    rows = []
    problems = []
    for n in range(n_lo, n_hi + 1):
        if odd_only and n % 2 == 0:
            continue
        strategy = "skew" if odd_only else "pruned"
        outcome = search_barker(
            n,
            strategy,
            workers=workers,
            allow_large=allow_large,
            max_nodes=max_nodes,
        )
        rows.append(RangeRow(n, len(outcome.found), outcome.found))
        expected = tuple(KNOWN_BARKER.get(n, ())) if n <= 13 else ()
        got = tuple(str(w) for w in outcome.found)
        if got != expected:
            problems.append(f"n={n}: expected {expected or '(none)'}, found {got or '(none)'}")
    if problems:
        raise InvariantViolationError(
            "catalogue mismatch: " + "; ".join(problems)
        )
    return RangeSummary(n_lo, n_hi, odd_only, tuple(rows))
