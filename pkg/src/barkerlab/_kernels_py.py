"""Pure-Python twins of the compiled correlation and search kernels.

Bit convention everywhere: bit (k-1) of ``bits`` holds entry k of the
sequence, a set bit meaning +1 and a clear bit meaning -1.

barkerlab._kernels implements exactly the same functions with the same
traversal order, prune rules and PRNG, so witness lists, node counters and
sampled streams are identical between the two modules; the differential
tests compare them element by element. Any behavioural change here must be
mirrored there.

Counter semantics (shared):
  * nodes_visited increases by one for every entry (or shell) placement the
    DFS performs below its starting prefix.
  * nodes_pruned increases by one for every subtree cut, including a failed
    leaf check.
Prefix replay (used by the parallel split) performs no counting and no
feasibility checks; a violated prefix is caught by descendant checks or the
leaf check, so results stay correct.
"""

from __future__ import annotations

from barkerlab.errors import BudgetExceededError

IMPLEMENTATION = "pure"

STRATEGY_FULL = 0
STRATEGY_PRUNED = 1
STRATEGY_SKEW = 2

DFS_MAX_LENGTH = 62
SAMPLE_MAX_LENGTH = 64

_MASK64 = (1 << 64) - 1
_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_SPLITMIX_MUL1 = 0xBF58476D1CE4E5B9
_SPLITMIX_MUL2 = 0x94D049BB133111EB


def acf_bits(bits: int, n: int) -> list[int]:
    """Aperiodic autocorrelation at every shift 0..n-1.

    C(u) = (n-u) - 2 * popcount of disagreements between the sequence and
    its u-shift, restricted to the n-u overlapping positions.
    """
    if n < 1:
        raise ValueError("n must be positive")
    out = [n]
    for u in range(1, n):
        mask = (1 << (n - u)) - 1
        disagree = ((bits ^ (bits >> u)) & mask).bit_count()
        out.append((n - u) - 2 * disagree)
    return out


def periodic_bits(bits: int, n: int) -> list[int]:
    """Periodic (cyclic) autocorrelation at every shift 0..n-1."""
    if n < 1:
        raise ValueError("n must be positive")
    mask = (1 << n) - 1
    out = [n]
    for u in range(1, n):
        rot = ((bits >> u) | (bits << (n - u))) & mask
        out.append(n - 2 * ((bits ^ rot) & mask).bit_count())
    return out


def psl_bits(bits: int, n: int) -> int:
    """Peak sidelobe level: max |C(u)| over 1 <= u < n. Requires n >= 2."""
    best = 0
    for u in range(1, n):
        mask = (1 << (n - u)) - 1
        c = (n - u) - 2 * ((bits ^ (bits >> u)) & mask).bit_count()
        if c < 0:
            c = -c
        if c > best:
            best = c
    return best


def psl_leq_bits(bits: int, n: int, limit: int) -> bool:
    """True iff every nontrivial |C(u)| <= limit, with early exit."""
    for u in range(1, n):
        mask = (1 << (n - u)) - 1
        c = (n - u) - 2 * ((bits ^ (bits >> u)) & mask).bit_count()
        if c > limit or -c > limit:
            return False
    return True


def _check_budget(visited: int, max_nodes: int) -> None:
    if max_nodes and visited > max_nodes:
        raise BudgetExceededError(
            f"node budget {max_nodes} exhausted during search"
        )


def barker_dfs(
    n: int, strategy: int, bits: int, depth: int, max_nodes: int
) -> tuple[list[int], int, int]:
    """Find every completion of the given prefix whose PSL is <= 1.

    ``bits``/``depth`` describe the starting assignment: entries 1..depth
    for the full/pruned strategies, shells 1..depth (entries 1..depth plus
    their forced twins n+1-k) for the skew strategy. Returns
    (witness bit patterns in lexicographic +-before-- order,
    nodes_visited, nodes_pruned). ``max_nodes`` of 0 means unlimited.
    """
    if not 2 <= n <= DFS_MAX_LENGTH:
        raise ValueError(f"search kernel handles 2 <= n <= {DFS_MAX_LENGTH}")
    if strategy == STRATEGY_FULL:
        return _full_dfs(n, bits, depth, max_nodes)
    if strategy == STRATEGY_PRUNED:
        return _pruned_dfs(n, bits, depth, max_nodes)
    if strategy == STRATEGY_SKEW:
        if n % 2 == 0:
            raise ValueError("skew strategy requires odd length")
        return _skew_dfs(n, bits, depth, max_nodes)
    raise ValueError(f"unknown strategy code {strategy}")


def _full_dfs(n, bits0, depth0, max_nodes):
    witnesses: list[int] = []
    visited = 0

    if depth0 >= n:
        if psl_leq_bits(bits0, n, 1):
            witnesses.append(bits0)
        return witnesses, 0, 0

    def rec(bits: int, placed: int) -> None:
        nonlocal visited
        for vbit in (1, 0):
            visited += 1
            _check_budget(visited, max_nodes)
            nb = bits | (vbit << placed)
            if placed + 1 == n:
                if psl_leq_bits(nb, n, 1):
                    witnesses.append(nb)
            else:
                rec(nb, placed + 1)

    rec(bits0, depth0)
    return witnesses, visited, 0


def _pruned_dfs(n, bits0, depth0, max_nodes):
    # Corridor cut: once |partial C(u)| exceeds 1 + #remaining-terms no
    # completion can return to |C(u)| <= 1; at the leaf the condition is
    # exactly |C(u)| <= 1, so no separate PSL check is needed.
    partial = [0] * n  # partial[u] = sum of the already-determined terms of C(u)
    sign = [0] * (n + 1)
    for k in range(1, depth0 + 1):
        sign[k] = 1 if (bits0 >> (k - 1)) & 1 else -1
        for u in range(1, k):
            partial[u] += sign[k - u] * sign[k]

    witnesses: list[int] = []
    visited = 0
    pruned = 0

    if depth0 >= n:
        if psl_leq_bits(bits0, n, 1):
            witnesses.append(bits0)
        return witnesses, 0, 0

    def rec(bits: int, placed: int) -> None:
        nonlocal visited, pruned
        k = placed + 1
        slack = 1 + (n - k)
        for vbit in (1, 0):
            visited += 1
            _check_budget(visited, max_nodes)
            s = 1 if vbit else -1
            sign[k] = s
            for u in range(1, k):
                partial[u] += sign[k - u] * s
            feasible = True
            for u in range(1, k):
                if partial[u] > slack or -partial[u] > slack:
                    feasible = False
                    break
            if feasible:
                nb = bits | (vbit << placed)
                if k == n:
                    witnesses.append(nb)
                else:
                    rec(nb, k)
            else:
                pruned += 1
            for u in range(1, k):
                partial[u] -= sign[k - u] * s

    rec(bits0, depth0)
    return witnesses, visited, pruned


def _skew_dfs(n, bits0, depth0, max_nodes):
    # Two-ended placement: shell k sets entry k and forces entry n+1-k via
    # the skew identity, so shift n-k is fully determined after shell k.
    # Odd shifts vanish identically on the skew family (terms cancel in
    # pairs), so only even finalized shifts are checked.
    m = (n + 1) // 2
    half = m  # parity base of the skew identity exponent
    witnesses: list[int] = []
    visited = 0
    pruned = 0

    def final_shift_ok(bits: int, k: int) -> bool:
        u = n - k
        c = 0
        for i in range(1, k + 1):
            a = 1 if (bits >> (i - 1)) & 1 else -1
            b = 1 if (bits >> (i + u - 1)) & 1 else -1
            c += a * b
        return -1 <= c <= 1

    if depth0 >= m:
        if psl_leq_bits(bits0, n, 1):
            witnesses.append(bits0)
        return witnesses, 0, 0

    def rec(bits: int, shells: int) -> None:
        nonlocal visited, pruned
        k = shells + 1
        twin = n + 1 - k
        twin_flip = (half + k) % 2  # 1 when the forced twin has opposite sign
        for vbit in (1, 0):
            visited += 1
            _check_budget(visited, max_nodes)
            nb = bits | (vbit << (k - 1))
            if twin > k:
                tbit = vbit ^ twin_flip
                nb |= tbit << (twin - 1)
            if k % 2 == 1 and not final_shift_ok(nb, k):
                pruned += 1
                continue
            if k == m:
                if psl_leq_bits(nb, n, 1):
                    witnesses.append(nb)
                else:
                    pruned += 1
            else:
                rec(nb, k)

    rec(bits0, depth0)
    return witnesses, visited, pruned


def min_psl_dfs(
    n: int, bits: int, depth: int, witness_cap: int, max_nodes: int
) -> tuple[int, list[int], int, int]:
    """Exact minimum PSL over all completions of the prefix, by branch and bound.

    Returns (best_psl, witnesses, nodes_visited, nodes_pruned); witnesses
    are ALL optimal completions in lexicographic order, truncated to
    ``witness_cap`` (0 = unlimited). Subtrees are cut only when strictly
    worse than the incumbent, so ties are never lost.
    """
    if not 2 <= n <= DFS_MAX_LENGTH:
        raise ValueError(f"search kernel handles 2 <= n <= {DFS_MAX_LENGTH}")
    if depth >= n:
        return psl_bits(bits, n), [bits], 0, 0

    partial = [0] * n
    sign = [0] * (n + 1)
    for k in range(1, depth + 1):
        sign[k] = 1 if (bits >> (k - 1)) & 1 else -1
        for u in range(1, k):
            partial[u] += sign[k - u] * sign[k]

    best = n  # PSL is at most n-1, so any leaf improves this
    witnesses: list[int] = []
    visited = 0
    pruned = 0

    def rec(cur: int, placed: int) -> None:
        nonlocal best, visited, pruned
        k = placed + 1
        remaining = n - k
        for vbit in (1, 0):
            visited += 1
            _check_budget(visited, max_nodes)
            s = 1 if vbit else -1
            sign[k] = s
            for u in range(1, k):
                partial[u] += sign[k - u] * s
            bound = 0
            for u in range(1, k):
                lb = (partial[u] if partial[u] >= 0 else -partial[u]) - remaining
                if lb > bound:
                    bound = lb
            if bound > best:
                pruned += 1
            elif k == n:
                value = 0
                for u in range(1, n):
                    a = partial[u] if partial[u] >= 0 else -partial[u]
                    if a > value:
                        value = a
                if value < best:
                    best = value
                    witnesses.clear()
                    witnesses.append(cur | (vbit << placed))
                elif value == best and (not witness_cap or len(witnesses) < witness_cap):
                    witnesses.append(cur | (vbit << placed))
            else:
                rec(cur | (vbit << placed), k)
            for u in range(1, k):
                partial[u] -= sign[k - u] * s

    rec(bits, depth)
    return best, witnesses, visited, pruned


def min_psl_sample(
    n: int, budget: int, seed: int, force_bits: int
) -> tuple[int, int, int]:
    """Randomized search for a low-PSL sequence of length n.

    Draws ``budget`` sequences from a splitmix64 stream seeded with ``seed``
    (bitwise OR-ed with ``force_bits``, e.g. 0b11 to pin the canonical first
    two entries) and returns (best_psl, witness_bits, samples_used). The
    witness is the first sample achieving the final best value. Stops early
    when best reaches 1, the minimum possible for n >= 2.
    """
    if not 2 <= n <= SAMPLE_MAX_LENGTH:
        raise ValueError(f"sampler handles 2 <= n <= {SAMPLE_MAX_LENGTH}")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    mask = _MASK64 if n == 64 else (1 << n) - 1
    state = seed & _MASK64
    best = n
    witness = 0
    used = budget
    for i in range(budget):
        state = (state + _SPLITMIX_GAMMA) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * _SPLITMIX_MUL1) & _MASK64
        z = ((z ^ (z >> 27)) * _SPLITMIX_MUL2) & _MASK64
        z ^= z >> 31
        bits = (z & mask) | force_bits
        value = 0
        exceeded = False
        for u in range(1, n):
            m_u = (1 << (n - u)) - 1
            c = (n - u) - 2 * ((bits ^ (bits >> u)) & m_u).bit_count()
            if c < 0:
                c = -c
            if c > best:
                exceeded = True
                break
            if c > value:
                value = c
        if not exceeded and value < best:
            best = value
            witness = bits
            if best == 1:
                used = i + 1
                break
    return best, witness, used
