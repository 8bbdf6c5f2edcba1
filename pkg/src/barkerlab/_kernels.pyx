# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled correlation and search kernels.

Mirror of barkerlab._kernels_py: same bit convention (bit k-1 set <=>
entry k == +1), same traversal order, same prune rules, same PRNG, hence
identical witness lists, node counters and sample streams. Change the pure
module first, then this one.
"""

from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc

from barkerlab.errors import BudgetExceededError

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil

IMPLEMENTATION = "compiled"

STRATEGY_FULL = 0
STRATEGY_PRUNED = 1
STRATEGY_SKEW = 2

DFS_MAX_LENGTH = 62
SAMPLE_MAX_LENGTH = 64

cdef uint64_t MASK64 = <uint64_t>0xFFFFFFFFFFFFFFFF
cdef uint64_t SPLITMIX_GAMMA = <uint64_t>0x9E3779B97F4A7C15
cdef uint64_t SPLITMIX_MUL1 = <uint64_t>0xBF58476D1CE4E5B9
cdef uint64_t SPLITMIX_MUL2 = <uint64_t>0x94D049BB133111EB


cdef inline int _popcnt(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef inline uint64_t _nbit_mask(int width) nogil:
    if width >= 64:
        return MASK64
    return (<uint64_t>1 << width) - 1


def acf_bits(bits, int n):
    """Aperiodic autocorrelation at every shift 0..n-1 (arbitrary n)."""
    if n < 1:
        raise ValueError("n must be positive")
    cdef int nw = (n + 63) >> 6
    cdef uint64_t *w = <uint64_t *>malloc((nw + 1) * sizeof(uint64_t))
    if w == NULL:
        raise MemoryError()
    cdef int i, u, q, r, nbits, last
    cdef uint64_t a, b, x
    cdef int64_t d
    py_bits = bits
    try:
        for i in range(nw):
            w[i] = <uint64_t>((py_bits >> (64 * i)) & 0xFFFFFFFFFFFFFFFF)
        w[nw] = 0
        out = [n]
        for u in range(1, n):
            nbits = n - u
            q = u >> 6
            r = u & 63
            d = 0
            last = (nbits - 1) >> 6
            for i in range(last + 1):
                a = w[i]
                if r == 0:
                    b = w[i + q]
                else:
                    b = (w[i + q] >> r) | (w[i + q + 1] << (64 - r))
                x = a ^ b
                if i == last:
                    x &= _nbit_mask(nbits - 64 * i)
                d += _popcnt(x)
            out.append((n - u) - 2 * d)
        return out
    finally:
        free(w)


def periodic_bits(bits, int n):
    """Periodic (cyclic) autocorrelation at every shift 0..n-1."""
    if n < 1:
        raise ValueError("n must be positive")
    mask = (1 << n) - 1
    out = [n]
    py_bits = bits & mask
    for u in range(1, n):
        rot = ((py_bits >> u) | (py_bits << (n - u))) & mask
        out.append(n - 2 * (py_bits ^ rot).bit_count())
    return out


cdef int _psl_word(uint64_t bits, int n) nogil:
    cdef int u, c, best = 0
    cdef uint64_t x
    for u in range(1, n):
        x = (bits ^ (bits >> u)) & _nbit_mask(n - u)
        c = (n - u) - 2 * _popcnt(x)
        if c < 0:
            c = -c
        if c > best:
            best = c
    return best


cdef bint _psl_leq_word(uint64_t bits, int n, int limit) nogil:
    cdef int u, c
    cdef uint64_t x
    for u in range(1, n):
        x = (bits ^ (bits >> u)) & _nbit_mask(n - u)
        c = (n - u) - 2 * _popcnt(x)
        if c > limit or -c > limit:
            return False
    return True


def psl_bits(bits, int n):
    """Peak sidelobe level: max |C(u)| over 1 <= u < n."""
    if n <= SAMPLE_MAX_LENGTH:
        return _psl_word(<uint64_t>(bits & ((1 << n) - 1)), n)
    values = acf_bits(bits, n)
    return max(abs(c) for c in values[1:])


def psl_leq_bits(bits, int n, int limit):
    """True iff every nontrivial |C(u)| <= limit, with early exit."""
    if n <= SAMPLE_MAX_LENGTH:
        return bool(_psl_leq_word(<uint64_t>(bits & ((1 << n) - 1)), n, limit))
    values = acf_bits(bits, n)
    return all(-limit <= c <= limit for c in values[1:])


cdef struct SearchState:
    int n
    uint64_t max_nodes
    uint64_t visited
    uint64_t pruned
    int budget_hit
    int64_t *partial   # indexed by shift
    int *sign          # indexed by 1-based entry
    int witness_cap
    int64_t best


cdef int _budget_step(SearchState *st) nogil:
    st.visited += 1
    if st.max_nodes and st.visited > st.max_nodes:
        st.budget_hit = 1
        return 1
    return 0


cdef int _full_rec(SearchState *st, uint64_t bits, int placed, list witnesses) except -1:
    cdef int vbit
    cdef uint64_t nb
    for vbit in (1, 0):
        if _budget_step(st):
            return 1
        nb = bits | (<uint64_t>vbit << placed)
        if placed + 1 == st.n:
            if _psl_leq_word(nb, st.n, 1):
                witnesses.append(nb)
        else:
            if _full_rec(st, nb, placed + 1, witnesses):
                return 1
    return 0


cdef int _pruned_rec(SearchState *st, uint64_t bits, int placed, list witnesses) except -1:
    cdef int vbit, s, u, k = placed + 1
    cdef int slack = 1 + (st.n - k)
    cdef bint feasible
    cdef uint64_t nb
    for vbit in (1, 0):
        if _budget_step(st):
            return 1
        s = 1 if vbit else -1
        st.sign[k] = s
        for u in range(1, k):
            st.partial[u] += st.sign[k - u] * s
        feasible = True
        for u in range(1, k):
            if st.partial[u] > slack or -st.partial[u] > slack:
                feasible = False
                break
        if feasible:
            nb = bits | (<uint64_t>vbit << placed)
            if k == st.n:
                witnesses.append(nb)
            else:
                if _pruned_rec(st, nb, k, witnesses):
                    for u in range(1, k):
                        st.partial[u] -= st.sign[k - u] * s
                    return 1
        else:
            st.pruned += 1
        for u in range(1, k):
            st.partial[u] -= st.sign[k - u] * s
    return 0


cdef bint _final_shift_ok(uint64_t bits, int n, int k) nogil:
    cdef int u = n - k
    cdef int i, a, b, c = 0
    for i in range(1, k + 1):
        a = 1 if (bits >> (i - 1)) & 1 else -1
        b = 1 if (bits >> (i + u - 1)) & 1 else -1
        c += a * b
    return -1 <= c <= 1


cdef int _skew_rec(SearchState *st, uint64_t bits, int shells, int m, list witnesses) except -1:
    cdef int vbit, tbit, k = shells + 1
    cdef int twin = st.n + 1 - k
    cdef int twin_flip = (m + k) % 2
    cdef uint64_t nb
    for vbit in (1, 0):
        if _budget_step(st):
            return 1
        nb = bits | (<uint64_t>vbit << (k - 1))
        if twin > k:
            tbit = vbit ^ twin_flip
            nb |= <uint64_t>tbit << (twin - 1)
        if k % 2 == 1 and not _final_shift_ok(nb, st.n, k):
            st.pruned += 1
            continue
        if k == m:
            if _psl_leq_word(nb, st.n, 1):
                witnesses.append(nb)
            else:
                st.pruned += 1
        else:
            if _skew_rec(st, nb, k, m, witnesses):
                return 1
    return 0


def barker_dfs(int n, int strategy, bits, int depth, max_nodes):
    """Find every completion of the prefix with PSL <= 1; see the pure twin."""
    if not 2 <= n <= DFS_MAX_LENGTH:
        raise ValueError(f"search kernel handles 2 <= n <= {DFS_MAX_LENGTH}")
    cdef SearchState st
    st.n = n
    st.max_nodes = <uint64_t>max_nodes
    st.visited = 0
    st.pruned = 0
    st.budget_hit = 0
    st.partial = NULL
    st.sign = NULL
    cdef uint64_t bits0 = <uint64_t>(bits & ((1 << n) - 1))
    cdef int m, k, u
    cdef list witnesses = []

    if strategy == 0:  # full
        if depth >= n:
            if _psl_leq_word(bits0, n, 1):
                witnesses.append(bits0)
            return witnesses, 0, 0
        _full_rec(&st, bits0, depth, witnesses)
    elif strategy == 1:  # pruned
        if depth >= n:
            if _psl_leq_word(bits0, n, 1):
                witnesses.append(bits0)
            return witnesses, 0, 0
        st.partial = <int64_t *>malloc(n * sizeof(int64_t))
        st.sign = <int *>malloc((n + 1) * sizeof(int))
        if st.partial == NULL or st.sign == NULL:
            free(st.partial)
            free(st.sign)
            raise MemoryError()
        try:
            for u in range(n):
                st.partial[u] = 0
            for k in range(1, depth + 1):
                st.sign[k] = 1 if (bits0 >> (k - 1)) & 1 else -1
                for u in range(1, k):
                    st.partial[u] += st.sign[k - u] * st.sign[k]
            _pruned_rec(&st, bits0, depth, witnesses)
        finally:
            free(st.partial)
            free(st.sign)
    elif strategy == 2:  # skew
        if n % 2 == 0:
            raise ValueError("skew strategy requires odd length")
        m = (n + 1) // 2
        if depth >= m:
            if _psl_leq_word(bits0, n, 1):
                witnesses.append(bits0)
            return witnesses, 0, 0
        _skew_rec(&st, bits0, depth, m, witnesses)
    else:
        raise ValueError(f"unknown strategy code {strategy}")

    if st.budget_hit:
        raise BudgetExceededError(
            f"node budget {max_nodes} exhausted during search"
        )
    return witnesses, <object>st.visited, <object>st.pruned


cdef int _min_psl_rec(SearchState *st, uint64_t bits, int placed, list witnesses) except -1:
    cdef int vbit, s, u, a, k = placed + 1
    cdef int remaining = st.n - k
    cdef int64_t bound, lb, value
    cdef uint64_t nb
    for vbit in (1, 0):
        if _budget_step(st):
            return 1
        s = 1 if vbit else -1
        st.sign[k] = s
        for u in range(1, k):
            st.partial[u] += st.sign[k - u] * s
        bound = 0
        for u in range(1, k):
            lb = (st.partial[u] if st.partial[u] >= 0 else -st.partial[u]) - remaining
            if lb > bound:
                bound = lb
        if bound > st.best:
            st.pruned += 1
        elif k == st.n:
            value = 0
            for u in range(1, st.n):
                lb = st.partial[u] if st.partial[u] >= 0 else -st.partial[u]
                if lb > value:
                    value = lb
            nb = bits | (<uint64_t>vbit << placed)
            if value < st.best:
                st.best = value
                del witnesses[:]
                witnesses.append(nb)
            elif value == st.best and (st.witness_cap == 0 or len(witnesses) < st.witness_cap):
                witnesses.append(nb)
        else:
            if _min_psl_rec(st, bits | (<uint64_t>vbit << placed), k, witnesses):
                for u in range(1, k):
                    st.partial[u] -= st.sign[k - u] * s
                return 1
        for u in range(1, k):
            st.partial[u] -= st.sign[k - u] * s
    return 0


def min_psl_dfs(int n, bits, int depth, int witness_cap, max_nodes):
    """Exact minimum PSL over completions of the prefix; see the pure twin."""
    if not 2 <= n <= DFS_MAX_LENGTH:
        raise ValueError(f"search kernel handles 2 <= n <= {DFS_MAX_LENGTH}")
    cdef uint64_t bits0 = <uint64_t>(bits & ((1 << n) - 1))
    if depth >= n:
        return _psl_word(bits0, n), [bits0], 0, 0
    cdef SearchState st
    st.n = n
    st.max_nodes = <uint64_t>max_nodes
    st.visited = 0
    st.pruned = 0
    st.budget_hit = 0
    st.witness_cap = witness_cap
    st.best = n
    st.partial = <int64_t *>malloc(n * sizeof(int64_t))
    st.sign = <int *>malloc((n + 1) * sizeof(int))
    if st.partial == NULL or st.sign == NULL:
        free(st.partial)
        free(st.sign)
        raise MemoryError()
    cdef int k, u
    cdef list witnesses = []
    try:
        for u in range(n):
            st.partial[u] = 0
        for k in range(1, depth + 1):
            st.sign[k] = 1 if (bits0 >> (k - 1)) & 1 else -1
            for u in range(1, k):
                st.partial[u] += st.sign[k - u] * st.sign[k]
        _min_psl_rec(&st, bits0, depth, witnesses)
    finally:
        free(st.partial)
        free(st.sign)
    if st.budget_hit:
        raise BudgetExceededError(
            f"node budget {max_nodes} exhausted during search"
        )
    return <object>st.best, witnesses, <object>st.visited, <object>st.pruned


def min_psl_sample(int n, budget, seed, force_bits):
    """Randomized min-PSL search from a splitmix64 stream; see the pure twin."""
    if not 2 <= n <= SAMPLE_MAX_LENGTH:
        raise ValueError(f"sampler handles 2 <= n <= {SAMPLE_MAX_LENGTH}")
    cdef uint64_t total = <uint64_t>budget
    if total < 1:
        raise ValueError("budget must be at least 1")
    cdef uint64_t mask = _nbit_mask(n)
    cdef uint64_t state = <uint64_t>(seed & 0xFFFFFFFFFFFFFFFF)
    cdef uint64_t force = <uint64_t>force_bits
    cdef uint64_t i, z, bits, x, witness = 0, used = total
    cdef int best = n, value, c, u
    cdef bint exceeded
    with nogil:
        for i in range(total):
            state = state + SPLITMIX_GAMMA
            z = state
            z = (z ^ (z >> 30)) * SPLITMIX_MUL1
            z = (z ^ (z >> 27)) * SPLITMIX_MUL2
            z = z ^ (z >> 31)
            bits = (z & mask) | force
            value = 0
            exceeded = False
            for u in range(1, n):
                x = (bits ^ (bits >> u)) & _nbit_mask(n - u)
                c = (n - u) - 2 * _popcnt(x)
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
    return best, <object>witness, <object>used
