"""Kernel selection: compiled extension when available, pure Python otherwise.

Set ``BARKERLAB_PURE=1`` in the environment to force the pure fallback even
when the compiled extension is importable. Both implementations are
behaviourally identical (same results, witness orders, node counters and
sample streams); the compiled one is just faster.
"""

from __future__ import annotations

import os

from barkerlab import _kernels_py


def _select():
    if os.environ.get("BARKERLAB_PURE"):
        return _kernels_py
    try:
        from barkerlab import _kernels  # compiled extension, optional
    except ImportError:
        return _kernels_py
    return _kernels


_active = _select()

IMPLEMENTATION: str = _active.IMPLEMENTATION

STRATEGY_FULL = _kernels_py.STRATEGY_FULL
STRATEGY_PRUNED = _kernels_py.STRATEGY_PRUNED
STRATEGY_SKEW = _kernels_py.STRATEGY_SKEW
DFS_MAX_LENGTH = _kernels_py.DFS_MAX_LENGTH
SAMPLE_MAX_LENGTH = _kernels_py.SAMPLE_MAX_LENGTH

acf_bits = _active.acf_bits
periodic_bits = _active.periodic_bits
psl_bits = _active.psl_bits
psl_leq_bits = _active.psl_leq_bits
barker_dfs = _active.barker_dfs
min_psl_dfs = _active.min_psl_dfs
min_psl_sample = _active.min_psl_sample


def available_implementations() -> dict[str, object]:
    """Importable kernel modules keyed by implementation name."""
    impls: dict[str, object] = {"pure": _kernels_py}
    try:
        from barkerlab import _kernels
    except ImportError:
        pass
    else:
        impls["compiled"] = _kernels
    return impls
