"""Kernel selection for the divisor scan: compiled if available, else pure.

Set HEISENCOH_PURE=1 to force the pure-Python kernel.  Both kernels do exact
integer arithmetic with identical tie rules, so results are bit-identical;
the compiled lane is just faster.  ``benchmarks/bench_scan.py`` compares the
two.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from . import _divisor_scan_py

if os.environ.get("HEISENCOH_PURE"):
    _default = _divisor_scan_py
else:
    try:
        from . import _divisor_scan as _default  # type: ignore[attr-defined]
    except ImportError:
        _default = _divisor_scan_py

SCAN_BITS = _divisor_scan_py.SCAN_BITS
MODULUS = _divisor_scan_py.MODULUS


def kernel(use_compiled=None):
    """Pick a kernel: None = auto, True = require compiled, False = pure."""
    if use_compiled is None:
        return _default
    if not use_compiled:
        return _divisor_scan_py
    try:
        from . import _divisor_scan  # type: ignore[attr-defined]
    except ImportError:
        raise RuntimeError("compiled scan kernel requested but not built") from None
    return _divisor_scan


def compiled_available() -> bool:
    try:
        from . import _divisor_scan  # noqa: F401
        return True
    except ImportError:
        return False


def active_lane() -> str:
    return "compiled" if getattr(_default, "COMPILED", False) else "pure-python"


@dataclass
class RangeScan:
    lo: int
    hi: int            # exclusive
    kept: list         # [(r', k)] ascending by (r', k)
    witnesses: list    # [(k, r')] ascending k
    zeros: list        # [k]


def dyadic_ranges(kmax):
    lo = 1
    while lo <= kmax:
        hi = min(2 * lo, kmax + 1)
        yield lo, hi
        lo = 2 * lo


def scan_unit(t_scaled, kmax, keep, witness_bound_fn, stride, impl) -> list[RangeScan]:
    """Scan k = 1..kmax in dyadic ranges; folded distances are r'/2**192."""
    out = []
    r = 0
    for lo, hi in dyadic_ranges(kmax):
        kept, wit, zeros, r = impl.scan_range(
            t_scaled, r, lo, hi, keep, witness_bound_fn(lo), stride
        )
        out.append(RangeScan(lo, hi, kept, wit, zeros))
    return out


def collect_below(t_scaled, lo, hi, bound, stride):
    """All (k, r') in [lo, hi) with 0 < r' <= bound (slow exact rescan)."""
    r = ((lo - 1) * (t_scaled % MODULUS)) % MODULUS
    _, wit, _, _ = _divisor_scan_py.scan_range(t_scaled, r, lo, hi, 1, bound, stride)
    return wit
