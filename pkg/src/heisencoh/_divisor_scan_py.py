"""Pure-Python twin of the compiled scan kernel.

Same contract as ``_divisor_scan.scan_range``; both lanes do exact integer
arithmetic and return bit-identical results.  See ``_scan`` for selection.
"""

from bisect import insort

SCAN_BITS = 192
MODULUS = 1 << SCAN_BITS
_MASK = MODULUS - 1
_TOP = 1 << (SCAN_BITS - 1)

COMPILED = False

# lowest-k witnesses/zeros retained per range; guards against degenerate
# near-resonant inputs flooding memory
WITNESS_CAP = 10000
ZERO_CAP = 64


def scan_range(t_scaled, r_start, k_start, k_stop, keep, witness_bound, stride):
    """Scan k in [k_start, k_stop) over r_k = k * t_scaled mod 2**192.

    r_start must equal r_{k_start - 1}.  For each k the folded distance
    r' = min(r_k, 2**192 - r_k) is formed; the `keep` smallest (r', k) pairs
    are retained, every k with 0 < r' <= witness_bound is collected (first
    WITNESS_CAP of them), and exact zeros are reported separately.  Multiples
    of `stride` (if nonzero) are excluded from all three streams.

    Returns (kept, witnesses, zeros, r_final) with kept sorted ascending by
    (r', k), witnesses as (k, r') in ascending k, zeros as a list of k.
    """
    r = r_start & _MASK
    t = t_scaled & _MASK
    kept = []
    witnesses = []
    zeros = []
    full = keep
    worst = None
    for k in range(k_start, k_stop):
        r = (r + t) & _MASK
        if stride and k % stride == 0:
            continue
        rp = MODULUS - r if r & _TOP else r
        if rp == 0:
            if len(zeros) < ZERO_CAP:
                zeros.append(k)
            continue
        if rp <= witness_bound and len(witnesses) < WITNESS_CAP:
            witnesses.append((k, rp))
        if len(kept) < full:
            insort(kept, (rp, k))
            worst = kept[-1][0]
        elif rp < worst:
            kept.pop()
            insort(kept, (rp, k))
            worst = kept[-1][0]
    return kept, witnesses, zeros, r
