# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loop for the unit-frequency small-divisor scan.

Walks r_k = k * T mod 2**192 in exact three-limb integer arithmetic and
collects, per k-range, the smallest folded distances plus every k clearing a
witness bound.  Contract and results are identical to the pure-Python twin
``_divisor_scan_py``.
"""

from libc.stdint cimport uint64_t

cdef extern from *:
    ctypedef unsigned long long u128 "unsigned __int128"

DEF KEEP_MAX = 128
DEF WITNESS_CAP_C = 10000
DEF ZERO_CAP_C = 64

SCAN_BITS = 192
MODULUS = 1 << 192

COMPILED = True

WITNESS_CAP = WITNESS_CAP_C
ZERO_CAP = ZERO_CAP_C

_MASK64 = 0xFFFFFFFFFFFFFFFF


cdef inline bint _less3(uint64_t a2, uint64_t a1, uint64_t a0,
                        uint64_t b2, uint64_t b1, uint64_t b0) noexcept:
    if a2 != b2:
        return a2 < b2
    if a1 != b1:
        return a1 < b1
    return a0 < b0


def scan_range(t_scaled, r_start, long long k_start, long long k_stop,
               int keep, witness_bound, long long stride):
    """See _divisor_scan_py.scan_range; identical contract."""
    if keep < 1 or keep > KEEP_MAX:
        raise ValueError(f"keep must be in 1..{KEEP_MAX}")

    cdef uint64_t t0 = <uint64_t>(t_scaled & _MASK64)
    cdef uint64_t t1 = <uint64_t>((t_scaled >> 64) & _MASK64)
    cdef uint64_t t2 = <uint64_t>((t_scaled >> 128) & _MASK64)
    cdef uint64_t r0 = <uint64_t>(r_start & _MASK64)
    cdef uint64_t r1 = <uint64_t>((r_start >> 64) & _MASK64)
    cdef uint64_t r2 = <uint64_t>((r_start >> 128) & _MASK64)
    cdef uint64_t w0 = <uint64_t>(witness_bound & _MASK64)
    cdef uint64_t w1 = <uint64_t>((witness_bound >> 64) & _MASK64)
    cdef uint64_t w2 = <uint64_t>((witness_bound >> 128) & _MASK64)

    cdef uint64_t kr0[KEEP_MAX]
    cdef uint64_t kr1[KEEP_MAX]
    cdef uint64_t kr2[KEEP_MAX]
    cdef long long kk[KEEP_MAX]
    cdef int count = 0

    cdef list witnesses = []
    cdef list zeros = []

    cdef long long k, ph = 0
    cdef int pos, j
    cdef uint64_t q0, q1, q2
    cdef u128 acc

    if stride:
        ph = k_start % stride

    for k in range(k_start, k_stop):
        # r += T mod 2**192 (natural wraparound on the top limb)
        acc = (<u128>r0) + t0
        r0 = <uint64_t>acc
        acc = (acc >> 64) + r1 + t1
        r1 = <uint64_t>acc
        r2 = r2 + t2 + <uint64_t>(acc >> 64)

        if stride:
            if ph == 0:
                ph = 1 if stride > 1 else 0
                continue
            ph += 1
            if ph == stride:
                ph = 0

        # fold: r' = min(r, 2**192 - r)
        if r2 >> 63:
            acc = (<u128>(~r0)) + 1
            q0 = <uint64_t>acc
            acc = (acc >> 64) + (~r1)
            q1 = <uint64_t>acc
            q2 = (~r2) + <uint64_t>(acc >> 64)
        else:
            q0 = r0
            q1 = r1
            q2 = r2

        if q0 == 0 and q1 == 0 and q2 == 0:
            if len(zeros) < ZERO_CAP_C:
                zeros.append(k)
            continue

        if not _less3(w2, w1, w0, q2, q1, q0):  # q <= W
            if len(witnesses) < WITNESS_CAP_C:
                witnesses.append((k, (int(q2) << 128) | (int(q1) << 64) | int(q0)))

        if count == keep:
            if not _less3(q2, q1, q0, kr2[count - 1], kr1[count - 1], kr0[count - 1]):
                continue
            count -= 1
        # sorted insert by (r', k); ties in r' keep the earlier (smaller) k
        pos = count
        while pos > 0:
            if _less3(q2, q1, q0, kr2[pos - 1], kr1[pos - 1], kr0[pos - 1]):
                kr0[pos] = kr0[pos - 1]
                kr1[pos] = kr1[pos - 1]
                kr2[pos] = kr2[pos - 1]
                kk[pos] = kk[pos - 1]
                pos -= 1
            else:
                break
        kr0[pos] = q0
        kr1[pos] = q1
        kr2[pos] = q2
        kk[pos] = k
        count += 1

    kept = [
        ((int(kr2[j]) << 128) | (int(kr1[j]) << 64) | int(kr0[j]), kk[j])
        for j in range(count)
    ]
    r_final = (int(r2) << 128) | (int(r1) << 64) | int(r0)
    return kept, witnesses, zeros, r_final
