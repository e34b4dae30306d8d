"""Small divisors and empirical Diophantine / Liouville classification.

The central quantity is the divisor |1 - exp(2 pi i <k, t>)| = 2 |sin(pi
<k, t>)| for integer frequency vectors k.  ``classify`` scans 0 < |k| <=
Kmax (max-norm), looking for exact zeros (rational t), power-law lower-bound
evidence C |k|^-s <= divisor (Diophantine), or witnesses of abnormally close
approach (Liouville).  Verdicts other than Rational are evidence from a
finite scan, never proof.

Scans run in exact fixed-point integer arithmetic (see ``_scan``); every
decision is taken on exact integers or on deterministic high-precision
evaluations of them, so reports are reproducible bit for bit across the
compiled and pure kernels.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from . import _scan
from .errors import DomainError, PrecisionError
from .precision import PrecisionReal, mp_prec

# relative tolerance 2**-20 on witness inequalities: wide enough to absorb
# fixed-point rounding, far too narrow to admit spurious witnesses
WITNESS_TOL_BITS = 20


def _coerce_vector(t):
    comps = t if isinstance(t, (list, tuple)) else [t]
    if not comps:
        raise DomainError("translation vector is empty")
    return [PrecisionReal.coerce(c) for c in comps]


def _coerce_index(k, n):
    if isinstance(k, int):
        k = (k,)
    k = tuple(int(v) for v in k)
    if len(k) != n:
        raise DomainError(f"frequency {k} has length {len(k)}, expected {n}")
    return k


def phase_distance(t, k):
    """(dist, sign): distance of <k, t> to the nearest integer and the side.

    sign is +1 when frac(<k, t>) <= 1/2 and -1 otherwise; dist is exact 0
    only when <k, t> is an integer under exact input.
    """
    tvec = _coerce_vector(t)
    k = _coerce_index(k, len(tvec))
    if all(v == 0 for v in k):
        raise DomainError("frequency k must be nonzero")
    if all(c.exact_value for c in tvec):
        theta = sum((ki * c.fraction for ki, c in zip(k, tvec)), Fraction(0))
        theta -= theta.numerator // theta.denominator
        if theta == 0:
            return Fraction(0), 1
        return (theta, 1) if theta <= Fraction(1, 2) else (1 - theta, -1)
    prec = max((c.prec or 64) for c in tvec) + max(abs(v) for v in k).bit_length() + 16
    with mp_prec(prec):
        s = mpmath.mpf(0)
        for ki, c in zip(k, tvec):
            s += ki * c.mpf(prec)
        theta = s - mpmath.floor(s)
        if theta <= mpmath.mpf(1) / 2:
            return theta, 1
        return 1 - theta, -1


def _sin_pi(dist, prec=80):
    with mp_prec(prec):
        if isinstance(dist, Fraction):
            dist = mpmath.mpf(dist.numerator) / dist.denominator
        return mpmath.sin(mpmath.pi * dist)


def small_divisor(t, k) -> float:
    """|1 - exp(2 pi i <k, t>)| = 2 sin(pi dist(<k, t>, Z)); exact 0 iff the
    phase is an integer under exact input."""
    dist, _ = phase_distance(t, k)
    if dist == 0:
        return 0.0
    return float(2 * _sin_pi(dist))


def complex_divisor(t, k) -> complex:
    """1 - exp(2 pi i <k, t>), stable for tiny divisors."""
    dist, sign = phase_distance(t, k)
    if dist == 0:
        return 0j
    with mp_prec(80):
        if isinstance(dist, Fraction):
            d = mpmath.mpf(dist.numerator) / dist.denominator
        else:
            d = mpmath.mpf(dist)
        s = mpmath.sin(mpmath.pi * d)
        c = mpmath.cos(mpmath.pi * d)
        return complex(float(2 * s * s), float(-sign * 2 * s * c))


# ---------------------------------------------------------------------------
# classification report types


@dataclass(frozen=True)
class DivisorRecord:
    k: tuple
    divisor: float
    normk: int


@dataclass(frozen=True)
class WitnessRecord:
    """A frequency beating the power-law bound at the listed levels.

    exponent is the approximation exponent mu with dist = |k|^-(mu - 1),
    i.e. |t - p/k| ~ |k|^-mu in one dimension.  significant lists the levels
    at which the witness also clears the accident floor (small k satisfy
    dist <= |k|^-s by chance alone too often to count as evidence).
    """

    k: tuple
    normk: int
    dist: float
    divisor: float
    exponent: float
    levels: tuple
    significant: tuple = ()


@dataclass(frozen=True)
class SLevelRow:
    s: float
    c: float
    argmin_k: tuple
    shell_min: float
    shell_max: float
    evidence: bool


@dataclass(frozen=True)
class ClassificationReport:
    verdict: str  # Rational | DiophantineEvidence | LiouvilleEvidence | Inconclusive
    dim: int
    kmax: int
    precision_bits: int | None  # None for fully exact input
    points_scanned: int
    s_table: tuple
    witnesses: tuple
    records: tuple
    rational_k: tuple | None
    diophantine_s: float | None
    diophantine_c: float | None
    lane: str

    @property
    def min_divisor(self):
        return self.records[0].divisor if self.records else None

    @property
    def argmin_k(self):
        return self.records[0].k if self.records else None

    def to_dict(self):
        return {
            "verdict": self.verdict,
            "dim": self.dim,
            "kmax": self.kmax,
            "precision_bits": self.precision_bits,
            "points_scanned": self.points_scanned,
            "diophantine_s": self.diophantine_s,
            "diophantine_c": self.diophantine_c,
            "rational_k": list(self.rational_k) if self.rational_k else None,
            "min_divisor": self.min_divisor,
            "argmin_k": list(self.argmin_k) if self.argmin_k else None,
            "s_table": [
                {
                    "s": row.s,
                    "c": row.c if math.isfinite(row.c) else None,
                    "argmin_k": list(row.argmin_k),
                    "shell_min": row.shell_min if math.isfinite(row.shell_min) else None,
                    "shell_max": row.shell_max if math.isfinite(row.shell_max) else None,
                    "evidence": row.evidence,
                }
                for row in self.s_table
            ],
            "witnesses": [
                {
                    "k": list(w.k),
                    "normk": w.normk,
                    "dist": w.dist,
                    "divisor": w.divisor,
                    "exponent": w.exponent,
                    "levels": list(w.levels),
                    "significant": list(w.significant),
                }
                for w in self.witnesses
            ],
            "records": [
                {"k": list(r.k), "divisor": r.divisor, "normk": r.normk}
                for r in self.records
            ],
            "lane": self.lane,
        }


@dataclass
class _RangeData:
    lo: int
    hi: int
    kept: list      # [(rp, kvec)] ascending by (rp, kvec)
    witnesses: list  # [(kvec, rp, normk)]
    n_scanned: int


# ---------------------------------------------------------------------------
# scan orchestration


def _significance_floor(s, budget=0.02):
    """Smallest scale at which a power-law witness is informative.

    For uniformly distributed phases the expected number of k >= K with
    dist(<k,t>, Z) <= k^-s is about 2 sum_{k >= K} k^-s; the floor is the
    smallest K bringing that count under `budget`.  For s <= 1 the sum
    diverges (every vector has infinitely many level-1 witnesses), so no
    scale is significant.
    """
    if s <= 1.0:
        return math.inf

    def tail(k):
        return 2.0 * (k**-s + k ** (1.0 - s) / (s - 1.0))

    lo, hi = 2, 2
    while tail(hi) > budget:
        hi *= 2
        if hi > 10**15:
            return math.inf
    while lo < hi:
        mid = (lo + hi) // 2
        if tail(mid) <= budget:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _witness_bound_fn(modulus, s_min):
    tol = 1 + 4 * 2.0 ** -WITNESS_TOL_BITS

    def bound(lo):
        if lo <= 1:
            return modulus
        if float(s_min).is_integer():
            s = int(s_min)
            return (modulus + (modulus >> (WITNESS_TOL_BITS - 2))) // lo**s + 1
        with mp_prec(64):
            return int(mpmath.floor(modulus * mpmath.power(lo, -s_min) * tol)) + 1

    return bound


def _shell_vectors(n, m):
    """Canonical representatives of max-norm-m vectors: first nonzero > 0."""
    for v in itertools.product(range(-m, m + 1), repeat=n):
        if max(abs(c) for c in v) != m:
            continue
        lead = next(c for c in v if c != 0)
        if lead > 0:
            yield v


def _scan_unit_lattice(t_scaled, kmax, keep, wbound, stride, impl):
    ranges = []
    zeros = []
    for rs in _scan.scan_unit(t_scaled, kmax, keep, wbound, stride, impl):
        kept = [(rp, (k,)) for rp, k in rs.kept]
        wits = [((k,), rp, k) for k, rp in rs.witnesses]
        n_pts = rs.hi - rs.lo
        if stride:
            n_pts -= (rs.hi - 1) // stride - (rs.lo - 1) // stride
        ranges.append(_RangeData(rs.lo, rs.hi, kept, wits, n_pts))
        zeros.extend((k,) for k in rs.zeros)
    return ranges, zeros


def _scan_general(t_scaled_vec, bits, kmax, keep, wbound, zero_test):
    """Exact Python scan over max-norm shells for any rank / scan width.

    Returns (ranges, certified_zeros, unresolved): certified zeros come from
    the exact `zero_test`; `unresolved` collects k whose fixed-point residue
    vanished without certification (below scan resolution).
    """
    from bisect import insort

    modulus = 1 << bits
    top = modulus >> 1
    ranges = []
    zeros = []
    unresolved = []
    for lo, hi in _scan.dyadic_ranges(kmax):
        bound = wbound(lo)
        kept = []
        wits = []
        n_pts = 0
        for m in range(lo, hi):
            for kvec in _shell_vectors(len(t_scaled_vec), m):
                if zero_test is not None and zero_test(kvec):
                    zeros.append(kvec)
                    continue
                r = sum(ki * ti for ki, ti in zip(kvec, t_scaled_vec)) % modulus
                rp = modulus - r if r >= top else r
                n_pts += 1
                if rp == 0:
                    unresolved.append(kvec)
                    continue
                if rp <= bound:
                    wits.append((kvec, rp, m))
                if len(kept) < keep:
                    insort(kept, (rp, kvec))
                elif rp < kept[-1][0]:
                    kept.pop()
                    insort(kept, (rp, kvec))
        ranges.append(_RangeData(lo, hi, kept, wits, n_pts))
    return ranges, zeros, unresolved


def _refine_range_minimum(rng, s, modulus, keep, t_scaled, stride, unit_lattice):
    """Exact per-range minimum of |k|^s * divisor over scanned k.

    Rank-1 ranges rescan exhaustively when the kept list may clip the true
    argmin; higher-rank ranges rely on the kept list alone (keep smallest
    distances), which covers the argmin unless a range holds more than `keep`
    near-ties within a 2^ceil(s)+1 distance factor.
    """
    candidates = rng.kept
    if len(candidates) == keep:
        # the kept list holds the `keep` smallest distances; the true argmin
        # of |k|^s * divisor must have dist <= (pi/2) 2^s * min dist, so if
        # the cut sits below that bound the range needs an exhaustive rescan
        rescue_bound = candidates[0][0] << (math.ceil(s) + 1)
        if candidates[-1][0] <= rescue_bound and unit_lattice:
            extra = _scan.collect_below(t_scaled, rng.lo, rng.hi, rescue_bound, stride)
            candidates = sorted({(rp, (k,)) for k, rp in extra} | set(candidates))
    best = None
    best_k = None
    with mp_prec(100):
        for rp, kvec in sorted(candidates, key=lambda c: c[1]):
            normk = max(abs(c) for c in kvec)
            d = mpmath.mpf(rp) / modulus
            u = mpmath.power(normk, s) * 2 * mpmath.sin(mpmath.pi * d)
            if best is None or u < best:
                best = u
                best_k = kvec
    return best, best_k


def classify(
    t,
    kmax,
    s_grid=(1.0, 2.0, 3.0),
    *,
    keep=64,
    dio_ratio=0.01,
    n_records=10,
    use_compiled=None,
) -> ClassificationReport:
    """Scan 0 < |k| <= kmax and classify the translation vector t.

    Rational: an exactly zero divisor was certified.
    LiouvilleEvidence: every requested level s has a witness with
    dist(<k,t>, Z) <= |k|^-s (relative tolerance 2**-20, |k|^s >= 2), and at
    the largest s some witness clears the accident floor: random phases alone
    produce small-k coincidences, so a witness only counts once fewer than
    ~0.02 such accidents would be expected at or beyond its scale.
    DiophantineEvidence(C, s): the per-dyadic-shell minima of |k|^s * divisor
    stay within `dio_ratio` of each other, giving the empirical constant
    C(s) = min |k|^s * divisor.
    Inconclusive otherwise.
    """
    tvec = [c.fractional_part() for c in _coerce_vector(t)]
    n = len(tvec)
    kmax = int(kmax)
    if kmax < 1:
        raise DomainError("kmax must be at least 1")
    if not 1 <= keep <= 128:
        raise DomainError("keep must be between 1 and 128")
    s_grid = sorted({float(s) for s in s_grid})
    if not s_grid:
        raise DomainError("s_grid must be nonempty")
    if s_grid[0] < 0.5:
        raise DomainError("s values below 1/2 carry no approximation content")
    s_max = s_grid[-1]

    exact_idx = [i for i, c in enumerate(tvec) if c.exact_value]
    inexact_idx = [i for i, c in enumerate(tvec) if not c.exact_value]
    exact = not inexact_idx
    bits = 192
    if exact_idx:
        denom_lcm = math.lcm(*(tvec[i].fraction.denominator for i in exact_idx))
        bits = max(bits, denom_lcm.bit_length() + kmax.bit_length() + 32)
    if inexact_idx:
        bits = max(bits, max(tvec[i].prec for i in inexact_idx) + 64)
    # declared resolution: exact values may still carry one (truncations of a
    # named constant); None means the vector is exact as given
    declared = [c.prec for c in tvec if c.prec is not None]
    prec_bits = min(declared) if declared else None
    bits = max(bits, math.ceil(s_max * math.log2(max(kmax, 2))) + WITNESS_TOL_BITS + 40)

    modulus = 1 << bits
    t_scaled = [c.scaled_int(bits) % modulus for c in tvec]
    wbound = _witness_bound_fn(modulus, s_grid[0])

    unit_lattice = n == 1 and bits == _scan.SCAN_BITS
    stride = 0
    rational_k = None
    unresolved = []
    if unit_lattice:
        if exact:
            d = tvec[0].fraction.denominator
            stride = d if d <= kmax else 0
            if d <= kmax:
                rational_k = (d,)
        if use_compiled and not _scan.compiled_available():
            raise RuntimeError("compiled scan kernel requested but not built")
        impl = _scan.kernel(use_compiled)
        lane = "compiled" if getattr(impl, "COMPILED", False) else "pure-python"
        ranges, kernel_zeros = _scan_unit_lattice(
            t_scaled[0], kmax, keep, wbound, stride, impl
        )
        unresolved = [] if exact else kernel_zeros
    else:
        if use_compiled:
            raise RuntimeError(
                "compiled kernel covers rank-1 scans at 192 bits; this scan "
                f"needs rank {n} at {bits} bits"
            )
        lane = "pure-python"
        zero_test = None
        if exact_idx:
            # an exact zero is certifiable whenever the frequencies on all
            # inexact components vanish
            mults = {
                i: tvec[i].fraction.numerator
                * (denom_lcm // tvec[i].fraction.denominator)
                for i in exact_idx
            }

            def zero_test(kvec, _m=mults, _d=denom_lcm, _inexact=tuple(inexact_idx)):
                if any(kvec[i] for i in _inexact):
                    return False
                return sum(kvec[i] * mi for i, mi in _m.items()) % _d == 0

        ranges, zeros, unresolved = _scan_general(
            t_scaled, bits, kmax, keep, wbound, zero_test
        )
        if zeros:
            rational_k = min(zeros, key=lambda v: (max(abs(c) for c in v), v))

    if unresolved:
        raise PrecisionError(
            f"divisor at k={unresolved[0]} is below the scan resolution; "
            "increase the working precision"
        )
    if prec_bits is not None:
        resolution = 4 * n * kmax * (1 << (bits - prec_bits))
        global_min = min(
            (rd.kept[0][0] for rd in ranges if rd.kept), default=None
        )
        if global_min is not None and global_min <= resolution:
            raise PrecisionError(
                "smallest scanned divisor is not resolved at "
                f"{prec_bits} input bits; increase the working precision"
            )

    # per-s table with exact minima
    s_table = []
    dio_s = dio_c = None
    for s in s_grid:
        shell = []
        for rng in ranges:
            if not rng.kept:
                continue
            u, kv = _refine_range_minimum(
                rng, s, modulus, keep, t_scaled[0] if unit_lattice else None,
                stride, unit_lattice,
            )
            shell.append((u, kv))
        if not shell:
            s_table.append(SLevelRow(s, math.inf, (), math.inf, math.inf, False))
            continue
        c_val, c_k = min(shell, key=lambda p: (p[0], p[1]))
        mins = [float(u) for u, _ in shell]
        evidence = (
            len(shell) >= 2
            and min(mins) > 0.0
            and min(mins) >= dio_ratio * max(mins)
        )
        s_table.append(
            SLevelRow(s, float(c_val), c_k, min(mins), max(mins), evidence)
        )
        if evidence and dio_s is None:
            dio_s, dio_c = s, float(c_val)

    # witness refinement on exact integers
    wit_records = []
    tol_num = modulus + (modulus >> WITNESS_TOL_BITS)
    floors = {s: _significance_floor(s) for s in s_grid}
    with mp_prec(100):
        for rng in ranges:
            for kvec, rp, normk in rng.witnesses:
                levels = []
                for s in s_grid:
                    if normk < 2 or s * math.log2(normk) < 1.0:
                        # |k|^s < 2: the bound dist <= |k|^-s is trivial
                        continue
                    if float(s).is_integer():
                        ok = rp * normk ** int(s) <= tol_num
                    else:
                        ok = mpmath.mpf(rp) / modulus <= mpmath.power(
                            normk, -s
                        ) * (1 + 2.0 ** -WITNESS_TOL_BITS)
                    if ok:
                        levels.append(s)
                if not levels:
                    continue
                d = mpmath.mpf(rp) / modulus
                wit_records.append(
                    WitnessRecord(
                        k=kvec,
                        normk=normk,
                        dist=float(d),
                        divisor=float(2 * mpmath.sin(mpmath.pi * d)),
                        exponent=float(1 - mpmath.log(d) / mpmath.log(normk)),
                        levels=tuple(levels),
                        significant=tuple(s for s in levels if normk >= floors[s]),
                    )
                )

    # global records: smallest scanned divisors
    merged = sorted(
        {(rp, kv) for rng in ranges for rp, kv in rng.kept},
        key=lambda p: (p[0], p[1]),
    )[:n_records]
    records = tuple(
        DivisorRecord(
            k=kv,
            divisor=float(2 * _sin_pi(Fraction(rp, modulus), prec=100)),
            normk=max(abs(c) for c in kv),
        )
        for rp, kv in merged
    )

    # every requested level must have a witness; the top level additionally
    # needs one clearing the accident floor
    liouville = all(
        any(s in w.levels for w in wit_records) for s in s_grid
    ) and any(s_max in w.significant for w in wit_records)
    if rational_k is not None:
        verdict = "Rational"
        dio_s = dio_c = None
    elif liouville:
        verdict = "LiouvilleEvidence"
        dio_s = dio_c = None
    elif dio_s is not None:
        verdict = "DiophantineEvidence"
    else:
        verdict = "Inconclusive"

    return ClassificationReport(
        verdict=verdict,
        dim=n,
        kmax=kmax,
        precision_bits=prec_bits,
        points_scanned=sum(r.n_scanned for r in ranges),
        s_table=tuple(s_table),
        witnesses=tuple(sorted(wit_records, key=lambda w: (w.normk, w.k))),
        records=records,
        rational_k=rational_k,
        diophantine_s=dio_s,
        diophantine_c=dio_c,
        lane=lane,
    )


# ---------------------------------------------------------------------------
# joint-spectrum fan


def fan_member(lam: int, xi: int, n: int) -> bool:
    """Membership in the fan {(0, xi): xi >= 0} u {(lam, |lam|(2j + n)): j >= 0}."""
    if n < 1:
        raise DomainError("n must be positive")
    lam = int(lam)
    xi = int(xi)
    if lam == 0:
        return xi >= 0
    if xi < 0:
        return False
    a = abs(lam)
    if xi % a:
        return False
    q = xi // a
    return q >= n and (q - n) % 2 == 0
