"""Configurable-precision reals and continued fractions.

PrecisionReal keeps either an exact rational (Fraction) or an mpmath float
together with the binary precision it was produced at.  Exact inputs are
never rounded; scans and divisor computations draw scaled-integer views from
this class so all downstream decisions are made on exact integers.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .errors import DomainError, PrecisionError

DEFAULT_PREC = 128

# mpmath's working precision is process-global mutable state; every use in
# this package goes through this guard so concurrent callers cannot corrupt
# each other's precision
_MP_LOCK = threading.RLock()


@contextmanager
def mp_prec(bits):
    with _MP_LOCK:
        with mpmath.workprec(bits):
            yield


@dataclass(frozen=True)
class PrecisionReal:
    """A real number: exact Fraction, or mpf resolved to `prec` bits."""

    fraction: Fraction | None
    approx: object | None  # mpmath.mpf
    prec: int | None       # None for exact values

    # -- constructors -------------------------------------------------

    @classmethod
    def exact(cls, value) -> "PrecisionReal":
        return cls(Fraction(value), None, None)

    @classmethod
    def from_mpf(cls, value, prec) -> "PrecisionReal":
        if prec < 64:
            raise DomainError("precision must be at least 64 bits")
        return cls(None, mpmath.mpf(value), int(prec))

    @classmethod
    def coerce(cls, value, prec=DEFAULT_PREC) -> "PrecisionReal":
        if isinstance(value, PrecisionReal):
            return value
        if isinstance(value, (int, Fraction)):
            return cls.exact(value)
        if isinstance(value, str):
            return cls.parse(value, prec)
        if isinstance(value, mpmath.mpf):
            return cls.from_mpf(value, prec)
        if isinstance(value, float):
            # a float is an exact binary rational; honour it as such
            return cls.exact(Fraction(value))
        raise DomainError(f"cannot interpret {value!r} as a real number")

    @classmethod
    def parse(cls, text, prec=DEFAULT_PREC) -> "PrecisionReal":
        """Parse 'p/q', a decimal literal, or a named constant.

        Named constants: golden ((sqrt(5)-1)/2), sqrt2, sqrt3, sqrt5, pi, e,
        liouville (sum of 10^-j!, truncated far below the working precision).
        """
        t = text.strip().lower()
        if not t:
            raise DomainError("empty number")
        named = {
            "golden": lambda: (mpmath.sqrt(5) - 1) / 2,
            "sqrt2": lambda: mpmath.sqrt(2),
            "sqrt3": lambda: mpmath.sqrt(3),
            "sqrt5": lambda: mpmath.sqrt(5),
            "pi": lambda: mpmath.pi + 0,
            "e": lambda: mpmath.e + 0,
        }
        if t == "liouville":
            return liouville_constant(prec)
        if t in named:
            with mp_prec(prec):
                return cls.from_mpf(named[t](), prec)
        try:
            if "/" in t:
                num, den = t.split("/")
                return cls.exact(Fraction(int(num), int(den)))
            return cls.exact(Fraction(t))
        except (ValueError, ZeroDivisionError) as exc:
            raise DomainError(f"cannot parse number {text!r}: {exc}") from None

    # -- views ---------------------------------------------------------

    @property
    def exact_value(self) -> bool:
        return self.fraction is not None

    @property
    def resolution_bits(self) -> int | None:
        """Bits to which the stored value equals the intended real."""
        return self.prec

    def mpf(self, prec=None):
        with mp_prec(prec or self.prec or DEFAULT_PREC):
            if self.fraction is not None:
                return mpmath.mpf(self.fraction.numerator) / self.fraction.denominator
            return +self.approx

    def __float__(self):
        return float(self.mpf(64))

    def fractional_part(self) -> "PrecisionReal":
        if self.fraction is not None:
            f = self.fraction - (self.fraction.numerator // self.fraction.denominator)
            return PrecisionReal(f, None, self.prec)
        with mp_prec(self.prec + 8):
            return PrecisionReal(None, self.approx - mpmath.floor(self.approx), self.prec)

    def scaled_int(self, bits) -> int:
        """round(value * 2**bits), exact for both representations."""
        if self.fraction is not None:
            p, q = self.fraction.numerator, self.fraction.denominator
            return ((p << (bits + 1)) + q) // (2 * q)
        with mp_prec(max(self.prec, bits) + 16):
            return int(mpmath.nint(mpmath.ldexp(self.approx, bits)))


def liouville_constant(prec=DEFAULT_PREC) -> PrecisionReal:
    """sum_{j>=1} 10^-j!, truncated once the tail drops below 2^-(prec+40).

    The truncation is stored exactly as a rational; for scans bounded well
    below the truncation denominator it is indistinguishable from the full
    series.  The declared resolution is prec bits.
    """
    cutoff = Fraction(1, 1 << (prec + 40))
    total = Fraction(0)
    j = 1
    while True:
        term = Fraction(1, 10 ** _factorial(j))
        if term < cutoff:
            break
        total += term
        j += 1
    return PrecisionReal(total, None, prec)


def _factorial(j):
    out = 1
    for i in range(2, j + 1):
        out *= i
    return out


# ---------------------------------------------------------------------------
# continued fractions


def continued_fraction(x, depth) -> list[int]:
    """Partial quotients [a0; a1, a2, ...] of x, at most `depth` of them.

    Exact rationals terminate naturally.  For floating values the expansion
    is tracked with interval arithmetic; when the interval no longer pins the
    next quotient a PrecisionError is raised rather than guessing.
    """
    if depth < 1:
        raise DomainError("depth must be positive")
    x = PrecisionReal.coerce(x)
    if x.exact_value:
        quotients = []
        frac = x.fraction
        num, den = frac.numerator, frac.denominator
        while den and len(quotients) < depth:
            a, num = divmod(num, den)
            quotients.append(int(a))
            num, den = den, num
        return quotients

    prec = x.prec
    with mp_prec(prec + 16):
        err = mpmath.ldexp(max(mpmath.mpf(1), abs(x.approx)), -prec)
        lo = x.approx - err
        hi = x.approx + err
        quotients = []
        for _ in range(depth):
            alo = mpmath.floor(lo)
            ahi = mpmath.floor(hi)
            if alo != ahi:
                raise PrecisionError(
                    f"continued fraction ambiguous after {len(quotients)} terms "
                    f"at {prec} bits; increase the precision"
                )
            quotients.append(int(alo))
            flo = lo - alo
            fhi = hi - alo
            if flo <= 0:
                raise PrecisionError(
                    f"cannot certify the expansion beyond {len(quotients)} terms "
                    f"at {prec} bits"
                )
            lo, hi = 1 / fhi, 1 / flo
        return quotients


def convergents(quotients) -> list[tuple[int, int]]:
    """Convergents p_j/q_j from partial quotients, exact."""
    out = []
    p0, q0, p1, q1 = 1, 0, quotients[0] if quotients else 0, 1
    if quotients:
        out.append((p1, q1))
    for a in quotients[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        out.append((p1, q1))
    return out
