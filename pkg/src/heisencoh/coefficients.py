"""Finitely supported coefficient fields on Z^d (truncated Fourier series).

A CoefficientField maps integer multi-indices to complex numbers and stands
for the trigonometric polynomial f(x) = sum_k c_k exp(2 pi i <k, x>).  The
shared text format is::

    dim=<d>
    k1 ... kd re im

one line per stored coefficient, unordered, duplicates rejected.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatchError, DomainError, ParseError


def _as_key(k, dim):
    if isinstance(k, int):
        if dim != 1:
            raise DimensionMismatchError(f"scalar index for dim={dim} field")
        return (k,)
    key = tuple(int(v) for v in k)
    if len(key) != dim:
        raise DimensionMismatchError(f"index {key} has length {len(key)}, expected {dim}")
    return key


class CoefficientField:
    """Immutable finitely supported map Z^dim -> C."""

    __slots__ = ("dim", "_entries")

    def __init__(self, dim, entries=None, drop_zeros=True):
        if dim < 1:
            raise DomainError("dim must be positive")
        self.dim = int(dim)
        data = {}
        if entries:
            for k, v in (entries.items() if hasattr(entries, "items") else entries):
                key = _as_key(k, self.dim)
                if key in data:
                    raise DomainError(f"duplicate index {key}")
                v = complex(v)
                if v != 0 or not drop_zeros:
                    data[key] = v
        self._entries = data

    @classmethod
    def from_dict(cls, mapping, dim=1):
        return cls(dim, mapping)

    def get(self, k):
        return self._entries.get(_as_key(k, self.dim), 0j)

    def items(self):
        """Entries in lexicographic index order (deterministic)."""
        return sorted(self._entries.items())

    def keys(self):
        return sorted(self._entries)

    def __len__(self):
        return len(self._entries)

    def __eq__(self, other):
        return (
            isinstance(other, CoefficientField)
            and self.dim == other.dim
            and self._entries == other._entries
        )

    def __repr__(self):
        return f"CoefficientField(dim={self.dim}, n={len(self._entries)})"

    def support_radius(self):
        """Max-norm radius of the support (0 for the zero field)."""
        if not self._entries:
            return 0
        return max(max(abs(v) for v in k) for k in self._entries)

    def truncate(self, radius):
        """Drop all indices with max-norm above radius."""
        return CoefficientField(
            self.dim,
            {k: v for k, v in self._entries.items() if max(abs(c) for c in k) <= radius},
        )

    def __add__(self, other):
        if self.dim != other.dim:
            raise DimensionMismatchError("dim mismatch in +")
        data = dict(self._entries)
        for k, v in other._entries.items():
            data[k] = data.get(k, 0j) + v
        return CoefficientField(self.dim, data)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return CoefficientField(self.dim, {k: c * v for k, v in self._entries.items()})

    def norm_l1(self):
        return float(sum(abs(v) for _, v in self.items()))

    def norm_l2(self):
        return math.sqrt(sum(abs(v) ** 2 for _, v in self.items()))

    def is_hermitian(self, tol=1e-12):
        """True if c_{-k} = conj(c_k) within tol, i.e. the function is real."""
        for k, v in self._entries.items():
            mk = tuple(-c for c in k)
            if abs(self._entries.get(mk, 0j) - v.conjugate()) > tol:
                return False
        return True

    def evaluate(self, points):
        """Evaluate sum_k c_k exp(2 pi i <k, x>) at points (m, dim); a flat
        array is read as m scalar points when dim is 1."""
        pts = np.asarray(points, dtype=float)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1) if self.dim == 1 else pts.reshape(1, -1)
        if pts.ndim != 2 or pts.shape[1] != self.dim:
            raise DimensionMismatchError("point dimension mismatch")
        out = np.zeros(pts.shape[0], dtype=complex)
        for k, v in self.items():
            out += v * np.exp(2j * np.pi * (pts @ np.asarray(k, dtype=float)))
        return out


def write_coefficients(field: CoefficientField, fh) -> None:
    fh.write(f"dim={field.dim}\n")
    for k, v in field.items():
        ks = " ".join(str(c) for c in k)
        fh.write(f"{ks} {v.real:.17g} {v.imag:.17g}\n")


def read_coefficients(fh) -> CoefficientField:
    lines = fh.read().splitlines()
    it = iter(enumerate(lines, start=1))
    dim = None
    for lineno, raw in it:
        line = raw.strip()
        if not line:
            continue
        if not line.startswith("dim="):
            raise ParseError("expected header 'dim=<d>'", lineno)
        try:
            dim = int(line[4:])
        except ValueError:
            raise ParseError(f"bad dimension {line[4:]!r}", lineno) from None
        break
    if dim is None:
        raise ParseError("missing 'dim=' header")
    if dim < 1:
        raise ParseError("dimension must be positive")

    entries = {}
    for lineno, raw in it:
        line = raw.strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) != dim + 2:
            raise ParseError(
                f"expected {dim} integers and two reals, got {len(toks)} tokens", lineno
            )
        try:
            key = tuple(int(t) for t in toks[:dim])
            val = complex(float(toks[dim]), float(toks[dim + 1]))
        except ValueError as exc:
            raise ParseError(str(exc), lineno) from None
        if key in entries:
            raise ParseError(f"duplicate index {key}", lineno)
        entries[key] = val
    return CoefficientField(dim, entries, drop_zeros=False)
