"""Discrete Fourier transforms, the difference operator, and Sobolev norms.

Conventions, fixed once:

* forward transform  H_k = sum_{i=0}^{N-1} h_i wbar^{ik},  w = exp(2 pi i/N)
  (unnormalized; the inverse carries the 1/N),
* f_hat(xi) = sum_k f(k) exp(-2 pi i k xi) for finitely supported f on Z,
* the Sobolev multiplier is (1 + |1 - exp(-2 pi i xi)|)^alpha
  = (1 + 2 |sin(pi xi)|)^alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import CoefficientField
from .errors import DegenerateInputError, DomainError


def dft(values) -> np.ndarray:
    """Forward transform of one period of an N-periodic sequence."""
    return np.fft.fft(np.asarray(values, dtype=complex))


def inverse_dft(values) -> np.ndarray:
    """Inverse transform; inverse_dft(dft(h)) == h."""
    return np.fft.ifft(np.asarray(values, dtype=complex))


def _as_field1(f) -> CoefficientField:
    if isinstance(f, CoefficientField):
        if f.dim != 1:
            raise DomainError("expected a one-dimensional coefficient field")
        return f
    return CoefficientField(1, f)


def difference(f) -> CoefficientField:
    """Forward difference (Delta f)(k) = f(k) - f(k-1) on finite support."""
    f = _as_field1(f)
    out = {}
    for (k,), v in f.items():
        out[(k,)] = out.get((k,), 0j) + v
        out[(k + 1,)] = out.get((k + 1,), 0j) - v
    return CoefficientField(1, out)


def fhat(f, xi) -> np.ndarray:
    """f_hat(xi) = sum_k f(k) exp(-2 pi i k xi) at the given points."""
    f = _as_field1(f)
    xi = np.asarray(xi, dtype=float)
    out = np.zeros(xi.shape, dtype=complex)
    for (k,), v in f.items():
        out += v * np.exp(-2j * np.pi * k * xi)
    return out


def _gauss_panels(n_panels, n_nodes):
    nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
    edges = np.linspace(0.0, 1.0, n_panels + 1)
    mid = (edges[:-1] + edges[1:]) / 2
    half = (edges[1:] - edges[:-1]) / 2
    xi = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return xi, w


def sobolev_norm(f, alpha) -> float:
    """Multiplier Sobolev norm
    ( int_0^1 |(1 + 2 sin(pi xi))^alpha f_hat(xi)|^2 dxi )^(1/2).

    Composite Gauss-Legendre with at least 8 nodes per oscillation of
    |f_hat|^2; the integrand is analytic, so the documented error is below
    1e-10 for support radii up to 64.
    """
    if alpha < 0:
        raise DomainError("alpha must be nonnegative")
    f = _as_field1(f)
    if len(f) == 0:
        return 0.0
    radius = f.support_radius()
    xi, w = _gauss_panels(max(4, radius), 24)
    mult = (1.0 + 2.0 * np.sin(np.pi * xi)) ** alpha
    vals = np.abs(mult * fhat(f, xi)) ** 2
    return math.sqrt(float(np.sum(w * vals)))


# ---------------------------------------------------------------------------
# sampled functions on R^d


@dataclass(frozen=True)
class SampledFunction:
    """Complex samples on an explicit grid of points in R^d."""

    points: np.ndarray  # (m, d)
    values: np.ndarray  # (m,)

    def __post_init__(self):
        pts = np.atleast_2d(np.asarray(self.points, dtype=float))
        vals = np.asarray(self.values, dtype=complex).ravel()
        if pts.shape[0] == 0:
            raise DegenerateInputError("sampled function has no points")
        if pts.shape[0] != vals.shape[0]:
            raise DomainError("points and values disagree in length")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "values", vals)

    @classmethod
    def line(cls, xi, values):
        xi = np.asarray(xi, dtype=float)
        return cls(xi.reshape(-1, 1), values)

    @property
    def dim(self):
        return self.points.shape[1]


def is_radial(f: SampledFunction, tol: float) -> bool:
    """True if samples are constant (within tol, max-norm) on each radius
    shell; shells group sorted radii separated by gaps larger than tol."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    radii = np.linalg.norm(f.points, axis=1)
    order = np.argsort(radii, kind="stable")
    r_sorted = radii[order]
    v_sorted = f.values[order]
    boundaries = np.nonzero(np.diff(r_sorted) > tol)[0] + 1
    for shell in np.split(np.arange(len(r_sorted)), boundaries):
        vals = v_sorted[shell]
        if np.max(np.abs(vals - vals.mean())) > tol:
            return False
    return True


# ---------------------------------------------------------------------------
# restriction inequality ratio


def restriction_ratio(fhat_samples: SampledFunction, alpha, R, eps=0.0) -> float:
    """Ratio of the two sides of the restriction inequality for g = f|_Z.

    LHS  = || (1 + |R Delta|)^alpha g ||_{l2}, computed through the
           periodization g_hat(xi) = sum_j f_hat(xi + j),
    RHS  = ( int_R |(1 + |2 pi xi R|)^alpha f_hat(xi)|^2 dxi )^(1/2).

    On a uniform grid whose spacing divides 1 the periodization folds the
    samples exactly (so integer translations of f leave the ratio invariant
    to roundoff); other grids fall back to linear interpolation.  The result
    is an empirical lower bound for the constant in the inequality; no
    specific constant is ever asserted.  Zero input returns 0.
    """
    if alpha <= 0.5:
        raise DomainError("the inequality requires alpha > 1/2")
    if not (R >= eps >= 0):
        raise DomainError("need R >= eps >= 0")
    if fhat_samples.dim != 1:
        raise DomainError("restriction ratio is one-dimensional")
    xi = fhat_samples.points[:, 0]
    vals = fhat_samples.values
    if np.allclose(vals, 0):
        return 0.0
    order = np.argsort(xi, kind="stable")
    xi = xi[order]
    vals = vals[order]

    rhs_integrand = np.abs((1.0 + np.abs(2.0 * np.pi * xi * R)) ** alpha * vals) ** 2
    rhs = math.sqrt(float(np.trapezoid(rhs_integrand, xi)))

    spacings = np.diff(xi)
    h = float(spacings[0]) if len(spacings) else 0.0
    uniform = h > 0 and np.max(np.abs(spacings - h)) < 1e-9 * h
    m = round(1.0 / h) if h > 0 else 0
    if uniform and m > 0 and abs(1.0 / h - m) < 1e-6:
        # exact fold: sample i sits at lattice index round(xi_i / h) mod m
        ghat = np.zeros(m, dtype=complex)
        idx = np.rint(xi / h).astype(int) % m
        np.add.at(ghat, idx, vals)
        grid = np.arange(m) / m
    else:
        n_grid = 4096
        grid = (np.arange(n_grid) + 0.5) / n_grid
        ghat = np.zeros(n_grid, dtype=complex)
        for j in range(math.floor(xi[0]) - 1, math.ceil(xi[-1]) + 2):
            shifted = grid + j
            ghat = ghat + np.interp(shifted, xi, vals.real, left=0.0, right=0.0)
            ghat = ghat + 1j * np.interp(shifted, xi, vals.imag, left=0.0, right=0.0)
    mult = (1.0 + 2.0 * R * np.abs(np.sin(np.pi * grid))) ** alpha
    lhs = math.sqrt(float(np.mean(np.abs(mult * ghat) ** 2)))
    return lhs / rhs
