"""Fourier-side solver for the difference equation f - f o gamma = g.

gamma is translation by u on the n-torus, f o gamma (x) = f(x + u), so mode
k of f - f o gamma carries the factor (1 - exp(2 pi i <k, u>)).  Solving
divides each coefficient by that factor; the constant mode is the
obstruction (it must vanish) and the solution is normalized with f_0 = 0.
The opposite composition sign is available via ``sign=-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .coefficients import CoefficientField
from .diophantine import complex_divisor, phase_distance
from .errors import DomainError, NonzeroMeanError, PrecisionError, ResonanceError
from .fourier import sobolev_norm
from .precision import PrecisionReal


@dataclass
class CoboundaryProblem:
    g: CoefficientField
    u: list  # translation vector; entries coerced to PrecisionReal
    resonance_tol: float = 1e-12
    truncation_radius: int | None = None
    sign: int = 1  # +1: factor (1 - e^{2 pi i <k,u>}); -1: conjugate reading

    def __post_init__(self):
        comps = self.u if isinstance(self.u, (list, tuple)) else [self.u]
        self.u = [PrecisionReal.coerce(c) for c in comps]
        if len(self.u) != self.g.dim:
            raise DomainError(
                f"translation vector has length {len(self.u)}, "
                f"coefficients have dimension {self.g.dim}"
            )
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if self.truncation_radius is not None:
            self.g = self.g.truncate(self.truncation_radius)


@dataclass
class CoboundarySolution:
    f: CoefficientField
    min_divisor: float | None
    argmin_k: tuple | None
    residual_sup: float | None = None
    norms: list = field(default_factory=list)  # rows from sobolev_loss
    formal: bool = False
    formal_note: str = ""
    truncation_norms: list = field(default_factory=list)  # (radius, l2 of f)

    def diagnostics_dict(self):
        return {
            "min_divisor": self.min_divisor,
            "argmin_k": list(self.argmin_k) if self.argmin_k else None,
            "residual_sup": self.residual_sup,
            "norms": [dict(r) for r in self.norms],
            "formal": self.formal,
            "truncation_norms": [
                {"radius": r, "f_l2": v} for r, v in self.truncation_norms
            ],
        }


def obstruction(g: CoefficientField) -> complex:
    """The mean I(g) = g_0; it must vanish for g to be a difference."""
    return g.get((0,) * g.dim)


def _divisor_for(u, k, sign):
    d = complex_divisor([c for c in u], k)
    return d if sign == 1 else d.conjugate()


def coboundary_from(f: CoefficientField, u, sign=1) -> CoefficientField:
    """Forward map g_k = (1 - exp(2 pi i <k, u>)) f_k; g_0 = 0 always."""
    u = [PrecisionReal.coerce(c) for c in (u if isinstance(u, (list, tuple)) else [u])]
    if len(u) != f.dim:
        raise DomainError("dimension mismatch between f and u")
    zero = (0,) * f.dim
    out = {}
    for k, v in f.items():
        if k == zero:
            continue
        out[k] = v * _divisor_for(u, k, sign)
    return CoefficientField(f.dim, out)


def solve(problem: CoboundaryProblem, classification=None) -> CoboundarySolution:
    """Solve f - f o gamma = g coefficientwise.

    Raises NonzeroMeanError when |g_0| exceeds the resonance tolerance,
    ResonanceError when a vanishing divisor meets a non-negligible
    coefficient, PrecisionError when a divisor cannot be resolved.  With a
    LiouvilleEvidence classification the solution is emitted but flagged
    formal: truncation-norm growth is reported as evidence in either case.
    """
    g = problem.g
    u = problem.u
    tol = problem.resonance_tol
    zero = (0,) * g.dim

    mean = obstruction(g)
    if abs(mean) > tol:
        raise NonzeroMeanError(mean)

    exact_u = all(c.exact_value for c in u)
    resonant = []
    coeffs = {}
    min_div = None
    argmin = None
    for k, gk in g.items():
        if k == zero:
            continue
        dist, _ = phase_distance(u, k)
        if dist == 0:
            div_abs = 0.0
        else:
            if not exact_u:
                prec = min(c.prec for c in u if not c.exact_value)
                res = sum(abs(ki) for ki in k) * 2.0 ** (2 - prec)
                if float(dist) <= res:
                    raise PrecisionError(
                        f"divisor at k={k} is not resolved at {prec} input bits"
                    )
            denom = _divisor_for(u, k, problem.sign)
            div_abs = abs(denom)
        if div_abs <= tol:
            if abs(gk) > tol:
                resonant.append((k, div_abs, abs(gk)))
            continue  # negligible coefficient on a resonant mode: f_k = 0
        coeffs[k] = gk / denom
        if min_div is None or div_abs < min_div:
            min_div = div_abs
            argmin = k
    if resonant:
        raise ResonanceError(resonant)

    f = CoefficientField(g.dim, coeffs, drop_zeros=False)

    radius = f.support_radius()
    trunc = []
    r = 1
    while r < radius:
        trunc.append((r, f.truncate(r).norm_l2()))
        r *= 2
    trunc.append((radius, f.norm_l2()))

    sol = CoboundarySolution(
        f=f, min_divisor=min_div, argmin_k=argmin, truncation_norms=trunc
    )
    if classification is not None and classification.verdict == "LiouvilleEvidence":
        sol.formal = True
        sol.formal_note = (
            "formal solution: Liouville-type divisors; the norm may diverge "
            "as the truncation radius grows (see truncation_norms)"
        )
    grid = max(2 * max(radius, g.support_radius()) + 1, 3)
    sol.residual_sup = residual(f, g, u, grid, sign=problem.sign)
    return sol


def residual(f: CoefficientField, g: CoefficientField, u, grid_size: int,
             sign=1) -> float:
    """sup over the uniform grid of |f(x) - f(x + u) - g(x)|.

    The difference f - f o gamma is summed mode by mode (coefficient
    f_k (1 - e^{2 pi i <k, u>}) on the exact root-of-unity grid), which is
    the direct trigonometric summation without catastrophic cancellation.
    grid_size must be at least 2 * support_radius + 1 per dimension.
    """
    if f.dim != g.dim:
        raise DomainError("dimension mismatch between f and g")
    u = [PrecisionReal.coerce(c) for c in (u if isinstance(u, (list, tuple)) else [u])]
    radius = max(f.support_radius(), g.support_radius())
    n = int(grid_size)
    if n < 2 * radius + 1:
        raise DomainError(
            f"grid_size {n} undersamples support radius {radius} "
            f"(need at least {2 * radius + 1})"
        )
    zero = (0,) * f.dim
    modes = {}
    for k, v in f.items():
        if k == zero:
            continue
        modes[k] = v * _divisor_for(u, k, sign)
    for k, v in g.items():
        modes[k] = modes.get(k, 0j) - v
    if not modes:
        return 0.0

    # evaluate sum_k c_k exp(2 pi i <k, x>) on the n^dim grid via exact
    # root-of-unity phases
    table = np.exp(2j * np.pi * np.arange(n) / n)
    dim = f.dim
    vals = np.zeros((n,) * dim, dtype=complex)
    idx = np.indices((n,) * dim)
    for k, c in sorted(modes.items()):
        ph = np.ones((n,) * dim, dtype=complex)
        for axis, ki in enumerate(k):
            ph = ph * table[(idx[axis] * ki) % n]
        vals += c * ph
    return float(np.max(np.abs(vals)))


def sobolev_loss(sol: CoboundarySolution, g: CoefficientField, alphas,
                 evidence=None):
    """Per-alpha norm table for f against g, plus the divisor-bound check.

    For dimension 1 the multiplier Sobolev norm is used; for higher
    dimensions the weighted-l2 norm with weight (1 + |k|)^alpha (max-norm).
    With classification evidence (C, s) the per-coefficient bound
    |f_k| C <= |g_k| |k|^s is checked (up to floating roundoff) for every k
    inside the scanned range; without evidence the table is emitted alone.
    """
    f = sol.f
    rows = []
    for alpha in alphas:
        if f.dim == 1:
            nf = sobolev_norm(f, alpha)
            ng = sobolev_norm(g, alpha + (evidence[1] if evidence else 0.0))
        else:
            nf = _weighted_l2(f, alpha)
            ng = _weighted_l2(g, alpha + (evidence[1] if evidence else 0.0))
        rows.append(
            {
                "alpha": float(alpha),
                "f_norm": nf,
                "g_norm_shifted": ng,
                "ratio": nf / ng if ng else math.inf if nf else 0.0,
            }
        )
    bound = None
    if evidence is not None:
        c_val, s_val = float(evidence[0]), float(evidence[1])
        violations = []
        checked = 0
        zero = (0,) * f.dim
        for k, fk in f.items():
            if k == zero:
                continue
            normk = max(abs(c) for c in k)
            gk = g.get(k)
            checked += 1
            lhs = abs(fk) * c_val
            rhs = abs(gk) * normk**s_val
            if lhs > rhs * (1 + 1e-12) + 1e-300:
                violations.append((k, lhs, rhs))
        bound = {"C": c_val, "s": s_val, "checked": checked, "violations": violations}
    return rows, bound


def _weighted_l2(field_: CoefficientField, alpha: float) -> float:
    total = 0.0
    for k, v in field_.items():
        normk = max(abs(c) for c in k)
        total += abs(v) ** 2 * (1.0 + normk) ** (2 * alpha)
    return math.sqrt(total)
