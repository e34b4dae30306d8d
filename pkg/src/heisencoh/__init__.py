"""heisencoh: discrete Heisenberg group arithmetic, representations, small
divisors, and Fourier-side solvers for the difference equation
f - f(. + u) = g on the torus."""

from .heisenberg import (
    G1,
    G2,
    G3,
    IDENTITY,
    HeisElement,
    HeisElementN,
    NormalForm,
    commutator,
    conjugate,
    inverse,
    is_central,
    matrix_embed,
    multiply,
    multiply_n,
    normal_form,
    reconstruct,
)
from .coefficients import CoefficientField, read_coefficients, write_coefficients
from .precision import PrecisionReal, continued_fraction, convergents, liouville_constant
from .diophantine import ClassificationReport, classify, fan_member, small_divisor
from .coboundary import CoboundaryProblem, coboundary_from, obstruction, residual, solve
from .fourier import SampledFunction, dft, difference, inverse_dft, is_radial, sobolev_norm
from .representations import IrrepParams, SemidirectElement, character, irrep_matrix
from .cohomology import AbelianGroupDesc, binom, cohomology_table

__version__ = "0.1.0"
