"""Exact Wodzicki residues and noncommutative integrals on flat tori.

The package computes symbols of pseudodifferential operators on T^d built
from the Dirac operator, one-forms A = -i gamma^k a_k and functions, with
exact Gaussian-rational coefficients, and evaluates their noncommutative
integrals as exact multiples of powers of pi.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .clifford import CliffordElement, boundary_chirality, chirality, spinor_dim, trace
from .coefficients import ExactScalar, GaussianRational, TensorPoly, TrigPoly
from .ncint import ResidueValue, c_d, ncintegral, sphere_monomial_integral, wres
from .psido import OperatorSpec, abs_power, composite, dirac, multiplication, oneform, power, random_oneform, realize
from .symbols import FloorError, SymbolExpansion, parametrix, sqrt_symbol, symbol_product
from .theorems import VerificationReport, ncint_power, tadpole, zeta0_difference

__all__ = [
    "__version__",
    "CliffordElement",
    "ExactScalar",
    "FloorError",
    "GaussianRational",
    "OperatorSpec",
    "ResidueValue",
    "SymbolExpansion",
    "TensorPoly",
    "TrigPoly",
    "VerificationReport",
    "abs_power",
    "boundary_chirality",
    "c_d",
    "chirality",
    "composite",
    "dirac",
    "multiplication",
    "ncint_power",
    "ncintegral",
    "oneform",
    "parametrix",
    "power",
    "random_oneform",
    "realize",
    "sphere_monomial_integral",
    "spinor_dim",
    "sqrt_symbol",
    "symbol_product",
    "tadpole",
    "trace",
    "wres",
    "zeta0_difference",
]
