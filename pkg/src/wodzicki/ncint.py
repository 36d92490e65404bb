"""Wodzicki residue and noncommutative integral of torus symbols.

Wres(X) = int_{T^d} int_{S^{d-1}} Tr sigma_{-d}(x, xi) dxi dx with the plain
surface measure on the sphere, and the noncommutative integral is
c_d * Wres(X) with c_d = (2 pi)^(-d).  That constant makes the integral of
|D|^(-d) equal to the residue of the spectral zeta function at s = d (the
zeta_oracle module checks this numerically).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .clifford import spinor_dim, top_word_value
from .coefficients import ExactScalar, GaussianRational
from .symbols import FloorError, SymbolExpansion

__all__ = [
    "ResidueValue",
    "gamma_half",
    "sphere_monomial_integral",
    "sphere_volume",
    "c_d",
    "wres",
    "ncintegral",
]


@lru_cache(maxsize=None)
def gamma_half(k: int) -> tuple[mpq, int]:
    """Gamma(k/2) for k >= 1 as (rational, pi_half) meaning rational * pi^(pi_half/2)."""
    if k < 1:
        raise ValueError("Gamma(k/2) needs k >= 1 here")
    if k % 2 == 0:
        return mpq(factorial(k // 2 - 1)), 0
    n = (k - 1) // 2
    # Gamma(n + 1/2) = (2n)! / (4^n n!) sqrt(pi)
    return mpq(factorial(2 * n), 4**n * factorial(n)), 1


@lru_cache(maxsize=None)
def sphere_monomial_integral(beta: tuple, d: int | None = None) -> ExactScalar:
    """Integral of xi^beta over the unit sphere S^{d-1} (surface measure).

    Zero if some exponent is odd, otherwise 2 prod Gamma((b_i+1)/2) / Gamma((|b|+d)/2).
    """
    beta = tuple(int(b) for b in beta)
    if d is None:
        d = len(beta)
    if len(beta) != d:
        raise ValueError(f"multi-index {beta} does not match dimension {d}")
    if d < 2:
        raise ValueError("the cosphere S^{d-1} is connected only for d >= 2")
    if any(b < 0 for b in beta):
        raise ValueError("negative exponent")
    if any(b % 2 for b in beta):
        return ExactScalar()
    num, pi_half = mpq(2), 0
    for b in beta:
        q, p = gamma_half(b + 1)
        num *= q
        pi_half += p
    q, p = gamma_half(sum(beta) + d)
    return ExactScalar.pi_power(pi_half - p, GaussianRational(num / q))


def sphere_volume(d: int) -> ExactScalar:
    """Vol(S^{d-1}) = 2 pi^(d/2) / Gamma(d/2)."""
    return sphere_monomial_integral((0,) * d, d)


def c_d(d: int) -> ExactScalar:
    """Normalization of the noncommutative integral against Wres: (2 pi)^(-d)."""
    return ExactScalar.pi_power(-2 * d, GaussianRational(mpq(1, 2**d)))


@dataclass(frozen=True)
class ResidueValue:
    value: ExactScalar
    provenance: str = ""
    details: dict = field(default_factory=dict, compare=False)

    def is_zero(self) -> bool:
        return self.value.is_zero()

    def is_real(self) -> bool:
        return self.value.is_real()

    def __str__(self) -> str:
        return str(self.value)

    def to_json(self) -> dict:
        return {"value": self.value.to_json(), "text": str(self.value), "provenance": self.provenance}


def _cosphere_trace(S: SymbolExpansion) -> ExactScalar:
    """int_{S^{d-1}} of the x-mean of Tr sigma_{-d}, before any torus volume."""
    d = S.dim
    if S.top < -d:
        return ExactScalar()
    comp = S.component(-d)
    zero = (0,) * d
    top_word = (1 << d) - 1
    dv = spinor_dim(d)
    total = ExactScalar()
    for (beta, w, f), c in comp.items():
        if f != zero:
            continue
        if w == 0:
            tr = c * dv
        elif d % 2 == 1 and w == top_word:
            tr = c * (top_word_value(d) * dv)
        else:
            continue
        sph = sphere_monomial_integral(beta, d)
        if sph:
            total = total + sph * tr
    return total


def wres(S: SymbolExpansion, provenance: str = "") -> ResidueValue:
    """Wodzicki residue: needs the degree -d component, i.e. floor <= -d."""
    d = S.dim
    if S.top >= -d and not S.known(-d):
        raise FloorError(f"Wres needs the degree {-d} component; symbol known only down to {S.floor}")
    vol = ExactScalar.pi_power(2 * d, GaussianRational(2**d))
    return ResidueValue(_cosphere_trace(S) * vol, provenance or "Wres")


def ncintegral(S: SymbolExpansion, provenance: str = "") -> ResidueValue:
    """Noncommutative integral c_d * Wres(S)."""
    d = S.dim
    if S.top >= -d and not S.known(-d):
        raise FloorError(f"the integral needs the degree {-d} component; symbol known only down to {S.floor}")
    # c_d cancels the torus volume exactly
    return ResidueValue(_cosphere_trace(S), provenance or "ncint")
