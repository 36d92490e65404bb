"""Clifford algebra on d anticommuting selfadjoint generators.

Convention: gamma_i gamma_j + gamma_j gamma_i = 2 delta_ij, so every generator
squares to one.  Elements are stored on the basis of increasing products
gamma_S, S a subset of {1..d}, encoded as a bitmask (bit i-1 <-> gamma_i).

The coefficient ring is whatever the caller puts in: GaussianRational,
TrigPoly, TensorPoly, ExactScalar all work.  A coefficient ``c`` must support
``+``, ``*``, unary ``-`` and ``bool(c)`` (False iff zero).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .coefficients import ONE, GaussianRational

__all__ = [
    "CliffordElement",
    "CliffordError",
    "blade_sign",
    "spinor_dim",
    "top_word_value",
    "chirality",
    "boundary_chirality",
    "trace",
    "adjoint",
    "word_mask",
]


class CliffordError(ValueError):
    pass


def spinor_dim(d: int) -> int:
    """dim V = 2^floor(d/2)."""
    return 1 << (d // 2)


@lru_cache(maxsize=None)
def blade_sign(w1: int, w2: int) -> int:
    """Sign of gamma_{w1} gamma_{w2} = sign * gamma_{w1 ^ w2}."""
    swaps = 0
    a = w1 >> 1
    while a:
        swaps += bin(a & w2).count("1")
        a >>= 1
    return -1 if swaps & 1 else 1


def _reverse_sign(w: int) -> int:
    r = bin(w).count("1")
    return -1 if (r * (r - 1) // 2) & 1 else 1


def word_mask(indices: Iterable[int]) -> int:
    """Bitmask of a strictly increasing index word (1-based)."""
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def top_word_value(d: int) -> GaussianRational:
    """Scalar by which gamma_1...gamma_d acts on the spinor module, d odd.

    In odd dimension the top word is central and the irreducible module picks
    one of its two square roots of (-1)^((d-1)/2).  We take i^((d-1)/2), which
    is what the Pauli matrices give for d = 3 (sigma_1 sigma_2 sigma_3 = i).
    """
    if d % 2 == 0:
        raise CliffordError("top word is not central in even dimension")
    return GaussianRational(0, 1) ** ((d - 1) // 2)


class CliffordElement:
    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Mapping[int, object] | None = None):
        self.dim = int(dim)
        top = 1 << self.dim
        clean = {}
        for w, c in (coeffs or {}).items():
            if not 0 <= w < top:
                raise CliffordError(f"word {w:b} outside Cl_{self.dim}")
            if c:
                clean[w] = c
        self.coeffs = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def scalar(cls, dim: int, c=ONE) -> "CliffordElement":
        return cls(dim, {0: c})

    @classmethod
    def gamma(cls, dim: int, i: int, c=ONE) -> "CliffordElement":
        if not 1 <= i <= dim:
            raise CliffordError(f"gamma_{i} does not exist in dimension {dim}")
        return cls(dim, {1 << (i - 1): c})

    @classmethod
    def word(cls, dim: int, indices: Iterable[int], c=ONE) -> "CliffordElement":
        """Product gamma_{i1} gamma_{i2} ... (indices may repeat or be unordered)."""
        out = cls.scalar(dim, c)
        for i in indices:
            out = out * cls.gamma(dim, i)
        return out

    # -- arithmetic -----------------------------------------------------
    def _check(self, other: "CliffordElement") -> None:
        if self.dim != other.dim:
            raise CliffordError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.dim, other)
        self._check(other)
        out = dict(self.coeffs)
        for w, c in other.coeffs.items():
            s = out[w] + c if w in out else c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        res = CliffordElement(self.dim)
        res.coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = CliffordElement(self.dim)
        res.coeffs = {w: -c for w, c in self.coeffs.items()}
        return res

    def __sub__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.dim, other)
        return self + (-other)

    def __rsub__(self, other):
        return CliffordElement.scalar(self.dim, other) - self

    def __mul__(self, other):
        if not isinstance(other, CliffordElement):
            return self.scale(other)
        self._check(other)
        out: dict = {}
        for w1, c1 in self.coeffs.items():
            for w2, c2 in other.coeffs.items():
                p = c1 * c2
                if blade_sign(w1, w2) < 0:
                    p = -p
                w = w1 ^ w2
                s = out[w] + p if w in out else p
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        res = CliffordElement(self.dim)
        res.coeffs = out
        return res

    def __rmul__(self, other):
        # scalar on the left; coefficient rings here are commutative
        return self.scale(other)

    def scale(self, c) -> "CliffordElement":
        res = CliffordElement(self.dim)
        res.coeffs = {w: v for w, v in ((w, x * c) for w, x in self.coeffs.items()) if v}
        return res

    def map_coeffs(self, f: Callable) -> "CliffordElement":
        return CliffordElement(self.dim, {w: f(c) for w, c in self.coeffs.items()})

    def commutator(self, other: "CliffordElement") -> "CliffordElement":
        return self * other - other * self

    def anticommutator(self, other: "CliffordElement") -> "CliffordElement":
        return self * other + other * self

    def coeff(self, mask: int, zero=None):
        return self.coeffs.get(mask, zero)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(self.dim, other)
        return self.dim == other.dim and (self - other).is_zero()

    def __hash__(self):
        raise TypeError("CliffordElement is not hashable")

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"Cl{self.dim}(0)"
        parts = []
        for w in sorted(self.coeffs):
            idx = [i + 1 for i in range(self.dim) if w >> i & 1]
            g = "g" + "".join(map(str, idx)) if idx else "1"
            parts.append(f"({self.coeffs[w]})*{g}")
        return f"Cl{self.dim}(" + " + ".join(parts) + ")"

    def to_json(self) -> dict:
        out = {}
        for w in sorted(self.coeffs):
            key = ",".join(str(i + 1) for i in range(self.dim) if w >> i & 1)
            c = self.coeffs[w]
            out[key] = c.to_json() if hasattr(c, "to_json") else str(c)
        return {"dim": self.dim, "coeffs": out}


def trace(x: CliffordElement):
    """Trace on the irreducible spinor module of dimension 2^floor(d/2).

    Only the identity word survives, except in odd d where the central top
    word acts by ``top_word_value(d)``.
    """
    dv = spinor_dim(x.dim)
    out = None
    c0 = x.coeffs.get(0)
    if c0 is not None:
        out = c0 * dv
    if x.dim % 2 == 1:
        ct = x.coeffs.get((1 << x.dim) - 1)
        if ct is not None:
            t = ct * (top_word_value(x.dim) * dv)
            out = t if out is None else out + t
    if out is None:
        return 0
    return out


def adjoint(x: CliffordElement) -> CliffordElement:
    """Reverse every word and conjugate coefficients (generators are selfadjoint)."""
    out = {}
    for w, c in x.coeffs.items():
        c = c.conjugate() if hasattr(c, "conjugate") else c
        out[w] = -c if _reverse_sign(w) < 0 else c
    return CliffordElement(x.dim, out)


def chirality(d: int) -> CliffordElement:
    """Grading (-i)^(d/2) gamma_1 ... gamma_d of an even-dimensional spin module."""
    if d % 2:
        raise CliffordError("chirality needs an even dimension")
    c = GaussianRational(0, -1) ** (d // 2)
    return CliffordElement(d, {(1 << d) - 1: c})


def boundary_chirality(d: int) -> CliffordElement:
    """(-i)^(d/2-1) gamma_1 ... gamma_{d-1}: anticommutes with gamma_d, commutes with the rest."""
    if d % 2:
        raise CliffordError("boundary chirality needs an even dimension")
    c = GaussianRational(0, -1) ** (d // 2 - 1)
    return CliffordElement(d, {(1 << (d - 1)) - 1: c})
