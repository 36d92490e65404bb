"""Concrete operators on the flat torus and their symbols.

An ``OperatorSpec`` is a small tree describing an operator built from the
Dirac operator D = -i gamma^j d_j, multiplication operators, one-forms
A = -i gamma^k a_k(x), the chirality, powers and products.  ``realize`` turns
it into a truncated ``SymbolExpansion``.

The kernel of D (constant spinors) is handled by replacing D with D + P, P the
projection on the kernel.  P is smoothing, so it never shows up in a
homogeneous component and nothing here refers to it.
"""

from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .clifford import CliffordElement, chirality as cl_chirality
from .coefficients import GaussianRational, TrigPoly
from .symbols import (
    FloorError,
    SymbolExpansion,
    parametrix,
    sqrt_symbol,
    symbol_product,
    MAX_DEPTH,
)

__all__ = [
    "SpecError",
    "OperatorSpec",
    "dirac",
    "multiplication",
    "oneform",
    "chirality",
    "power",
    "abs_power",
    "composite",
    "exact_oneform",
    "random_oneform",
    "random_function",
    "realize",
    "alpha",
    "top_degree",
    "DEFAULT_FLOOR_OFFSET",
]

# theorem checks default to floor -d - 4
DEFAULT_FLOOR_OFFSET = 4

KINDS = ("dirac", "multiplication", "oneform", "chirality", "power", "abs_power", "composite")


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class OperatorSpec:
    """Operator description; build with the helper constructors below."""

    d: int
    kind: str
    params: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise SpecError(f"unknown operator kind {self.kind!r}")
        if self.d < 1:
            raise SpecError("dimension must be positive")

    # handy accessors ----------------------------------------------------
    @property
    def components(self) -> tuple:
        if self.kind != "oneform":
            raise SpecError("only one-forms have components")
        return self.params["a"]

    def is_selfadjoint(self) -> bool:
        """One-forms: A = A* iff every a_k is purely imaginary valued."""
        if self.kind == "oneform":
            return all(a.is_imaginary() for a in self.params["a"])
        if self.kind == "multiplication":
            f = self.params["f"]
            return f.is_real() if isinstance(f, TrigPoly) else None
        if self.kind == "dirac":
            A = self.params.get("oneform")
            return True if A is None else A.is_selfadjoint()
        if self.kind == "chirality":
            return True
        return None

    def __add__(self, other: "OperatorSpec") -> "OperatorSpec":
        if self.kind == "oneform" and other.kind == "oneform":
            return oneform([a + b for a, b in zip(self.components, other.components)])
        raise SpecError("only one-forms can be added at spec level")

    def scaled(self, c) -> "OperatorSpec":
        if self.kind != "oneform":
            raise SpecError("only one-forms can be scaled at spec level")
        return oneform([a * c for a in self.components])

    # JSON ---------------------------------------------------------------
    def to_json(self) -> dict:
        out: dict = {"kind": self.kind, "d": self.d}
        p = self.params
        if self.kind == "dirac":
            if p.get("oneform") is not None:
                out["oneform"] = p["oneform"].to_json()
        elif self.kind == "multiplication":
            f = p["f"]
            if isinstance(f, TrigPoly):
                out["f"] = f.to_json()
            else:
                out["clifford"] = {
                    ",".join(str(i + 1) for i in range(self.d) if w >> i & 1): c.to_json()
                    for w, c in sorted(f.coeffs.items())
                }
        elif self.kind == "oneform":
            out["a"] = [a.to_json() for a in p["a"]]
        elif self.kind == "power":
            out["base"] = p["base"].to_json()
            out["k"] = p["k"]
        elif self.kind == "abs_power":
            out["k"] = p["k"]
            if p.get("oneform") is not None:
                out["oneform"] = p["oneform"].to_json()
        elif self.kind == "composite":
            out["factors"] = [f.to_json() for f in p["factors"]]
        return out

    @classmethod
    def from_json(cls, data: dict) -> "OperatorSpec":
        try:
            kind = data["kind"]
            d = int(data["d"])
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecError(f"malformed operator spec: {exc}") from exc
        if kind == "dirac":
            A = data.get("oneform")
            return dirac(d, cls.from_json(A) if A else None)
        if kind == "multiplication":
            if "f" in data:
                return multiplication(TrigPoly.from_json(d, data["f"]))
            coeffs = {}
            for key, tp in data["clifford"].items():
                w = 0
                for i in (int(x) for x in key.split(",") if x):
                    w |= 1 << (i - 1)
                coeffs[w] = TrigPoly.from_json(d, tp)
            return multiplication(CliffordElement(d, coeffs))
        if kind == "oneform":
            return oneform([TrigPoly.from_json(d, a) for a in data["a"]])
        if kind == "chirality":
            return chirality(d)
        if kind == "power":
            return power(cls.from_json(data["base"]), int(data["k"]))
        if kind == "abs_power":
            A = data.get("oneform")
            return abs_power(d, int(data["k"]), cls.from_json(A) if A else None)
        if kind == "composite":
            return composite([cls.from_json(f) for f in data["factors"]])
        raise SpecError(f"unknown operator kind {kind!r}")


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def dirac(d: int, oneform: OperatorSpec | None = None) -> OperatorSpec:
    """D, or D + A when a one-form is given."""
    if oneform is not None and (oneform.kind != "oneform" or oneform.d != d):
        raise SpecError("perturbation must be a one-form of the same dimension")
    return OperatorSpec(d, "dirac", {"oneform": oneform})


def multiplication(f) -> OperatorSpec:
    """Multiplication by a TrigPoly or by a CliffordElement with TrigPoly coefficients."""
    if not isinstance(f, (TrigPoly, CliffordElement)):
        raise SpecError("multiplication needs a TrigPoly or CliffordElement")
    return OperatorSpec(f.dim, "multiplication", {"f": f})


def oneform(a: Sequence[TrigPoly]) -> OperatorSpec:
    """A = -i gamma^k a_k(x)."""
    a = tuple(a)
    if not a:
        raise SpecError("empty one-form")
    d = len(a)
    for ak in a:
        if not isinstance(ak, TrigPoly) or ak.dim != d:
            raise SpecError("one-form components must be TrigPolys on T^d with d = number of components")
    return OperatorSpec(d, "oneform", {"a": a})


def chirality(d: int) -> OperatorSpec:
    if d % 2:
        raise SpecError("chirality exists only in even dimension")
    return OperatorSpec(d, "chirality", {})


def power(base: OperatorSpec, k: int) -> OperatorSpec:
    return OperatorSpec(base.d, "power", {"base": base, "k": int(k)})


def abs_power(d: int, k: int, oneform: OperatorSpec | None = None) -> OperatorSpec:
    """|D|^k, or |D + A|^k when a one-form is given."""
    if oneform is not None and (oneform.kind != "oneform" or oneform.d != d):
        raise SpecError("perturbation must be a one-form of the same dimension")
    return OperatorSpec(d, "abs_power", {"k": int(k), "oneform": oneform})


def composite(factors: Iterable[OperatorSpec]) -> OperatorSpec:
    factors = tuple(factors)
    if not factors:
        raise SpecError("empty product")
    d = factors[0].d
    if any(f.d != d for f in factors):
        raise SpecError("factors live in different dimensions")
    return OperatorSpec(d, "composite", {"factors": factors})


def exact_oneform(pairs: Iterable[tuple[TrigPoly, TrigPoly]]) -> OperatorSpec:
    """sum a [D, b] written as -i gamma^k a_k with a_k = sum a * d_k b."""
    pairs = list(pairs)
    d = pairs[0][0].dim
    comps = [TrigPoly(d) for _ in range(d)]
    for a, b in pairs:
        for k in range(d):
            comps[k] = comps[k] + a * b.derivative(k)
    return oneform(comps)


# ---------------------------------------------------------------------------
# random data
# ---------------------------------------------------------------------------


def _random_gr(rng: random.Random, size: int = 3) -> GaussianRational:
    def q():
        return Fraction(rng.randint(-size, size), rng.randint(1, size))

    return GaussianRational(q(), q())


def _random_freq(rng: random.Random, d: int, max_freq: int) -> tuple:
    return tuple(rng.randint(-max_freq, max_freq) for _ in range(d))


def random_function(d: int, rng: random.Random, max_freq: int = 2, modes: int = 2, real: bool = True) -> TrigPoly:
    """Random trigonometric polynomial; real-valued by construction when ``real``."""
    f = TrigPoly(d)
    for _ in range(modes):
        l = _random_freq(rng, d, max_freq)
        c = _random_gr(rng)
        term = TrigPoly(d, {l: c})
        f = f + (term + term.conjugate() if real else term)
    return f


def random_oneform(d: int, seed: int, max_freq: int = 2, modes: int = 2, selfadjoint: bool = True) -> OperatorSpec:
    """Seeded random one-form with frequencies in [-max_freq, max_freq]^d.

    Selfadjointness is built in: a_{k,-l} = -conj(a_{k,l}), so each a_k is
    purely imaginary valued.
    """
    rng = random.Random(f"oneform:{d}:{seed}:{max_freq}:{modes}")
    comps = []
    for _ in range(d):
        f = TrigPoly(d)
        for _ in range(modes):
            l = _random_freq(rng, d, max_freq)
            c = _random_gr(rng)
            term = TrigPoly(d, {l: c})
            f = f + (term - term.conjugate() if selfadjoint else term)
        comps.append(f)
    return oneform(comps)


# ---------------------------------------------------------------------------
# realization
# ---------------------------------------------------------------------------


def top_degree(spec: OperatorSpec) -> int:
    k = spec.kind
    if k == "dirac":
        return 1
    if k in ("multiplication", "oneform", "chirality"):
        return 0
    if k == "power":
        return spec.params["k"] * top_degree(spec.params["base"])
    if k == "abs_power":
        return spec.params["k"]
    if k == "composite":
        return sum(top_degree(f) for f in spec.params["factors"])
    raise SpecError(kind_error(k))


def kind_error(k) -> str:
    return f"unknown operator kind {k!r}"


def _dirac_symbol(d: int) -> SymbolExpansion:
    terms = []
    for j in range(d):
        beta = tuple(1 if i == j else 0 for i in range(d))
        terms.append((beta, 0, 1 << j, (0,) * d, GaussianRational(1)))
    return SymbolExpansion.from_terms(d, terms, top=1)


def _oneform_symbol(spec: OperatorSpec) -> SymbolExpansion:
    d = spec.d
    minus_i = GaussianRational(0, -1)
    el = CliffordElement(d, {1 << k: a * minus_i for k, a in enumerate(spec.components) if a})
    return SymbolExpansion.multiplication(el) if el else SymbolExpansion.zero(d, 0)


def _chain(specs: Sequence[OperatorSpec], floor: int) -> SymbolExpansion:
    tops = [top_degree(s) for s in specs]
    T = sum(tops)
    depth = T - floor
    if depth > MAX_DEPTH:
        raise FloorError(f"requested depth {depth} exceeds the guard {MAX_DEPTH}")
    out = None
    acc_top = 0
    for s, t in zip(specs, tops):
        sym = _realize(s, t - depth)
        acc_top += t
        if out is None:
            out = sym
        else:
            out = symbol_product(out, sym, floor=acc_top - depth)
    return out


def _perturbed_dirac(spec_d: int, A: OperatorSpec | None) -> SymbolExpansion:
    D = _dirac_symbol(spec_d)
    if A is None:
        return D
    return D + _oneform_symbol(A)


def _realize(spec: OperatorSpec, floor: int) -> SymbolExpansion:
    k = spec.kind
    d = spec.d
    if k == "dirac":
        return _perturbed_dirac(d, spec.params.get("oneform"))
    if k == "multiplication":
        return SymbolExpansion.multiplication(spec.params["f"])
    if k == "oneform":
        return _oneform_symbol(spec)
    if k == "chirality":
        el = cl_chirality(d).map_coeffs(lambda c: TrigPoly.constant(d, c))
        return SymbolExpansion.multiplication(el)
    if k == "composite":
        return _chain(spec.params["factors"], floor)
    if k == "power":
        base, n = spec.params["base"], spec.params["k"]
        if n == 0:
            return SymbolExpansion.identity(d)
        if n > 0:
            return _chain([base] * n, floor)
        p = top_degree(base)
        if p <= 0:
            raise SpecError("negative powers need a base of positive order")
        T = n * p
        depth = T - floor
        inv_floor = -p - depth
        P = _realize(base, inv_floor + 2 * p)
        Pinv = parametrix(P, inv_floor)
        out = Pinv
        acc = -p
        for _ in range(-n - 1):
            acc -= p
            out = symbol_product(out, Pinv, floor=acc - depth)
        return out
    if k == "abs_power":
        n, A = spec.params["k"], spec.params.get("oneform")
        if n == 0:
            return SymbolExpansion.identity(d)
        depth = n - floor
        DA = _perturbed_dirac(d, A)
        P2 = symbol_product(DA, DA)
        if n % 2 == 0:
            if n > 0:
                out = P2
                for _ in range(n // 2 - 1):
                    out = symbol_product(out, P2)
                return out
            factor = parametrix(P2, -2 - depth)
            step = -2
        else:
            if n > 0:
                factor = sqrt_symbol(P2, 1 - depth)
                step = 1
            else:
                S = sqrt_symbol(P2, -1 - depth + 2)
                factor = parametrix(S, -1 - depth)
                step = -1
        out = factor
        acc = step
        for _ in range(abs(n // step) - 1):
            acc += step
            out = symbol_product(out, factor, floor=acc - depth)
        return out
    raise SpecError(kind_error(k))


def realize(spec: OperatorSpec, floor: int | None = None) -> SymbolExpansion:
    """Truncated symbol of ``spec``, known at least down to ``floor``.

    The default floor is -d - 4.  Exact (differential) operators come back
    exact regardless of the floor.
    """
    if floor is None:
        floor = -spec.d - DEFAULT_FLOOR_OFFSET
    top = top_degree(spec)
    if top - floor > MAX_DEPTH:
        raise FloorError(f"requested depth {top - floor} exceeds the guard {MAX_DEPTH}")
    out = _realize(spec, floor)
    if out.floor is not None and out.floor > floor:
        raise FloorError(f"internal floor bookkeeping: got {out.floor}, wanted {floor}")
    return out


def alpha(b: TrigPoly, floor: int | None = None) -> SymbolExpansion:
    """Symbol of D b D^{-1}."""
    d = b.dim
    if floor is None:
        floor = -d - DEFAULT_FLOOR_OFFSET
    return realize(composite([dirac(d), multiplication(b), power(dirac(d), -1)]), floor)
