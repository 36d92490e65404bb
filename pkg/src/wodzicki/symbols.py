"""Homogeneous symbol calculus on the flat torus T^d.

A homogeneous component of degree j is a finite sum

    c * xi^beta / |xi|^n * gamma_w * exp(i l.x),      |beta| - n = j.

Because n is fixed by beta and j, a component is stored by its restriction to
the unit sphere: a map ``(beta, word, freq) -> GaussianRational``.  The
restriction is reduced modulo |xi|^2 = 1 by eliminating xi_d^2 (the last
coordinate), which leaves every exponent of xi_d in {0, 1}.  That normal form
is unique, so a component is zero iff its map is empty and two components are
equal iff their maps are.

The even part of a component (n even) is the set of monomials with
|beta| = j mod 2; the odd part (n odd) is the rest.  The reduction never mixes
the two, since it changes |beta| by 2.

An expansion carries ``top`` (highest degree), ``floor`` (lowest degree that
is known; everything below is discarded) and ``comps`` (degree -> component).
``floor=None`` marks an exact symbol of a differential operator: every
component is then a polynomial in xi and nothing is missing below.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Iterator, Mapping, Sequence

from gmpy2 import mpq

from .clifford import CliffordElement, blade_sign
from .coefficients import ONE, ZERO, GaussianRational, TrigPoly

__all__ = [
    "FloorError",
    "SymbolError",
    "HomoTerm",
    "SymbolExpansion",
    "MAX_DEPTH",
    "symbol_product",
    "symbol_adjoint",
    "parametrix",
    "sqrt_symbol",
    "xi_derivative",
    "x_derivative",
    "parity_class",
    "reality_class",
    "in_Be",
    "in_Bo",
    "in_C",
    "random_symbol",
]

# largest top - floor span any single operation will compute
MAX_DEPTH = 16


class SymbolError(ValueError):
    pass


class FloorError(SymbolError):
    """A component below the known floor was requested, or the depth guard tripped."""


@dataclass(frozen=True)
class HomoTerm:
    """One monomial  coeff * xi^beta |xi|^-norm_power * gamma_word * e^{i freq.x}."""

    beta: tuple
    norm_power: int
    word: int
    freq: tuple
    coeff: GaussianRational

    @property
    def degree(self) -> int:
        return sum(self.beta) - self.norm_power


# ---------------------------------------------------------------------------
# sphere reduction
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _reduce_monomial(beta: tuple) -> tuple:
    """xi^beta modulo |xi|^2 = 1, as a tuple of (beta', integer coefficient)."""
    d = len(beta)
    bd = beta[-1]
    if bd < 2:
        return ((beta, 1),)
    # xi_d^2 = 1 - sum_{i<d} xi_i^2
    out: dict[tuple, int] = {}
    low = beta[:-1] + (bd - 2,)
    for b, c in _reduce_monomial(low):
        out[b] = out.get(b, 0) + c
    for i in range(d - 1):
        shifted = list(low)
        shifted[i] += 2
        for b, c in _reduce_monomial(tuple(shifted)):
            out[b] = out.get(b, 0) - c
    return tuple((b, c) for b, c in sorted(out.items()) if c)


def _add_into(out: dict, key, c) -> None:
    s = out[key] + c if key in out else c
    if s:
        out[key] = s
    else:
        out.pop(key, None)


def _add_comp(a: dict, b: dict, sign: int = 1) -> dict:
    out = dict(a)
    for k, c in b.items():
        _add_into(out, k, c if sign > 0 else -c)
    return out


def _scale_comp(a: dict, c) -> dict:
    out = {}
    for k, v in a.items():
        p = v * c
        if p:
            out[k] = p
    return out


def _mul_comp(a: dict, b: dict) -> dict:
    """Pointwise product of two components (no derivative terms)."""
    out: dict = {}
    if not a or not b:
        return out
    for (b1, w1, f1), c1 in a.items():
        for (b2, w2, f2), c2 in b.items():
            c = c1 * c2
            if blade_sign(w1, w2) < 0:
                c = -c
            w = w1 ^ w2
            f = tuple(x + y for x, y in zip(f1, f2))
            beta = tuple(x + y for x, y in zip(b1, b2))
            for rb, m in _reduce_monomial(beta):
                _add_into(out, (rb, w, f), c * m if m != 1 else c)
    return out


def _xi_deriv_comp(a: dict, degree: int, i: int) -> dict:
    """d/dxi_i of a degree-``degree`` component (0-based i)."""
    out: dict = {}
    for (beta, w, f), c in a.items():
        n = sum(beta) - degree
        if beta[i]:
            b = list(beta)
            b[i] -= 1
            for rb, m in _reduce_monomial(tuple(b)):
                _add_into(out, (rb, w, f), c * (m * beta[i]))
        if n:
            b = list(beta)
            b[i] += 1
            for rb, m in _reduce_monomial(tuple(b)):
                _add_into(out, (rb, w, f), c * (-m * n))
    return out


def _multi_indices(d: int, r: int) -> Iterator[tuple]:
    if d == 1:
        yield (r,)
        return
    for k in range(r, -1, -1):
        for rest in _multi_indices(d - 1, r - k):
            yield (k,) + rest


class _DerivCache:
    """Memo of partial_xi^alpha of the components of one expansion."""

    def __init__(self, comps: Mapping[int, dict], dim: int):
        self.comps = comps
        self.dim = dim
        self.memo: dict[tuple, dict] = {}

    def get(self, degree: int, alpha: tuple) -> dict:
        key = (degree, alpha)
        if key in self.memo:
            return self.memo[key]
        if not any(alpha):
            res = self.comps.get(degree, {})
        else:
            i = next(k for k, a in enumerate(alpha) if a)
            lower = list(alpha)
            lower[i] -= 1
            lower = tuple(lower)
            res = _xi_deriv_comp(self.get(degree, lower), degree - sum(lower), i)
        self.memo[key] = res
        return res

    def weighted(self, degree: int, r: int, freq: tuple) -> dict:
        """sum_{|alpha|=r} freq^alpha / alpha! * partial^alpha of component ``degree``."""
        key = ("w", degree, r, freq)
        if key in self.memo:
            return self.memo[key]
        out: dict = {}
        for alpha in _multi_indices(self.dim, r):
            weight = 1
            for l, a in zip(freq, alpha):
                if a:
                    weight *= l**a
            if not weight:
                continue
            denom = 1
            for a in alpha:
                denom *= factorial(a)
            comp = self.get(degree, alpha)
            if comp:
                w = mpq(weight, denom)
                for k, c in comp.items():
                    _add_into(out, k, c * w)
        self.memo[key] = out
        return out


def _group_by_freq(comp: dict) -> dict[tuple, dict]:
    groups: dict[tuple, dict] = {}
    for key, c in comp.items():
        groups.setdefault(key[2], {})[key] = c
    return groups


# ---------------------------------------------------------------------------
# expansions
# ---------------------------------------------------------------------------


def _min_floor(*floors):
    known = [f for f in floors if f is not None]
    return max(known) if known else None


class SymbolExpansion:
    """Truncated asymptotic sum of homogeneous symbols on T^d."""

    __slots__ = ("dim", "top", "floor", "comps")

    def __init__(self, dim: int, top: int, comps: Mapping[int, dict] | None = None, floor: int | None = None):
        self.dim = int(dim)
        self.top = int(top)
        self.floor = None if floor is None else int(floor)
        clean = {}
        for deg, comp in (comps or {}).items():
            if deg > self.top:
                raise SymbolError(f"component of degree {deg} above top {self.top}")
            if self.floor is not None and deg < self.floor:
                continue
            if comp:
                clean[int(deg)] = dict(comp)
        if self.floor is None:
            for deg in clean:
                if deg < 0:
                    raise SymbolError("an exact (differential) symbol cannot have negative-degree parts")
        self.comps = clean

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, dim: int, top: int = 0, floor: int | None = None) -> "SymbolExpansion":
        return cls(dim, top, {}, floor)

    @classmethod
    def identity(cls, dim: int) -> "SymbolExpansion":
        return cls(dim, 0, {0: {((0,) * dim, 0, (0,) * dim): ONE}})

    @classmethod
    def from_terms(cls, dim: int, terms: Iterable, floor: int | None = None, top: int | None = None) -> "SymbolExpansion":
        """Build from ``HomoTerm``s or tuples (beta, norm_power, word, freq, coeff)."""
        comps: dict[int, dict] = {}
        for t in terms:
            if not isinstance(t, HomoTerm):
                t = HomoTerm(tuple(t[0]), int(t[1]), int(t[2]), tuple(t[3]), GaussianRational(t[4]) if not isinstance(t[4], GaussianRational) else t[4])
            if len(t.beta) != dim or len(t.freq) != dim:
                raise SymbolError("term does not live in dimension %d" % dim)
            comp = comps.setdefault(t.degree, {})
            for rb, m in _reduce_monomial(t.beta):
                _add_into(comp, (rb, t.word, t.freq), t.coeff * m)
        if top is None:
            top = max(comps) if comps else 0
        return cls(dim, top, comps, floor)

    @classmethod
    def multiplication(cls, value) -> "SymbolExpansion":
        """Zeroth-order symbol of multiplication by a TrigPoly or CliffordElement<TrigPoly>."""
        if isinstance(value, TrigPoly):
            value = CliffordElement.scalar(value.dim, value)
        d = value.dim
        comp: dict = {}
        for w, f in value.coeffs.items():
            if not isinstance(f, TrigPoly):
                f = TrigPoly.constant(d, f)
            for freq, c in f.coeffs.items():
                _add_into(comp, ((0,) * d, w, freq), c)
        return cls(d, 0, {0: comp})

    # -- access ---------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.floor is None

    def known(self, degree: int) -> bool:
        return self.floor is None or degree >= self.floor

    def component(self, degree: int) -> dict:
        if not self.known(degree):
            raise FloorError(f"degree {degree} lies below the known floor {self.floor}")
        return self.comps.get(degree, {})

    def degrees(self) -> list[int]:
        return sorted(self.comps, reverse=True)

    def terms(self, degree: int) -> list[HomoTerm]:
        out = []
        for (beta, w, f), c in sorted(self.component(degree).items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])):
            out.append(HomoTerm(beta, sum(beta) - degree, w, f, c))
        return out

    def truncate(self, floor: int) -> "SymbolExpansion":
        if self.floor is not None and floor < self.floor:
            raise FloorError(f"cannot truncate at {floor}: only known down to {self.floor}")
        return SymbolExpansion(self.dim, self.top, self.comps, floor)

    def with_top(self, top: int) -> "SymbolExpansion":
        return SymbolExpansion(self.dim, top, self.comps, self.floor)

    # -- linear structure -----------------------------------------------
    def _check(self, other: "SymbolExpansion") -> None:
        if self.dim != other.dim:
            raise SymbolError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "SymbolExpansion") -> "SymbolExpansion":
        self._check(other)
        floor = _min_floor(self.floor, other.floor)
        comps = dict(self.comps)
        for deg, comp in other.comps.items():
            comps[deg] = _add_comp(comps.get(deg, {}), comp)
        return SymbolExpansion(self.dim, max(self.top, other.top), comps, floor)

    def __neg__(self) -> "SymbolExpansion":
        return SymbolExpansion(self.dim, self.top, {k: _scale_comp(v, -1) for k, v in self.comps.items()}, self.floor)

    def __sub__(self, other: "SymbolExpansion") -> "SymbolExpansion":
        return self + (-other)

    def scale(self, c) -> "SymbolExpansion":
        return SymbolExpansion(self.dim, self.top, {k: _scale_comp(v, c) for k, v in self.comps.items()}, self.floor)

    def __mul__(self, other):
        if isinstance(other, SymbolExpansion):
            return symbol_product(self, other)
        return self.scale(other)

    def is_zero(self) -> bool:
        return not self.comps

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolExpansion):
            return NotImplemented
        if self.dim != other.dim:
            return False
        diff = self - other
        return diff.is_zero()

    def __hash__(self):
        raise TypeError("SymbolExpansion is not hashable")

    def agrees_with(self, other: "SymbolExpansion", floor: int | None = None) -> bool:
        """Equality on the degrees both sides know (and >= ``floor`` if given)."""
        self._check(other)
        lo = _min_floor(self.floor, other.floor, floor)
        degs = set(self.comps) | set(other.comps)
        for deg in degs:
            if lo is not None and deg < lo:
                continue
            if self.comps.get(deg, {}) != other.comps.get(deg, {}):
                return False
        return True

    # -- pointwise operations -------------------------------------------
    def map_terms(self, f) -> "SymbolExpansion":
        """Apply ``f(degree, comp) -> comp`` to each component."""
        return SymbolExpansion(self.dim, self.top, {k: f(k, v) for k, v in self.comps.items()}, self.floor)

    def frequencies(self) -> set:
        return {key[2] for comp in self.comps.values() for key in comp}

    # -- output ---------------------------------------------------------
    def render(self) -> str:
        lines = [f"symbol on T^{self.dim}: top {self.top}, floor {self.floor if self.floor is not None else 'exact'}"]
        for deg in self.degrees():
            lines.append(f"  degree {deg}:")
            for t in self.terms(deg):
                xi = "*".join(f"xi{i + 1}^{b}" if b > 1 else f"xi{i + 1}" for i, b in enumerate(t.beta) if b) or "1"
                word = "".join(str(i + 1) for i in range(self.dim) if t.word >> i & 1)
                g = f"g{word}" if word else "1"
                lines.append(f"    ({t.coeff}) * {xi}/|xi|^{t.norm_power} * {g} * e^(i{list(t.freq)}.x)")
        return "\n".join(lines)

    def __repr__(self) -> str:
        return f"SymbolExpansion(dim={self.dim}, top={self.top}, floor={self.floor}, degrees={self.degrees()})"

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "top": self.top,
            "floor": self.floor,
            "components": {
                str(deg): [
                    {
                        "beta": list(t.beta),
                        "norm_power": t.norm_power,
                        "word": [i + 1 for i in range(self.dim) if t.word >> i & 1],
                        "freq": list(t.freq),
                        **t.coeff.to_json(),
                    }
                    for t in self.terms(deg)
                ]
                for deg in self.degrees()
            },
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "SymbolExpansion":
        d = data["dim"]
        terms = []
        for comp in data["components"].values():
            for t in comp:
                word = 0
                for i in t["word"]:
                    word |= 1 << (i - 1)
                terms.append(HomoTerm(tuple(t["beta"]), t["norm_power"], word, tuple(t["freq"]), GaussianRational(t["re"], t["im"])))
        out = cls.from_terms(d, terms, floor=data["floor"], top=data["top"])
        return out


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------


def _check_depth(top: int, floor: int | None) -> None:
    if floor is not None and top - floor > MAX_DEPTH:
        raise FloorError(f"requested depth {top - floor} exceeds the guard {MAX_DEPTH}")


def _product_component(P: SymbolExpansion, Q: SymbolExpansion, k: int, pcache: _DerivCache, qgroups: dict) -> dict:
    """Degree-k component of P o Q from the components currently present."""
    out: dict = {}
    for i, _ in P.comps.items():
        for j in Q.comps:
            r = i + j - k
            if r < 0:
                continue
            if P.floor is None and r > i:
                continue
            for freq, qpart in qgroups[j].items():
                left = pcache.weighted(i, r, freq) if r else P.comps[i]
                if left:
                    for key, c in _mul_comp(left, qpart).items():
                        _add_into(out, key, c)
    return out


def symbol_product(P: SymbolExpansion, Q: SymbolExpansion, floor: int | None = None) -> SymbolExpansion:
    """Symbol of the composition P o Q.

    Component k collects (1/alpha!) d_xi^alpha sigma^P * D_x^alpha sigma^Q over
    all degree pairs with i + j - |alpha| = k, where D_x = -i d_x.  On a Fourier
    mode e^{il.x} the x-derivative factor is simply l^alpha.

    The result is known down to max(P.floor + Q.top, Q.floor + P.top); an
    optional ``floor`` truncates further (never extends).
    """
    P._check(Q)
    top = P.top + Q.top
    cands = []
    if P.floor is not None:
        cands.append(P.floor + Q.top)
    if Q.floor is not None:
        cands.append(Q.floor + P.top)
    nat = max(cands) if cands else None
    res_floor = _min_floor(nat, floor)
    _check_depth(top, res_floor)
    if res_floor is None:
        # polynomial symbols: |alpha| <= i, so k >= j >= 0
        low = min(Q.comps, default=0)
    else:
        low = res_floor
    pcache = _DerivCache(P.comps, P.dim)
    qgroups = {j: _group_by_freq(c) for j, c in Q.comps.items()}
    comps = {}
    for k in range(top, low - 1, -1):
        comp = _product_component(P, Q, k, pcache, qgroups)
        if comp:
            comps[k] = comp
    return SymbolExpansion(P.dim, top, comps, res_floor)


def _leading_inverse(P: SymbolExpansion) -> tuple[dict, int]:
    """Inverse of the leading symbol when its square is a constant multiple of |xi|^(2p)."""
    p = P.top
    lead = P.comps.get(p, {})
    if not lead:
        raise SymbolError("leading symbol vanishes")
    sq = _mul_comp(lead, lead)
    zero_key = ((0,) * P.dim, 0, (0,) * P.dim)
    if set(sq) != {zero_key}:
        raise SymbolError("leading symbol is not invertible within the calculus (its square is not c|xi|^2p Id)")
    c = sq[zero_key]
    return _scale_comp(lead, ONE / c), -p


def parametrix(P: SymbolExpansion, floor: int) -> SymbolExpansion:
    """Right parametrix Q with P o Q = 1 on every degree >= ``floor`` - top(P) ... top.

    The leading term is sigma_p^{-1}; each lower term solves
    sigma_{-p-j} = -sigma_p^{-1} * (degree -j part of P o Q_partial).
    """
    p = P.top
    _check_depth(-p, floor)
    if P.floor is not None and floor < P.floor - 2 * p:
        raise FloorError(
            f"parametrix down to {floor} needs the operator down to {floor + 2 * p}, known only to {P.floor}"
        )
    inv, deg = _leading_inverse(P)
    Q = SymbolExpansion(P.dim, deg, {deg: inv}, floor=deg)
    pcache = _DerivCache(P.comps, P.dim)
    for j in range(1, deg - floor + 1):
        qgroups = {k: _group_by_freq(c) for k, c in Q.comps.items()}
        rest = _product_component(P, Q, -j, pcache, qgroups)
        new = _scale_comp(_mul_comp(inv, rest), -1)
        comps = dict(Q.comps)
        if new:
            comps[deg - j] = new
        Q = SymbolExpansion(P.dim, deg, comps, floor=deg - j)
    return Q


def sqrt_symbol(P2: SymbolExpansion, floor: int) -> SymbolExpansion:
    """Square root of an operator whose leading symbol is s^2 |xi|^2 Id, s rational > 0.

    sigma_1 = s|xi|; for j >= 1 the term sigma_{1-j} is
    (sigma^{P2}_{2-j} - degree (2-j) part of S_partial o S_partial) / (2 s |xi|).
    """
    d = P2.dim
    if P2.top != 2:
        raise SymbolError("square root needs a second order operator")
    lead = P2.comps.get(2, {})
    zero_key = ((0,) * d, 0, (0,) * d)
    if set(lead) != {zero_key} or not lead[zero_key].is_real() or lead[zero_key].re <= 0:
        raise SymbolError("leading symbol is not a positive multiple of |xi|^2 Id")
    c = lead[zero_key].re
    s = _rational_sqrt(c)
    if s is None:
        raise SymbolError(f"leading constant {c} has no rational square root")
    _check_depth(1, floor)
    if P2.floor is not None and floor < P2.floor - 1:
        raise FloorError(f"square root down to {floor} needs the operator down to {floor + 1}, known only to {P2.floor}")
    S = SymbolExpansion(d, 1, {1: {zero_key: GaussianRational(s)}}, floor=1)
    half_inv = GaussianRational(1 / (2 * s))
    for j in range(1, 2 - floor):
        qgroups = {k: _group_by_freq(cc) for k, cc in S.comps.items()}
        sq = _product_component(S, S, 2 - j, _DerivCache(S.comps, d), qgroups)
        diff = _add_comp(P2.component(2 - j), sq, sign=-1)
        new = _scale_comp(diff, half_inv)
        comps = dict(S.comps)
        if new:
            comps[1 - j] = new
        S = SymbolExpansion(d, 1, comps, floor=1 - j)
    return S


def _rational_sqrt(c) -> mpq | None:
    import gmpy2

    num, den = c.numerator, c.denominator
    rn, en = gmpy2.iroot(num, 2)
    rd, ed = gmpy2.iroot(den, 2)
    if en and ed:
        return mpq(int(rn), int(rd))
    return None


def symbol_adjoint(P: SymbolExpansion) -> SymbolExpansion:
    """Symbol of the formal adjoint: sum_alpha (1/alpha!) d_xi^alpha D_x^alpha (sigma^P)^*."""
    d = P.dim
    star: dict[int, dict] = {}
    for deg, comp in P.comps.items():
        out: dict = {}
        for (beta, w, f), c in comp.items():
            sign = -1 if (bin(w).count("1") * (bin(w).count("1") - 1) // 2) & 1 else 1
            cc = c.conjugate()
            _add_into(out, (beta, w, tuple(-x for x in f)), cc if sign > 0 else -cc)
        star[deg] = out
    S = SymbolExpansion(d, P.top, star, P.floor)
    groups = {deg: _group_by_freq(comp) for deg, comp in S.comps.items()}
    comps: dict[int, dict] = {}
    low = P.floor if P.floor is not None else 0
    for k in range(P.top, low - 1, -1):
        out: dict = {}
        for i in S.comps:
            r = i - k
            if r < 0 or (P.floor is None and r > i):
                continue
            if r == 0:
                out = _add_comp(out, S.comps[i])
                continue
            for freq in groups[i]:
                # D_x^alpha acts on the same term: weight l^alpha with l its own frequency
                sub = _DerivCache({i: groups[i][freq]}, d).weighted(i, r, freq)
                out = _add_comp(out, sub)
        if out:
            comps[k] = out
    return SymbolExpansion(d, P.top, comps, P.floor)


# ---------------------------------------------------------------------------
# derivatives
# ---------------------------------------------------------------------------


def xi_derivative(S: SymbolExpansion, alpha: Iterable[int]) -> SymbolExpansion:
    """partial_xi^alpha, lowering every degree by |alpha|."""
    alpha = tuple(alpha)
    r = sum(alpha)
    cache = _DerivCache(S.comps, S.dim)
    comps = {deg - r: cache.get(deg, alpha) for deg in S.comps}
    floor = None if S.floor is None else S.floor - r
    top = S.top - r
    if S.floor is None:
        comps = {k: v for k, v in comps.items() if v}
        if any(k < 0 for k in comps):
            raise SymbolError("internal: derivative of a polynomial symbol left a negative degree")
    return SymbolExpansion(S.dim, top, comps, floor)


def x_derivative(S: SymbolExpansion, alpha: Iterable[int]) -> SymbolExpansion:
    """partial_x^alpha: the mode e^{il.x} picks up (i l)^alpha; degrees are kept."""
    alpha = tuple(alpha)
    i_pow = GaussianRational(0, 1) ** sum(alpha)

    def f(_deg, comp):
        out = {}
        for key, c in comp.items():
            w = 1
            for l, a in zip(key[2], alpha):
                w *= l**a
            if w:
                out[key] = c * i_pow * w
        return out

    return S.map_terms(f)


# ---------------------------------------------------------------------------
# classifiers
# ---------------------------------------------------------------------------


def _parity_of(comp: dict, degree: int) -> str:
    if not comp:
        return "0"
    kinds = {(sum(beta) - degree) % 2 for beta, _, _ in comp}
    if kinds == {0}:
        return "E"
    if kinds == {1}:
        return "O"
    return "neither"


def parity_class(S: SymbolExpansion) -> dict[int, str]:
    """Per known degree: 'E' (even norm power), 'O' (odd), '0' (zero, in both) or 'neither'."""
    lo = S.floor if S.floor is not None else min(S.comps, default=0)
    return {deg: _parity_of(S.comps.get(deg, {}), deg) for deg in range(S.top, lo - 1, -1)}


def in_Be(S: SymbolExpansion) -> bool:
    return all(v in ("E", "0") for v in parity_class(S).values())


def in_Bo(S: SymbolExpansion) -> bool:
    return all(v in ("O", "0") for v in parity_class(S).values())


def _reality_of(comp: dict, j: int) -> str:
    if not comp:
        return "0"
    groups: dict[tuple, dict] = {}
    for (beta, w, f), c in comp.items():
        groups.setdefault((beta, w), {})[f] = c
    want_real = j % 2 == 0
    for coeffs in groups.values():
        for f, c in coeffs.items():
            partner = coeffs.get(tuple(-x for x in f), ZERO).conjugate()
            if want_real and c != partner:
                return "no"
            if not want_real and c != -partner:
                return "no"
    return "I_e" if want_real else "I_o"


def reality_class(S: SymbolExpansion) -> dict[int, str]:
    """Per known degree top - j: 'I_e' (j even, real), 'I_o' (j odd, imaginary), '0' or 'no'."""
    lo = S.floor if S.floor is not None else min(S.comps, default=0)
    return {deg: _reality_of(S.comps.get(deg, {}), S.top - deg) for deg in range(S.top, lo - 1, -1)}


def in_C(S: SymbolExpansion) -> bool:
    return all(v != "no" for v in reality_class(S).values())


# ---------------------------------------------------------------------------
# random test data
# ---------------------------------------------------------------------------


def random_symbol(
    dim: int,
    rng: random.Random,
    top: int,
    floor: int,
    terms: int = 2,
    max_beta: int = 2,
    max_freq: int = 1,
    words: Sequence[int] | None = None,
    freqs: Sequence[tuple] | None = None,
) -> SymbolExpansion:
    """Random classical symbol with ``terms`` monomials in every degree top..floor.

    ``words`` and ``freqs`` restrict the Clifford words (bitmasks) and the
    Fourier modes that may occur.
    """
    out = []
    for deg in range(top, floor - 1, -1):
        for _ in range(terms):
            beta = tuple(rng.randint(0, max_beta) for _ in range(dim))
            word = rng.choice(words) if words else rng.randrange(1 << dim)
            if freqs:
                freq = tuple(rng.choice(freqs))
            else:
                freq = tuple(rng.randint(-max_freq, max_freq) for _ in range(dim))
            re = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            im = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            out.append(HomoTerm(beta, sum(beta) - deg, word, freq, GaussianRational(re, im)))
    return SymbolExpansion.from_terms(dim, out, floor=floor, top=top)
