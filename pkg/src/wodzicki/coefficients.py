"""Exact scalar rings used throughout the package.

Four value types live here:

``GaussianRational``
    p + i q with p, q rational (backed by ``gmpy2.mpq``).
``ExactScalar``
    finite sums  sum_m q_m * pi^(m/2)  with Gaussian-rational q_m.  Every
    residue and every torus/sphere volume we meet has this shape.
``TrigPoly``
    trigonometric polynomials on the torus T^d, i.e. finitely supported
    Fourier series  sum_l c_l exp(i l.x).
``TensorPoly``
    commutative polynomials in indexed indeterminates (a_mu, F_{mu nu},
    R_{ijkl}, ...) whose index symmetries are applied when a variable is
    created, so that equal tensors collapse to the same monomial.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Mapping

from gmpy2 import mpq

_MPQ = type(mpq(0))

__all__ = [
    "GaussianRational",
    "ExactScalar",
    "TrigPoly",
    "TensorPoly",
    "Var",
    "as_gr",
    "register_symmetry",
]


def _to_mpq(value) -> mpq:
    if isinstance(value, str):
        return mpq(value.strip())
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def _fmt(q: mpq) -> str:
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Exact complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _to_mpq(re)
        self.im = _to_mpq(im)

    @staticmethod
    def _raw(re: mpq, im: mpq) -> "GaussianRational":
        obj = object.__new__(GaussianRational)
        obj.re = re
        obj.im = im
        return obj

    # -- ring structure -------------------------------------------------
    def __add__(self, other):
        other = as_gr(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = as_gr(other)
        if other is NotImplemented:
            return NotImplemented
        return GaussianRational._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return as_gr(other) - self

    def __mul__(self, other):
        if type(other) is GaussianRational:
            a, b, c, d = self.re, self.im, other.re, other.im
            return GaussianRational._raw(a * c - b * d, a * d + b * c)
        if isinstance(other, (int, Fraction)) or type(other) is _MPQ:
            q = _to_mpq(other)
            return GaussianRational._raw(self.re * q, self.im * q)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return GaussianRational._raw(-self.re, -self.im)

    def __truediv__(self, other):
        other = as_gr(other)
        if other is NotImplemented:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero Gaussian rational")
        n = other.re * other.re + other.im * other.im
        return self * GaussianRational._raw(other.re / n, -other.im / n)

    def __rtruediv__(self, other):
        return as_gr(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GaussianRational(1) / (self ** (-k))
        out = GaussianRational._raw(mpq(1), mpq(0))
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "GaussianRational":
        return GaussianRational._raw(self.re, -self.im)

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __eq__(self, other) -> bool:
        other = as_gr(other)
        if other is NotImplemented:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        return hash((self.re, self.im))

    def is_real(self) -> bool:
        return not self.im

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        if not self.im:
            return f"GR({self.re})"
        return f"GR({self.re}, {self.im})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}*i"
        sign = "-" if self.im < 0 else "+"
        return f"({self.re}{sign}{abs(self.im)}*i)"

    def to_json(self) -> dict:
        return {"re": _fmt(self.re), "im": _fmt(self.im)}

    @classmethod
    def from_json(cls, data: Mapping) -> "GaussianRational":
        return cls(data.get("re", "0"), data.get("im", "0"))


ZERO = GaussianRational._raw(mpq(0), mpq(0))
ONE = GaussianRational._raw(mpq(1), mpq(0))
I = GaussianRational._raw(mpq(0), mpq(1))


def as_gr(value):
    """Promote ints, fractions and mpq to ``GaussianRational``."""
    if type(value) is GaussianRational:
        return value
    if isinstance(value, (int, Fraction, str)) or type(value) is _MPQ:
        return GaussianRational(value)
    if isinstance(value, complex):
        # only exact small values are allowed through this door
        re, im = Fraction(value.real), Fraction(value.imag)
        return GaussianRational(re, im)
    return NotImplemented


# ---------------------------------------------------------------------------
# pi-graded scalars
# ---------------------------------------------------------------------------


class ExactScalar:
    """Sum of Gaussian rationals times half-integer powers of pi.

    The key ``m`` of ``terms`` stands for pi**(m/2).  Zero entries are never
    stored, so the zero scalar has an empty map.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, object] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            c = as_gr(c)
            if c:
                clean[int(m)] = c
        self.terms = clean

    @classmethod
    def rational(cls, value, pi_half: int = 0) -> "ExactScalar":
        return cls({pi_half: as_gr(value)})

    @classmethod
    def pi_power(cls, pi_half: int, coeff=1) -> "ExactScalar":
        """``coeff * pi**(pi_half/2)``."""
        return cls({pi_half: as_gr(coeff)})

    @staticmethod
    def _coerce(other):
        if isinstance(other, ExactScalar):
            return other
        gr = as_gr(other)
        if gr is NotImplemented:
            return NotImplemented
        return ExactScalar({0: gr})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, ZERO) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        res = ExactScalar()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = ExactScalar()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[int, GaussianRational] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 + m2
                s = out.get(m, ZERO) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        res = ExactScalar()
        res.terms = out
        return res

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def inverse(self) -> "ExactScalar":
        """Inverse of a single-term scalar (pi-monomials are the only units)."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only pi-monomial scalars are invertible")
        ((m, c),) = self.terms.items()
        return ExactScalar({-m: ONE / c})

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = ExactScalar.rational(1)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "ExactScalar":
        res = ExactScalar()
        res.terms = {m: c.conjugate() for m, c in self.terms.items()}
        return res

    def real_part(self) -> "ExactScalar":
        return ExactScalar({m: GaussianRational._raw(c.re, mpq(0)) for m, c in self.terms.items()})

    def imag_part(self) -> "ExactScalar":
        return ExactScalar({m: GaussianRational._raw(c.im, mpq(0)) for m, c in self.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __complex__(self) -> complex:
        total = 0j
        for m, c in self.terms.items():
            total += complex(c) * math.pi ** (m / 2)
        return total

    def to_float(self) -> float:
        """Real float value; raises if the scalar has an imaginary part."""
        if not self.is_real():
            raise ValueError(f"{self} is not real")
        return complex(self).real

    def __repr__(self) -> str:
        return f"ExactScalar({self})"

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            if m == 0:
                parts.append(str(c))
            elif m % 2 == 0:
                parts.append(f"{c}*pi^{m // 2}")
            else:
                parts.append(f"{c}*pi^({m}/2)")
        return " + ".join(parts)

    def to_json(self) -> dict:
        return {
            "terms": [
                {"pi_half": m, "re": _fmt(self.terms[m].re), "im": _fmt(self.terms[m].im)}
                for m in sorted(self.terms)
            ]
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "ExactScalar":
        return cls({int(t["pi_half"]): GaussianRational(t["re"], t["im"]) for t in data["terms"]})


# ---------------------------------------------------------------------------
# trigonometric polynomials on T^d
# ---------------------------------------------------------------------------


def _vadd(a: tuple, b: tuple) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def _vneg(a: tuple) -> tuple:
    return tuple(-x for x in a)


class TrigPoly:
    """Finite Fourier series on the d-torus [0, 2pi)^d."""

    __slots__ = ("dim", "coeffs")

    def __init__(self, dim: int, coeffs: Mapping[Iterable[int], object] | None = None):
        self.dim = int(dim)
        clean: dict[tuple, GaussianRational] = {}
        for freq, c in (coeffs or {}).items():
            freq = tuple(int(k) for k in freq)
            if len(freq) != self.dim:
                raise ValueError(f"frequency {freq} does not live in Z^{self.dim}")
            c = as_gr(c)
            s = clean.get(freq, ZERO) + c
            if s:
                clean[freq] = s
            else:
                clean.pop(freq, None)
        self.coeffs = clean

    @classmethod
    def constant(cls, dim: int, value=1) -> "TrigPoly":
        return cls(dim, {(0,) * dim: value})

    @classmethod
    def mode(cls, freq: Iterable[int], value=1) -> "TrigPoly":
        freq = tuple(freq)
        return cls(len(freq), {freq: value})

    def _check(self, other: "TrigPoly") -> None:
        if other.dim != self.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def _coerce(self, other):
        if isinstance(other, TrigPoly):
            self._check(other)
            return other
        gr = as_gr(other)
        if gr is NotImplemented:
            return NotImplemented
        return TrigPoly.constant(self.dim, gr)

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.coeffs)
        for f, c in other.coeffs.items():
            s = out.get(f, ZERO) + c
            if s:
                out[f] = s
            else:
                out.pop(f, None)
        res = TrigPoly(self.dim)
        res.coeffs = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = TrigPoly(self.dim)
        res.coeffs = {f: -c for f, c in self.coeffs.items()}
        return res

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple, GaussianRational] = {}
        for f1, c1 in self.coeffs.items():
            for f2, c2 in other.coeffs.items():
                f = _vadd(f1, f2)
                s = out.get(f, ZERO) + c1 * c2
                if s:
                    out[f] = s
                else:
                    out.pop(f, None)
        res = TrigPoly(self.dim)
        res.coeffs = out
        return res

    __rmul__ = __mul__

    def derivative(self, k: int) -> "TrigPoly":
        """d/dx^k (0-based k): maps c_l to i l_k c_l."""
        res = TrigPoly(self.dim)
        res.coeffs = {f: c * GaussianRational._raw(mpq(0), mpq(f[k])) for f, c in self.coeffs.items() if f[k]}
        return res

    def conjugate(self) -> "TrigPoly":
        """Pointwise complex conjugate: c_l -> conj(c_{-l})."""
        res = TrigPoly(self.dim)
        res.coeffs = {_vneg(f): c.conjugate() for f, c in self.coeffs.items()}
        return res

    def is_real(self) -> bool:
        """True iff the function takes real values (c_{-l} = conj(c_l))."""
        return self == self.conjugate()

    def is_imaginary(self) -> bool:
        return self == -self.conjugate()

    # "selfadjoint" as a multiplication operator means real-valued
    is_selfadjoint = is_real

    def integral(self) -> ExactScalar:
        """Integral over [0, 2pi)^d: (2pi)^d times the mean value."""
        c0 = self.coeffs.get((0,) * self.dim)
        if c0 is None:
            return ExactScalar()
        return ExactScalar({2 * self.dim: c0 * (2 ** self.dim)})

    def mean(self) -> GaussianRational:
        return self.coeffs.get((0,) * self.dim, ZERO)

    def __call__(self, x: Iterable[float]) -> complex:
        x = tuple(x)
        total = 0j
        for f, c in self.coeffs.items():
            phase = sum(k * xi for k, xi in zip(f, x))
            total += complex(c) * complex(math.cos(phase), math.sin(phase))
        return total

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, TrigPoly):
            return self.dim == other.dim and self.coeffs == other.coeffs
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*e^(i{list(f)}.x)" for f, c in sorted(self.coeffs.items()))
        return f"TrigPoly[{self.dim}]({body or '0'})"

    def to_json(self) -> list:
        return [{"freq": list(f), **self.coeffs[f].to_json()} for f in sorted(self.coeffs)]

    @classmethod
    def from_json(cls, dim: int, data: Iterable[Mapping]) -> "TrigPoly":
        return cls(dim, {tuple(e["freq"]): GaussianRational(e.get("re", "0"), e.get("im", "0")) for e in data})


# ---------------------------------------------------------------------------
# tensor indeterminates
# ---------------------------------------------------------------------------

# A variable is (name, indices, derivative directions).
Var = tuple

_SYMMETRIES: dict[str, Callable[[tuple], tuple[int, tuple]]] = {}


def register_symmetry(name: str, normalizer: Callable[[tuple], tuple[int, tuple]]) -> None:
    """Declare the index symmetry of the tensor ``name``.

    ``normalizer(indices)`` returns ``(sign, canonical_indices)``; sign 0 means
    the component vanishes identically.
    """
    _SYMMETRIES[name] = normalizer


def _antisym2(idx: tuple) -> tuple[int, tuple]:
    i, j = idx
    if i == j:
        return 0, idx
    return (1, (i, j)) if i < j else (-1, (j, i))


def _sym2(idx: tuple) -> tuple[int, tuple]:
    i, j = idx
    return 1, (min(i, j), max(i, j))


def _riemann(idx: tuple) -> tuple[int, tuple]:
    i, j, k, l = idx
    s1, p = _antisym2((i, j))
    s2, q = _antisym2((k, l))
    if not s1 or not s2:
        return 0, idx
    sign = s1 * s2
    if q < p:
        p, q = q, p
    return sign, p + q


def _christoffel(idx: tuple) -> tuple[int, tuple]:
    # Gamma^j_{a k} in an orthonormal frame: antisymmetric in (j, k)
    a, j, k = idx
    s, (j2, k2) = _antisym2((j, k))
    return s, (a, j2, k2)


register_symmetry("F", _antisym2)
register_symmetry("R", _riemann)
register_symmetry("L", _sym2)
register_symmetry("Gamma", _christoffel)


def _make_var(name: str, idx: tuple, deriv: tuple) -> tuple[int, Var]:
    norm = _SYMMETRIES.get(name)
    sign = 1
    if norm is not None:
        sign, idx = norm(tuple(idx))
    return sign, (name, tuple(idx), tuple(deriv))


def _var_str(v: Var) -> str:
    name, idx, deriv = v
    s = name
    if idx:
        s += "_" + "".join(str(i) for i in idx)
    if deriv:
        s += ";" + "".join(str(i) for i in deriv)
    return s


def _mono_mul(m1: tuple, m2: tuple) -> tuple:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


class TensorPoly:
    """Commutative polynomial with ``ExactScalar`` coefficients.

    Monomials are sorted tuples of ``(variable, exponent)``.  Variables are
    normalized at construction time, so e.g. ``F_21`` becomes ``-F_12`` and
    ``F_11`` becomes 0.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, object] | None = None):
        clean: dict[tuple, ExactScalar] = {}
        for mono, c in (terms or {}).items():
            c = ExactScalar._coerce(c)
            if c:
                clean[mono] = clean.get(mono, ExactScalar()) + c
                if not clean[mono]:
                    del clean[mono]
        self.terms = clean

    @classmethod
    def var(cls, name: str, *idx: int, deriv: tuple = ()) -> "TensorPoly":
        sign, v = _make_var(name, idx, deriv)
        if sign == 0:
            return cls()
        return cls({((v, 1),): ExactScalar.rational(sign)})

    @classmethod
    def constant(cls, value) -> "TensorPoly":
        return cls({(): value})

    @staticmethod
    def _coerce(other):
        if isinstance(other, TensorPoly):
            return other
        c = ExactScalar._coerce(other)
        if c is NotImplemented:
            return NotImplemented
        return TensorPoly({(): c})

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out[m] + c if m in out else c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        res = TensorPoly()
        res.terms = out
        return res

    __radd__ = __add__

    def __neg__(self):
        res = TensorPoly()
        res.terms = {m: -c for m, c in self.terms.items()}
        return res

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple, ExactScalar] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                s = out[m] + c1 * c2 if m in out else c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        res = TensorPoly()
        res.terms = out
        return res

    __rmul__ = __mul__

    def conjugate(self) -> "TensorPoly":
        # indeterminates are treated as real
        res = TensorPoly()
        res.terms = {m: c.conjugate() for m, c in self.terms.items()}
        return res

    def normalize(self) -> "TensorPoly":
        """Re-apply variable symmetries and merge equal monomials."""
        out = TensorPoly()
        for mono, c in self.terms.items():
            term = TensorPoly.constant(c)
            for (name, idx, deriv), e in mono:
                term = term * TensorPoly.var(name, *idx, deriv=deriv) ** e
            out = out + term
        return out

    def __pow__(self, k: int):
        out = TensorPoly.constant(1)
        for _ in range(k):
            out = out * self
        return out

    def variables(self) -> set:
        return {v for mono in self.terms for v, _ in mono}

    def names(self) -> set[str]:
        return {v[0] for v in self.variables()}

    def degree_in(self, names: Iterable[str]) -> set[int]:
        """Set of total degrees, over the listed tensor names, of the monomials."""
        names = set(names)
        return {sum(e for v, e in mono if v[0] in names) for mono in self.terms}

    def part_of_degree(self, names: Iterable[str], degree: int) -> "TensorPoly":
        names = set(names)
        res = TensorPoly()
        res.terms = {
            m: c for m, c in self.terms.items() if sum(e for v, e in m if v[0] in names) == degree
        }
        return res

    def derivative(self, direction: int) -> "TensorPoly":
        """Formal derivation: each variable v maps to v;direction."""
        out = TensorPoly()
        for mono, c in self.terms.items():
            for pos, (v, e) in enumerate(mono):
                rest = tuple(x for q, x in enumerate(mono) if q != pos)
                if e > 1:
                    rest = _mono_mul(rest, ((v, e - 1),))
                name, idx, deriv = v
                dv = (name, idx, deriv + (direction,))
                out = out + TensorPoly({_mono_mul(rest, ((dv, 1),)): c * e})
        return out

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[tuple, ExactScalar]]:
        return iter(sorted(self.terms.items(), key=lambda kv: repr(kv[0])))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self:
            vs = "*".join(_var_str(v) + (f"^{e}" if e > 1 else "") for v, e in mono)
            parts.append(f"({c})" + (f"*{vs}" if vs else ""))
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self) -> list:
        return [
            {
                "monomial": [{"var": _var_str(v), "exp": e} for v, e in mono],
                "coeff": c.to_json(),
            }
            for mono, c in self
        ]
