from __future__ import annotations

import cmath
import math

from hypothesis import given, settings
from hypothesis import strategies as st

from wodzicki.coefficients import ExactScalar, GaussianRational, TensorPoly, TrigPoly

from conftest import trig_value

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gr = st.builds(GaussianRational, small, small)
exact = st.dictionaries(st.integers(-4, 6), gr, max_size=3).map(ExactScalar)


@st.composite
def trig(draw, dim=2):
    freqs = st.tuples(*[st.integers(-2, 2)] * dim)
    return TrigPoly(dim, draw(st.dictionaries(freqs, gr, max_size=4)))


# ---------------------------------------------------------------------------
# GaussianRational / ExactScalar
# ---------------------------------------------------------------------------


def test_examples():
    pi = ExactScalar.pi_power(2)
    assert pi * pi == ExactScalar.pi_power(4)
    half = ExactScalar.pi_power(1, GaussianRational("2/3"))
    assert (half + (-half)).is_zero()
    assert GaussianRational(1, 1) * GaussianRational(1, -1) == GaussianRational(2)


def test_gaussian_str_has_clean_sign():
    assert str(GaussianRational("1/2", "-2/3")) == "(1/2-2/3*i)"


@given(gr, gr, gr)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a * b).conjugate() == a.conjugate() * b.conjugate()
    if b:
        assert (a / b) * b == a


@given(exact, exact, exact)
def test_exact_scalar_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a + b == b + a
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()
    assert a * 1 == a


@given(exact, exact)
def test_exact_scalar_float_is_homomorphism(a, b):
    assert cmath.isclose(complex(a * b), complex(a) * complex(b), rel_tol=1e-9, abs_tol=1e-9)


@given(exact)
def test_exact_scalar_conjugation_and_reality(a):
    assert (a * a.conjugate()).is_real()
    assert (a + a.conjugate()).is_real()
    assert a.real_part() + a.imag_part() * GaussianRational(0, 1) == a


@given(st.integers(-6, 6), gr)
def test_no_zero_divisors_on_monomials(m, c):
    x = ExactScalar.pi_power(m, c)
    y = ExactScalar.pi_power(3, GaussianRational(2, -1))
    assert (x * y).is_zero() == (not c)


@given(exact)
def test_exact_scalar_json_round_trip(a):
    assert ExactScalar.from_json(a.to_json()) == a


# ---------------------------------------------------------------------------
# TrigPoly
# ---------------------------------------------------------------------------


def test_trig_integral_examples():
    assert TrigPoly.constant(2).integral() == ExactScalar.pi_power(4, 4)
    assert TrigPoly.mode((1, 0)).integral().is_zero()
    prod = TrigPoly.mode((1, 0, 0, 0)) * TrigPoly.mode((-1, 0, 0, 0))
    assert prod.integral() == ExactScalar.pi_power(8, 16)


@given(trig(), trig(), trig())
def test_trig_ring(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h


@given(trig(), trig(), st.integers(0, 1))
def test_trig_leibniz(f, g, k):
    assert (f * g).derivative(k) == f.derivative(k) * g + f * g.derivative(k)


@given(trig())
def test_trig_conjugate_products_are_real(f):
    assert (f * f.conjugate()).is_real()
    assert (f + f.conjugate()).is_real()
    assert (f - f.conjugate()).is_imaginary()


@given(trig(), trig())
@settings(max_examples=30)
def test_trig_pointwise_evaluation(f, g):
    x = (0.3, -1.1)
    assert cmath.isclose(trig_value(f * g, x), trig_value(f, x) * trig_value(g, x), abs_tol=1e-9)
    assert cmath.isclose(f(x), trig_value(f, x), abs_tol=1e-9)


@given(trig())
def test_trig_json_round_trip(f):
    assert TrigPoly.from_json(2, f.to_json()) == f


@given(trig())
def test_trig_integral_is_volume_times_mean(f):
    c0 = f.coeffs.get((0, 0), GaussianRational(0))
    assert f.integral() == ExactScalar.pi_power(4, 4) * c0
    assert math.isclose(abs(complex(f.integral())), 4 * math.pi**2 * abs(complex(c0)), abs_tol=1e-9)


# ---------------------------------------------------------------------------
# TensorPoly
# ---------------------------------------------------------------------------


def test_tensor_symmetries():
    assert TensorPoly.var("F", 2, 1) == -TensorPoly.var("F", 1, 2)
    assert TensorPoly.var("F", 3, 3).is_zero()
    assert TensorPoly.var("L", 2, 1) == TensorPoly.var("L", 1, 2)
    assert TensorPoly.var("R", 1, 2, 3, 4) == TensorPoly.var("R", 3, 4, 1, 2)
    assert TensorPoly.var("R", 2, 1, 3, 4) == -TensorPoly.var("R", 1, 2, 3, 4)
    assert TensorPoly.var("Gamma", 1, 3, 2) == -TensorPoly.var("Gamma", 1, 2, 3)


names = st.sampled_from([("a", 1), ("a", 2), ("F", 1, 2), ("F", 2, 3), ("L", 1, 1), ("E",)])


@st.composite
def tpoly(draw):
    out = TensorPoly()
    for _ in range(draw(st.integers(0, 3))):
        mono = TensorPoly.constant(draw(gr))
        for _ in range(draw(st.integers(0, 2))):
            name, *idx = draw(names)
            mono = mono * TensorPoly.var(name, *idx)
        out = out + mono
    return out


@given(tpoly(), tpoly(), tpoly())
@settings(max_examples=50)
def test_tensor_ring(p, q, r):
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert (p - p).is_zero()


@given(tpoly(), tpoly(), st.integers(1, 4))
@settings(max_examples=50)
def test_tensor_leibniz(p, q, k):
    assert (p * q).derivative(k) == p.derivative(k) * q + p * q.derivative(k)


@given(tpoly())
@settings(max_examples=50)
def test_tensor_normalize_idempotent(p):
    assert p.normalize() == p.normalize().normalize()
    assert p.normalize() == p


@given(tpoly())
@settings(max_examples=50)
def test_tensor_degree_split(p):
    parts = sum((p.part_of_degree(["a", "F"], k) for k in range(0, 5)), TensorPoly())
    assert parts == p
