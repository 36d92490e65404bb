from __future__ import annotations

import pytest

from wodzicki.coefficients import GaussianRational, TrigPoly
from wodzicki.psido import (
    OperatorSpec,
    SpecError,
    abs_power,
    chirality,
    composite,
    dirac,
    exact_oneform,
    multiplication,
    oneform,
    power,
    random_oneform,
    realize,
)
from wodzicki.symbols import FloorError, SymbolExpansion, in_Be, in_Bo, in_C, symbol_product

I = GaussianRational(0, 1)


def test_dirac_symbol_d2():
    S = realize(dirac(2))
    want = SymbolExpansion.from_terms(2, [((1, 0), 0, 1, (0, 0), 1), ((0, 1), 0, 2, (0, 0), 1)])
    assert S == want
    assert S.is_exact


def test_oneform_symbol():
    # a = (-i sin x1, 0) = (-(e^{ix1} - e^{-ix1})/2, 0)
    a1 = TrigPoly(2, {(1, 0): GaussianRational("-1/2"), (-1, 0): GaussianRational("1/2")})
    A = oneform([a1, TrigPoly(2)])
    assert A.is_selfadjoint()
    S = realize(A)
    want = SymbolExpansion.from_terms(
        2, [((0, 0), 0, 1, f, c * (-I)) for f, c in a1.coeffs.items()]
    )
    assert S == want


def test_selfadjoint_oneform_convention():
    a1 = TrigPoly(2, {(1, 0): GaussianRational("1/2"), (-1, 0): GaussianRational("1/2")}) * I
    A = oneform([a1, TrigPoly(2)])
    assert A.is_selfadjoint()
    for seed in range(5):
        assert random_oneform(3, seed).is_selfadjoint()


@pytest.mark.parametrize("d", [2, 3, 4])
def test_abs_power_leading_term(d):
    S = realize(abs_power(d, -d), -d - 2)
    assert S.top == -d
    assert S.component(-d) == {((0,) * d, 0, (0,) * d): GaussianRational(1)}
    for deg in range(-d - 1, -d - 3, -1):
        assert not S.component(deg)


@pytest.mark.parametrize("k", range(-4, 5))
def test_dirac_powers_even_parity_and_c_class(k):
    d = 2
    assert in_Be(realize(power(dirac(d), k), k - 4))
    assert in_C(realize(power(dirac(d), k), k - 4))
    # parity survives a perturbation
    assert in_Be(realize(power(dirac(d, random_oneform(d, seed=11)), k), k - 4))


@pytest.mark.parametrize("k", [-3, -1, 1, 3])
def test_odd_abs_powers(k):
    d = 2
    assert in_Bo(realize(abs_power(d, k), k - 4))
    assert in_C(realize(abs_power(d, k), k - 4))
    assert in_Bo(realize(abs_power(d, k, random_oneform(d, seed=4)), k - 4))


@pytest.mark.parametrize("k", [-4, -2, 2])
def test_even_abs_powers(k):
    d = 2
    assert in_Be(realize(abs_power(d, k), k - 4))
    assert in_C(realize(abs_power(d, k), k - 4))
    assert in_Be(realize(abs_power(d, k, random_oneform(d, seed=2)), k - 4))


def test_perturbed_dirac_leaves_c_class():
    # sigma_0 = -i gamma^k a_k is real for imaginary a_k, but C wants it imaginary
    d = 2
    assert not in_C(realize(dirac(d, random_oneform(d, seed=1))))


def test_composition_consistency():
    d = 2
    A = random_oneform(d, seed=7)
    f = multiplication(TrigPoly(d, {(1, -1): 2, (0, 1): I}))
    P, Q = power(dirac(d, A), -1), abs_power(d, -1, A)
    for floor in (-4, -5):
        lhs = realize(composite([P, f, Q]), floor)
        rhs = symbol_product(symbol_product(realize(P, floor + 1), realize(f)), realize(Q, floor + 1))
        assert lhs.agrees_with(rhs, floor=floor)


def test_sqrt_route_equals_power_route():
    d = 2
    A = random_oneform(d, seed=9)
    lhs = realize(abs_power(d, 2, A))
    rhs = realize(power(dirac(d, A), 2))
    assert lhs == rhs
    a = realize(abs_power(d, 1, A), -4)
    assert symbol_product(a, a).agrees_with(rhs)


def test_exact_oneform():
    d = 2
    a = TrigPoly(d, {(1, 0): 1})
    b = TrigPoly(d, {(0, 1): 1, (-1, 0): 2})
    A = exact_oneform([(a, b)])
    # a[D, b] = -i gamma^k a d_k b
    comm = symbol_product(realize(dirac(d)), realize(multiplication(b))) - symbol_product(
        realize(multiplication(b)), realize(dirac(d))
    )
    assert symbol_product(realize(multiplication(a)), comm) == realize(A)


def test_chirality_symbol():
    S = realize(chirality(2))
    assert S.component(0) == {((0, 0), 3, (0, 0)): GaussianRational(0, -1)}
    with pytest.raises(SpecError):
        chirality(3)


def test_spec_errors_and_json():
    with pytest.raises(SpecError):
        OperatorSpec(2, "nonsense")
    with pytest.raises(SpecError):
        oneform([])
    with pytest.raises(SpecError):
        dirac(2, random_oneform(3, 0))
    with pytest.raises(SpecError):
        realize(power(multiplication(TrigPoly.constant(2)), -1))
    with pytest.raises(FloorError):
        realize(power(dirac(2), -2), -40)
    spec = composite([random_oneform(2, 3), abs_power(2, -3, random_oneform(2, 1)), chirality(2)])
    again = OperatorSpec.from_json(spec.to_json())
    assert realize(again, -3) == realize(spec, -3)
