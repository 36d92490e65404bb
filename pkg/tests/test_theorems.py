from __future__ import annotations

import json

import pytest

from wodzicki.coefficients import ExactScalar, GaussianRational, TrigPoly
from wodzicki.psido import (
    SpecError,
    abs_power,
    composite,
    dirac,
    exact_oneform,
    multiplication,
    oneform,
    power,
    random_oneform,
)
from wodzicki.theorems import (
    alpha_trace_identity,
    dim2_square_formula,
    einstein_hilbert_invariance,
    engine_consistency,
    fourier_quadratic_form,
    gamma_contraction_identity,
    ncint_of,
    ncint_power,
    parity_reality_suite,
    tadpole,
    zeta0_difference,
)

I = GaussianRational(0, 1)
EIGHT_PI2_THIRDS = ExactScalar.pi_power(4, GaussianRational(8) / 3)


def field_strength_square(A) -> ExactScalar:
    """int sum_{mu, nu} F_{mu nu}^2 with F_{mu nu} = d_mu a_nu - d_nu a_mu."""
    a = A.components
    d = len(a)
    acc = TrigPoly(d)
    for m in range(d):
        for n in range(d):
            F = a[n].derivative(m) - a[m].derivative(n)
            acc = acc + F * F
    return acc.integral()


def single_mode(d, l, pol, amp=GaussianRational(1)):
    """a_k = pol_k (amp e^{il.x} - conj(amp) e^{-il.x}): purely imaginary valued."""
    neg = tuple(-x for x in l)
    comps = [TrigPoly(d, {l: amp * p, neg: -amp.conjugate() * p}) for p in pol]
    return oneform(comps)


# ---------------------------------------------------------------------------
# tadpoles
# ---------------------------------------------------------------------------


def test_tadpole_of_zero_form():
    A = oneform([TrigPoly(2), TrigPoly(2)])
    for k in (0, 1, 2):
        assert tadpole(A, k).is_zero()


@pytest.mark.parametrize("d", [2, 3, 4])
@pytest.mark.parametrize("seed", [0, 1])
def test_tadpoles_vanish(d, seed):
    A = random_oneform(d, seed)
    for k in sorted({0, d - 2, d - 1, d}):
        assert tadpole(A, k).is_zero()


def test_tadpole_is_linear_and_rejects_bad_input():
    d = 2
    A1, A2 = random_oneform(d, 1), random_oneform(d, 2)
    for k in (0, 1, 2):
        assert tadpole(A1 + A2, k).value == tadpole(A1, k).value + tadpole(A2, k).value
    real = oneform([TrigPoly(d, {(1, 0): 1, (-1, 0): 1}), TrigPoly(d)])
    with pytest.raises(SpecError):
        tadpole(real, 0)
    with pytest.raises(ValueError):
        tadpole(A1, 3)


def test_ungraded_tadpole_pieces_are_nonzero():
    # the vanishing is not vacuous: int A D |D|^-k-2 without the gamma trace is not identically 0
    d = 2
    A = random_oneform(d, 3)
    val = ncint_of(composite([multiplication(TrigPoly(d, {(0, 0): 1})), abs_power(d, -2)])).value
    assert not val.is_zero()
    assert tadpole(A, 2).is_zero()


# ---------------------------------------------------------------------------
# powers of A D^-1
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("d", [2, 3, 4])
def test_first_power_vanishes(d):
    assert ncint_power(random_oneform(d, 5), 1).is_zero()


def test_third_power_vanishes_d2():
    for seed in range(3):
        assert ncint_power(random_oneform(2, seed), 3).is_zero()


def test_second_power_closed_form_d4():
    for A in [
        single_mode(4, (1, 0, 0, 0), (0, 1, 0, 0)),
        single_mode(4, (1, 2, 0, 0), (1, 0, 2, 0), GaussianRational(1, 2)),
        random_oneform(4, 0),
    ]:
        q = ncint_power(A, 2).value
        assert q == EIGHT_PI2_THIRDS * fourier_quadratic_form(A)
        assert q.is_real()


def test_zeta0_difference_matches_heat_coefficient():
    """zeta(0) shift equals the A^2 heat coefficient -(1/(6 (2 pi)^2)) int F^2 at d = 4."""
    for A in [single_mode(4, (0, 1, 0, 0), (1, 0, 0, 0)), random_oneform(4, 0)]:
        want = field_strength_square(A) * ExactScalar.pi_power(-4, GaussianRational(-1, 0) / 24)
        z = zeta0_difference(A).value
        assert z == want
        # which is half of int (A D^-1)^2, because int (A D^-1)^4 = 0
        assert z == ncint_power(A, 2).value * GaussianRational("1/2")


def test_zeta0_frozen_value():
    A = random_oneform(4, 0)
    assert zeta0_difference(A).value == ExactScalar.pi_power(4, GaussianRational(6430) / 27)


def test_zeta0_low_dimensions():
    assert zeta0_difference(random_oneform(3, 2)).is_zero()
    for seed in range(3):
        assert zeta0_difference(random_oneform(2, seed)).is_zero()


def test_ncint_power_rejects_zero():
    with pytest.raises(ValueError):
        ncint_power(random_oneform(2, 0), 0)


# ---------------------------------------------------------------------------
# alpha(b) = D b D^-1
# ---------------------------------------------------------------------------


def test_alpha_identity_k1():
    d = 2
    for seed in range(3):
        A = random_oneform(d, seed)
        a, b = A.components
        assert alpha_trace_identity([a], [b]).passed
    assert alpha_trace_identity([TrigPoly(d, {(1, 0): 1})], [TrigPoly.constant(d)]).passed


def test_alpha_identity_k2_disjoint_spectra():
    m = TrigPoly.mode
    rep = alpha_trace_identity([m((1, 0, 0, 0)), m((0, 0, 1, 0))], [m((0, 1, 0, 0)), m((1, 0, 0, 0))])
    assert rep.passed


@pytest.mark.parametrize(
    "modes",
    [
        ((1, 0, 0, 0), (0, 1, 0, 0), (-1, 0, 0, 0), (0, -1, 0, 0)),
        ((0, 0, 1, 0), (0, 1, 0, 0), (0, -1, 0, 0), (0, 0, -1, 0)),
    ],
)
def test_alpha_identity_k2_defect_is_quadratic_form(modes):
    """lhs - rhs = int A1 D^-1 A2 D^-1 with A_j = a_j [D, b_j], the polarized quadratic form."""
    m = TrigPoly.mode
    a1, b1, a2, b2 = (m(x) for x in modes)
    rep = alpha_trace_identity([a1, a2], [b1, b2])
    defect = rep.values["lhs"] - rep.values["rhs"]
    A1, A2 = exact_oneform([(a1, b1)]), exact_oneform([(a2, b2)])
    Dinv = power(dirac(4), -1)
    assert defect == ncint_of(composite([A1, Dinv, A2, Dinv])).value
    s = GaussianRational(0)
    for x in range(4):
        for y in range(4):
            for l, c in A1.components[x].coeffs.items():
                c2 = A2.components[y].coeffs.get(tuple(-q for q in l))
                if c2 is not None:
                    s = s + c * c2 * (l[x] * l[y] - (sum(q * q for q in l) if x == y else 0))
    assert defect == EIGHT_PI2_THIRDS * s
    assert not defect.is_zero()
    assert not rep.passed


# ---------------------------------------------------------------------------
# Einstein-Hilbert, dimension 2, gamma identity
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("d", [2, 4, 6, 8])
def test_gamma_contraction(d):
    assert gamma_contraction_identity(d).passed


def test_einstein_hilbert_d4():
    for A in [oneform([TrigPoly(4)] * 4), random_oneform(4, 0), random_oneform(4, 1)]:
        rep = einstein_hilbert_invariance(A)
        assert rep.passed
        assert rep.values["perturbed"].is_zero()


def test_dim2_square_formula():
    for seed in range(4):
        A = random_oneform(2, seed)
        rep = dim2_square_formula(A)
        assert rep.passed
        assert ncint_power(A, 2).is_zero()
    single = single_mode(2, (1, 0), (0, 1))
    rep = dim2_square_formula(single)
    assert rep.passed and not rep.values["lhs"].is_zero()


# ---------------------------------------------------------------------------
# parity and reality
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("d", [2, 3])
def test_parity_reality_suite(d):
    A = random_oneform(d, 4)
    a = TrigPoly(d, {(1,) + (0,) * (d - 1): 1})
    b = TrigPoly(d, {(0, 1) + (0,) * (d - 2): 2})
    B = composite([multiplication(a), exact_oneform([(a, b)])])
    rep = parity_reality_suite(A, k=d, l=2, B=B, seed=4)
    assert rep.passed, rep.values["ok"]
    # some of the "real" integrals are genuinely nonzero
    vals = rep.values["integrals"]
    assert any(not v.is_zero() for name, v in vals.items() if rep.values["claims"][name] == "real")


def test_parity_reality_suite_d4():
    rep = parity_reality_suite(random_oneform(4, 0), k=4, l=2)
    assert rep.passed


def test_report_json_is_serializable():
    rep = dim2_square_formula(random_oneform(2, 0))
    text = json.dumps(rep.to_json(), sort_keys=True)
    assert json.loads(text)["pass"] is True
    assert "runtime" not in rep.to_json()


def test_engine_consistency_small():
    rep = engine_consistency(seed=3, count=6)
    assert rep.passed
    assert rep.values["count"] == 6
