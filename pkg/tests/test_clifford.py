from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wodzicki.clifford import (
    CliffordElement,
    CliffordError,
    adjoint,
    boundary_chirality,
    chirality,
    spinor_dim,
    trace,
)
from wodzicki.coefficients import GaussianRational

from conftest import clifford_matrix, gamma_matrices

small = st.fractions(min_value=-3, max_value=3, max_denominator=4)
gr = st.builds(GaussianRational, small, small)


@st.composite
def element(draw, d):
    coeffs = draw(st.dictionaries(st.integers(0, (1 << d) - 1), gr, max_size=5))
    return CliffordElement(d, coeffs)


def g(d, *idx):
    return CliffordElement.word(d, idx)


def one(d):
    return CliffordElement.scalar(d, GaussianRational(1))


def test_generator_examples():
    assert g(3, 1) * g(3, 1) == one(3)
    assert g(3, 1) * g(3, 2) == CliffordElement(3, {0b011: GaussianRational(1)})
    assert g(3, 2) * g(3, 1) == -(g(3, 1) * g(3, 2))
    for d in (3, 4):
        assert (g(d, 1, 2)) * (g(d, 2, 3)) == g(d, 1, 3)


@pytest.mark.parametrize("d", [1, 2, 3, 4, 5])
def test_oracle_gammas_are_a_clifford_module(d):
    gs = gamma_matrices(d)
    n = spinor_dim(d)
    for i in range(d):
        assert np.allclose(gs[i], gs[i].conj().T)
        for j in range(d):
            anti = gs[i] @ gs[j] + gs[j] @ gs[i]
            assert np.allclose(anti, 2 * (i == j) * np.eye(n))


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_matrix_homomorphism(d):
    @given(element(d), element(d))
    @settings(max_examples=40, deadline=None)
    def check(x, y):
        assert np.allclose(clifford_matrix(x * y), clifford_matrix(x) @ clifford_matrix(y))
        t = trace(x)
        assert np.isclose(complex(t), np.trace(clifford_matrix(x)))
        assert np.allclose(clifford_matrix(adjoint(x)), clifford_matrix(x).conj().T)

    check()


@pytest.mark.parametrize("d", [2, 3, 4])
def test_trace_cyclic(d):
    @given(element(d), element(d))
    @settings(max_examples=40, deadline=None)
    def check(x, y):
        assert trace(x * y) == trace(y * x)

    check()


def test_trace_examples():
    assert trace(g(4, 1, 2, 3)) == 0
    for i in range(1, 5):
        for j in range(1, 5):
            assert trace(g(4, i) * g(4, j)) == (4 if i == j else 0)


def test_commutator_trace_formula():
    d = 4
    for mu in range(1, 5):
        for nu in range(1, 5):
            for rho in range(1, 5):
                for sig in range(1, 5):
                    x = g(d, mu).commutator(g(d, nu)) * g(d, rho).commutator(g(d, sig))
                    want = 4 * 2 ** (d // 2) * ((mu == sig) * (nu == rho) - (mu == rho) * (nu == sig))
                    assert trace(x) == want


@pytest.mark.parametrize("d", [2, 4, 6])
def test_chirality(d):
    chi = chirality(d)
    assert chi * chi == one(d)
    for i in range(1, d + 1):
        assert (chi * g(d, i) + g(d, i) * chi).is_zero()
    assert trace(chi) == 0


def test_chirality_trace_against_pauli():
    chi = chirality(2)
    got = complex(trace(chi * g(2, 1, 2)))
    gs = gamma_matrices(2)
    mat = -1j * gs[0] @ gs[1]
    assert np.isclose(got, np.trace(mat @ gs[0] @ gs[1]))
    assert np.isclose(got, 2j)


@pytest.mark.parametrize("d", [2, 4, 6])
def test_boundary_chirality(d):
    chi = boundary_chirality(d)
    half = GaussianRational("1/2")
    pp = (one(d) + chi).scale(half)
    pm = (one(d) - chi).scale(half)
    assert chi * chi == one(d)
    assert (chi * g(d, d) + g(d, d) * chi).is_zero()
    for a in range(1, d):
        assert chi.commutator(g(d, a)).is_zero()
    assert trace(chi) == 0
    assert trace(pp) == trace(pm) == 2 ** (d // 2 - 1)
    assert pp * pp == pp
    assert (pp * pm).is_zero()


def test_adjoint_examples():
    assert adjoint(g(2, 1, 2)) == -g(2, 1, 2)
    i1 = CliffordElement.scalar(2, GaussianRational(0, 1))
    assert adjoint(i1) == CliffordElement.scalar(2, GaussianRational(0, -1))


@given(element(4), element(4))
@settings(max_examples=40)
def test_adjoint_involutive_antihomomorphism(x, y):
    assert adjoint(adjoint(x)) == x
    assert adjoint(x * y) == adjoint(y) * adjoint(x)


def test_errors():
    with pytest.raises(CliffordError):
        chirality(3)
    with pytest.raises(CliffordError):
        boundary_chirality(5)
    with pytest.raises(CliffordError):
        CliffordElement.gamma(2, 3)
