"""Shared oracles for the test suite.

The oracles here are deliberately independent of the algebra under test:
gamma matrices come from a Jordan-Wigner construction in numpy, operators act
on Fourier modes by brute force, and sphere integrals are done by numerical
quadrature or sampling.
"""

from __future__ import annotations

import cmath
import math
from functools import lru_cache

import numpy as np
import pytest

from wodzicki.clifford import CliffordElement, spinor_dim
from wodzicki.symbols import SymbolExpansion

_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)
_I2 = np.eye(2, dtype=complex)


def _kron(mats):
    out = np.eye(1, dtype=complex)
    for m in mats:
        out = np.kron(out, m)
    return out


@lru_cache(maxsize=None)
def gamma_matrices(d: int) -> tuple:
    """Irreducible selfadjoint gamma matrices with gamma_i gamma_j + gamma_j gamma_i = 2 delta_ij.

    In odd d the last generator is fixed so that gamma_1 ... gamma_d = i^((d-1)/2).
    """
    m = d // 2
    gs = []
    for j in range(m):
        pre = [_Z] * j
        post = [_I2] * (m - j - 1)
        gs.append(_kron(pre + [_X] + post))
        gs.append(_kron(pre + [_Y] + post))
    if d % 2:
        last = _kron([_Z] * m) if m else np.eye(1, dtype=complex)
        prod = np.eye(1 << m, dtype=complex)
        for g in gs:
            prod = prod @ g
        prod = prod @ last
        target = (1j) ** ((d - 1) // 2)
        if not np.allclose(prod, target * np.eye(1 << m)):
            last = -last
        gs.append(last)
    return tuple(gs)


def word_matrix(d: int, mask: int) -> np.ndarray:
    gs = gamma_matrices(d)
    out = np.eye(spinor_dim(d), dtype=complex)
    for i in range(d):
        if mask >> i & 1:
            out = out @ gs[i]
    return out


def clifford_matrix(x: CliffordElement) -> np.ndarray:
    """Matrix of an element with numeric (GaussianRational) coefficients."""
    out = np.zeros((spinor_dim(x.dim),) * 2, dtype=complex)
    for w, c in x.coeffs.items():
        out = out + complex(c) * word_matrix(x.dim, w)
    return out


def symbol_at(S: SymbolExpansion, k, degrees=None) -> dict:
    """sigma(x, k) as {frequency l: matrix}, from the stored monomials.

    A term c xi^beta |xi|^(deg - |beta|) gamma_w e^{il.x} is evaluated at the
    integer vector k.  Only known components (or the listed degrees) are used.
    """
    d = S.dim
    k = np.asarray(k, dtype=float)
    norm = float(np.sqrt(k @ k))
    out: dict = {}
    for deg, comp in S.comps.items():
        if degrees is not None and deg not in degrees:
            continue
        for (beta, w, f), c in comp.items():
            val = complex(c) * float(np.prod(k ** np.array(beta))) * norm ** (deg - sum(beta))
            out[f] = out.get(f, 0) + val * word_matrix(d, w)
    return out


def fourier_compose(P: SymbolExpansion, Q: SymbolExpansion, k) -> dict:
    """(P o Q) e^{ik.x} computed mode by mode: P acts on each output mode of Q."""
    k = np.asarray(k)
    out: dict = {}
    for l, mq in symbol_at(Q, k).items():
        kl = k + np.array(l)
        for m, mp in symbol_at(P, kl).items():
            f = tuple(int(a + b) for a, b in zip(l, m))
            out[f] = out.get(f, 0) + mp @ mq
    return out


def max_diff(a: dict, b: dict) -> float:
    keys = set(a) | set(b)
    worst = 0.0
    for key in keys:
        x = a.get(key, 0)
        y = b.get(key, 0)
        worst = max(worst, float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) if not (np.isscalar(x) and np.isscalar(y)) else abs(x - y))
    return worst


def trig_value(f, x) -> complex:
    return sum(complex(c) * cmath.exp(1j * sum(a * b for a, b in zip(l, x))) for l, c in f.coeffs.items())


def sphere_mc(beta, d: int, n: int = 16_000_000, seed: int = 0, chunk: int = 1_000_000) -> float:
    """Monte Carlo estimate of the integral of xi^beta over S^{d-1}."""
    rng = np.random.default_rng(seed)
    total = 0.0
    done = 0
    while done < n:
        m = min(chunk, n - done)
        v = rng.standard_normal((m, d))
        v /= np.linalg.norm(v, axis=1)[:, None]
        total += float(np.sum(np.prod(v ** np.array(beta), axis=1)))
        done += m
    vol = 2 * math.pi ** (d / 2) / math.gamma(d / 2)
    return vol * total / n


# acceptance lines collected during the run, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def acceptance_log():
    return ACCEPTANCE_LINES


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
