"""Numerical spectral zeta function of the flat-torus Dirac operator.

On T^d = R^d / (2 pi Z)^d the Dirac operator has |D| eigenvalues |k|, k in
Z^d, each with multiplicity dim V = 2^floor(d/2).  The kernel (k = 0) is
replaced by eigenvalue 1, as for D + P with P the kernel projection, so

    zeta_D(s) = dim V * (1 + Z_d(s)),   Z_d(s) = sum_{k != 0} |k|^(-s).

Z_d is evaluated by the theta-function splitting of the Epstein sum, which
converges like exp(-pi n).  Floating point arithmetic is confined to this
module; exact values from the symbol engine enter through ``exact_to_float``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .clifford import spinor_dim
from .coefficients import ExactScalar

__all__ = [
    "OracleError",
    "SpectrumSlice",
    "OracleValue",
    "shell_counts",
    "spectrum_slice",
    "epstein",
    "epstein_closed_form",
    "zeta_value",
    "lattice_zeta",
    "residue_at_pole",
    "pole_simplicity",
    "heat_trace_leading",
    "calibrate_cd",
    "exact_to_float",
    "RICHARDSON_STEPS",
    "RICHARDSON_ORDER",
    "CALIBRATION_DIMS",
]

# h = s - pole runs over 2^-1 .. 2^-8; extrapolation orders 1..4
RICHARDSON_STEPS = tuple(mpmath.mpf(2) ** -m for m in range(1, 9))
RICHARDSON_ORDER = 4
CALIBRATION_DIMS = (2, 3, 4)
_DPS = 40
# shells |k|^2 = n with pi n > ~230 contribute below 1e-100
_THETA_SHELLS = 80


class OracleError(ValueError):
    pass


def _check_dim(d: int) -> None:
    if not isinstance(d, int) or d < 2:
        raise OracleError(f"dimension must be an integer >= 2, got {d!r}")


@lru_cache(maxsize=None)
def _shell_counts_cached(d: int, nmax: int) -> tuple:
    r = int(np.floor(np.sqrt(nmax)))
    one = np.zeros(nmax + 1, dtype=np.int64)
    for k in range(-r, r + 1):
        one[k * k] += 1
    # d-fold self-convolution via FFT; the counts are integers well inside
    # double precision, so rounding recovers them exactly
    size = 1 << int(np.ceil(np.log2(d * nmax + 1)))
    spec = np.fft.rfft(one.astype(float), size) ** d
    counts = np.rint(np.fft.irfft(spec, size)[: nmax + 1]).astype(np.int64)
    return tuple(int(c) for c in counts)


def shell_counts(d: int, nmax: int) -> np.ndarray:
    """r_d(n) = #{k in Z^d : |k|^2 = n} for 0 <= n <= nmax."""
    _check_dim(d)
    return np.array(_shell_counts_cached(d, int(nmax)), dtype=np.int64)


@dataclass(frozen=True)
class SpectrumSlice:
    """Eigenvalues of |D| up to a cutoff, with multiplicities, sorted."""

    d: int
    cutoff: float
    entries: tuple  # ((eigenvalue, multiplicity), ...)

    def __post_init__(self):
        if any(m <= 0 for _, m in self.entries):
            raise OracleError("multiplicities must be positive")
        if list(self.entries) != sorted(self.entries):
            raise OracleError("entries must be sorted")

    def partial_zeta(self, s: float) -> float:
        return float(sum(m * lam ** (-s) for lam, m in self.entries))


def spectrum_slice(d: int, cutoff: float) -> SpectrumSlice:
    """|D| spectrum on T^d up to ``cutoff``; the kernel counts as eigenvalue 1."""
    _check_dim(d)
    nmax = int(np.floor(cutoff * cutoff))
    counts = shell_counts(d, nmax)
    dv = spinor_dim(d)
    mult: dict[float, int] = {}
    for n in range(nmax + 1):
        if counts[n]:
            lam = 1.0 if n == 0 else float(np.sqrt(n))
            mult[lam] = mult.get(lam, 0) + int(counts[n]) * dv
    return SpectrumSlice(d, float(cutoff), tuple(sorted(mult.items())))


def _epstein_mp(d: int, s) -> mpmath.mpf:
    """Z_d(s) for real s > d by the incomplete-gamma splitting."""
    w = mpmath.mpf(s) / 2
    half = mpmath.mpf(d) / 2
    counts = _shell_counts_cached(d, _THETA_SHELLS)
    total = 1 / (w - half) - 1 / w
    for n in range(1, _THETA_SHELLS + 1):
        c = counts[n]
        if not c:
            continue
        x = mpmath.pi * n
        total += c * (x**-w * mpmath.gammainc(w, x) + x ** (w - half) * mpmath.gammainc(half - w, x))
    return total * mpmath.pi**w / mpmath.gamma(w)


def epstein(d: int, s: float) -> float:
    """Z_d(s) = sum over nonzero k in Z^d of |k|^(-s), s > d."""
    _check_dim(d)
    if s <= d:
        raise OracleError(f"the lattice sum diverges for s = {s} <= d = {d}")
    with mpmath.workdps(_DPS):
        return float(_epstein_mp(d, s))


def epstein_closed_form(d: int, s: float) -> float:
    """Z_d(s) through Dirichlet L-functions, available for d = 2 and d = 4.

    r_2(n) = 4 sum_{m | n} chi_4(m) and the Jacobi four-square count give
    Z_2(s) = 4 zeta(s/2) beta(s/2) and Z_4(s) = 8 (1 - 4^(1-s/2)) zeta(s/2) zeta(s/2 - 1).
    """
    if s <= d:
        raise OracleError(f"the lattice sum diverges for s = {s} <= d = {d}")
    with mpmath.workdps(_DPS):
        w = mpmath.mpf(s) / 2
        if d == 2:
            return float(4 * mpmath.zeta(w) * mpmath.dirichlet(w, [0, 1, 0, -1]))
        if d == 4:
            return float(8 * (1 - mpmath.mpf(4) ** (1 - w)) * mpmath.zeta(w) * mpmath.zeta(w - 1))
    raise OracleError(f"no closed form implemented for d = {d}")


def zeta_value(d: int, s: float) -> float:
    """zeta_D(s) = Tr |D|^(-s) on T^d for s > d."""
    return spinor_dim(d) * (1.0 + epstein(d, s))


def _smooth_step(u: np.ndarray) -> np.ndarray:
    """1 on [0, 1/2], 0 on [1, oo), C-infinity in between."""
    t = np.clip(2 * u - 1, 0.0, 1.0)
    with np.errstate(divide="ignore", over="ignore"):
        a = np.where(t > 0, np.exp(-1 / np.where(t > 0, t, 1)), 0.0)
        b = np.where(t < 1, np.exp(-1 / np.where(t < 1, 1 - t, 1)), 0.0)
    return b / (a + b)


def lattice_zeta(d: int, s: float, radius: int = 200) -> float:
    """Brute-force zeta_D(s) from the lattice points with |k| <= R.

    The sum is cut off smoothly: sum_{k != 0} f(|k|/R) |k|^(-s) plus the
    integral of (1 - f(|x|/R)) |x|^(-s) over R^d, where f is a C-infinity step
    from 1 (|x| <= R/2) to 0 (|x| >= R).  The remainder is smooth on the scale
    R, so by Poisson summation the lattice sum and the integral agree far
    beyond any power of 1/R.  A sharp cutoff would leave the lattice-point
    discrepancy, of order R^(d-2-s) or worse.
    """
    _check_dim(d)
    if s <= d:
        raise OracleError(f"the lattice sum diverges for s = {s} <= d = {d}")
    nmax = radius * radius
    counts = shell_counts(d, nmax).astype(float)
    n = np.arange(1, nmax + 1, dtype=float)
    weights = _smooth_step(np.sqrt(n) / radius)
    body = float(np.sum(counts[1:] * weights * n ** (-s / 2)))
    with mpmath.workdps(30):
        dm = mpmath.mpf(d)
        vol = 2 * mpmath.pi ** (dm / 2) / mpmath.gamma(dm / 2)

        def one_minus_f(u):
            return 1 - float(_smooth_step(np.array([float(u)]))[0])

        inner = mpmath.quad(lambda u: one_minus_f(u) * u ** (dm - 1 - s), [0.5, 0.75, 1])
        tail = vol * mpmath.mpf(radius) ** (dm - s) * (inner + 1 / (s - dm))
    return spinor_dim(d) * (1.0 + body + float(tail))


@dataclass(frozen=True)
class OracleValue:
    value: float
    uncertainty: float
    details: dict

    def to_json(self) -> dict:
        return {"value": self.value, "uncertainty": self.uncertainty, **self.details}


def _richardson(samples: list) -> tuple[mpmath.mpf, mpmath.mpf, list]:
    """Extrapolate g(h) -> g(0) from samples at h halving each step.

    Returns (estimate, uncertainty, table diagonal); the uncertainty is the
    change between the last two extrapolation orders.
    """
    table = [list(samples)]
    for k in range(1, RICHARDSON_ORDER + 1):
        prev = table[-1]
        f = mpmath.mpf(2) ** k
        table.append([(f * prev[i + 1] - prev[i]) / (f - 1) for i in range(len(prev) - 1)])
    best = table[-1][-1]
    unc = abs(best - table[-2][-1])
    return best, unc, [row[-1] for row in table]


def residue_at_pole(d: int, pole: int | None = None) -> OracleValue:
    """lim_{s -> pole} (s - pole) zeta_D(s), by Richardson extrapolation from s > pole."""
    _check_dim(d)
    pole = d if pole is None else pole
    if pole != d:
        raise OracleError("only the leading pole s = d of zeta_D is available on the flat torus")
    dv = spinor_dim(d)
    with mpmath.workdps(_DPS):
        samples = [h * dv * (1 + _epstein_mp(d, pole + h)) for h in RICHARDSON_STEPS]
        best, unc, diag = _richardson(samples)
        spread = abs(diag[-1] - diag[-2])
        converged = spread <= abs(diag[-2] - diag[-3]) or spread < mpmath.mpf(10) ** (-_DPS // 2)
        return OracleValue(
            float(best),
            float(unc),
            {"pole": pole, "dim": d, "converged": bool(converged), "orders": [float(x) for x in diag]},
        )


def pole_simplicity(d: int) -> OracleValue:
    """Extrapolate (s - d)^2 zeta_D(s) to s = d; a simple pole gives 0."""
    _check_dim(d)
    dv = spinor_dim(d)
    with mpmath.workdps(_DPS):
        samples = [h * h * dv * (1 + _epstein_mp(d, d + h)) for h in RICHARDSON_STEPS]
        best, unc, diag = _richardson(samples)
        # before extrapolation the smallest sample is h * residue, well away from 0
        raw = samples[-1]
        return OracleValue(
            float(best),
            float(unc),
            {"pole": d, "dim": d, "smallest_sample": float(raw), "simple": bool(abs(best) <= max(unc, 1e-12))},
        )


def heat_trace_leading(d: int, ts: tuple = (0.02, 0.01, 0.005)) -> OracleValue:
    """Small-t limit of t^(d/2) Tr exp(-t D^2), compared with dim V pi^(d/2).

    Tr exp(-t D^2) = dim V (theta_3(e^-t)^d - 1 + e^-t); the leading heat
    coefficient is dim V (4 pi)^(-d/2) Vol(T^d) = dim V pi^(d/2).
    """
    _check_dim(d)
    dv = spinor_dim(d)
    with mpmath.workdps(_DPS):
        vals = []
        for t in ts:
            t = mpmath.mpf(t)
            tr = dv * (mpmath.jtheta(3, 0, mpmath.exp(-t)) ** d - 1 + mpmath.exp(-t))
            vals.append(t ** (mpmath.mpf(d) / 2) * tr)
        target = dv * mpmath.pi ** (mpmath.mpf(d) / 2)
        est = vals[-1]
        return OracleValue(
            float(est),
            float(abs(vals[-1] - vals[-2])),
            {"dim": d, "expected": float(target), "relative_error": float(abs(est - target) / target)},
        )


def exact_to_float(x: ExactScalar) -> complex:
    """The one place where exact scalars become floating point numbers."""
    total = mpmath.mpc(0)
    with mpmath.workdps(_DPS):
        for m, c in x.terms.items():
            coeff = mpmath.mpc(mpmath.mpf(int(c.re.numerator)) / int(c.re.denominator),
                               mpmath.mpf(int(c.im.numerator)) / int(c.im.denominator))
            total += coeff * mpmath.pi ** (mpmath.mpf(m) / 2)
        return complex(total)


def calibrate_cd(d: int, tol: float = 1e-6) -> dict:
    """Compare c_d Wres(|D|^-d) from the symbol engine with the numeric residue."""
    if d not in CALIBRATION_DIMS:
        raise OracleError(f"calibration is implemented for d in {CALIBRATION_DIMS}, got {d}")
    from .ncint import ncintegral, wres
    from .psido import abs_power, realize

    sym = realize(abs_power(d, -d), -d)
    exact = ncintegral(sym).value
    w = wres(sym).value
    res = residue_at_pole(d)
    approx = exact_to_float(exact)
    rel = abs(approx - res.value) / abs(res.value)
    return {
        "dim": d,
        "wres": w.to_json(),
        "wres_text": str(w),
        "ncint": exact.to_json(),
        "ncint_text": str(exact),
        "ncint_float": approx.real,
        "residue": res.to_json(),
        "relative_error": rel,
        "pass": bool(rel < tol and res.details["converged"]),
    }
