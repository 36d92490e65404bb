"""Command line front end.

    wodzicki ncint        --dim 4 --seed 3 --power 2
    wodzicki tadpole      --dim 2 --seed 7 --k 0
    wodzicki verify       --suite tadpole --dim 2 --seed 7
    wodzicki boundary     --dims 2,4,6
    wodzicki zeta-residue --dim 4
    wodzicki calibrate    --dim 3

Every command prints (or writes with --output) a JSON report.  Exit status is
0 when every assertion in the report holds, 2 when one fails and 1 on usage,
manifest or floor-guard errors.  A manifest (--manifest file.json) can supply
the same settings:

    {"dim": 4, "oneform": {"seed": 3, "max_freq": 2, "modes": 2},
     "suite": "tadpole", "count": 5, "floor": -5, "output": "report.json"}

An explicit one-form is given as {"components": [[{"freq": [1, 0], "re": "0",
"im": "1/2"}, ...], ...]}, one Fourier table per component a_k.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Sequence

from . import __version__
from .coefficients import TrigPoly
from .psido import OperatorSpec, SpecError, composite, dirac, oneform, power, random_oneform, realize
from .symbols import FloorError, SymbolError

__all__ = ["main", "run", "SCHEMA", "SUITES", "UsageError"]

SCHEMA = "wodzicki-report/1"
EXIT_OK, EXIT_USAGE, EXIT_FAIL = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; 2 is reserved for failed assertions here
    def error(self, message: str):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# manifest
# ---------------------------------------------------------------------------


def _load_manifest(path: str | None) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read manifest {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise UsageError("manifest must be a JSON object")
    known = {"dim", "dims", "oneform", "floor", "suite", "seed", "count", "output", "power", "k", "jobs"}
    extra = set(data) - known
    if extra:
        raise UsageError(f"unknown manifest keys: {sorted(extra)}")
    return data


def _oneform_from(d: int, entry: Any, seed: int) -> OperatorSpec:
    if entry is None:
        return random_oneform(d, seed)
    if not isinstance(entry, dict):
        raise UsageError("oneform must be an object")
    if "components" in entry:
        comps = entry["components"]
        if not isinstance(comps, list) or len(comps) != d:
            raise UsageError(f"oneform needs exactly {d} component tables")
        try:
            A = oneform([TrigPoly.from_json(d, c) for c in comps])
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed one-form table: {exc}") from exc
        if not A.is_selfadjoint():
            raise UsageError("the one-form is not selfadjoint (each a_k must take purely imaginary values)")
        return A
    return random_oneform(
        d,
        int(entry.get("seed", seed)),
        max_freq=int(entry.get("max_freq", 2)),
        modes=int(entry.get("modes", 2)),
    )


def _setting(args: argparse.Namespace, manifest: dict, name: str, default=None):
    v = getattr(args, name, None)
    if v is not None:
        return v
    return manifest.get(name, default)


def _dim(args, manifest) -> int:
    d = _setting(args, manifest, "dim")
    if d is None:
        raise UsageError("--dim is required")
    d = int(d)
    if d < 2:
        raise UsageError("the dimension must be at least 2")
    return d


def _jobs(args, manifest) -> int:
    j = _setting(args, manifest, "jobs")
    if j is None:
        j = os.environ.get("WODZICKI_JOBS", "1")
    try:
        j = int(j)
    except ValueError as exc:
        raise UsageError(f"bad job count {j!r}") from exc
    return max(1, j)


# ---------------------------------------------------------------------------
# suites (module-level so they can run in worker processes)
# ---------------------------------------------------------------------------


def _entry(name: str, anchor: str, passed: bool, **payload) -> dict:
    return {"name": name, "anchor": anchor, "pass": bool(passed), **payload}


def _report_entry(name: str, rep) -> dict:
    out = rep.to_json()
    return _entry(name, "; ".join(rep.anchors), rep.passed, report=out)


def _suite_tadpole(d: int, seed: int, oneform_entry) -> list[dict]:
    from .theorems import tadpole

    A = _oneform_from(d, oneform_entry, seed)
    out = []
    for k in sorted({0, d - 2, d - 1, d}):
        if k < 0:
            continue
        v = tadpole(A, k)
        out.append(_entry(f"Tad({k}) seed {seed}", "no tadpoles on the torus", v.is_zero(), value=v.to_json()))
    return out


def _suite_odd_powers(d: int, seed: int, oneform_entry) -> list[dict]:
    from .theorems import ncint_power

    A = _oneform_from(d, oneform_entry, seed)
    return [
        _entry(f"int (A D^-1)^{n} seed {seed}", "odd powers of A D^-1 integrate to 0", v.is_zero(), value=v.to_json())
        for n in (1, 3)
        for v in [ncint_power(A, n)]
    ]


def _suite_top_power(d: int, seed: int, oneform_entry) -> list[dict]:
    from .theorems import ncint_power

    A = _oneform_from(d, oneform_entry, seed)
    v = ncint_power(A, d)
    return [_entry(f"int (A D^-1)^{d} seed {seed}", "top power of A D^-1 integrates to 0", v.is_zero(), value=v.to_json())]


def _suite_zeta0(d: int, seed: int, oneform_entry) -> list[dict]:
    from .coefficients import ExactScalar
    from .theorems import fourier_quadratic_form, ncint_power, zeta0_difference

    if d != 4:
        raise UsageError("the zeta(0) suite is the 4-torus formula; use --dim 4")
    A = _oneform_from(d, oneform_entry, seed)
    q = fourier_quadratic_form(A)
    claimed = ExactScalar.pi_power(4, q) * ExactScalar.rational("8/3")
    z = zeta0_difference(A).value
    sq = ncint_power(A, 2).value
    four = ncint_power(A, 4).value
    return [
        _entry(f"zeta0 difference seed {seed}", "zeta_(D+A)(0) - zeta_D(0) = 8 pi^2/3 sum_l ...", z == claimed,
               value=z.to_json(), claimed=claimed.to_json(), text=str(z), claimed_text=str(claimed)),
        _entry(f"int (A D^-1)^2 seed {seed}", "int (A D^-1)^2 = 8 pi^2/3 sum_l ...", sq == claimed,
               value=sq.to_json(), text=str(sq)),
        _entry(f"int (A D^-1)^4 seed {seed}", "int (A D^-1)^4 = 0 on T^4", four.is_zero(), value=four.to_json()),
    ]


def _suite_dim2(d: int, seed: int, oneform_entry) -> list[dict]:
    from .theorems import dim2_square_formula, ncint_power

    if d != 2:
        raise UsageError("the dimension-2 suite needs --dim 2")
    A = _oneform_from(d, oneform_entry, seed)
    v = ncint_power(A, 2)
    return [
        _entry(f"int (A D^-1)^2 seed {seed}", "int (A D^-1)^2 = 0 on T^2", v.is_zero(), value=v.to_json()),
        _report_entry(f"int A^2 D^-2 formula seed {seed}", dim2_square_formula(A)),
    ]


def _suite_einstein_hilbert(d: int, seed: int, oneform_entry) -> list[dict]:
    from .theorems import einstein_hilbert_invariance, gamma_contraction_identity

    A = _oneform_from(d, oneform_entry, seed)
    out = [_report_entry(f"Einstein-Hilbert term seed {seed}", einstein_hilbert_invariance(A, seed))]
    out.append(_report_entry(f"gamma contraction d={d}", gamma_contraction_identity(d)))
    return out


def _suite_parity_reality(d: int, seed: int, oneform_entry) -> list[dict]:
    from .theorems import parity_reality_suite

    A = _oneform_from(d, oneform_entry, seed)
    return [_report_entry(f"parity and reality seed {seed}", parity_reality_suite(A, k=d, l=2, seed=seed))]


def _suite_engine(d: int, seed: int, oneform_entry) -> list[dict]:
    from .theorems import engine_consistency

    return [_report_entry(f"engine contracts seed {seed}", engine_consistency(seed=seed, count=10))]


SUITES: dict[str, Callable[[int, int, Any], list[dict]]] = {
    "tadpole": _suite_tadpole,
    "odd-powers": _suite_odd_powers,
    "top-power": _suite_top_power,
    "zeta0": _suite_zeta0,
    "dim2": _suite_dim2,
    "einstein-hilbert": _suite_einstein_hilbert,
    "parity-reality": _suite_parity_reality,
    "engine": _suite_engine,
}


def _boundary_entries(d: int) -> list[dict]:
    from .boundary import BoundaryContext, chiral_S_identities, coefficient_cancellations, higher_order_linear_terms

    ctx = BoundaryContext(d)
    return [
        _report_entry(f"chiral algebra d={d}", chiral_S_identities(ctx)),
        _report_entry(f"heat coefficient cancellations d={d}", coefficient_cancellations(ctx)),
        _report_entry(f"a_(d-5) building blocks d={d}", higher_order_linear_terms(ctx)),
    ]


def _parallel(fn: Callable, arglists: Sequence[tuple], jobs: int) -> list[list[dict]]:
    if jobs <= 1 or len(arglists) <= 1:
        return [fn(*a) for a in arglists]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futures = [pool.submit(fn, *a) for a in arglists]
        return [f.result() for f in futures]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_ncint(args, manifest) -> dict:
    from .ncint import ncintegral

    d = _dim(args, manifest)
    seed = int(_setting(args, manifest, "seed", 0))
    n = int(_setting(args, manifest, "power", 1))
    floor = _setting(args, manifest, "floor")
    A = _oneform_from(d, manifest.get("oneform"), seed)
    spec = composite([A, power(dirac(d), -1)] * n)
    floor = -d if floor is None else int(floor)
    if floor > -d:
        raise UsageError(f"the integral needs the degree {-d} component; --floor must be <= {-d}")
    v = ncintegral(realize(spec, floor))
    entry = _entry(f"int (A D^-1)^{n}", "int X = c_d Wres(X)", True, value=v.to_json(), floor=floor)
    return {"command": "ncint", "inputs": {"dim": d, "seed": seed, "power": n, "oneform": A.to_json()}, "entries": [entry]}


def _cmd_tadpole(args, manifest) -> dict:
    from .theorems import tadpole

    d = _dim(args, manifest)
    seed = int(_setting(args, manifest, "seed", 0))
    A = _oneform_from(d, manifest.get("oneform"), seed)
    ks = [int(args.k)] if args.k is not None else sorted({k for k in (0, d - 2, d - 1, d) if k >= 0})
    entries = []
    for k in ks:
        if k > d or k < 0:
            raise UsageError(f"tadpoles are defined for 0 <= k <= d = {d}")
        v = tadpole(A, k)
        entries.append(_entry(f"Tad({k})", "no tadpoles on the torus", v.is_zero(), value=v.to_json()))
    return {"command": "tadpole", "inputs": {"dim": d, "seed": seed, "oneform": A.to_json()}, "entries": entries}


def _cmd_verify(args, manifest) -> dict:
    d = _dim(args, manifest)
    suite = _setting(args, manifest, "suite")
    if suite not in SUITES:
        raise UsageError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    seed = int(_setting(args, manifest, "seed", 0))
    count = int(_setting(args, manifest, "count", 1))
    if count < 1:
        raise UsageError("--count must be positive")
    oneform_entry = manifest.get("oneform")
    if oneform_entry is not None and count > 1:
        raise UsageError("an explicit one-form runs once; drop --count")
    inputs = {"dim": d, "suite": suite, "seed": seed, "count": count}
    gate = _calibration_gate(d)
    if gate is not None and not gate["pass"]:
        # every residue below is only meaningful with the calibrated constant
        return {"command": "verify", "inputs": inputs, "entries": [gate]}
    arglists = [(d, seed + i, oneform_entry) for i in range(count)]
    results = _parallel(SUITES[suite], arglists, _jobs(args, manifest))
    entries = ([gate] if gate else []) + [e for r in results for e in r]
    return {"command": "verify", "inputs": inputs, "entries": entries}


def _calibration_gate(d: int) -> dict | None:
    """Calibration entry for d where the zeta oracle is available, else None."""
    from .zeta_oracle import CALIBRATION_DIMS, calibrate_cd

    if d not in CALIBRATION_DIMS:
        return None
    rep = calibrate_cd(d)
    return _entry("calibration of c_d", "int X = c_d Wres(X)", rep["pass"], relative_error=rep["relative_error"])


def _parse_dims(text) -> list[int]:
    if isinstance(text, list):
        return [int(x) for x in text]
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad dimension list {text!r}") from exc


def _cmd_boundary(args, manifest) -> dict:
    dims = _parse_dims(_setting(args, manifest, "dims", "2,4,6"))
    for d in dims:
        if d < 2 or d % 2:
            raise UsageError(f"chiral boundary conditions need even d >= 2, got {d}")
    results = _parallel(_boundary_entries, [(d,) for d in dims], _jobs(args, manifest))
    return {"command": "boundary", "inputs": {"dims": dims}, "entries": [e for r in results for e in r]}


def _cmd_zeta_residue(args, manifest) -> dict:
    from .zeta_oracle import pole_simplicity, residue_at_pole

    d = _dim(args, manifest)
    res = residue_at_pole(d)
    simple = pole_simplicity(d)
    entries = [
        _entry("residue at s = d", "Res_(s=d) zeta_D(s)", res.details["converged"],
               pole=d, estimate=res.value, uncertainty=res.uncertainty),
        _entry("(s - d)^2 zeta_D(s) -> 0", "the dimension spectrum is simple", simple.details["simple"],
               pole=d, estimate=simple.value, uncertainty=simple.uncertainty),
    ]
    return {"command": "zeta-residue", "inputs": {"dim": d}, "entries": entries}


def _cmd_calibrate(args, manifest) -> dict:
    from .zeta_oracle import CALIBRATION_DIMS, calibrate_cd

    d = _dim(args, manifest)
    if d not in CALIBRATION_DIMS:
        raise UsageError(f"calibration is implemented for d in {list(CALIBRATION_DIMS)}")
    rep = calibrate_cd(d)
    return {
        "command": "calibrate",
        "inputs": {"dim": d},
        "entries": [_entry("c_d Wres(|D|^-d) = Res zeta_D", "int X = c_d Wres(X)", rep["pass"], **rep)],
    }


def _build_parser() -> _Parser:
    p = _Parser(prog="wodzicki", description="Exact noncommutative integrals on flat tori and their checks.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, dim=True):
        sp.add_argument("--manifest", help="JSON manifest with default settings")
        sp.add_argument("--output", "-o", help="write the report here instead of stdout")
        sp.add_argument("--jobs", type=int, help="worker processes (default: $WODZICKI_JOBS or 1)")
        if dim:
            sp.add_argument("--dim", type=int, help="torus dimension d")

    sp = sub.add_parser("ncint", help="int (A D^-1)^n for a seeded or given one-form")
    common(sp)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--power", type=int)
    sp.add_argument("--floor", type=int, help="lowest symbol degree to compute (<= -d)")

    sp = sub.add_parser("tadpole", help="tadpoles Tad(k) of a one-form")
    common(sp)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--k", type=int, help="a single order (default: 0, d-2, d-1, d)")

    sp = sub.add_parser("verify", help="run a verification suite")
    common(sp)
    sp.add_argument("--suite", choices=sorted(SUITES))
    sp.add_argument("--seed", type=int)
    sp.add_argument("--count", type=int, help="number of consecutive seeds")

    sp = sub.add_parser("boundary", help="chiral boundary trace identities")
    common(sp, dim=False)
    sp.add_argument("--dims", help="comma separated even dimensions (default 2,4,6)")

    sp = sub.add_parser("zeta-residue", help="numeric residue of zeta_D at s = d")
    common(sp)

    sp = sub.add_parser("calibrate", help="compare c_d Wres(|D|^-d) with the zeta residue")
    common(sp)
    return p


_COMMANDS = {
    "ncint": _cmd_ncint,
    "tadpole": _cmd_tadpole,
    "verify": _cmd_verify,
    "boundary": _cmd_boundary,
    "zeta-residue": _cmd_zeta_residue,
    "calibrate": _cmd_calibrate,
}


def _emit(report: dict, output: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True, default=str) + "\n"
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv: Sequence[str] | None = None) -> int:
    """Execute one command; returns the exit status."""
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
        if not args.command:
            raise UsageError("a subcommand is required")
        manifest = _load_manifest(args.manifest)
        body = _COMMANDS[args.command](args, manifest)
    except UsageError as exc:
        print(f"wodzicki: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FloorError as exc:
        print(f"wodzicki: floor guard in {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (SpecError, SymbolError, ValueError) as exc:
        print(f"wodzicki: error in {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    passed = all(e["pass"] for e in body["entries"])
    report = {"schema": SCHEMA, "version": __version__, **body, "pass": passed}
    _emit(report, _setting(args, manifest, "output"))
    return EXIT_OK if passed else EXIT_FAIL


def main() -> None:
    sys.exit(run())
