"""Command-line driver.

Subcommands ``spectrum``, ``partner``, ``verify`` and ``emit``.  Exit codes
are 0 on success, 1 when a requested check fails and 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import darboux, numerix, scarf2
from .darboux import SeedCase, SeedSpec
from .scarf2 import QBranch, Regime, ScarfParams

log = logging.getLogger(__name__)

GRID_ENV = "PT_DARBOUX_GRID"
CASES = ("i-a", "i-b", "ii")
EMIT_WHAT = ("potential", "partner", "wavefunction", "figure1", "figure2")

DEFAULT_GAP_TOL = 5e-2
IDENTITY_TOL = 1e-10
CASE2_CLOSED_TOL = 1e-9
RESIDUAL_COEF = 30.0  # residual budget is RESIDUAL_COEF * h^2
ORDER_WINDOW = (3.5, 4.5)
INTERTWINE_TOL = 1e-2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    v1: float | None = None
    v2: float | None = None
    v0: float | None = None
    case: str | None = None
    n: int = 0
    grid_l: float = 20.0
    grid_n: int = 2001
    numeric: bool = False
    check: bool = False
    fmt: str | None = None
    out: str | None = None
    tol: float = DEFAULT_GAP_TOL
    inject_bug: bool = False
    what: str = "potential"

    @property
    def grid(self) -> numerix.Grid:
        return numerix.Grid(self.grid_l, self.grid_n)

    def params(self) -> ScarfParams:
        if self.v0 is not None:
            if self.v1 is not None or self.v2 is not None:
                raise UsageError("give either --v0 or --v1/--v2, not both")
            return ScarfParams(self.v0, self.v0)
        if self.v1 is None or self.v2 is None:
            raise UsageError("--v1 and --v2 (or --v0) are required")
        return ScarfParams(self.v1, self.v2)

    def seed(self) -> SeedSpec:
        params = self.params()
        if self.case is None:
            raise UsageError("--case is required")
        if self.case == "ii":
            return darboux.make_seed(params, SeedCase.CASE_II)
        branch = QBranch.MINUS if self.case == "i-a" else QBranch.PLUS
        spec = darboux.make_seed(params, SeedCase.CASE_I, branch)
        if self.case == "i-b" and spec.epsilon != 0.0:
            raise UsageError(f"case i-b needs eps = 0; these couplings give eps = {spec.epsilon}")
        return spec

    def meta(self, command: str) -> dict:
        params = None
        try:
            p = self.params()
            params = {"v1": float(p.v1), "v2": float(p.v2)}
        except (UsageError, ValueError):
            pass
        return {
            "command": command,
            "params": params,
            "grid": {"L": float(self.grid_l), "N": int(self.grid_n)},
            "case": self.case,
        }


# ---------------------------------------------------------------- config


_CONFIG_KEYS = {
    "v1": float,
    "v2": float,
    "v0": float,
    "case": str,
    "n": int,
    "grid_l": float,
    "grid_n": int,
    "format": str,
    "tol": float,
}


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CONFIG_KEYS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                values[key] = _CONFIG_KEYS[key](value)
            except ValueError as exc:
                raise UsageError(f"{path}:{lineno}: bad value for {key}: {value!r}") from exc
    return values


def _grid_from_env() -> dict:
    raw = os.environ.get(GRID_ENV)
    if not raw:
        return {}
    try:
        l_str, n_str = raw.split(",")
        return {"grid_l": float(l_str), "grid_n": int(n_str)}
    except ValueError as exc:
        raise UsageError(f"{GRID_ENV} must look like 'L,N', got {raw!r}") from exc


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge sources: flags > config file > environment > built-in defaults."""
    cfg = RunConfig()
    merged: dict = {}
    merged.update(_grid_from_env())
    if getattr(args, "config", None):
        merged.update(read_config_file(args.config))
    for key in ("v1", "v2", "v0", "case", "n", "grid_l", "grid_n", "format", "tol"):
        value = getattr(args, key, None)
        if value is not None:
            merged[key] = value
    for key, value in merged.items():
        setattr(cfg, "fmt" if key == "format" else key, value)
    cfg.numeric = bool(getattr(args, "numeric", False))
    cfg.check = bool(getattr(args, "check", False))
    cfg.out = getattr(args, "out", None)
    cfg.inject_bug = bool(getattr(args, "inject_bug", False))
    cfg.what = getattr(args, "what", None) or cfg.what
    if cfg.case is not None and cfg.case not in CASES:
        raise UsageError(f"--case must be one of {', '.join(CASES)}")
    if cfg.fmt is None:
        cfg.fmt = "csv" if getattr(args, "command", None) == "emit" else "json"
    if cfg.fmt not in ("csv", "json"):
        raise UsageError("--format must be csv or json")
    if cfg.grid_n < 3 or not cfg.grid_l > 0:
        raise UsageError("grid needs L > 0 and N >= 3")
    return cfg


# ---------------------------------------------------------------- helpers


def _cplx(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _fmt_exact(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _exact_strings(params: ScarfParams) -> list[str] | None:
    """Energies as rationals when ``2(s+t)`` is an integer, else ``None``."""
    exact = scarf2.spectrum_exact(params)
    if exact is None:
        return None
    s, t = params.s, params.t
    two_st = Fraction(2 * s + 2 * t).limit_denominator(1 << 20)
    if two_st.denominator != 1:
        return None
    return [_fmt_exact(e) for e in exact]


def _solve_bound(potentials, grid: numerix.Grid) -> list[list]:
    """Numeric bound spectra for several potentials, solved concurrently."""

    def job(pot):
        op = numerix.discretize(pot, grid)
        return numerix.bound_spectrum(numerix.eigenvalues_all(op))

    with ThreadPoolExecutor(max_workers=max(1, len(potentials))) as pool:
        return list(pool.map(job, potentials))


def _pairing_json(pairing: numerix.Pairing) -> dict:
    return {
        "matched": [
            {"a": _cplx(a), "b": _cplx(b), "gap": gap} for _, _, a, b, gap in pairing.matched
        ],
        "unmatched_a": [_cplx(v) for v in pairing.unmatched_a],
        "unmatched_b": [_cplx(v) for v in pairing.unmatched_b],
        "max_gap": pairing.max_gap,
    }


def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump_json(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=True) + "\n"


def _csv_rows(header: str, rows) -> str:
    lines = [header]
    for row in rows:
        lines.append(",".join(_csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


# ---------------------------------------------------------------- spectrum


def cmd_spectrum(cfg: RunConfig) -> int:
    params = cfg.params()
    regime = scarf2.classify(params)
    report: dict = {"meta": cfg.meta("spectrum"), "spectra": {"regime": regime.value}}
    spectra = report["spectra"]
    failed = False

    if regime is Regime.UNBROKEN:
        levels = scarf2.spectrum(params)
        spectra["exact"] = _exact_strings(params)
        spectra["levels"] = levels
        spectra["second_series"] = scarf2.spectrum_branch(params, QBranch.MINUS)
        if cfg.numeric:
            (numeric,) = _solve_bound([lambda x: scarf2.potential(params, x)], cfg.grid)
            pairing = numerix.match_spectra(scarf2.full_spectrum(params), numeric)
            spectra["numeric"] = [_cplx(v) for v in numeric]
            spectra["pairing"] = _pairing_json(pairing)
            failed = pairing.max_gap > cfg.tol or bool(pairing.unmatched_a)
    else:
        levels = scarf2.broken_spectrum(params)
        spectra["exact"] = None
        spectra["levels"] = [_cplx(v) for v in levels]
        spectra["conjugate_pairs"] = numerix.conjugate_pair_check(levels, 0.0, 0.0)
        if cfg.numeric:
            (numeric,) = _solve_bound([lambda x: scarf2.potential(params, x)], cfg.grid)
            pairing = numerix.match_spectra(levels, numeric)
            spectra["numeric"] = [_cplx(v) for v in numeric]
            spectra["numeric_conjugate_pairs"] = numerix.conjugate_pair_check(numeric, 1e-4, 1e-3)
            spectra["pairing"] = _pairing_json(pairing)
            failed = pairing.max_gap > cfg.tol or not spectra["numeric_conjugate_pairs"]

    if cfg.check and cfg.numeric:
        spectra["check"] = {"tol": cfg.tol, "passed": not failed}

    if cfg.fmt == "json":
        _emit(cfg, _dump_json(report))
    else:
        rows = []
        numeric = spectra.get("numeric", [])
        gaps = {}
        if "pairing" in spectra:
            for i, _, _, _, gap in numerix.match_spectra(levels, [complex(*v) for v in numeric]).matched:
                gaps[i] = gap
        for n, e in enumerate(levels):
            e = complex(e)
            exact = spectra["exact"][n] if spectra.get("exact") else None
            num = numeric[n] if n < len(numeric) else [None, None]
            rows.append([n, exact, e.real, e.imag, num[0], num[1], gaps.get(n)])
        _emit(cfg, _csv_rows("n,exact,re,im,numeric_re,numeric_im,gap", rows))
    return 1 if (cfg.check and failed) else 0


# ---------------------------------------------------------------- partner


def _f_form(spec: SeedSpec) -> str:
    if spec.case is SeedCase.CASE_I:
        return "i(p+q+1/2) sech x - (p-q-1/2) tanh x"
    return "tanh(x)/4 - (i/4) sech x + i(2p+1/2) sech x ((1+i sinh x)/2)^(1/2)"


def cmd_partner(cfg: RunConfig) -> int:
    spec = cfg.seed()
    plus_levels = scarf2.full_spectrum(spec.params)
    minus_levels = darboux.partner_spectrum(spec)
    coeffs = darboux.satellite_coefficients(spec)
    partner = {
        "epsilon": spec.epsilon,
        "p": spec.p,
        "q": spec.q,
        "lambda": spec.lam,
        "hyp": list(spec.hyp),
        "f_form": _f_form(spec),
        "satellite": list(coeffs) if coeffs is not None else "NotSatellite",
        "degenerate_susy": spec.degenerate_susy,
        "deleted_level": darboux.deleted_energy(spec),
        "added_level": darboux.added_energy(spec),
    }
    spectra: dict = {"v_plus": plus_levels, "v_minus": minus_levels}
    if coeffs is not None and coeffs[0] > 0:
        sat = ScarfParams(*coeffs)
        if sat.regime is Regime.UNBROKEN:
            spectra["v_minus_satellite"] = scarf2.full_spectrum(sat)
    pairing = numerix.match_spectra(plus_levels, minus_levels, tol=1e-9)
    spectra["pairing"] = _pairing_json(pairing)
    failed = False
    if cfg.numeric:
        pair = darboux.partner_pair(spec)
        num_plus, num_minus = _solve_bound([pair.v_plus, pair.v_minus], cfg.grid)
        num_pairing = numerix.match_spectra(num_plus, num_minus, tol=cfg.tol)
        spectra["numeric_v_plus"] = [_cplx(v) for v in num_plus]
        spectra["numeric_v_minus"] = [_cplx(v) for v in num_minus]
        spectra["numeric_pairing"] = _pairing_json(num_pairing)
        failed = not _isospectral_as_predicted(spec, num_pairing, cfg.tol)
    report = {"meta": cfg.meta("partner"), "partner": partner, "spectra": spectra}
    if cfg.check and cfg.numeric:
        spectra["check"] = {"tol": cfg.tol, "passed": not failed}
    if cfg.fmt == "json":
        _emit(cfg, _dump_json(report))
    else:
        rows = [["v_plus", m[2], m[3], m[4]] for m in pairing.matched]
        rows += [["v_plus", v, None, None] for v in pairing.unmatched_a]
        rows += [["v_minus", None, v, None] for v in pairing.unmatched_b]
        _emit(cfg, _csv_rows("unmatched_side,e_plus,e_minus,gap", rows))
    return 1 if (cfg.check and failed) else 0


def _isospectral_as_predicted(spec: SeedSpec, pairing: numerix.Pairing, tol: float) -> bool:
    """Unmatched levels must be exactly the deleted (V+ side) and added (V- side) ones."""
    gone, new = darboux.deleted_energy(spec), darboux.added_energy(spec)
    want_a = [] if gone is None else [gone]
    want_b = [] if new is None else [new]
    if len(pairing.unmatched_a) != len(want_a) or len(pairing.unmatched_b) != len(want_b):
        return False
    for got, want in zip(pairing.unmatched_a + pairing.unmatched_b, want_a + want_b):
        if abs(complex(got) - want) > tol:
            return False
    return True


# ---------------------------------------------------------------- verify


@dataclass
class Check:
    name: str
    value: float
    tol: float
    passed: bool
    note: str = ""

    def as_dict(self) -> dict:
        out = {"name": self.name, "value": self.value, "tol": self.tol, "passed": self.passed}
        if self.note:
            out["note"] = self.note
        return out


def _max_abs(a) -> float:
    return float(np.max(np.abs(a)))


def _order_check(name: str, coarse: float, fine: float, tol: float) -> Check:
    ratio = coarse / fine if fine > 0 else math.inf
    ok = coarse <= tol and ORDER_WINDOW[0] <= ratio <= ORDER_WINDOW[1]
    return Check(name, coarse, tol, ok, note=f"h-halving ratio {ratio:.3f}")


def _grid_residual(pot, fn, energy, grid: numerix.Grid) -> float:
    op = numerix.discretize(pot, grid)
    return numerix.residual(op, fn(grid.nodes), energy)


def run_checks(spec: SeedSpec, grid: numerix.Grid, inject_bug: bool = False, numeric: bool = True) -> list[Check]:
    """The full identity and oracle suite for one seed."""
    pair = darboux.partner_pair(spec)
    if inject_bug:
        pair = darboux.with_perturbed_f(pair, lambda x: 1e-3 / np.cosh(x))
    checks: list[Check] = []
    xs = np.linspace(-10.0, 10.0, 2001)
    f, fp, vp, vm, eps = pair.f(xs), pair.f_prime(xs), pair.v_plus(xs), pair.v_minus(xs), pair.epsilon

    checks.append(Check("riccati", _max_abs(pair.riccati_residual(xs)), IDENTITY_TOL, False))
    checks.append(Check("factorized_v_plus", _max_abs(f * f + fp + eps - vp), IDENTITY_TOL, False))
    checks.append(Check("factorized_v_minus", _max_abs(f * f - fp + eps - vm), IDENTITY_TOL, False))
    checks.append(Check("two_constructions", _max_abs(vm - (2 * f * f - vp + 2 * eps)), IDENTITY_TOL, False))
    if spec.case is SeedCase.CASE_I:
        checks.append(
            Check("satellite_closed_form", _max_abs(vm - darboux.satellite_potential(spec, xs)), IDENTITY_TOL, False)
        )
    else:
        checks.append(
            Check("case2_closed_form", _max_abs(vm - darboux.case2_partner_closed(spec, xs)), CASE2_CLOSED_TOL, False)
        )
    for c in checks:
        c.passed = c.value <= c.tol

    # f against the numeric logarithmic derivative of the seed
    hs = 1e-3
    xf = np.arange(-10.0, 10.0 + hs / 2, hs)
    u = darboux.seed_u(spec, xf)
    logd = numerix.central_derivative(u, hs) / u
    err = _max_abs((pair.f(xf) - logd)[1:-1]) / _max_abs(pair.f(xf))
    checks.append(Check("seed_log_derivative", err, 1e-5, err <= 1e-5))

    levels = [
        (branch, n, e)
        for branch in (QBranch.PLUS, QBranch.MINUS)
        for n, e in enumerate(scarf2.spectrum_branch(spec.params, branch))
    ]
    deleted = {(b, darboux.deleted_level(spec, b)) for b in (QBranch.PLUS, QBranch.MINUS)}
    for branch, n, _ in levels:
        if (branch, n) in deleted:
            phi = scarf2.eigenfunction(spec.params, n, xs, branch)
            dphi = scarf2.eigenfunction_deriv(spec.params, n, xs, branch)
            annihilated = _max_abs(-dphi + pair.f(xs) * phi) / _max_abs(phi)
            checks.append(Check("deletion_annihilates_seed_level", annihilated, 1e-10, annihilated <= 1e-10))

    half = numerix.Grid(grid.half_width, 2 * grid.count - 1)
    res_tol = RESIDUAL_COEF * grid.h**2
    for branch, n, energy in levels:
        tag = f"{n}" if branch is QBranch.PLUS else f"{n}_minus"
        phi_fn = lambda x, n=n, b=branch: scarf2.eigenfunction(spec.params, n, x, b)  # noqa: E731
        checks.append(
            _order_check(
                f"phi_residual_{tag}",
                _grid_residual(pair.v_plus, phi_fn, energy, grid),
                _grid_residual(pair.v_plus, phi_fn, energy, half),
                res_tol,
            )
        )
        if (branch, n) in deleted:
            continue

        def psi_fn(x, n=n, b=branch):
            phi = scarf2.eigenfunction(spec.params, n, x, b)
            return -scarf2.eigenfunction_deriv(spec.params, n, x, b) + pair.f(x) * phi

        checks.append(
            _order_check(
                f"psi_residual_{tag}",
                _grid_residual(pair.v_minus, psi_fn, energy, grid),
                _grid_residual(pair.v_minus, psi_fn, energy, half),
                res_tol,
            )
        )

    xi1 = np.arange(-10.0, 10.0 + 0.005, 0.01)
    xi2 = np.arange(-10.0, 10.0 + 0.0025, 0.005)
    checks.append(
        _order_check(
            "intertwining_gaussian",
            pair.intertwining_residual(xi1, np.exp(-xi1**2)),
            pair.intertwining_residual(xi2, np.exp(-xi2**2)),
            INTERTWINE_TOL,
        )
    )

    if numeric:
        num_plus, num_minus = _solve_bound([pair.v_plus, pair.v_minus], grid)
        exact = scarf2.full_spectrum(spec.params)
        vs_exact = numerix.match_spectra(exact, num_plus, tol=DEFAULT_GAP_TOL)
        checks.append(
            Check(
                "numeric_v_plus_vs_exact",
                vs_exact.max_gap,
                DEFAULT_GAP_TOL,
                vs_exact.total,
                note=f"unmatched numeric levels {[_cplx(v) for v in vs_exact.unmatched_b]}",
            )
        )
        iso = numerix.match_spectra(num_plus, num_minus, tol=DEFAULT_GAP_TOL)
        checks.append(
            Check(
                "numeric_isospectrality",
                iso.max_gap,
                DEFAULT_GAP_TOL,
                _isospectral_as_predicted(spec, iso, DEFAULT_GAP_TOL),
                note=(
                    f"unmatched V+ {[_cplx(v) for v in iso.unmatched_a]}, "
                    f"unmatched V- {[_cplx(v) for v in iso.unmatched_b]}"
                ),
            )
        )
    return checks


def cmd_verify(cfg: RunConfig) -> int:
    if cfg.case is None:
        params = cfg.params()
        if math.isclose(params.v1, params.v2, rel_tol=1e-12):
            cases = ["i-a", "ii"]
        else:
            cases = ["i-a", "i-b"]
    else:
        cases = [cfg.case]
    suites = []
    all_ok = True
    for case in cases:
        sub = RunConfig(**{**cfg.__dict__, "case": case})
        try:
            spec = sub.seed()
        except UsageError as exc:
            if cfg.case is not None:
                raise
            log.info("skipping case %s: %s", case, exc)
            continue
        checks = run_checks(spec, cfg.grid, inject_bug=cfg.inject_bug, numeric=True)
        ok = all(c.passed for c in checks)
        all_ok &= ok
        x = cfg.grid.nodes
        pt = scarf2.is_pt_symmetric(x, darboux.partner_potential(spec, x), tol=1e-10)
        suites.append(
            {
                "case": case,
                "passed": ok,
                "partner_pt_symmetric": pt,
                "checks": [c.as_dict() for c in checks],
            }
        )
    report = {"meta": cfg.meta("verify"), "checks": suites, "passed": all_ok}
    if cfg.fmt == "json":
        _emit(cfg, _dump_json(report))
    else:
        rows = [[s["case"], c["name"], c["value"], c["tol"], c["passed"]] for s in suites for c in s["checks"]]
        _emit(cfg, _csv_rows("case,check,value,tol,passed", rows))
    return 0 if all_ok else 1


# ---------------------------------------------------------------- emit


def _curves(cfg: RunConfig) -> dict[str, np.ndarray]:
    x = cfg.grid.nodes
    what = cfg.what
    if what == "potential":
        return {"v_plus": scarf2.potential(cfg.params(), x)}
    if what == "partner":
        return {"v_minus": darboux.partner_potential(cfg.seed(), x)}
    if what == "wavefunction":
        if cfg.case is None:
            return {f"phi_{cfg.n}": scarf2.eigenfunction(cfg.params(), cfg.n, x)}
        spec = cfg.seed()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", darboux.DeletedStateWarning)
            return {f"psi_{cfg.n}": darboux.partner_eigenfunction(spec, cfg.n, x)}
    # figure modes: real-valued component curves of the case ii pair
    if cfg.v0 is None:
        raise UsageError(f"--what {what} needs --v0")
    cfg.case = "ii"
    spec = cfg.seed()
    vp, vm = scarf2.potential(spec.params, x), darboux.partner_potential(spec, x)
    part = np.imag if what == "figure1" else np.real
    tag = "im" if what == "figure1" else "re"
    return {f"{tag}_v_plus": part(vp).astype(complex), f"{tag}_v_minus": part(vm).astype(complex)}


def cmd_emit(cfg: RunConfig) -> int:
    if cfg.what not in EMIT_WHAT:
        raise UsageError(f"--what must be one of {', '.join(EMIT_WHAT)}")
    curves = _curves(cfg)
    x = cfg.grid.nodes
    if cfg.fmt == "json":
        report = {
            "meta": cfg.meta("emit") | {"what": cfg.what},
            "curves": {name: [[float(xi), float(v.real), float(v.imag)] for xi, v in zip(x, vals)] for name, vals in curves.items()},
        }
        _emit(cfg, _dump_json(report))
    else:
        lines = ["x,re,im"]
        for name, vals in curves.items():
            lines.append(f"# curve: {name}")
            lines.extend(f"{xi:.17g},{v.real:.17g},{v.imag:.17g}" for xi, v in zip(x, vals))
        _emit(cfg, "\n".join(lines) + "\n")
    return 0


def parse_csv_curves(text: str) -> dict[str, np.ndarray]:
    """Read back emitted CSV: ``{name: array of shape (n, 3)}``."""
    curves: dict[str, list] = {}
    current = None
    for line in text.splitlines():
        if not line or line == "x,re,im":
            continue
        if line.startswith("# curve:"):
            current = line.split(":", 1)[1].strip()
            curves[current] = []
            continue
        if current is None:
            raise ValueError("data row before any curve header")
        curves[current].append([float(v) for v in line.split(",")])
    return {k: np.asarray(v) for k, v in curves.items()}


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--v1", type=float)
    common.add_argument("--v2", type=float)
    common.add_argument("--v0", type=float, help="V1 = V2 = V0 (case ii)")
    common.add_argument("--case", choices=CASES)
    common.add_argument("--n", type=int, help="level index")
    common.add_argument("--grid-l", dest="grid_l", type=float)
    common.add_argument("--grid-n", dest="grid_n", type=int)
    common.add_argument("--numeric", action="store_true", help="also solve the grid eigenproblem")
    common.add_argument("--check", action="store_true", help="exit 1 if a numeric gap exceeds --tol")
    common.add_argument("--tol", type=float, help=f"gap tolerance (default {DEFAULT_GAP_TOL})")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--config", metavar="PATH", help="key=value file")
    common.add_argument("--inject-bug", dest="inject_bug", action="store_true", help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="ptdarboux", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("spectrum", parents=[common], help="exact (and numeric) bound spectrum")
    sub.add_parser("partner", parents=[common], help="construct a Darboux partner")
    sub.add_parser("verify", parents=[common], help="run the identity and oracle suite")
    emit = sub.add_parser("emit", parents=[common], help="sample curves to CSV/JSON")
    emit.add_argument("--what", choices=EMIT_WHAT, required=True)
    return parser


COMMANDS = {"spectrum": cmd_spectrum, "partner": cmd_partner, "verify": cmd_verify, "emit": cmd_emit}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = resolve_config(args)
        return COMMANDS[args.command](cfg)
    except (UsageError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
