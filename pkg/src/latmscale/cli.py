"""Batch front end: ``latmscale <subcommand> [options]``.

Exit codes: 0 all checks pass, 1 validation failure, 2 check failure.
"""

from __future__ import annotations

import os

_threads = os.environ.get("LATMSCALE_THREADS")
if _threads:
    for _var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS", "NUMEXPR_NUM_THREADS"):
        os.environ.setdefault(_var, _threads)

import argparse  # noqa: E402
import configparser  # noqa: E402
import io  # noqa: E402
import math  # noqa: E402
import sys  # noqa: E402
from dataclasses import dataclass, field  # noqa: E402
from fractions import Fraction  # noqa: E402
from typing import Any, Callable, Sequence  # noqa: E402

import numpy as np  # noqa: E402

from .exactmath import coefficient_table  # noqa: E402
from .lpkdv import LpkdvParams, dispersion  # noqa: E402
from .multiscale import (  # noqa: E402
    ConsistencyError,
    M_coefficients_unreduced,
    ReductionParams,
    SymbolicReduction,
    convergence_sweep,
    linear_operator_L,
    rho_complex_forms,
    rho_from_sigma,
    sigma_coefficients,
    sigma_from_expansion,
    solve_M_coefficients,
)
from .nls import (  # noqa: E402
    GraySoliton,
    SolitonParams,
    dnls_reduced_residual,
    fit_slope,
    lax_frame,
    phase_velocities,
    pkdv_chain,
    pkdv_residual,
    reconstruct_continuous,
    zero_curvature_residual,
)
from .opcalc import DiffVariant, GridFunction, ShiftScales, delta_series, shift_expansion  # noqa: E402

EXIT_OK, EXIT_VALIDATION, EXIT_CHECK = 0, 1, 2

DEFAULTS: dict[str, dict[str, str]] = {
    "reduction": {
        "p": "2",
        "q": "1",
        "kappa": repr(math.pi / 2),
        "gamma": "1",
        "r": "1",
        "M2tilde": "1",
        "ell": "3",
        "N": "16",
        "integerize": "false",
    },
    "soliton": {"u0": "1", "A": "0.5", "B": "1"},
    "convergence": {
        "Ns": "8,16,32,64,128",
        "n2_min": "-15",
        "n2_max": "15",
        "m2_min": "0",
        "m2_max": "2",
        "n2_points": "301",
        "m2_points": "41",
        "second_harmonic": "false",
    },
    "lax": {"eta_re": "0.3", "eta_im": "0.1", "hs": "0.1,0.05,0.025", "ell": "3", "step": "1", "half_width": "10", "duration": "1"},
    "continuous": {"kappa": "1", "epsilons": "0.1,0.05,0.025", "second_harmonic": "false"},
    "dispersion": {"kappa_grid": "-3:3:13"},
    "series": {"which": "TnTm", "trunc": "3", "ell": "3", "variant": "forward", "omega": "1/2", "max_i": "6"},
}

TOLERANCES: dict[str, float] = {
    "identity": 1e-12,
    "closed_form": 1e-10,
    "stencil": 1e-8,
    "soliton_residual": 1e-10,
    "convergence_slope_min": 1.7,
    "convergence_slope_max": 2.3,
    "lax_slope_min": 1.8,
    "lax_slope_max": 2.2,
    "lax_floor_ratio": 10.0,
    "continuous_slope_min": 2.0,
}


class ValidationError(ValueError):
    pass


# -- deterministic output ----------------------------------------------------------


def _fmt_float(x: float, digits: int) -> str:
    if math.isnan(x):
        return '"NaN"'
    if math.isinf(x):
        return '"Infinity"' if x > 0 else '"-Infinity"'
    return format(x, f".{digits}g")


def to_json(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """JSON with sorted keys and 17-significant-digit floats."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f'{pad}"{k}": {to_json(obj[k], indent, _level + 1)}' for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        items = [pad + to_json(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, bool) or obj is None:
        return {True: "true", False: "false", None: "null"}[obj]
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj) + 0.0, 17)
    if isinstance(obj, (complex, np.complexfloating)):
        z = complex(obj)
        return to_json({"re": z.real, "im": z.imag}, indent, _level)
    if isinstance(obj, Fraction):
        return f'"{obj}"'
    s = str(obj).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def csv_value(x: Any) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "undefined"
        return format(x + 0.0, ".12g")
    if isinstance(x, (complex, np.complexfloating)):
        z = complex(x)
        return f"{z.real:.12g}{z.imag:+.12g}j"
    return str(x)


def to_csv(rows: Sequence[Sequence[Any]]) -> str:
    return "".join(",".join(csv_value(v) for v in row) + "\n" for row in rows)


# -- config ------------------------------------------------------------------------


@dataclass
class RunConfig:
    values: dict[str, dict[str, str]]
    tolerances: dict[str, float] = field(default_factory=lambda: dict(TOLERANCES))

    def get(self, section: str, key: str) -> str:
        return self.values[section][key]

    def num(self, section: str, key: str) -> float:
        raw = self.get(section, key)
        try:
            return float(Fraction(raw)) if "/" in raw else float(raw)
        except ValueError as exc:
            raise ValidationError(f"[{section}] {key}={raw!r} is not a number") from exc

    def integer(self, section: str, key: str) -> int:
        raw = self.get(section, key)
        try:
            return int(raw)
        except ValueError as exc:
            raise ValidationError(f"[{section}] {key}={raw!r} is not an integer") from exc

    def flag(self, section: str, key: str) -> bool:
        raw = self.get(section, key).strip().lower()
        if raw in ("1", "true", "yes", "on"):
            return True
        if raw in ("0", "false", "no", "off"):
            return False
        raise ValidationError(f"[{section}] {key}={raw!r} is not a boolean")

    def numbers(self, section: str, key: str) -> list[float]:
        raw = self.get(section, key)
        try:
            return [float(v) for v in raw.split(",") if v.strip()]
        except ValueError as exc:
            raise ValidationError(f"[{section}] {key}={raw!r} is not a comma list of numbers") from exc

    def reduction(self, N: int | None = None) -> ReductionParams:
        gamma = self.integer("reduction", "gamma")
        if gamma not in (1, -1):
            raise ValidationError("gamma must be +1 or -1")
        M2 = self.integer("reduction", "M2tilde")
        if M2 < 1:
            raise ValidationError("M2tilde must be >= 1")
        return ReductionParams.from_inputs(
            self.num("reduction", "p"),
            self.num("reduction", "q"),
            self.num("reduction", "kappa"),
            N=self.integer("reduction", "N") if N is None else N,
            gamma=gamma,
            r=self.num("reduction", "r"),
            M2tilde=M2,
            ell=self.integer("reduction", "ell"),
            integerize=self.flag("reduction", "integerize"),
        )


def load_config(path: str | None, overrides: dict[tuple[str, str], str], tol_overrides: Sequence[str]) -> RunConfig:
    values = {s: dict(kv) for s, kv in DEFAULTS.items()}
    if path:
        parser = configparser.ConfigParser()
        parser.optionxform = str  # keep key case
        if not parser.read(path):
            raise ValidationError(f"cannot read config file {path}")
        for section in parser.sections():
            if section not in values:
                raise ValidationError(f"unknown config section [{section}]")
            for key, val in parser.items(section):
                if key not in values[section]:
                    raise ValidationError(f"unknown key {key!r} in [{section}]")
                values[section][key] = val
    for (section, key), val in overrides.items():
        values[section][key] = val
    cfg = RunConfig(values)
    for item in tol_overrides:
        if "=" not in item:
            raise ValidationError(f"--tol-override expects NAME=VALUE, got {item!r}")
        name, val = item.split("=", 1)
        if name not in cfg.tolerances:
            raise ValidationError(f"unknown tolerance {name!r}; known: {', '.join(sorted(cfg.tolerances))}")
        try:
            cfg.tolerances[name] = float(val)
        except ValueError as exc:
            raise ValidationError(f"tolerance {name} must be a number") from exc
    return cfg


# -- checks ------------------------------------------------------------------------


@dataclass
class Check:
    name: str
    value: float
    tol: float
    kind: str = "max"  # value <= tol, or "min": value >= tol, or "range"
    tol_hi: float | None = None

    @property
    def passed(self) -> bool:
        if isinstance(self.value, float) and math.isnan(self.value):
            return False
        if self.kind == "max":
            return self.value <= self.tol
        if self.kind == "min":
            return self.value >= self.tol
        return self.tol <= self.value <= (self.tol_hi if self.tol_hi is not None else math.inf)

    def as_dict(self) -> dict[str, Any]:
        out = {"value": self.value, "tol": self.tol, "kind": self.kind, "pass": self.passed}
        if self.tol_hi is not None:
            out["tol_hi"] = self.tol_hi
        return out


def _checks_dict(checks: Sequence[Check]) -> dict[str, Any]:
    return {c.name: c.as_dict() for c in checks}


def _rel(a: complex, b: complex) -> float:
    return abs(a - b) / max(1.0, abs(b))


# -- subcommands -------------------------------------------------------------------


def cmd_coeffs(cfg: RunConfig) -> tuple[dict[str, Any], list[Check]]:
    P = cfg.reduction()
    tol = cfg.tolerances
    m1, m1t = solve_M_coefficients(P)
    u1, u1t = M_coefficients_unreduced(P)
    sc = sigma_coefficients(P)
    c1, c2 = rho_complex_forms(P)
    s1, s2 = rho_from_sigma(sc.sigma, sc.alpha1, sc.alpha2, P.gamma)
    sig_exp, rest = sigma_from_expansion(P)
    checks = [
        Check("M1_imag", abs(m1.imag), tol["closed_form"]),
        Check("M1tilde_imag", abs(m1t.imag), tol["closed_form"]),
        Check("M_forms_agree", max(_rel(m1, u1), _rel(m1t, u1t)), tol["identity"]),
        Check("rho1_imag", abs(c1.imag), tol["closed_form"]),
        Check("rho2_imag", abs(c2.imag), tol["closed_form"]),
        Check("rho_complex_vs_real", max(_rel(c1, sc.rho1), _rel(c2, sc.rho2)), tol["closed_form"]),
        Check("rho_from_sigma", max(_rel(s1, sc.rho1), _rel(s2, sc.rho2)), tol["closed_form"]),
        Check("sigma_from_expansion", max(_rel(a, b) for a, b in zip(sig_exp, sc.sigma)), tol["closed_form"]),
        Check("expansion_remainder_terms", float(len(rest.terms)), 0.0),
        Check("rho1_rho2", sc.rho1 * sc.rho2, 0.0, "max"),
    ]
    for name, v in sc.identity_residuals(P).items():
        checks.append(Check(name, v, tol["closed_form"]))
    report = {
        "inputs": P.as_dict(),
        "M1": m1,
        "M1tilde": m1t,
        "alpha1": sc.alpha1,
        "alpha2": sc.alpha2,
        "sigma": {f"sigma{i}": sc[i] for i in range(1, 10)},
        "rho1": sc.rho1,
        "rho2": sc.rho2,
        "defocusing": sc.rho1 * sc.rho2 < 0,
        "checks": _checks_dict(checks),
    }
    return report, checks


def _kappa_grid(spec: str) -> np.ndarray:
    try:
        if ":" in spec:
            a, b, n = spec.split(":")
            return np.linspace(float(a), float(b), int(n))
        return np.array([float(v) for v in spec.split(",") if v.strip()])
    except ValueError as exc:
        raise ValidationError(f"bad kappa grid {spec!r}; use start:stop:num or a comma list") from exc


def cmd_dispersion(cfg: RunConfig) -> tuple[list[list[Any]], list[Check]]:
    lp = LpkdvParams(cfg.num("reduction", "p"), cfg.num("reduction", "q"))
    ks = _kappa_grid(cfg.get("dispersion", "kappa_grid"))
    rows: list[list[Any]] = [["kappa", "omega"]]
    for k in ks:
        rows.append([float(k), float(dispersion(float(k), lp))])
    return rows, []


def _soliton(cfg: RunConfig, rho1: float, rho2: float) -> SolitonParams:
    return SolitonParams(
        cfg.num("soliton", "u0"), cfg.num("soliton", "A"), cfg.num("soliton", "B"), rho1, rho2
    )


def cmd_convergence(cfg: RunConfig) -> tuple[list[list[Any]], list[Check]]:
    P = cfg.reduction()
    sc = sigma_coefficients(P)
    sol = GraySoliton(_soliton(cfg, sc.rho1, sc.rho2))
    Ns = [int(v) for v in cfg.numbers("convergence", "Ns")]
    if len(Ns) < 3:
        raise ValidationError("the N list needs at least 3 entries")
    if min(Ns) < 2:
        raise ValidationError("grid too small for stencils: every N must be >= 2")
    res = convergence_sweep(
        P,
        sol,
        Ns,
        n2_window=(cfg.num("convergence", "n2_min"), cfg.num("convergence", "n2_max")),
        m2_window=(cfg.num("convergence", "m2_min"), cfg.num("convergence", "m2_max")),
        n2_points=cfg.integer("convergence", "n2_points"),
        m2_points=cfg.integer("convergence", "m2_points"),
        second_harmonic=cfg.flag("convergence", "second_harmonic"),
    )
    rows: list[list[Any]] = [["N", "max_abs_residual"]]
    rows += [[N, r] for N, r in zip(res.Ns, res.residuals)]
    rows.append(["fitted_slope", res.slope if res.slope_defined else "undefined"])
    checks = []
    if res.slope_defined:
        lo, hi = cfg.tolerances["convergence_slope_min"], cfg.tolerances["convergence_slope_max"]
        if cfg.flag("convergence", "second_harmonic"):
            lo, hi = lo + 1, hi + 1
        checks.append(Check("convergence_slope", res.slope, lo, "range", hi))
    return rows, checks


def _lax_grid(u: Callable, h: float, half_width: float, duration: float) -> GridFunction:
    nx = int(round(half_width / h))
    nt = int(round(duration / h))
    return GridFunction.from_function(u, ("n2", "m2"), (2 * nx + 1, nt + 1), origin=(-nx, 0), spacing=(h, h))


def cmd_soliton_validate(cfg: RunConfig) -> tuple[dict[str, Any], list[Check]]:
    P = cfg.reduction()
    sc = sigma_coefficients(P)
    if not sc.rho1 * sc.rho2 < 0:
        raise ValidationError("focusing sign (rho1*rho2 >= 0): gray solitons are not defined")
    sp = _soliton(cfg, sc.rho1, sc.rho2)
    sol = GraySoliton(sp)
    tol = cfg.tolerances
    half, dur = cfg.num("lax", "half_width"), cfg.num("lax", "duration")
    # reduced dNLS on a slab of the slow lattice, closed-form derivatives
    slab = _lax_grid(sol.value, 0.1, half, dur)
    closed = dnls_reduced_residual(slab, sc.rho1, sc.rho2, "closed", soliton=sol).max_abs()
    # Lax pair in its normalized frame
    frame = lax_frame(sc.rho1, sc.rho2)
    lax_field = frame.field(sol.value)
    eta = complex(cfg.num("lax", "eta_re"), cfg.num("lax", "eta_im"))
    hs = cfg.numbers("lax", "hs")
    ell = cfg.integer("lax", "ell")
    step = cfg.num("lax", "step")
    central, stencil = [], []
    for h in hs:
        g = _lax_grid(lax_field, h, half, dur)
        central.append(zero_curvature_residual(g, eta, h, mode="central").max_abs())
        stencil.append(zero_curvature_residual(g, eta, h, mode="stencil", ell=ell, step=step).max_abs())
    slope = fit_slope(hs, central)
    ratio = stencil[-1] / central[-1] if central[-1] > 0 else math.inf
    checks = [
        Check("reduced_dnls_closed_form", closed, tol["soliton_residual"]),
        Check("zero_curvature_slope", slope, tol["lax_slope_min"], "range", tol["lax_slope_max"]),
        Check("finite_ell_floor_ratio", ratio, tol["lax_floor_ratio"], "min"),
    ]
    report = {
        "inputs": P.as_dict(),
        "soliton": sp.as_dict(),
        "classification": sp.classification,
        "reduced_dnls_residual_closed_form": closed,
        "lax_frame": frame.as_dict(),
        "eta": eta,
        "zero_curvature": {
            "h": hs,
            "central_residual": central,
            "central_slope": slope,
            "stencil_ell": ell,
            "stencil_step": step,
            "stencil_residual": stencil,
            "floor_ratio": ratio,
        },
        "checks": _checks_dict(checks),
    }
    return report, checks


def cmd_compare_continuous(cfg: RunConfig) -> tuple[dict[str, Any], list[Check]]:
    kappa = cfg.num("continuous", "kappa")
    chain = pkdv_chain(kappa)
    sp = _soliton(cfg, chain.rho1, chain.rho2)
    eps = cfg.numbers("continuous", "epsilons")
    if len(eps) < 2:
        raise ValidationError("need at least two epsilon values")
    sh = cfg.flag("continuous", "second_harmonic")
    res = []
    xi = np.linspace(-10, 10, 401)
    tau = np.linspace(0, 1, 21)
    XI, TAU = np.meshgrid(xi, tau)
    for e in eps:
        t = TAU / e**2
        x = XI / e + 3 * kappa**2 * t
        w = lambda xx, tt, e=e: reconstruct_continuous(sp, kappa, e, xx, tt, second_harmonic=sh)  # noqa: E731
        res.append(float(np.abs(pkdv_residual(w, x, t)).max()))
    slope = fit_slope(eps, res)  # residual ~ eps^slope
    lp = LpkdvParams(cfg.num("reduction", "p"), cfg.num("reduction", "q"))
    checks = [Check("continuous_slope", slope, cfg.tolerances["continuous_slope_min"], "min")]
    report = {
        "chain": chain.as_dict(),
        "soliton": sp.as_dict(),
        "epsilon": eps,
        "pkdv_residual": res,
        "decay_order": slope,
        "second_harmonic": sh,
        "phase_velocities": phase_velocities(kappa, lp),
        "checks": _checks_dict(checks),
    }
    return report, checks


def cmd_series_dump(cfg: RunConfig, fmt: str) -> str:
    which = cfg.get("series", "which")
    trunc = cfg.integer("series", "trunc")
    ell = cfg.integer("series", "ell")
    if which in ("P", "Q"):
        try:
            omega = Fraction(cfg.get("series", "omega"))
        except ValueError as exc:
            raise ValidationError("omega must be a rational like 1/2") from exc
        rows: list[list[Any]] = [["i", "j", "omega_num", "omega_den", "value_num", "value_den"]]
        rows += [list(r) for r in coefficient_table(omega, cfg.integer("series", "max_i"), inverse=(which == "Q"))]
        return to_csv(rows)
    sym = SymbolicReduction.default()
    if which in ("Tn", "Tm", "TnTm"):
        series = shift_expansion(which, ShiftScales((sym.M1,), (sym.M1tilde, sym.M2tilde, sym.M3tilde)), trunc, ell)
    elif which in ("L0", "L1", "L2", "L3"):
        series = linear_operator_L(int(which[1]), sym)
    elif which == "delta":
        try:
            variant = DiffVariant(cfg.get("series", "variant"))
        except ValueError as exc:
            raise ValidationError("variant must be forward, backward or symmetric") from exc
        series = delta_series(variant, ell)
    else:
        raise ValidationError(f"unknown series {which!r}")
    if fmt == "json":
        return to_json(series.to_records()) + "\n"
    if fmt == "csv":
        rows = [["monomial", "invN_power", "coefficient"]]
        rows += [[mono.operator_text(), mono.inv_n, str(c)] for mono, c in series]
        return to_csv(rows)
    return series.pretty() + "\n"


# -- entry point -------------------------------------------------------------------

_FLAG_MAP = {
    "p": ("reduction", "p"),
    "q": ("reduction", "q"),
    "kappa": ("reduction", "kappa"),
    "gamma": ("reduction", "gamma"),
    "r": ("reduction", "r"),
    "M2tilde": ("reduction", "M2tilde"),
    "N": ("reduction", "N"),
    "u0": ("soliton", "u0"),
    "A": ("soliton", "A"),
    "B": ("soliton", "B"),
    "Ns": ("convergence", "Ns"),
    "kappa_grid": ("dispersion", "kappa_grid"),
    "which": ("series", "which"),
    "trunc": ("series", "trunc"),
    "ell": ("series", "ell"),
    "variant": ("series", "variant"),
    "omega": ("series", "omega"),
    "eps": ("continuous", "epsilons"),
    "ckappa": ("continuous", "kappa"),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        # usage errors are validation failures; 2 is reserved for failed checks
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="latmscale", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, fmt_default: str) -> None:
        p.add_argument("--config", help="INI file with [section] key=value entries")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv", "text"), default=fmt_default)
        p.add_argument("--tol-override", action="append", default=[], metavar="NAME=VALUE")

    def reduction(p: argparse.ArgumentParser) -> None:
        for name in ("p", "q", "kappa", "gamma", "r", "M2tilde", "N"):
            p.add_argument(f"--{name}")

    def soliton(p: argparse.ArgumentParser) -> None:
        for name in ("u0", "A", "B"):
            p.add_argument(f"--{name}")

    p = sub.add_parser("coeffs", help="coefficient report with identity checks")
    common(p, "json")
    reduction(p)
    p = sub.add_parser("dispersion", help="(kappa, omega) table")
    common(p, "csv")
    p.add_argument("--p")
    p.add_argument("--q")
    p.add_argument("--kappa-grid", dest="kappa_grid", help="start:stop:num or comma list")
    p = sub.add_parser("convergence", help="lpKdV residual of the reconstruction against N")
    common(p, "csv")
    reduction(p)
    soliton(p)
    p.add_argument("--Ns", help="comma list of N")
    p = sub.add_parser("soliton-validate", help="reduced dNLS and Lax-pair checks")
    common(p, "json")
    reduction(p)
    soliton(p)
    p = sub.add_parser("compare-continuous", help="continuous pKdV chain and reconstruction")
    common(p, "json")
    soliton(p)
    p.add_argument("--kappa", dest="ckappa")
    p.add_argument("--eps", help="comma list of epsilon")
    p.add_argument("--p")
    p.add_argument("--q")
    p = sub.add_parser("series-dump", help="operator series or P/Q coefficient tables")
    common(p, "text")
    for name in ("which", "trunc", "ell", "variant", "omega"):
        p.add_argument(f"--{name}")
    return parser


def _render(obj: Any, fmt: str) -> str:
    if isinstance(obj, dict):
        if fmt == "csv":
            rows = [["key", "value"]] + [[k, v] for k, v in _flatten(obj)]
            return to_csv(rows)
        return to_json(obj) + "\n"
    if fmt == "json":
        header, *body = obj
        return to_json([dict(zip(header, row)) if len(row) == len(header) else list(row) for row in body]) + "\n"
    return to_csv(obj)


def _flatten(obj: Any, prefix: str = "") -> list[tuple[str, Any]]:
    out: list[tuple[str, Any]] = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            out += _flatten(obj[k], f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, (list, tuple)):
        for i, v in enumerate(obj):
            out += _flatten(v, f"{prefix}[{i}]")
    else:
        out.append((prefix, obj))
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    overrides = {}
    for name, target in _FLAG_MAP.items():
        val = getattr(args, name, None)
        if val is not None:
            overrides[target] = val
    try:
        cfg = load_config(args.config, overrides, args.tol_override)
        checks: list[Check] = []
        if args.command == "series-dump":
            text = cmd_series_dump(cfg, args.format)
        else:
            handler = {
                "coeffs": cmd_coeffs,
                "dispersion": cmd_dispersion,
                "convergence": cmd_convergence,
                "soliton-validate": cmd_soliton_validate,
                "compare-continuous": cmd_compare_continuous,
            }[args.command]
            result, checks = handler(cfg)
            fmt = args.format if args.format != "text" else ("json" if isinstance(result, dict) else "csv")
            text = _render(result, fmt)
    except (ValueError, ConsistencyError) as exc:
        print(f"latmscale: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        print(f"latmscale: failed checks: {', '.join(failed)}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
