"""The lattice potential KdV equation on the (n, m) lattice.

The residual is written in the split form

    P = mu (T_n T_m u - u) + zeta (T_n u - T_m u) - (T_n u - T_m u)(T_n T_m u - u)

with ``mu = p - q`` and ``zeta = p + q``.  The product form
``(p - q + u_{n,m+1} - u_{n+1,m})(p + q - u_{n+1,m+1} + u_{n,m}) - (p^2 - q^2)``
is its negative and is available through ``form="product"``.
"""

from __future__ import annotations

import io
import math
import warnings
from dataclasses import dataclass

import numpy as np

from .opcalc.grid import GridFunction

__all__ = [
    "LpkdvParams",
    "PlaneWaveSpec",
    "dispersion",
    "linear_symbol",
    "plane_wave",
    "lpkdv_residual",
    "linear_part_residual",
    "nonlinear_part_residual",
    "lpkdv_residual_pointwise",
    "residual_csv",
]


@dataclass(frozen=True)
class LpkdvParams:
    p: float
    q: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.p) and math.isfinite(self.q)):
            raise ValueError("p and q must be finite")
        if self.p == self.q:
            raise ValueError("p must differ from q (mu = p - q vanishes)")
        if self.p == -self.q:
            raise ValueError("p must differ from -q (zeta = p + q vanishes)")

    @property
    def mu(self) -> float:
        return self.p - self.q

    @property
    def zeta(self) -> float:
        return self.p + self.q


def dispersion(kappa, params: LpkdvParams, *, warn: bool = True):
    """omega(kappa) = -2 arctan((p/q) tan(kappa/2)), principal branch.

    At kappa = pi (mod 2pi) the value is the limit -pi*sign(p/q) taken from
    below; a warning is issued there.
    """
    if params.q == 0:
        raise ValueError("dispersion needs q != 0")
    k = np.asarray(kappa, dtype=float)
    ratio = params.p / params.q
    half = k / 2.0
    pole = np.abs(np.cos(half)) < 1e-12
    if warn and np.any(pole):
        warnings.warn("kappa at the tan(kappa/2) pole; returning the limiting value", stacklevel=2)
    with np.errstate(over="ignore"):
        omega = -2.0 * np.arctan(ratio * np.tan(half))
    omega = np.where(pole, -np.pi * np.sign(ratio), omega)
    return float(omega) if np.ndim(omega) == 0 else omega


def linear_symbol(kappa, omega, params: LpkdvParams):
    """mu (e^{i(kappa - omega)} - 1) + zeta (e^{i kappa} - e^{-i omega})."""
    k = np.asarray(kappa, dtype=float)
    w = np.asarray(omega, dtype=float)
    out = params.mu * (np.exp(1j * (k - w)) - 1) + params.zeta * (np.exp(1j * k) - np.exp(-1j * w))
    return complex(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class PlaneWaveSpec:
    kappa: float
    omega: float
    amplitude: complex = 1.0
    on_shell: bool = True

    @classmethod
    def on_shell_wave(cls, kappa: float, params: LpkdvParams, amplitude: complex = 1.0) -> "PlaneWaveSpec":
        return cls(kappa, dispersion(kappa, params), amplitude, True)

    def check(self, params: LpkdvParams, tol: float = 1e-12) -> None:
        if self.on_shell:
            # compare modulo 2 pi
            d = math.remainder(self.omega - dispersion(self.kappa, params, warn=False), 2 * math.pi)
            if abs(d) > tol:
                raise ValueError(f"omega is off-shell by {d:.3g}")


def plane_wave(
    spec: PlaneWaveSpec,
    shape: tuple[int, int],
    *,
    origin: tuple[int, int] = (0, 0),
    boundary: str = "clamped",
) -> GridFunction:
    """amplitude * exp(i (kappa n - omega m)) on an (n, m) box."""
    return GridFunction.from_function(
        lambda n, m: spec.amplitude * np.exp(1j * (spec.kappa * n - spec.omega * m)),
        ("n", "m"),
        shape,
        origin=origin,
        boundary=boundary,
    )


def _shifts(u: GridFunction):
    for axis in ("n", "m"):
        if axis not in u.axes:
            raise ValueError(f"lpKdV fields need fast axes n and m, got {u.axes}")
        if u.extents[axis] < 2:
            raise ValueError("lpKdV residual needs at least 2 x 2 cells")
    tn, vn = u.shifted({"n": 1})
    tm, vm = u.shifted({"m": 1})
    tnm, vnm = u.shifted({"n": 1, "m": 1})
    return u.values, tn, tm, tnm, u.valid & vn & vm & vnm


def linear_part_residual(u: GridFunction, params: LpkdvParams) -> GridFunction:
    f, tn, tm, tnm, ok = _shifts(u)
    return u.with_values(params.mu * (tnm - f) + params.zeta * (tn - tm), ok)


def nonlinear_part_residual(u: GridFunction, params: LpkdvParams) -> GridFunction:
    f, tn, tm, tnm, ok = _shifts(u)
    return u.with_values((tn - tm) * (tnm - f), ok)


def lpkdv_residual(u: GridFunction, params: LpkdvParams, form: str = "split") -> GridFunction:
    """Residual at every cell whose stencil (n..n+1, m..m+1) is in the box."""
    f, tn, tm, tnm, ok = _shifts(u)
    mu, zeta = params.mu, params.zeta
    if form == "split":
        vals = mu * (tnm - f) + zeta * (tn - tm) - (tn - tm) * (tnm - f)
    elif form == "product":
        vals = (mu + tm - tn) * (zeta - tnm + f) - mu * zeta
    else:
        raise ValueError("form must be 'split' or 'product'")
    return u.with_values(vals, ok)


def lpkdv_residual_pointwise(u_func, n, m, params: LpkdvParams):
    """Split-form residual of a callable field ``u_func(n, m)`` at given cells."""
    f = u_func(n, m)
    tn = u_func(n + 1, m)
    tm = u_func(n, m + 1)
    tnm = u_func(n + 1, m + 1)
    return params.mu * (tnm - f) + params.zeta * (tn - tm) - (tn - tm) * (tnm - f)


def residual_csv(res: GridFunction) -> str:
    """CSV rows ``n,m,re,im`` over the valid cells, 12 significant digits."""
    if res.axes != ("n", "m"):
        raise ValueError("residual_csv expects an (n, m) grid")
    buf = io.StringIO()
    buf.write("n,m,re,im\n")
    ns = res.coordinates("n", physical=False)
    ms = res.coordinates("m", physical=False)
    vals = np.asarray(res.values, dtype=complex)
    for i, n in enumerate(ns):
        for j, m in enumerate(ms):
            if res.valid[i, j]:
                z = vals[i, j]
                buf.write(f"{n},{m},{z.real:.12g},{z.imag:.12g}\n")
    return buf.getvalue()
