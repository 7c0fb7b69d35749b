"""Reconstruction of approximate lpKdV solutions from a reduced-NLS solution."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Any, Sequence

import numpy as np

from ..lpkdv import lpkdv_residual_pointwise
from ..nls import GraySoliton, SolitonParams, fit_slope
from ..opcalc.grid import GridFunction
from .coefficients import alpha_coefficients, rho_coefficients
from .fields import AnalyticFieldSet, HarmonicField, delta_antiderivative
from .params import ReductionParams

__all__ = [
    "Approximation",
    "assemble_approximation",
    "soliton_field_set",
    "default_soliton",
    "ConvergenceResult",
    "convergence_sweep",
]


def default_soliton(params: ReductionParams, u0: float = 1.0, A: float = 0.5, B: float = 1.0) -> GraySoliton:
    r1, r2 = rho_coefficients(params)
    return GraySoliton(SolitonParams(u0, A, B, r1, r2))


def soliton_field_set(sol: GraySoliton, params: ReductionParams, template: GridFunction) -> AnalyticFieldSet:
    """u_1^(1) = soliton with u_1^(0), u_2^(2) from their closures, in closed form."""
    a1, a2 = alpha_coefficients(params)

    def u22(x, t, a, c):
        # Leibniz rule for alpha2 * u^2
        total = 0
        for i in range(a + 1):
            for j in range(c + 1):
                total = total + comb(a, i) * comb(c, j) * sol.derivative(x, t, i, j) * sol.derivative(x, t, a - i, c - j)
        return a2 * total

    derivs = {
        (1, 1): sol.derivative,
        (1, 0): lambda x, t, a, c: sol.zero_harmonic(x, t, a1, a, c),
        (2, 2): u22,
    }
    return AnalyticFieldSet(derivs, params.gamma, template)


class _Sampled:
    """Nearest-sample lookup of a field on an (n2, m2) grid."""

    def __init__(self, g: GridFunction) -> None:
        if g.axes != ("n2", "m2"):
            raise ValueError("sampled harmonic fields must live on an (n2, m2) grid")
        self.g = g
        self.x = g.coordinates("n2")
        self.t = g.coordinates("m2")
        self.max_offset = [0.0, 0.0]

    def _index(self, coords: np.ndarray, axis_vals: np.ndarray, slot: int) -> np.ndarray:
        h = axis_vals[1] - axis_vals[0] if len(axis_vals) > 1 else 1.0
        idx = np.clip(np.rint((coords - axis_vals[0]) / h).astype(int), 0, len(axis_vals) - 1)
        off = np.abs(axis_vals[idx] - coords)
        if off.size:
            self.max_offset[slot] = max(self.max_offset[slot], float(off.max()))
        return idx

    def __call__(self, x: np.ndarray, t: np.ndarray, values: np.ndarray | None = None) -> np.ndarray:
        i = self._index(np.asarray(x, dtype=float), self.x, 0)
        j = self._index(np.asarray(t, dtype=float), self.t, 1)
        data = self.g.values if values is None else values
        return np.asarray(data)[i, j]


@dataclass
class Approximation:
    """u_{n,m} = (1/N)[u11 e^{i theta} + c.c. + u10] (+ (1/N^2)[u22 e^{2i theta} + c.c.]).

    theta = kappa n - omega m; the slow fields are taken at
    n2 = (M1 n + gamma M1t m)/N and m2 = M2t m / N^2.
    """

    params: ReductionParams
    source: Any
    second_harmonic: bool = False
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        a1, a2 = alpha_coefficients(self.params)
        self.alpha1, self.alpha2 = a1, a2
        if isinstance(self.source, HarmonicField):
            if (self.source.k, self.source.alpha) != (1, 1):
                raise ValueError("the reconstruction is driven by u_1^(1)")
            g = self.source.data
            self._lookup = _Sampled(g)
            intensity = g.with_values(np.abs(np.asarray(g.values, dtype=complex)) ** 2)
            if intensity.boundary != "clamped":
                intensity = GridFunction(intensity.values, g.axes, "clamped", None, g.origin, g.spacing)
            self._u10 = a1 * delta_antiderivative(intensity, "n2", ell=self.params.ell).values
        elif not isinstance(self.source, GraySoliton):
            raise TypeError("source must be a GraySoliton or a sampled HarmonicField")

    def slow_fields(self, n2, m2):
        if isinstance(self.source, GraySoliton):
            u11 = self.source.value(n2, m2)
            u10 = self.source.zero_harmonic(n2, m2, self.alpha1)
        else:
            u11 = self._lookup(n2, m2)
            u10 = self._lookup(n2, m2, self._u10)
            self.meta["nearest_offset_n2"] = self._lookup.max_offset[0]
            self.meta["nearest_offset_m2"] = self._lookup.max_offset[1]
        return u11, u10

    def __call__(self, n, m):
        P = self.params
        n = np.asarray(n, dtype=float)
        m = np.asarray(m, dtype=float)
        _, _, n2, m2 = P.slow_coordinates(n, m)
        u11, u10 = self.slow_fields(n2, m2)
        E = np.exp(1j * P.carrier_phase(n, m))
        out = (2 * (u11 * E).real + np.real(u10)) / P.N
        if self.second_harmonic:
            out = out + 2 * (self.alpha2 * u11**2 * E**2).real / P.N**2
        return out


def assemble_approximation(
    u11: GraySoliton | HarmonicField,
    params: ReductionParams,
    *,
    shape: tuple[int, int] = (64, 64),
    origin: tuple[int, int] = (0, 0),
    second_harmonic: bool = False,
) -> GridFunction:
    """The real lattice field on an (n, m) box.

    Sampled inputs are read at the nearest slow sample (no interpolation);
    the largest coordinate offset is recorded in ``meta``.
    """
    approx = Approximation(params, u11, second_harmonic)
    ns = origin[0] + np.arange(shape[0])
    ms = origin[1] + np.arange(shape[1])
    Nn, Mm = np.meshgrid(ns, ms, indexing="ij")
    vals = approx(Nn, Mm)
    g = GridFunction(vals, ("n", "m"), "clamped", None, origin)
    g.meta.update(approx.meta)
    g.meta["second_harmonic"] = second_harmonic
    return g


@dataclass
class ConvergenceResult:
    Ns: list[int]
    residuals: list[float]
    slope: float  # decay order: residual ~ N^(-slope)
    amplitudes: list[float]

    @property
    def slope_defined(self) -> bool:
        return bool(np.isfinite(self.slope))


def convergence_sweep(
    params: ReductionParams,
    source: GraySoliton | None = None,
    Ns: Sequence[int] = (8, 16, 32, 64, 128),
    *,
    n2_window: tuple[float, float] = (-15.0, 15.0),
    m2_window: tuple[float, float] = (0.0, 2.0),
    n2_points: int = 301,
    m2_points: int = 41,
    second_harmonic: bool = False,
) -> ConvergenceResult:
    """Max lpKdV residual of the reconstruction for each N.

    For every (n2, m2) sample of the slow window the nearest lattice cell
    is m = round(m2 N^2 / M2t), n = round((n2 N - gamma M1t m) / M1) and
    the residual is taken on its elementary quad.
    """
    if len(Ns) < 3:
        raise ValueError("a slope needs at least 3 values of N")
    if source is None:
        source = default_soliton(params)
    x = np.linspace(*n2_window, n2_points)
    t = np.linspace(*m2_window, m2_points)
    X, T = np.meshgrid(x, t, indexing="ij")
    res, amps = [], []
    for N in Ns:
        P = params.with_N(int(N))
        approx = Approximation(P, source, second_harmonic)
        m = np.rint(T * N**2 / P.M2tilde)
        n = np.rint((X * N - P.gamma * P.m1tilde * m) / P.m1)
        r = lpkdv_residual_pointwise(approx, n, m, P.lpkdv)
        res.append(float(np.max(np.abs(r))))
        amps.append(float(np.max(np.abs(approx(n, m)))))
    return ConvergenceResult([int(N) for N in Ns], res, -fit_slope(Ns, res), amps)
