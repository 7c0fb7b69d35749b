"""Reduced NLS layer: gray solitons, dNLS residuals, Lax pair, continuous chain."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial import Polynomial

from .lpkdv import LpkdvParams, dispersion
from .opcalc.grid import GridFunction
from .opcalc.series import DELTA, DiffVariant, OperatorMonomial, OperatorSeries, series_stencil

__all__ = [
    "SolitonParams",
    "GraySoliton",
    "dnls_reduced_residual",
    "dnls_local_residual",
    "LaxMatrices",
    "lax_matrices",
    "LaxFrame",
    "lax_frame",
    "ZeroCurvatureResidual",
    "zero_curvature_residual",
    "PkdvChain",
    "pkdv_chain",
    "reconstruct_continuous",
    "pkdv_residual",
    "phase_velocities",
    "fit_slope",
]


@dataclass(frozen=True)
class SolitonParams:
    """Gray-soliton parameters (u0, A, B) for i u_t = rho1 u_xx + rho2 |u|^2 u."""

    u0: float
    A: float
    B: float
    rho1: float
    rho2: float

    def __post_init__(self) -> None:
        if not self.rho1 * self.rho2 < 0:
            raise ValueError(
                "gray solitons need rho1*rho2 < 0 (defocusing); no bright soliton is provided"
            )

    def with_rho(self, rho1: float, rho2: float) -> "SolitonParams":
        return SolitonParams(self.u0, self.A, self.B, rho1, rho2)

    @property
    def eta0(self) -> float:
        return self.u0 * self.B * math.sqrt(self.rho2 / (-2 * self.rho1))

    @property
    def ue(self) -> float:
        return self.u0 * self.A

    @property
    def eta1(self) -> float:
        # the sign factor carries the family over to the rho1 > 0 > rho2 branch
        # (complex conjugation maps one branch onto the other)
        return math.copysign(1.0, self.rho2) * self.A / math.sqrt(-2 * self.rho1 * self.rho2)

    @property
    def eta2(self) -> float:
        return 0.5 * self.u0**2 * (2 * self.rho2 * self.B**2 - self.A**2 / self.rho1)

    @property
    def dark(self) -> bool:
        return self.A == 0

    @property
    def classification(self) -> str:
        return "dark" if self.dark else "gray"

    def as_dict(self) -> dict[str, float | str]:
        return {
            "u0": self.u0,
            "A": self.A,
            "B": self.B,
            "rho1": self.rho1,
            "rho2": self.rho2,
            "eta0": self.eta0,
            "eta1": self.eta1,
            "eta2": self.eta2,
            "ue": self.ue,
            "classification": self.classification,
        }


_ONE_MINUS_T2 = Polynomial([1.0, 0.0, -1.0])


def _dz(p: Polynomial) -> Polynomial:
    # d/dz of p(tanh z)
    return p.deriv() * _ONE_MINUS_T2


class GraySoliton:
    """u0 {B tanh[eta0 (x - ue t)] + i eta1} exp(-i eta2 t) with exact derivatives."""

    def __init__(self, sp: SolitonParams) -> None:
        self.sp = sp
        self._profile = Polynomial([1j * sp.u0 * sp.eta1, sp.u0 * sp.B])

    def _z(self, x, t):
        return self.sp.eta0 * (np.asarray(x, dtype=float) - self.sp.ue * np.asarray(t, dtype=float))

    def value(self, x, t):
        return self.derivative(x, t, 0, 0)

    __call__ = value

    def derivative(self, x, t, a: int = 0, c: int = 0):
        """d^a/dx^a d^c/dt^c of the soliton."""
        sp = self.sp
        # apply d/dt = -eta0 ue D - i eta2 and d/dx = eta0 D to the profile polynomial;
        # the phase factor exp(-i eta2 t) is restored at the end
        polys = {0: self._profile}
        for _ in range(c):
            nxt: dict[int, Polynomial] = {}
            for j, p in polys.items():
                nxt[j + 1] = nxt.get(j + 1, Polynomial([0])) + p * (-sp.eta0 * sp.ue)
                nxt[j] = nxt.get(j, Polynomial([0])) + p * (-1j * sp.eta2)
            polys = nxt
        total = Polynomial([0j])
        for j, p in polys.items():
            q = p
            for _ in range(j + a):
                q = _dz(q)
            total = total + q * sp.eta0**a
        t_arr = np.asarray(t, dtype=float)
        th = np.tanh(self._z(x, t))
        return total(th) * np.exp(-1j * sp.eta2 * t_arr)

    def intensity(self, x, t):
        v = self.value(x, t)
        return (v * np.conj(v)).real

    def zero_harmonic(self, x, t, alpha1: complex, a: int = 0, c: int = 0):
        """Derivatives of alpha1 [u0^2 (B^2 + eta1^2) x - u0^2 B^2 / eta0 tanh(eta0 (x - ue t))].

        Its x-derivative is alpha1 |u|^2.
        """
        sp = self.sp
        x_arr = np.asarray(x, dtype=float)
        out = np.zeros(np.broadcast(x_arr, np.asarray(t, dtype=float)).shape, dtype=complex)
        lin = sp.u0**2 * (sp.B**2 + sp.eta1**2)
        if c == 0:
            if a == 0:
                out = out + lin * x_arr
            elif a == 1:
                out = out + lin
        if sp.eta0 != 0:
            p = Polynomial([0.0, -(sp.u0**2) * sp.B**2 / sp.eta0])
            for _ in range(a + c):
                p = _dz(p)
            factor = sp.eta0**a * (-sp.eta0 * sp.ue) ** c
            out = out + factor * p(np.tanh(self._z(x, t)))
        return alpha1 * out


# -- dNLS residuals --------------------------------------------------------------


def _delta_stencil(axis: str, power: int, ell: int, variant: DiffVariant | str) -> dict[int, float]:
    mono = OperatorMonomial.make({(axis, DELTA): power})
    st = series_stencil(OperatorSeries({mono: 1}), ell=ell, variant=variant)
    return {dict(k).get(axis, 0): float(v) for k, v in st.items()}


def _apply_1d(f: GridFunction, axis: str, stencil: dict[int, float], step_cells: int = 1):
    out = 0
    ok = f.valid.copy()
    for off, c in stencil.items():
        vals, v = f.shifted({axis: off * step_cells})
        out = out + c * vals
        ok &= v
    return out, ok


def dnls_reduced_residual(
    u: GridFunction,
    rho1: float,
    rho2: float,
    mode: str = "stencil",
    *,
    ell: int | None = None,
    variant: DiffVariant | str = DiffVariant.FORWARD,
    soliton: GraySoliton | None = None,
) -> GridFunction:
    """i d_m2 u - rho1 d_n2^2 u - rho2 |u|^2 u on an (n2, m2) grid.

    ``stencil`` realizes each delta by its truncated difference series at
    order ``ell`` per grid step (divided by the spacing); ``closed`` uses
    the exact derivatives of ``soliton`` at the grid coordinates.
    """
    if set(u.axes) != {"n2", "m2"}:
        raise ValueError("dnls_reduced_residual expects axes (n2, m2)")
    vals = np.asarray(u.values, dtype=complex)
    if mode == "closed":
        if soliton is None:
            raise ValueError("closed-form mode needs the analytic soliton")
        X, T = _mesh(u)
        ut = soliton.derivative(X, T, 0, 1)
        uxx = soliton.derivative(X, T, 2, 0)
        v = soliton.value(X, T)
        res = 1j * ut - rho1 * uxx - rho2 * (v * np.conj(v)) * v
        return u.with_values(res)
    if mode != "stencil":
        raise ValueError("mode must be 'stencil' or 'closed'")
    if ell is None:
        raise ValueError("stencil mode needs ell")
    hx = u.spacing[u.axes.index("n2")]
    ht = u.spacing[u.axes.index("m2")]
    ut, ok1 = _apply_1d(u, "m2", _delta_stencil("m2", 1, ell, variant))
    uxx, ok2 = _apply_1d(u, "n2", _delta_stencil("n2", 2, ell, variant))
    res = 1j * ut / ht - rho1 * uxx / hx**2 - rho2 * (vals * np.conj(vals)) * vals
    ok = ok1 & ok2
    if not ok.any():
        raise ValueError("grid too small for the stencil margins")
    return u.with_values(res, ok)


def _mesh(u: GridFunction):
    x = u.coordinates("n2")
    t = u.coordinates("m2")
    if u.axes == ("n2", "m2"):
        return np.meshgrid(x, t, indexing="ij")
    T, X = np.meshgrid(t, x, indexing="ij")
    return X, T


def dnls_local_residual(phi: GridFunction, c1: float, c2: float) -> GridFunction:
    """i(phi_{n,m+1} - phi) + c1 (phi_{n+1} - 2 phi + phi_{n-1}) + c2 phi |phi|^2."""
    f = np.asarray(phi.values, dtype=complex)
    up, v1 = phi.shifted({"m": 1})
    east, v2 = phi.shifted({"n": 1})
    west, v3 = phi.shifted({"n": -1})
    res = 1j * (up - f) + c1 * (east - 2 * f + west) + c2 * f * (f * np.conj(f))
    return phi.with_values(res, phi.valid & v1 & v2 & v3)


# -- Lax pair --------------------------------------------------------------------


@dataclass(frozen=True)
class LaxMatrices:
    U: np.ndarray
    V: np.ndarray
    eta: complex

    def commutator(self) -> np.ndarray:
        return _matmul(self.U, self.V) - _matmul(self.V, self.U)

    def det_U(self) -> np.ndarray:
        return self.U[0, 0] * self.U[1, 1] - self.U[0, 1] * self.U[1, 0]


def _matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.einsum("ij...,jk...->ik...", a, b)


def lax_matrices(u, u_conj, du_dn2, eta: complex, du_conj=None) -> LaxMatrices:
    """U = [[i eta, u], [ubar, -i eta]] and the matching time matrix V.

    Entries broadcast over array-valued fields (shape (2, 2, ...))."""
    u = np.asarray(u, dtype=complex)
    ub = np.asarray(u_conj, dtype=complex)
    du = np.asarray(du_dn2, dtype=complex)
    dub = np.conj(du) if du_conj is None else np.asarray(du_conj, dtype=complex)
    one = np.ones(np.broadcast(u, ub, du).shape, dtype=complex)
    mod2 = u * ub
    U = np.array([[1j * eta * one, u * one], [ub * one, -1j * eta * one]])
    V = np.array(
        [
            [(2j * eta**2 + 1j * mod2) * one, (2 * eta * u - 1j * du) * one],
            [(2 * eta * ub + 1j * dub) * one, (-2j * eta**2 - 1j * mod2) * one],
        ]
    )
    return LaxMatrices(U, V, eta)


@dataclass(frozen=True)
class LaxFrame:
    """u(n2, m2) = a v(b n2, c m2) maps i u_m2 = rho1 u'' + rho2 |u|^2 u to i v_t = v_xx - 2 |v|^2 v."""

    a: float
    b: float
    c: float

    def field(self, u: Callable) -> Callable:
        return lambda x, t: u(x / self.b, t / self.c) / self.a

    def as_dict(self) -> dict[str, float]:
        return {"a": self.a, "b": self.b, "c": self.c}


def lax_frame(rho1: float, rho2: float, b: float = 1.0) -> LaxFrame:
    if not rho1 * rho2 < 0:
        raise ValueError("the Lax normalization needs rho1*rho2 < 0")
    return LaxFrame(math.sqrt(-2 * rho1 * b**2 / rho2), b, rho1 * b**2)


@dataclass
class ZeroCurvatureResidual:
    values: np.ndarray  # (2, 2, nx, nt)
    valid: np.ndarray
    h: float
    has_nan: bool = False

    def max_abs(self) -> float:
        data = np.abs(self.values)[:, :, self.valid]
        return float(data.max()) if data.size else 0.0


def _central(f: np.ndarray, axis: int, h: float) -> np.ndarray:
    return (np.roll(f, -1, axis=axis) - np.roll(f, 1, axis=axis)) / (2 * h)


def zero_curvature_residual(
    u_field: GridFunction,
    eta: complex,
    h: float | None = None,
    *,
    mode: str = "central",
    ell: int | None = None,
    step: float = 1.0,
    variant: DiffVariant | str = DiffVariant.FORWARD,
) -> ZeroCurvatureResidual:
    """d_m2 U - d_n2 V + [U, V] on an (n2, m2) grid of spacing h.

    Outer derivatives are central differences at spacing ``h``.  In
    ``central`` mode the derivative inside V is central too.  In
    ``stencil`` mode it is the ``ell``-truncated delta series on a slow
    lattice of step ``step`` (i.e. shifts of step/h cells), the finite
    slow-varyness reading of the Lax pair.
    """
    if u_field.axes != ("n2", "m2"):
        raise ValueError("zero_curvature_residual expects axes ('n2', 'm2')")
    hx, ht = u_field.spacing
    if h is None:
        h = hx
    if abs(hx - h) > 1e-12 * h or abs(ht - h) > 1e-12 * h:
        raise ValueError("grid spacing must equal h on both axes")
    u = np.asarray(u_field.values, dtype=complex)
    nx, nt = u.shape
    if mode == "central":
        du = _central(u, 0, h)
        margin = 1
    elif mode == "stencil":
        if ell is None:
            raise ValueError("stencil mode needs ell")
        cells = int(round(step / h))
        if cells < 1:
            raise ValueError("step must be at least one grid spacing")
        st = _delta_stencil("n2", 1, ell, variant)
        du = sum(c * np.roll(u, -off * cells, axis=0) for off, c in st.items()) / (cells * h)
        margin = max(abs(o) for o in st) * cells
    else:
        raise ValueError("mode must be 'central' or 'stencil'")
    lm = lax_matrices(u, np.conj(u), du, eta)
    res = _central(lm.U, 3, h) - _central(lm.V, 2, h) + lm.commutator()
    valid = np.zeros((nx, nt), dtype=bool)
    lo = margin + 1
    if nx > 2 * lo and nt > 2:
        valid[lo : nx - lo, 1 : nt - 1] = True
    valid &= u_field.valid
    nan = bool(np.isnan(res[:, :, valid]).any())
    if nan:
        warnings.warn("NaN in zero-curvature residual", RuntimeWarning, stacklevel=2)
    return ZeroCurvatureResidual(res, valid, h, nan)


# -- continuous pKdV chain ------------------------------------------------------------


@dataclass(frozen=True)
class PkdvChain:
    kappa: float
    omega: float
    alpha1: float
    rho1: float
    rho2: float
    w22_factor: complex

    def as_dict(self) -> dict[str, object]:
        return {
            "kappa": self.kappa,
            "omega": self.omega,
            "alpha1": self.alpha1,
            "rho1": self.rho1,
            "rho2": self.rho2,
            "w22_factor": self.w22_factor,
        }


def pkdv_chain(kappa: float) -> PkdvChain:
    """Reduction data of w_t = w_xxx + 3 w_x^2 around the carrier exp(i(kappa x - kappa^3 t))."""
    if kappa == 0:
        raise ValueError("kappa = 0 is a pole of the second-harmonic factor")
    return PkdvChain(kappa, kappa**3, -2, -3 * kappa, 6 * kappa, 1j / (2 * kappa))


def reconstruct_continuous(
    sp: SolitonParams,
    kappa: float,
    epsilon: float,
    x,
    t,
    *,
    second_harmonic: bool = False,
):
    """epsilon-order approximate pKdV solution built on the gray soliton.

    The soliton shape (u0, A, B) of ``sp`` is used with the continuous
    coefficients rho1 = -3 kappa, rho2 = 6 kappa.  With ``second_harmonic``
    the epsilon^2 term (i/2kappa) w^2 e^{2ib} + c.c. is added.
    """
    chain = pkdv_chain(kappa)
    sol = GraySoliton(sp.with_rho(chain.rho1, chain.rho2))
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    xi = epsilon * (x - 3 * kappa**2 * t)
    tau = epsilon**2 * t
    v = sol.value(xi, tau)
    carrier = np.exp(1j * (kappa * x - chain.omega * t))
    w = 2 * (v * carrier).real + sol.zero_harmonic(xi, tau, chain.alpha1).real
    out = epsilon * w
    if second_harmonic:
        out = out + epsilon**2 * 2 * (chain.w22_factor * v**2 * carrier**2).real
    return out


_D1 = np.array([1 / 280, -4 / 105, 1 / 5, -4 / 5, 0, 4 / 5, -1 / 5, 4 / 105, -1 / 280])
_D3 = np.array([-7 / 240, 3 / 10, -169 / 120, 61 / 30, 0, -61 / 30, 169 / 120, -3 / 10, 7 / 240])
_OFF = np.arange(-4, 5)


def pkdv_residual(w: Callable, x, t, h: float = 1e-2):
    """w_t - w_xxx - 3 w_x^2 by eighth-order central differences of a callable."""
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    wx = sum(c * w(x + o * h, t) for c, o in zip(_D1, _OFF)) / h
    wxxx = sum(c * w(x + o * h, t) for c, o in zip(_D3, _OFF)) / h**3
    wt = sum(c * w(x, t + o * h) for c, o in zip(_D1, _OFF)) / h
    return wt - wxxx - 3 * wx**2


def phase_velocities(kappa: float, params: LpkdvParams) -> dict[str, float]:
    """Carrier phase velocities omega/kappa of the lattice and the continuous reduction."""
    return {
        "kappa": kappa,
        "lattice_omega": dispersion(kappa, params),
        "lattice_phase_velocity": dispersion(kappa, params) / kappa,
        "continuous_omega": kappa**3,
        "continuous_phase_velocity": kappa**2,
    }


def fit_slope(xs, ys) -> float:
    """Least-squares slope of log(ys) against log(xs); nan if any y is zero."""
    xs = np.asarray(xs, dtype=float)
    ys = np.asarray(ys, dtype=float)
    if np.any(ys <= 0) or not np.all(np.isfinite(ys)):
        return float("nan")
    return float(np.polyfit(np.log(xs), np.log(ys), 1)[0])
