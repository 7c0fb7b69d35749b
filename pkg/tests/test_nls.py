import math

import numpy as np
import pytest
import sympy as sp

from latmscale.lpkdv import LpkdvParams, dispersion
from latmscale.nls import (
    GraySoliton,
    SolitonParams,
    dnls_local_residual,
    dnls_reduced_residual,
    fit_slope,
    lax_frame,
    lax_matrices,
    phase_velocities,
    pkdv_chain,
    pkdv_residual,
    reconstruct_continuous,
    zero_curvature_residual,
)
from latmscale.opcalc import GridFunction

RHOS = [(-2.4, 0.12), (-3.0, 6.0), (1.0, -2.0), (0.5, -0.1)]


def slab(fn, h=0.05, half=6.0, dur=1.0):
    nx, nt = int(round(half / h)), int(round(dur / h))
    return GridFunction.from_function(fn, ("n2", "m2"), (2 * nx + 1, nt + 1), origin=(-nx, 0), spacing=(h, h), boundary="clamped")


@pytest.mark.parametrize("rho", RHOS)
def test_closed_form_soliton_residual(rho):
    sol = GraySoliton(SolitonParams(0.7, 0.3, 1.1, *rho))
    res = dnls_reduced_residual(slab(sol.value, 0.1), *rho, "closed", soliton=sol)
    assert res.max_abs() < 1e-10


@pytest.mark.parametrize("rho", [(-sp.Rational(1, 2), sp.Rational(1, 10)), (sp.Rational(1, 2), -sp.Rational(1, 10))])
def test_symbolic_soliton_oracle(rho):
    x, t = sp.symbols("x t", real=True)
    u0, A, B = sp.Rational(7, 10), sp.Rational(3, 10), sp.Rational(11, 10)
    r1, r2 = rho
    sign = 1 if r2 > 0 else -1
    e0 = u0 * B * sp.sqrt(r2 / (-2 * r1))
    e1 = sign * A / sp.sqrt(-2 * r1 * r2)
    e2 = sp.Rational(1, 2) * u0**2 * (2 * r2 * B**2 - A**2 / r1)
    u = u0 * (B * sp.tanh(e0 * (x - u0 * A * t)) + sp.I * e1) * sp.exp(-sp.I * e2 * t)
    res = sp.I * sp.diff(u, t) - r1 * sp.diff(u, x, 2) - r2 * u * sp.conjugate(u) * u
    for xv, tv in [(0.3, 0.2), (-1.1, 0.7), (2.0, 1.5)]:
        assert abs(complex(res.subs({x: xv, t: tv}).evalf())) < 1e-12
    sol = GraySoliton(SolitonParams(0.7, 0.3, 1.1, float(r1), float(r2)))
    for xv, tv in [(0.3, 0.2), (-1.1, 0.7)]:
        assert abs(sol.value(xv, tv) - complex(u.subs({x: xv, t: tv}).evalf())) < 1e-12


def test_exact_derivatives_match_finite_differences():
    sol = GraySoliton(SolitonParams(0.9, 0.4, 1.2, -2.4, 0.12))
    x, t, h = 0.37, 0.81, 1e-4
    d = lambda a, c: sol.derivative(x, t, a, c)  # noqa: E731
    assert abs(d(1, 0) - (sol.value(x + h, t) - sol.value(x - h, t)) / (2 * h)) < 1e-7
    assert abs(d(0, 1) - (sol.value(x, t + h) - sol.value(x, t - h)) / (2 * h)) < 1e-7
    fd2 = (sol.derivative(x + h, t, 1, 1) - sol.derivative(x - h, t, 1, 1)) / (2 * h)
    assert abs(d(2, 1) - fd2) < 1e-6


def test_zero_harmonic_is_intensity_antiderivative():
    sol = GraySoliton(SolitonParams(0.9, 0.4, 1.2, -2.4, 0.12))
    x = np.linspace(-4, 4, 17)
    a1 = -0.3 + 0.1j
    assert np.allclose(sol.zero_harmonic(x, 0.5, a1, 1, 0), a1 * sol.intensity(x, 0.5), atol=1e-14)
    h = 1e-5
    fd = (sol.zero_harmonic(x, 0.5 + h, a1) - sol.zero_harmonic(x, 0.5 - h, a1)) / (2 * h)
    assert np.allclose(sol.zero_harmonic(x, 0.5, a1, 0, 1), fd, atol=1e-8)


def test_dark_and_gray():
    dark = SolitonParams(1.0, 0.0, 1.0, -2.4, 0.12)
    assert dark.classification == "dark" and dark.eta1 == 0
    assert abs(GraySoliton(dark).intensity(0.0, 0.0)) < 1e-15
    gray = SolitonParams(1.0, 0.5, 1.0, -2.4, 0.12)
    assert gray.classification == "gray"
    assert GraySoliton(gray).intensity(0.0, 0.0) > 0
    assert gray.as_dict()["classification"] == "gray"


def test_focusing_rejected():
    with pytest.raises(ValueError):
        SolitonParams(1.0, 0.5, 1.0, -1.0, -1.0)
    with pytest.raises(ValueError):
        lax_frame(1.0, 1.0)


def test_stencil_mode_converges():
    rho = (-2.4, 0.12)
    sol = GraySoliton(SolitonParams(1.0, 0.5, 1.0, *rho))
    errs = [dnls_reduced_residual(slab(sol.value, h), *rho, ell=4).max_abs() for h in (0.1, 0.05, 0.025)]
    assert errs[0] > errs[1] > errs[2]
    assert fit_slope([0.1, 0.05, 0.025], errs) > 2.5
    with pytest.raises(ValueError):
        dnls_reduced_residual(slab(sol.value), *rho)
    with pytest.raises(ValueError):
        dnls_reduced_residual(slab(sol.value), *rho, "closed")


def test_local_dnls_linear_wave():
    k, c1 = 0.6, 0.8
    b = 1 + 1j * c1 * (2 * math.cos(k) - 2)
    phi = GridFunction.from_function(lambda n, m: np.exp(1j * k * n) * b**m, ("n", "m"), (8, 5), boundary="clamped")
    res = dnls_local_residual(phi, c1, 0.0)
    assert res.valid.any() and res.max_abs() < 1e-12
    assert dnls_local_residual(GridFunction(np.zeros((4, 4)), ("n", "m"), "clamped"), c1, 3.0).max_abs() == 0
    const = GridFunction(np.full((5, 4), 0.5 + 0j), ("n", "m"), "clamped")
    out = dnls_local_residual(const, 1.0, 2.0)
    assert np.allclose(out.values[out.valid], 2.0 * 0.5**3)


def test_zero_curvature_symbolically_gives_normalized_nls():
    x, t, eta = sp.symbols("x t eta")
    u = sp.Function("u")(x, t)
    ub = sp.Function("ub")(x, t)
    U = sp.Matrix([[sp.I * eta, u], [ub, -sp.I * eta]])
    V = sp.Matrix(
        [
            [2 * sp.I * eta**2 + sp.I * u * ub, 2 * eta * u - sp.I * sp.diff(u, x)],
            [2 * eta * ub + sp.I * sp.diff(ub, x), -2 * sp.I * eta**2 - sp.I * u * ub],
        ]
    )
    Z = (sp.diff(U, t) - sp.diff(V, x) + U * V - V * U).applyfunc(sp.expand)
    nls = sp.I * sp.diff(u, t) - sp.diff(u, x, 2) + 2 * u * ub * u
    assert sp.expand(Z[0, 1] + sp.I * nls) == 0
    assert sp.expand(Z[0, 0]) == 0 and sp.expand(Z[1, 1]) == 0
    # numeric matrices agree with the symbolic ones
    lm = lax_matrices(0.3 + 0.1j, 0.3 - 0.1j, 0.2j, 0.5)
    assert lm.U.shape == (2, 2) and abs(lm.det_U() - (0.25 - 0.1)) < 1e-15


def test_lax_frame_maps_to_normalized_equation():
    rho = (-2.4, 0.12)
    sol = GraySoliton(SolitonParams(1.0, 0.5, 1.0, *rho))
    fr = lax_frame(*rho)
    v = fr.field(sol.value)
    g = slab(v, 0.02, 4.0, 0.5)
    vals = np.asarray(g.values)
    h = 0.02
    vt = (vals[1:-1, 2:] - vals[1:-1, :-2]) / (2 * h)
    vxx = (vals[2:, 1:-1] - 2 * vals[1:-1, 1:-1] + vals[:-2, 1:-1]) / h**2
    c = vals[1:-1, 1:-1]
    res = 1j * vt - vxx + 2 * np.abs(c) ** 2 * c
    assert np.max(np.abs(res)) < 1e-3
    assert fr.as_dict()["c"] == rho[0]


def test_zero_curvature_central_order_and_stencil_floor():
    sol = GraySoliton(SolitonParams(1.0, 0.5, 1.0, 1.0, -2.0))
    hs = [0.1, 0.05, 0.025]
    central = [zero_curvature_residual(slab(sol.value, h, 8.0), 0.3 + 0.1j, h).max_abs() for h in hs]
    assert abs(fit_slope(hs, central) - 2.0) < 0.2
    floor = [zero_curvature_residual(slab(sol.value, h, 8.0), 0.3 + 0.1j, h, mode="stencil", ell=3).max_abs() for h in hs]
    assert floor[-1] > 0.5 * floor[0]
    assert floor[-1] > 10 * central[-1]
    with pytest.raises(ValueError):
        zero_curvature_residual(slab(sol.value, 0.1), 0.3, 0.05)


def test_continuous_chain_values():
    ch = pkdv_chain(1.0)
    assert (ch.omega, ch.alpha1, ch.rho1, ch.rho2, ch.w22_factor) == (1.0, -2, -3.0, 6.0, 0.5j)
    ch2 = pkdv_chain(2.0)
    assert ch2.omega == 8.0 and ch2.rho1 == -6.0 and ch2.rho2 == 12.0
    with pytest.raises(ValueError):
        pkdv_chain(0.0)


@pytest.mark.parametrize("second", [False, True])
def test_continuous_reconstruction_order(second):
    sp_ = SolitonParams(1.0, 0.5, 1.0, -3.0, 6.0)
    eps = [0.1, 0.05, 0.025]
    XI, TAU = np.meshgrid(np.linspace(-10, 10, 201), np.linspace(0, 1, 11))
    res = []
    for e in eps:
        t = TAU / e**2
        x = XI / e + 3 * t
        w = lambda xx, tt, e=e: reconstruct_continuous(sp_, 1.0, e, xx, tt, second_harmonic=second)  # noqa: E731
        res.append(np.abs(pkdv_residual(w, x, t)).max())
    slope = fit_slope(eps, res)
    assert slope >= (2.8 if second else 2.0)


def test_pkdv_residual_of_exact_solution():
    # w = 2 k tanh(k x + 4 k^3 t) is the pKdV kink for w_t = w_xxx + 3 w_x^2
    k = 0.7
    w = lambda x, t: 2 * k * np.tanh(k * x + 4 * k**3 * t)  # noqa: E731
    x = np.linspace(-5, 5, 11)
    assert np.max(np.abs(pkdv_residual(w, x, 0.3 + 0 * x))) < 1e-8


def test_phase_velocities_and_slope_helper():
    pv = phase_velocities(1.0, LpkdvParams(2.0, 1.0))
    assert pv["lattice_omega"] == dispersion(1.0, LpkdvParams(2.0, 1.0))
    assert pv["continuous_phase_velocity"] == 1.0
    assert abs(fit_slope([1, 2, 4], [1, 0.25, 0.0625]) + 2) < 1e-12
    assert math.isnan(fit_slope([1, 2, 4], [1, 0, 1]))
