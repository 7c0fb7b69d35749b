"""The nine acceptance criteria, each at its stated tolerance.

Every test records a PASS/FAIL line that is printed in the session summary.
"""

import math
import time
from fractions import Fraction

import numpy as np

from goldens import L_golden, M1, M1t, M2t, M3t, same_terms, tm_golden, tn_golden, tntm_golden
from latmscale.exactmath import change_matrix, stirling_first, stirling_second
from latmscale.lpkdv import LpkdvParams, dispersion, linear_symbol
from latmscale.multiscale import (
    CharacteristicFieldSet,
    GridFieldSet,
    HarmonicField,
    ReductionParams,
    SymbolicReduction,
    alpha_coefficients,
    convergence_sweep,
    delta_antiderivative,
    determining_residual_order2,
    linear_operator_L,
    rho_complex_forms,
    rho_real_forms,
    sigma_coefficients,
)
from latmscale.nls import (
    GraySoliton,
    SolitonParams,
    dnls_reduced_residual,
    fit_slope,
    lax_frame,
    pkdv_chain,
    pkdv_residual,
    reconstruct_continuous,
    zero_curvature_residual,
)
from latmscale.opcalc import DiffVariant, GridFunction, ShiftScales, apply, delta_series, shift_expansion


def _poly_value(coeffs, s):
    return sum(c * s**k for k, c in enumerate(coeffs))


def _fdiff(vals, order):
    for _ in range(order):
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return vals[0]


def test_criterion_1_stirling_and_lattice_change(criterion):
    t0 = time.perf_counter()
    ortho = all(
        sum(stirling_first(i, k) * stirling_second(k, j) for k in range(13)) == (i == j)
        for i in range(13)
        for j in range(13)
    )
    coeffs = [Fraction(c, 3) for c in (2, -1, 5, 0, 3, -4, 1, 7, -2)]
    trip = True
    for omega in (Fraction(1, 2), Fraction(3), Fraction(-5, 7)):
        C, Ci = change_matrix(omega, 8), change_matrix(omega, 8, inverse=True)
        for deg in range(9):
            part = coeffs[: deg + 1]
            d1 = [_fdiff([_poly_value(part, Fraction(t)) for t in range(9)], i) for i in range(9)]
            dn = [sum(C[j][i] * d1[i] for i in range(9)) for j in range(9)]
            # forward: differences on the coarse index from the fine-lattice ones
            trip &= all(dn[j] == _fdiff([_poly_value(part, omega * t) for t in range(9)], j) for j in range(9))
            # inverse: back to the original differences, exactly
            trip &= [sum(Ci[j][i] * dn[i] for i in range(9)) for j in range(9)] == d1
    elapsed = time.perf_counter() - t0
    ok = ortho and trip and elapsed < 1.0
    assert criterion(1, "Stirling orthogonality and exact P/Q round trip", ok, f"{elapsed:.3f}s")


def test_criterion_2_delta_exactness(criterion):
    t0 = time.perf_counter()
    ok = True
    for variant in DiffVariant:
        for ell in range(1, 9):
            coeffs = [Fraction((-1) ** k * (k + 2), k + 1) for k in range(ell + 1)]
            g = GridFunction.from_function(
                lambda n: _poly_value(coeffs, Fraction(n)), ("n",), (20,), origin=(-6,), boundary="clamped", dtype=object
            )
            out = apply(delta_series(variant, ell), g)
            ns = g.coordinates("n", physical=False)
            deriv = lambda s: sum(k * c * s ** (k - 1) for k, c in enumerate(coeffs) if k)  # noqa: E731
            idx = np.flatnonzero(out.valid)
            ok &= idx.size > 0 and all(out.values[i] == deriv(Fraction(int(ns[i]))) for i in idx)
    elapsed = time.perf_counter() - t0
    ok = ok and elapsed < 1.0
    assert criterion(2, "delta series exact on polynomials, all variants", ok, f"{elapsed:.3f}s")


def test_criterion_3_golden_expansions(criterion):
    sc = ShiftScales((M1,), (M1t, M2t, M3t))
    ok = (
        same_terms(shift_expansion("Tn", sc, 3, 3), tn_golden())
        and same_terms(shift_expansion("Tm", sc, 3, 3), tm_golden())
        and same_terms(shift_expansion("TnTm", sc, 3, 3), tntm_golden())
    )
    sym = SymbolicReduction.default()
    ok = ok and all(same_terms(linear_operator_L(i, sym), L_golden(i)) for i in range(3))
    assert criterion(3, "shift expansions and L0-L2 match term for term", ok)


def test_criterion_4_dispersion_annihilation(criterion):
    worst = 0.0
    for p, q in [(2.0, 1.0), (1.0, 2.0), (0.3, -1.7), (-2.5, 0.4), (5.0, 4.5)]:
        P = LpkdvParams(p, q)
        ks = np.linspace(-3.0, 3.0, 50)
        worst = max(worst, float(np.max(np.abs(linear_symbol(ks, dispersion(ks, P), P)))))
    ok = worst < 1e-10
    assert criterion(4, "linear symbol vanishes on the dispersion curve", ok, f"max {worst:.2e}")


def _random_params(rng):
    while True:
        p, q = rng.uniform(-3, 3, size=2)
        if min(abs(p - q), abs(p + q), abs(p), abs(q)) < 0.2:
            continue
        kappa = rng.uniform(0.15, math.pi - 0.15) * rng.choice([-1, 1])
        return ReductionParams.from_inputs(
            p, q, kappa, gamma=int(rng.choice([-1, 1])), r=rng.uniform(0.3, 2), M2tilde=int(rng.integers(1, 4))
        )


def test_criterion_5_determining_equations(criterion):
    t0 = time.perf_counter()
    rng = np.random.default_rng(7)
    ann, clos, ident, imag, sign = 0.0, 0.0, 0.0, 0.0, True
    for i in range(100):
        P = _random_params(rng)
        sc = sigma_coefficients(P)
        ident = max(ident, max(sc.identity_residuals(P).values()) / max(1, abs(sc[1]) ** 2))
        c1, c2 = rho_complex_forms(P)
        imag = max(imag, abs(c1.imag), abs(c2.imag))
        r1, r2 = rho_real_forms(P)
        sign &= r1 * r2 < 0
        if i % 10:
            continue
        # first harmonic on a cubic of n1 + gamma m1, stencil realization
        f = lambda n1, m1, g=P.gamma: (0.3 + 0.1j) * (n1 + g * m1) ** 3 - 0.7 * (n1 + g * m1)  # noqa: E731
        grid = GridFunction.from_function(f, ("n1", "m1"), (12, 12), origin=(-6, -6), boundary="clamped")
        ann = max(ann, determining_residual_order2(GridFieldSet([HarmonicField(1, 1, grid)]), P, 1).max_abs())
        # zero and second harmonics closed through alpha1, alpha2
        a1, a2 = alpha_coefficients(P)
        h = 0.05
        u = GridFunction.from_function(
            lambda x: 0.8 * np.tanh(x) + 0.3j / np.cosh(x), ("n2",), (241,), origin=(-120,), spacing=(h,), boundary="clamped"
        )
        u10 = u.with_values(a1 * delta_antiderivative(u.with_values(np.abs(u.values) ** 2), "n2").values)
        fs = CharacteristicFieldSet(
            [HarmonicField(1, 1, u), HarmonicField(0, 1, u10), HarmonicField(2, 2, u.with_values(a2 * u.values**2))], P.gamma
        )
        clos = max(clos, *(determining_residual_order2(fs, P, a).max_abs() for a in (0, 2)))
    elapsed = time.perf_counter() - t0
    ok = ann < 1e-10 and clos < 1e-9 and ident < 1e-10 and imag < 1e-10 and sign and elapsed < 10
    detail = f"annihilation {ann:.1e}, closures {clos:.1e}, identities {ident:.1e}, Im rho {imag:.1e}, {elapsed:.2f}s"
    assert criterion(5, "determining equations, closures, sigma relations, rho sweep", ok, detail)


def _slab(fn, h, half=8.0, dur=1.0):
    nx, nt = int(round(half / h)), int(round(dur / h))
    return GridFunction.from_function(fn, ("n2", "m2"), (2 * nx + 1, nt + 1), origin=(-nx, 0), spacing=(h, h))


def test_criterion_6_soliton_and_zero_curvature(criterion):
    P = ReductionParams.from_inputs()
    sc = sigma_coefficients(P)
    sol = GraySoliton(SolitonParams(1.0, 0.5, 1.0, sc.rho1, sc.rho2))
    closed = dnls_reduced_residual(_slab(sol.value, 0.1), sc.rho1, sc.rho2, "closed", soliton=sol).max_abs()
    v = lax_frame(sc.rho1, sc.rho2).field(sol.value)
    hs = [0.1, 0.05, 0.025, 0.0125]
    res = [zero_curvature_residual(_slab(v, h), 0.3 + 0.1j, h).max_abs() for h in hs]
    slope = fit_slope(hs, res)
    ok = closed < 1e-10 and abs(slope - 2.0) <= 0.2
    assert criterion(6, "gray soliton solves the reduced dNLS; zero curvature at order 2", ok, f"closed {closed:.1e}, slope {slope:.3f}")


def test_criterion_7_reconstruction_convergence(criterion):
    t0 = time.perf_counter()
    res = convergence_sweep(ReductionParams.from_inputs(), Ns=(8, 16, 32, 64, 128))
    elapsed = time.perf_counter() - t0
    ok = abs(res.slope - 2.0) <= 0.3 and elapsed < 60
    assert criterion(7, "lpKdV residual of the reconstruction decays like N^-2", ok, f"slope {res.slope:.3f}, {elapsed:.2f}s")


def test_criterion_8_continuous_chain(criterion):
    ch = pkdv_chain(1.0)
    exact = (ch.omega, ch.alpha1, ch.rho1, ch.rho2, ch.w22_factor) == (1, -2, -3, 6, 0.5j)
    sp_ = SolitonParams(1.0, 0.5, 1.0, ch.rho1, ch.rho2)
    eps = [0.1, 0.05, 0.025]
    XI, TAU = np.meshgrid(np.linspace(-10, 10, 401), np.linspace(0, 1, 21))
    res = []
    for e in eps:
        t = TAU / e**2
        x = XI / e + 3 * t
        res.append(float(np.abs(pkdv_residual(lambda xx, tt, e=e: reconstruct_continuous(sp_, 1.0, e, xx, tt), x, t)).max()))
    order = fit_slope(eps, res)
    ok = exact and order >= 2.0
    assert criterion(8, "continuous chain coefficients and order in epsilon", ok, f"order {order:.3f}")


def test_criterion_9_finite_ell_floor(criterion):
    P = ReductionParams.from_inputs()
    sc = sigma_coefficients(P)
    v = lax_frame(sc.rho1, sc.rho2).field(GraySoliton(SolitonParams(1.0, 0.5, 1.0, sc.rho1, sc.rho2)).value)
    hs = [0.1, 0.05, 0.025]
    exact_mode = [zero_curvature_residual(_slab(v, h), 0.3 + 0.1j, h).max_abs() for h in hs]
    finite = [zero_curvature_residual(_slab(v, h), 0.3 + 0.1j, h, mode="stencil", ell=3).max_abs() for h in hs]
    # the floor does not shrink with h and dominates the untruncated reading
    flat = finite[-1] > 0.5 * finite[0]
    ratio = finite[-1] / exact_mode[-1]
    ok = flat and ratio > 10
    assert criterion(9, "finite-ell zero-curvature residual has a floor", ok, f"floor {finite[-1]:.2e}, ratio {ratio:.0f}")
