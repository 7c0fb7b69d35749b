import math

import numpy as np
import pytest

from latmscale.lpkdv import lpkdv_residual
from latmscale.multiscale import (
    Approximation,
    HarmonicField,
    ReductionParams,
    assemble_approximation,
    convergence_sweep,
    default_soliton,
    rho_coefficients,
)
from latmscale.nls import GraySoliton, SolitonParams
from latmscale.opcalc import GridFunction


def test_default_sweep_decays_quadratically():
    res = convergence_sweep(ReductionParams.from_inputs())
    assert 1.7 <= res.slope <= 2.3
    assert all(a > b for a, b in zip(res.residuals, res.residuals[1:]))
    assert res.slope_defined


def test_second_harmonic_gains_an_order():
    res = convergence_sweep(ReductionParams.from_inputs(), second_harmonic=True)
    assert res.slope > 2.7


@pytest.mark.parametrize("kw", [dict(p=1.3, q=0.4, kappa=1.1, gamma=-1, M2tilde=2), dict(p=-0.8, q=1.9, kappa=-2.2)])
def test_other_parameters_converge(kw):
    P = ReductionParams.from_inputs(kw.pop("p"), kw.pop("q"), kw.pop("kappa"), **kw)
    res = convergence_sweep(P, Ns=(16, 32, 64, 128), n2_points=121, m2_points=11)
    assert 1.7 <= res.slope <= 2.3


def test_resolution_insensitive():
    P = ReductionParams.from_inputs()
    fine = convergence_sweep(P, Ns=(16, 32, 64), n2_points=301, m2_points=41)
    coarse = convergence_sweep(P, Ns=(16, 32, 64), n2_points=151, m2_points=21)
    for a, b in zip(fine.residuals, coarse.residuals):
        assert abs(a - b) / a < 0.1


def test_zero_soliton_gives_undefined_slope():
    P = ReductionParams.from_inputs()
    r1, r2 = rho_coefficients(P)
    zero = GraySoliton(SolitonParams(0.0, 0.0, 0.0, r1, r2))
    res = convergence_sweep(P, zero)
    assert res.residuals == [0.0] * 5
    assert math.isnan(res.slope) and not res.slope_defined


def test_sweep_needs_three_sizes():
    with pytest.raises(ValueError):
        convergence_sweep(ReductionParams.from_inputs(), Ns=(8, 16))


def test_assembled_grid_is_small_residual():
    P = ReductionParams.from_inputs(N=32)
    g = assemble_approximation(default_soliton(P), P, shape=(40, 40), origin=(-20, 0))
    assert np.isrealobj(g.values)
    res = lpkdv_residual(g, P.lpkdv)
    assert res.max_abs() < 5e-3
    assert np.max(np.abs(g.values)) > 1e-2


def test_sampled_source_matches_closed_form():
    P = ReductionParams.from_inputs(N=32)
    sol = default_soliton(P)
    h = 0.01
    nx, nt = 1600, 21
    grid = GridFunction.from_function(
        sol.value, ("n2", "m2"), (2 * nx + 1, nt), origin=(-nx, 0), spacing=(h, h), boundary="clamped"
    )
    sampled = assemble_approximation(HarmonicField(1, 1, grid), P, shape=(24, 24), origin=(-12, 0))
    closed = assemble_approximation(sol, P, shape=(24, 24), origin=(-12, 0))
    assert sampled.meta["nearest_offset_n2"] <= h / 2 + 1e-12
    # the zero harmonic of a sampled field is only defined up to a constant
    diff = sampled.values - closed.values
    assert np.max(np.abs(diff - diff.mean())) < 5e-3


def test_bad_sources_rejected():
    P = ReductionParams.from_inputs()
    with pytest.raises(TypeError):
        Approximation(P, object())
    g = GridFunction(np.zeros((4, 4)), ("n2", "m2"), "clamped")
    with pytest.raises(ValueError):
        Approximation(P, HarmonicField(0, 1, g))
