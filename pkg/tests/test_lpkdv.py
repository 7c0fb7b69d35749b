import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from latmscale.lpkdv import (
    LpkdvParams,
    PlaneWaveSpec,
    dispersion,
    linear_part_residual,
    linear_symbol,
    lpkdv_residual,
    lpkdv_residual_pointwise,
    nonlinear_part_residual,
    plane_wave,
    residual_csv,
)
from latmscale.opcalc import GridFunction

PAIRS = [(2.0, 1.0), (1.0, 2.0), (0.3, -1.7), (-2.5, 0.4), (5.0, 4.5)]


@pytest.mark.parametrize("p, q", PAIRS)
def test_dispersion_annihilates_linear_symbol(p, q):
    P = LpkdvParams(p, q)
    ks = np.linspace(-3.0, 3.0, 50)
    assert np.max(np.abs(linear_symbol(ks, dispersion(ks, P), P))) < 1e-10


def test_dispersion_small_kappa_and_oddness():
    P = LpkdvParams(2.0, 1.0)
    assert dispersion(0.0, P) == 0.0
    k = 1e-4
    assert abs(dispersion(k, P) + 2 * k) < 1e-10  # leading behaviour -(p/q) kappa
    assert abs(dispersion(0.8, P) + dispersion(-0.8, P)) < 1e-15


def test_dispersion_pole_and_guards():
    P = LpkdvParams(2.0, 1.0)
    with pytest.warns(UserWarning):
        w = dispersion(math.pi, P)
    assert w == -math.pi
    with pytest.raises(ValueError):
        dispersion(1.0, LpkdvParams(1.0, 0.0))
    for p, q in [(1.0, 1.0), (1.0, -1.0), (math.inf, 1.0)]:
        with pytest.raises(ValueError):
            LpkdvParams(p, q)


def test_plane_wave_solves_linear_part():
    P = LpkdvParams(1.3, 0.4)
    spec = PlaneWaveSpec.on_shell_wave(0.9, P, 0.5 + 0.2j)
    spec.check(P)
    u = plane_wave(spec, (12, 9), origin=(-3, 2))
    res = linear_part_residual(u, P)
    assert res.max_abs() < 1e-12
    assert not res.valid[-1, :].any() and not res.valid[:, -1].any()
    with pytest.raises(ValueError):
        PlaneWaveSpec(0.9, 0.1).check(P)


@pytest.mark.parametrize("p, q", PAIRS)
def test_linear_seed_solutions(p, q):
    P = LpkdvParams(p, q)
    for f in (lambda n, m: 2 * p * n + 0.7, lambda n, m: 2 * q * m - 1.1):
        u = GridFunction.from_function(f, ("n", "m"), (6, 5), boundary="clamped")
        assert lpkdv_residual(u, P).max_abs() < 1e-12
        assert lpkdv_residual(u, P, "product").max_abs() < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31 - 1), st.floats(-3, 3), st.floats(-3, 3))
def test_forms_are_negatives_and_split_decomposes(seed, p, q):
    if abs(p - q) < 1e-3 or abs(p + q) < 1e-3:
        return
    P = LpkdvParams(p, q)
    vals = np.random.default_rng(seed).normal(size=(5, 4))
    u = GridFunction(vals, ("n", "m"), "clamped")
    split = lpkdv_residual(u, P)
    prod = lpkdv_residual(u, P, "product")
    ok = split.valid
    assert np.allclose(split.values[ok], -prod.values[ok], atol=1e-9)
    parts = linear_part_residual(u, P).values - nonlinear_part_residual(u, P).values
    assert np.allclose(parts[ok], split.values[ok], atol=1e-12)


def test_pointwise_matches_grid():
    P = LpkdvParams(2.0, 1.0)
    f = lambda n, m: np.sin(0.3 * n) * np.cos(0.2 * m) + 0.1 * n  # noqa: E731
    u = GridFunction.from_function(f, ("n", "m"), (6, 6), boundary="clamped")
    n, m = np.meshgrid(np.arange(5), np.arange(5), indexing="ij")
    assert np.allclose(lpkdv_residual_pointwise(f, n, m, P), lpkdv_residual(u, P).values[:5, :5])


def test_residual_guards_and_csv():
    P = LpkdvParams(2.0, 1.0)
    with pytest.raises(ValueError):
        lpkdv_residual(GridFunction(np.zeros((1, 3)), ("n", "m")), P)
    with pytest.raises(ValueError):
        lpkdv_residual(GridFunction(np.zeros((3, 3)), ("n", "k")), P)
    with pytest.raises(ValueError):
        lpkdv_residual(GridFunction(np.zeros((3, 3)), ("n", "m")), P, "other")
    u = GridFunction.from_function(lambda n, m: 0.1 * n * m, ("n", "m"), (3, 3), boundary="clamped")
    text = residual_csv(lpkdv_residual(u, P))
    lines = text.strip().splitlines()
    assert lines[0] == "n,m,re,im"
    assert len(lines) == 1 + 4
