"""Harmonic fields and the ways their delta-derivatives are realized."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np
from scipy import sparse
from scipy.linalg import solveh_banded

from ..opcalc.grid import GridFunction, apply, spectral_delta
from ..opcalc.series import DELTA, DiffVariant, OperatorMonomial, OperatorSeries, series_stencil
from .expansion import SLOW_AXES, FieldAtom

__all__ = [
    "HarmonicField",
    "FieldSet",
    "GridFieldSet",
    "CharacteristicFieldSet",
    "AnalyticFieldSet",
    "delta_antiderivative",
]


@dataclass
class HarmonicField:
    """u_k^(alpha) sampled on slow indices."""

    alpha: int
    k: int
    data: GridFunction

    @property
    def key(self) -> tuple[int, int]:
        return (self.k, self.alpha)


class FieldSet:
    """Supplies values of delta-derivatives of harmonic fields on a common grid."""

    template: GridFunction
    valid: np.ndarray

    def has(self, k: int, alpha: int) -> bool:
        raise NotImplementedError

    def value(self, atom: FieldAtom) -> np.ndarray:
        raise NotImplementedError

    def require(self, *keys: tuple[int, int]) -> None:
        missing = [k for k in keys if not self.has(*k)]
        if missing:
            names = ", ".join(f"u_{k}^({a})" for k, a in missing)
            raise ValueError(f"missing field(s): {names}")

    def result(self, values: np.ndarray) -> GridFunction:
        return self.template.with_values(values, self.valid.copy())


def _conj_lookup(store: Mapping[tuple[int, int], GridFunction], k: int, alpha: int) -> tuple[GridFunction, bool]:
    if (k, alpha) in store:
        return store[(k, alpha)], False
    if (k, -alpha) in store:
        return store[(k, -alpha)], True
    raise KeyError((k, alpha))


def _as_store(fields) -> dict[tuple[int, int], GridFunction]:
    if isinstance(fields, Mapping):
        return dict(fields)
    return {f.key: f.data for f in fields}


class GridFieldSet(FieldSet):
    """Fields sampled on a grid over (a subset of) n1, m1, m2.

    ``mode="stencil"`` applies the ell-truncated difference series of the
    chosen variant; ``mode="spectral"`` uses FFT derivatives (exact for
    band-limited periodic data, the ell = infinity reading).  Derivatives
    are with respect to the slow coordinates, i.e. divided by the spacing.
    """

    def __init__(
        self,
        fields,
        *,
        mode: str = "stencil",
        ell: int = 3,
        variant: DiffVariant | str = DiffVariant.FORWARD,
    ) -> None:
        self.store = _as_store(fields)
        if not self.store:
            raise ValueError("empty field set")
        self.template = next(iter(self.store.values()))
        for g in self.store.values():
            if g.axes != self.template.axes or g.values.shape != self.template.values.shape:
                raise ValueError("all fields must share one grid")
        if mode not in ("stencil", "spectral"):
            raise ValueError("mode must be 'stencil' or 'spectral'")
        self.mode = mode
        self.ell = ell
        self.variant = DiffVariant(variant)
        self.valid = self.template.valid.copy()

    def has(self, k: int, alpha: int) -> bool:
        return (k, alpha) in self.store or (k, -alpha) in self.store

    def _derive(self, g: GridFunction, orders: Mapping[str, int]) -> GridFunction:
        if self.mode == "spectral":
            out = g
            for axis, e in orders.items():
                out = spectral_delta(out, axis, e)
            return out
        mono = OperatorMonomial.make({(axis, DELTA): e for axis, e in orders.items()})
        return apply(OperatorSeries({mono: 1}), g, ell=self.ell, variant=self.variant)

    def value(self, atom: FieldAtom) -> np.ndarray:
        g, conj = _conj_lookup(self.store, atom.k, atom.alpha)
        if conj:
            g = g.with_values(np.conj(g.values))
        orders = {}
        scale = 1.0
        for axis, e in zip(SLOW_AXES, atom.d):
            if not e:
                continue
            if axis not in g.axes:
                return np.zeros(g.values.shape, dtype=complex)
            orders[axis] = e
            scale *= g.spacing[g.axes.index(axis)] ** e
        if not orders:
            return np.asarray(g.values, dtype=complex)
        out = self._derive(g, orders)
        self.valid &= out.valid
        return np.asarray(out.values, dtype=complex) / scale


class CharacteristicFieldSet(GridFieldSet):
    """Fields of n2 = n1 + gamma m1 (and m2) on an (n2[, m2]) grid.

    The chain rule gives delta_n1 = delta_n2 and delta_m1 = gamma delta_n2
    on such fields.
    """

    def __init__(self, fields, gamma: int, **kw) -> None:
        super().__init__(fields, **kw)
        if "n2" not in self.template.axes:
            raise ValueError("characteristic fields need an n2 axis")
        self.gamma = gamma

    def value(self, atom: FieldAtom) -> np.ndarray:
        dn1, dm1, dm2, dm3 = atom.d
        g, conj = _conj_lookup(self.store, atom.k, atom.alpha)
        if conj:
            g = g.with_values(np.conj(g.values))
        if dm3 or (dm2 and "m2" not in g.axes):
            return np.zeros(g.values.shape, dtype=complex)
        orders = {}
        if dn1 + dm1:
            orders["n2"] = dn1 + dm1
        if dm2:
            orders["m2"] = dm2
        if not orders:
            return np.asarray(g.values, dtype=complex)
        out = self._derive(g, orders)
        self.valid &= out.valid
        scale = np.prod([g.spacing[g.axes.index(a)] ** e for a, e in orders.items()])
        return self.gamma**dm1 * np.asarray(out.values, dtype=complex) / scale


class AnalyticFieldSet(FieldSet):
    """Closed-form fields: ``derivs[(k, alpha)](x, t, a, c)`` gives d^a_n2 d^c_m2.

    Fields depend on n2 = n1 + gamma m1 and m2.  Conjugates of missing
    negative harmonics are taken automatically.
    """

    def __init__(
        self,
        derivs: Mapping[tuple[int, int], Callable[..., np.ndarray]],
        gamma: int,
        template: GridFunction,
    ) -> None:
        if set(template.axes) - {"n2", "m2"}:
            raise ValueError("analytic fields are sampled on (n2[, m2]) grids")
        self.derivs = dict(derivs)
        self.gamma = gamma
        self.template = template
        self.valid = template.valid.copy()
        x = template.coordinates("n2")
        if "m2" in template.axes:
            t = template.coordinates("m2")
            if template.axes[0] == "n2":
                self._x, self._t = np.meshgrid(x, t, indexing="ij")
            else:
                self._t, self._x = np.meshgrid(t, x, indexing="ij")
        else:
            self._x, self._t = x, np.zeros_like(x)

    def has(self, k: int, alpha: int) -> bool:
        return (k, alpha) in self.derivs or (k, -alpha) in self.derivs

    def value(self, atom: FieldAtom) -> np.ndarray:
        dn1, dm1, dm2, dm3 = atom.d
        if dm3:
            return np.zeros(self._x.shape, dtype=complex)
        key = (atom.k, atom.alpha)
        conj = key not in self.derivs
        if conj:
            key = (atom.k, -atom.alpha)
            if key not in self.derivs:
                raise ValueError(f"missing field u_{atom.k}^({atom.alpha})")
        v = np.asarray(self.derivs[key](self._x, self._t, dn1 + dm1, dm2), dtype=complex)
        if conj:
            v = np.conj(v)
        return self.gamma**dm1 * v


def delta_antiderivative(
    g: GridFunction,
    axis: str,
    *,
    ell: int = 3,
    variant: DiffVariant | str = DiffVariant.FORWARD,
) -> GridFunction:
    """Solve delta_axis v = g for v with the ell-truncated stencil.

    The stencil system along the axis is underdetermined by its reach; the
    minimum-norm solution is taken and its mean removed (the integration
    constant is fixed to zero mean).  The result satisfies the stencil
    equation exactly (to rounding) on every cell where the stencil fits.
    """
    if g.boundary != "clamped":
        raise ValueError("antiderivatives are computed on clamped grids")
    k = g.axes.index(axis)
    mono = OperatorMonomial.make({(axis, DELTA): 1})
    st = {dict(key).get(axis, 0): complex(c) for key, c in series_stencil(OperatorSeries({mono: 1}), ell=ell, variant=variant).items()}
    lo, hi = min(st), max(st)
    n = g.values.shape[k]
    rows = np.arange(-lo, n - hi)
    if not rows.size:
        raise ValueError("grid too short for the stencil")
    offs = np.array(sorted(st))
    coef = np.array([st[o] for o in offs])
    mat = sparse.csr_matrix(
        (np.tile(coef, rows.size), (np.repeat(np.arange(rows.size), offs.size), (rows[:, None] + offs).ravel())),
        shape=(rows.size, n),
    )
    # min-norm solution A^H (A A^H)^{-1} b; A A^H is a banded positive-definite matrix
    w = hi - lo
    gram = (mat @ mat.conj().T).todia()
    band = np.zeros((w + 1, rows.size), dtype=complex)
    for d in range(w + 1):
        band[w - d, d:] = gram.diagonal(d)
    h = g.spacing[k]
    data = np.moveaxis(np.asarray(g.values, dtype=complex), k, 0)
    flat = data.reshape(n, -1)
    y = solveh_banded(band, flat[rows] * h)
    sol = mat.conj().T @ y
    sol = sol - sol.mean(axis=0, keepdims=True)
    out = np.moveaxis(sol.reshape(data.shape), 0, k)
    if np.isrealobj(g.values):
        out = out.real
    return g.with_values(out, np.ones(g.values.shape, dtype=bool))
