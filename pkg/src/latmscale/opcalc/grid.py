"""Grid functions on finite multi-index boxes and stencil application."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, Sequence

import numpy as np

from .series import DiffVariant, OperatorSeries, series_stencil

__all__ = ["GridFunction", "apply", "spectral_delta"]

_BOUNDARIES = ("periodic", "clamped")


@dataclass
class GridFunction:
    """Values of a field on a box ``origin[k] <= index_k < origin[k] + shape[k]``.

    ``spacing`` is the physical step per index step; it is metadata only
    (difference operators act per index step).  ``valid`` marks cells
    whose value is trustworthy, e.g. after a clamped stencil.
    """

    values: np.ndarray
    axes: tuple[str, ...]
    boundary: str = "periodic"
    valid: np.ndarray | None = None
    origin: tuple[int, ...] | None = None
    spacing: tuple[float, ...] | None = None
    meta: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        self.values = np.asarray(self.values)
        self.axes = tuple(self.axes)
        if self.values.ndim != len(self.axes):
            raise ValueError(f"{self.values.ndim}-d values but {len(self.axes)} axes")
        if len(set(self.axes)) != len(self.axes):
            raise ValueError("axis names must be unique")
        if self.boundary not in _BOUNDARIES:
            raise ValueError(f"boundary must be one of {_BOUNDARIES}")
        if self.valid is None:
            self.valid = np.ones(self.values.shape, dtype=bool)
        else:
            self.valid = np.asarray(self.valid, dtype=bool)
            if self.valid.shape != self.values.shape:
                raise ValueError("valid mask shape mismatch")
        self.origin = tuple(self.origin) if self.origin is not None else (0,) * len(self.axes)
        self.spacing = tuple(self.spacing) if self.spacing is not None else (1.0,) * len(self.axes)

    @classmethod
    def from_function(
        cls,
        func: Callable[..., Any],
        axes: Sequence[str],
        shape: Sequence[int],
        *,
        origin: Sequence[int] | None = None,
        spacing: Sequence[float] | None = None,
        boundary: str = "periodic",
        dtype: Any = complex,
    ) -> "GridFunction":
        """Sample ``func(*coords)`` with coords = (origin + index) * spacing.

        With ``dtype=object`` the function is called per cell on Python ints,
        which keeps rational arithmetic exact.
        """
        origin = tuple(origin) if origin is not None else (0,) * len(axes)
        spacing = tuple(spacing) if spacing is not None else (1.0,) * len(axes)
        if dtype is object:
            vals = np.empty(tuple(shape), dtype=object)
            for idx in np.ndindex(*shape):
                vals[idx] = func(*(o + i for o, i in zip(origin, idx)))
        else:
            grids = np.meshgrid(
                *[(o + np.arange(s)) * h for o, s, h in zip(origin, shape, spacing)], indexing="ij"
            )
            vals = np.asarray(func(*grids), dtype=dtype)
            vals = np.broadcast_to(vals, tuple(shape)).copy()
        return cls(vals, tuple(axes), boundary, None, origin, spacing)

    @property
    def extents(self) -> dict[str, int]:
        return dict(zip(self.axes, self.values.shape))

    def coordinates(self, axis: str, physical: bool = True) -> np.ndarray:
        k = self.axes.index(axis)
        idx = self.origin[k] + np.arange(self.values.shape[k])
        return idx * self.spacing[k] if physical else idx

    def with_values(self, values: np.ndarray, valid: np.ndarray | None = None) -> "GridFunction":
        return GridFunction(
            values,
            self.axes,
            self.boundary,
            self.valid.copy() if valid is None else valid,
            self.origin,
            self.spacing,
            dict(self.meta),
        )

    def shifted(self, offsets: Mapping[str, int]) -> tuple[np.ndarray, np.ndarray]:
        """(values, valid) of ``f`` at index + offset, per the boundary policy."""
        vals = self.values
        ok = self.valid
        for name, off in offsets.items():
            if name not in self.axes:
                raise ValueError(f"grid has no axis {name!r} (axes {self.axes})")
            if off == 0:
                continue
            k = self.axes.index(name)
            if self.boundary == "periodic":
                vals = np.roll(vals, -off, axis=k)
                ok = np.roll(ok, -off, axis=k)
            else:
                vals = _clamped_shift(vals, k, off, 0)
                ok = _clamped_shift(ok, k, off, False)
        return vals, ok

    def interior(self) -> np.ndarray:
        return self.values[self.valid]

    def max_abs(self) -> float:
        data = self.values[self.valid]
        if data.size == 0:
            return 0.0
        return float(np.max(np.abs(data.astype(complex))))

    def __sub__(self, other: "GridFunction") -> "GridFunction":
        return self.with_values(self.values - other.values, self.valid & other.valid)


def _clamped_shift(arr: np.ndarray, axis: int, off: int, fill: Any) -> np.ndarray:
    out = np.full_like(arr, fill)
    n = arr.shape[axis]
    if abs(off) >= n:
        return out
    src = [slice(None)] * arr.ndim
    dst = [slice(None)] * arr.ndim
    if off > 0:
        src[axis] = slice(off, None)
        dst[axis] = slice(0, n - off)
    else:
        src[axis] = slice(0, n + off)
        dst[axis] = slice(-off, None)
    out[tuple(dst)] = arr[tuple(src)]
    return out


def apply(
    series: OperatorSeries,
    f: GridFunction,
    *,
    ell: int | Mapping[str, int] | None = None,
    variant: DiffVariant | str = DiffVariant.FORWARD,
    inv_n: Any = None,
) -> GridFunction:
    """Apply ``series`` to ``f`` as one combined stencil.

    ``delta`` powers are realized through the ``variant`` series at order
    ``ell`` (default: the series' own degree bound).  ``inv_n`` is the value
    substituted for 1/N in graded series.
    """
    stencil = series_stencil(series, inv_n_value=inv_n, ell=ell, variant=variant)
    missing = {i for key in stencil for i, _ in key} - set(f.axes)
    if missing:
        raise ValueError(f"series acts on indices {sorted(missing)} not present in the grid")
    exact = f.values.dtype == object
    out = np.zeros(f.values.shape, dtype=object if exact else np.result_type(f.values.dtype, complex))
    if exact:
        out[...] = 0
    ok = f.valid.copy()
    for key, c in sorted(stencil.items()):
        vals, v = f.shifted(dict(key))
        if not exact:
            c = complex(c.evalf()) if hasattr(c, "evalf") else complex(c)
        out = out + c * vals
        ok &= v
    if not exact and np.isrealobj(f.values) and np.all(np.imag(out) == 0):
        out = out.real
    return f.with_values(out, ok)


def spectral_delta(f: GridFunction, axis: str, order: int = 1) -> GridFunction:
    """Exact ``delta^order`` (d/dindex) of a periodic grid function via FFT.

    This is the ell = infinity realization for band-limited periodic data.
    """
    if f.boundary != "periodic":
        raise ValueError("spectral delta requires a periodic grid")
    k = f.axes.index(axis)
    n = f.values.shape[k]
    wav = 2j * np.pi * np.fft.fftfreq(n)
    if order % 2 == 1 and n % 2 == 0:
        wav[n // 2] = 0.0
    shape = [1] * f.values.ndim
    shape[k] = n
    symbol = (wav**order).reshape(shape)
    out = np.fft.ifft(symbol * np.fft.fft(np.asarray(f.values, dtype=complex), axis=k), axis=k)
    return f.with_values(out)
