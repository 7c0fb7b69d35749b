"""Truncated partial-difference operator calculus on multi-lattices."""

from .grid import GridFunction, apply, spectral_delta
from .series import (
    DELTA,
    DiffVariant,
    LatticeIndex,
    OperatorMonomial,
    OperatorSeries,
    ShiftScales,
    change_of_lattice,
    change_of_lattice_inverse,
    delta_series,
    exp_scaled_delta,
    identity,
    index_stencil,
    monomial,
    series_multiply,
    series_stencil,
    series_symbol,
    shift_expansion,
)

__all__ = [
    "DELTA",
    "DiffVariant",
    "GridFunction",
    "LatticeIndex",
    "OperatorMonomial",
    "OperatorSeries",
    "ShiftScales",
    "apply",
    "change_of_lattice",
    "change_of_lattice_inverse",
    "delta_series",
    "exp_scaled_delta",
    "identity",
    "index_stencil",
    "monomial",
    "series_multiply",
    "series_stencil",
    "series_symbol",
    "shift_expansion",
    "spectral_delta",
]
