"""Exact Stirling/Legendre combinatorics and lattice-change coefficients.

Everything here is integer or :class:`fractions.Fraction` arithmetic; no
floating point is ever produced.  ``omega`` arguments may be any exact
number type that supports ``+``, ``*`` and ``**`` (``int``, ``Fraction``,
or a sympy expression when symbolic coefficients are wanted).
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import factorial
from typing import Iterator

__all__ = [
    "stirling_first",
    "stirling_second",
    "legendre_at_zero",
    "lattice_coeff_P",
    "lattice_coeff_Q",
    "change_matrix",
    "coefficient_table",
]

_lock = threading.Lock()
_first_rows: list[list[int]] = [[1]]
_second_rows: list[list[int]] = [[1]]
_legendre: list[Fraction] = [Fraction(1), Fraction(0)]


def _check_nonneg(**kw: int) -> None:
    for name, v in kw.items():
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"{name} must be a non-negative integer, got {v!r}")


def _grow_first(i: int) -> None:
    # s(r+1, k) = s(r, k-1) - r s(r, k)
    with _lock:
        while len(_first_rows) <= i:
            r = len(_first_rows) - 1
            prev = _first_rows[r]
            row = [0] * (r + 2)
            for k in range(1, r + 2):
                left = prev[k - 1]
                here = prev[k] if k <= r else 0
                row[k] = left - r * here
            _first_rows.append(row)


def _grow_second(k: int) -> None:
    # S(r+1, j) = j S(r, j) + S(r, j-1)
    with _lock:
        while len(_second_rows) <= k:
            r = len(_second_rows) - 1
            prev = _second_rows[r]
            row = [0] * (r + 2)
            for j in range(1, r + 2):
                here = prev[j] if j <= r else 0
                row[j] = j * here + prev[j - 1]
            _second_rows.append(row)


def stirling_first(i: int, k: int) -> int:
    """Signed Stirling number of the first kind s(i, k).

    >>> stirling_first(4, 2)
    11
    """
    _check_nonneg(i=i, k=k)
    if k > i:
        return 0
    if len(_first_rows) <= i:
        _grow_first(i)
    return _first_rows[i][k]


def stirling_second(k: int, j: int) -> int:
    """Stirling number of the second kind S(k, j)."""
    _check_nonneg(k=k, j=j)
    if j > k:
        return 0
    if len(_second_rows) <= k:
        _grow_second(k)
    return _second_rows[k][j]


def legendre_at_zero(i: int) -> Fraction:
    """P_i(0) from Bonnet's recurrence (i+1) P_{i+1}(0) = -i P_{i-1}(0)."""
    _check_nonneg(i=i)
    with _lock:
        while len(_legendre) <= i:
            r = len(_legendre) - 1
            _legendre.append(Fraction(-r, r + 1) * _legendre[r - 1])
    return _legendre[i]


def _exact(omega):
    if isinstance(omega, float):
        # floats would silently break bit-exactness downstream
        raise TypeError("omega must be exact (int, Fraction or symbolic), not float")
    if isinstance(omega, int):
        return Fraction(omega)
    return omega


def lattice_coeff_P(i: int, j: int, omega) -> Fraction:
    """P_{i,j} = sum_{k=j}^{i} omega^k s(i,k) S(k,j); zero when j > i."""
    _check_nonneg(i=i, j=j)
    omega = _exact(omega)
    if j > i:
        return Fraction(0)
    total = 0
    for k in range(j, i + 1):
        total += omega**k * stirling_first(i, k) * stirling_second(k, j)
    return total


def lattice_coeff_Q(i: int, j: int, omega) -> Fraction:
    """Inverse-change coefficient: ``lattice_coeff_P`` at 1/omega."""
    omega = _exact(omega)
    if omega == 0:
        raise ValueError("omega must be non-zero for the inverse lattice change")
    return lattice_coeff_P(i, j, 1 / omega)


def change_matrix(omega, ell: int, inverse: bool = False) -> list[list[Fraction]]:
    """Matrix C with Delta_n^j = sum_i C[j][i] Delta_{n1}^i, 0 <= i, j <= ell.

    Entries are j! P_{i,j} / i! (or the Q analogue when ``inverse``).
    """
    _check_nonneg(ell=ell)
    coeff = lattice_coeff_Q if inverse else lattice_coeff_P
    mat = [[Fraction(0)] * (ell + 1) for _ in range(ell + 1)]
    for j in range(ell + 1):
        for i in range(j, ell + 1):
            mat[j][i] = Fraction(factorial(j), factorial(i)) * coeff(i, j, omega)
    return mat


def coefficient_table(omega, max_i: int, inverse: bool = False) -> Iterator[tuple[int, ...]]:
    """Rows (i, j, omega_num, omega_den, value_num, value_den) for CSV dumps."""
    omega = Fraction(_exact(omega))
    coeff = lattice_coeff_Q if inverse else lattice_coeff_P
    for i in range(max_i + 1):
        for j in range(i + 1):
            v = Fraction(coeff(i, j, omega))
            yield (i, j, omega.numerator, omega.denominator, v.numerator, v.denominator)
