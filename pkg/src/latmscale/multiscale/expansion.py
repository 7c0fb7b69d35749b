"""Harmonic / 1-N expansion of lpKdV through the operator series.

Fields ``u_k^(alpha)`` of the slow variables are represented by
:class:`FieldAtom` objects (a field plus a derivative multi-index); the
determining equation at order ``1/N^j`` and harmonic ``alpha`` is a
polynomial in atoms (:class:`FieldPoly`).  The construction only uses the
``opcalc`` shift expansions: fast shifts become carrier phases and each
``delta`` power becomes a derivative index on the atom.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping

import numpy as np

from ..opcalc.series import DELTA, OperatorMonomial, OperatorSeries, ShiftScales, identity, shift_expansion

__all__ = [
    "SLOW_AXES",
    "FieldAtom",
    "FieldPoly",
    "DeterminingEquation",
    "SymbolicReduction",
    "linear_operator_L",
    "harmonic_operator",
    "expand_lpkdv",
    "sigma_from_expansion",
]

SLOW_AXES = ("n1", "m1", "m2", "m3")


@dataclass(frozen=True, order=True)
class FieldAtom:
    """delta^d u_k^(alpha), d indexed by SLOW_AXES; alpha < 0 means the conjugate."""

    k: int
    alpha: int
    d: tuple[int, int, int, int] = (0, 0, 0, 0)

    @property
    def name(self) -> str:
        base = f"u{self.k}{self.alpha}" if self.alpha >= 0 else f"ubar{self.k}{-self.alpha}"
        parts = [f"{ax}^{e}" if e > 1 else ax for ax, e in zip(SLOW_AXES, self.d) if e]
        return f"d[{','.join(parts)}]{base}" if parts else base

    def differentiated(self, d: Iterable[int]) -> "FieldAtom":
        return FieldAtom(self.k, self.alpha, tuple(a + b for a, b in zip(self.d, d)))

    def __str__(self) -> str:
        return self.name


class FieldPoly:
    """Sparse polynomial in field atoms with numeric or symbolic coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[FieldAtom, ...], Any] | None = None) -> None:
        self.terms: dict[tuple[FieldAtom, ...], Any] = {}
        for key, c in (terms or {}).items():
            self._add(tuple(sorted(key)), c)

    def _add(self, key: tuple[FieldAtom, ...], c: Any) -> None:
        total = self.terms.get(key, 0) + c
        if total == 0:
            self.terms.pop(key, None)
        else:
            self.terms[key] = total

    @classmethod
    def atom(cls, a: FieldAtom, c: Any = 1) -> "FieldPoly":
        return cls({(a,): c})

    def __add__(self, other: "FieldPoly") -> "FieldPoly":
        out = FieldPoly(self.terms)
        for key, c in other.terms.items():
            out._add(key, c)
        return out

    def __sub__(self, other: "FieldPoly") -> "FieldPoly":
        return self + other * -1

    def __mul__(self, other: "FieldPoly | Any") -> "FieldPoly":
        if isinstance(other, FieldPoly):
            out = FieldPoly()
            for k1, c1 in self.terms.items():
                for k2, c2 in other.terms.items():
                    out._add(tuple(sorted(k1 + k2)), c1 * c2)
            return out
        return FieldPoly({k: c * other for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    def pruned(self, tol: float) -> "FieldPoly":
        return FieldPoly({k: c for k, c in self.terms.items() if abs(complex(c)) > tol})

    def coefficient(self, *atoms: FieldAtom) -> Any:
        return self.terms.get(tuple(sorted(atoms)), 0)

    def atoms(self) -> set[FieldAtom]:
        return {a for key in self.terms for a in key}

    def evaluate(self, value_of: Callable[[FieldAtom], np.ndarray]) -> np.ndarray:
        """Sum of coefficient * product of atom values."""
        cache: dict[FieldAtom, np.ndarray] = {}
        total: Any = 0
        for key, c in self.terms.items():
            prod: Any = complex(c)
            for a in key:
                if a not in cache:
                    cache[a] = value_of(a)
                prod = prod * cache[a]
            total = total + prod
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return "\n".join(
            f"{complex(c):.12g} * {' '.join(a.name for a in key)}" for key, c in sorted(self.terms.items())
        )


@dataclass(frozen=True)
class SymbolicReduction:
    """sympy stand-ins for mu, zeta and the slow-lattice scales."""

    mu: Any
    zeta: Any
    M1: Any
    M1tilde: Any
    M2tilde: Any
    M3tilde: Any

    @classmethod
    def default(cls) -> "SymbolicReduction":
        import sympy as sp

        mu, zeta = sp.symbols("mu zeta")
        M1, M1t, M2t, M3t = sp.symbols("M1 M1t M2t M3t")
        return cls(mu, zeta, M1, M1t, M2t, M3t)

    def shift_scales(self) -> ShiftScales:
        return ShiftScales((self.M1,), (self.M1tilde, self.M2tilde, self.M3tilde))


def linear_operator_L(i: int, params: Any) -> OperatorSeries:
    """Coefficient of 1/N^i in mu (T_n T_m - 1) + zeta (T_n - T_m).

    ``params`` needs ``mu``, ``zeta`` and ``shift_scales()`` (a
    :class:`ReductionParams` or a :class:`SymbolicReduction`).
    """
    if i < 0:
        raise ValueError("i must be >= 0")
    ell = max(i, 1)
    tnm = shift_expansion("TnTm", params, i, ell)
    tn = shift_expansion("Tn", params, i, ell)
    tm = shift_expansion("Tm", params, i, ell)
    one = identity().truncated(i)
    full = params.mu * (tnm - one) + params.zeta * (tn - tm)
    return full.grade(i)


def _phase(mono: OperatorMonomial, alpha: int, kappa: float, omega: float) -> complex:
    arg = 0.0
    for idx, off in mono.shifts:
        if idx == "n":
            arg += off * kappa
        elif idx == "m":
            arg -= off * omega
        else:
            raise ValueError(f"unexpected fast index {idx!r}")
    return cmath.exp(1j * alpha * arg)


def harmonic_operator(series: OperatorSeries, alpha: int, kappa: float, omega: float) -> dict[tuple[int, ...], complex]:
    """Fast shifts replaced by the phases of harmonic alpha.

    Returns {(inv_n, d_n1, d_m1, d_m2, d_m3): coefficient}."""
    out: dict[tuple[int, ...], complex] = {}
    for mono, c in series.terms.items():
        if any(op != DELTA for _, op, _ in mono.factors):
            raise ValueError("only delta factors can act on slow fields")
        d = [0, 0, 0, 0]
        for idx, _, e in mono.factors:
            d[SLOW_AXES.index(idx)] += e
        key = (mono.inv_n, *d)
        out[key] = out.get(key, 0) + complex(c) * _phase(mono, alpha, kappa, omega)
    return out


@dataclass
class DeterminingEquation:
    order: int
    harmonic: int
    poly: FieldPoly

    def coefficient(self, *atoms: FieldAtom) -> complex:
        return complex(self.poly.coefficient(*atoms))

    def evaluate(self, value_of: Callable[[FieldAtom], np.ndarray]) -> np.ndarray:
        return self.poly.evaluate(value_of)


def _fields(order: int, impose_order1: bool) -> list[tuple[int, int]]:
    out = []
    for k in range(1, order + 1):
        for a in range(-order, order + 1):
            if abs(a) > k:
                continue
            if impose_order1 and k == 1 and abs(a) >= 2:
                continue
            out.append((k, a))
    return out


def _atom(k: int, a: int, d: Iterable[int] = (0, 0, 0, 0)) -> FieldAtom:
    # the zero harmonic is real: its conjugate is itself
    return FieldAtom(k, a, tuple(d))


def expand_lpkdv(params: Any, order: int = 3, *, impose_order1: bool = True) -> dict[tuple[int, int], DeterminingEquation]:
    """All determining equations ``P|_{1/N^j, e^{i alpha theta}}`` for j <= order.

    P = mu (T_nT_m u - u) + zeta (T_n u - T_m u) - (T_n u - T_m u)(T_nT_m u - u).
    """
    kappa, omega = params.kappa, params.omega
    ops = {w: shift_expansion(w, params, order, order) for w in ("TnTm", "Tn", "Tm")}
    ops["1"] = identity()
    fields = _fields(order, impose_order1)

    def shifted(which: str) -> dict[tuple[int, int], FieldPoly]:
        res: dict[tuple[int, int], FieldPoly] = {}
        for k, a in fields:
            for (g, *d), c in harmonic_operator(ops[which], a, kappa, omega).items():
                j = k + g
                if j > order:
                    continue
                term = FieldPoly.atom(_atom(k, a, d), c)
                res[(j, a)] = res.get((j, a), FieldPoly()) + term
        return res

    sh = {w: shifted(w) for w in ops}
    keys = {key for d in sh.values() for key in d}

    def get(w: str, key: tuple[int, int]) -> FieldPoly:
        return sh[w].get(key, FieldPoly())

    A = {key: get("Tn", key) - get("Tm", key) for key in keys}
    B = {key: get("TnTm", key) - get("1", key) for key in keys}
    out: dict[tuple[int, int], DeterminingEquation] = {}
    harmonics = range(-(order), order + 1)
    for j in range(1, order + 1):
        for a in harmonics:
            lin = params.mu * B.get((j, a), FieldPoly()) + params.zeta * A.get((j, a), FieldPoly())
            nl = FieldPoly()
            for j1 in range(1, j):
                for b in harmonics:
                    left = A.get((j1, b))
                    right = B.get((j - j1, a - b))
                    if left and right:
                        nl = nl + left * right
            out[(j, a)] = DeterminingEquation(j, a, lin - nl)
    return out


def sigma_from_expansion(params: Any, tol: float = 1e-13) -> tuple[tuple[complex, ...], FieldPoly]:
    """Read sigma_1..sigma_9 off the order-3, alpha=1 equation.

    Returns the nine values and the remainder (terms not covered by the
    sigma pattern; it should be numerically empty).
    """
    eq = expand_lpkdv(params, 3)[(3, 1)]
    u11 = lambda d=(0, 0, 0, 0): FieldAtom(1, 1, d)  # noqa: E731
    u21 = lambda d: FieldAtom(2, 1, d)  # noqa: E731
    u10 = lambda d: FieldAtom(1, 0, d)  # noqa: E731
    pattern = [
        ((u21((1, 0, 0, 0)),), 1),
        ((u21((0, 1, 0, 0)),), 1),
        ((u11((2, 0, 0, 0)),), 1),
        ((u11((0, 2, 0, 0)),), 1),
        ((u11((1, 1, 0, 0)),), 1),
        ((u11((0, 0, 1, 0)),), 1),
        ((u11(), u10((1, 0, 0, 0))), -1),
        ((u11(), u10((0, 1, 0, 0))), -1),
        ((FieldAtom(1, -1), FieldAtom(2, 2)), -1),
    ]
    sig = []
    rest = FieldPoly(eq.poly.terms)
    for atoms, sign in pattern:
        c = eq.poly.coefficient(*atoms)
        sig.append(sign * complex(c))
        rest = rest - FieldPoly({atoms: c})
    return tuple(sig), rest.pruned(tol)
