"""Truncated series in commuting partial-difference operators.

An :class:`OperatorSeries` is a finite linear combination of
:class:`OperatorMonomial` objects.  A monomial is a product of

* integer fast shifts ``T_n^a T_m^b`` (never expanded),
* powers of the formal logarithm ``delta_i = ln T_i`` on any index,
* powers of the explicit differences ``Delta^+``, ``Delta^-``, ``Delta^s``,

together with a grading power ``(1/N)^k``.  All operators commute, so a
monomial is stored in a canonical sorted form.  Two truncations are kept:
the maximal power of 1/N and, per index, the slow-varyness order ``ell``
(``Delta^{ell+1} u = 0``), applied to the total difference degree of the
factors acting on that index.

Coefficients are kept in whatever ring they were built in: ``int``,
``Fraction`` (exact), sympy expressions (symbolic), or Python ``complex``.
"""

from __future__ import annotations

import json
import math
import re
import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import factorial
from typing import Any, Iterable, Iterator, Mapping

from ..exactmath import lattice_coeff_P, lattice_coeff_Q, legendre_at_zero

__all__ = [
    "DiffVariant",
    "DELTA",
    "LatticeIndex",
    "OperatorMonomial",
    "OperatorSeries",
    "ShiftScales",
    "identity",
    "monomial",
    "delta_series",
    "exp_scaled_delta",
    "series_multiply",
    "shift_expansion",
    "change_of_lattice",
    "change_of_lattice_inverse",
    "index_stencil",
    "series_symbol",
]

DELTA = "delta"


class DiffVariant(str, Enum):
    FORWARD = "forward"  # T - 1
    BACKWARD = "backward"  # 1 - T^{-1}
    SYMMETRIC = "symmetric"  # (T - T^{-1}) / 2


_OPS = (DELTA, DiffVariant.FORWARD.value, DiffVariant.BACKWARD.value, DiffVariant.SYMMETRIC.value)
_OP_LABEL = {
    DELTA: "delta",
    DiffVariant.FORWARD.value: "Dplus",
    DiffVariant.BACKWARD.value: "Dminus",
    DiffVariant.SYMMETRIC.value: "Dsym",
}
_NAME_RE = re.compile(r"^([A-Za-z_]+?)(\d*)$")


@dataclass(frozen=True, order=True)
class LatticeIndex:
    """A named lattice direction; ``level`` i means the scale x_i = eps^i x."""

    name: str
    kind: str = "fast"
    level: int = 0

    def __post_init__(self) -> None:
        if self.kind not in ("fast", "slow"):
            raise ValueError(f"index kind must be 'fast' or 'slow', got {self.kind!r}")
        if (self.kind == "fast") != (self.level == 0):
            raise ValueError("fast indices have level 0 and slow indices level >= 1")

    @classmethod
    def parse(cls, name: str) -> "LatticeIndex":
        """``"n"`` -> fast, ``"m2"`` -> slow at level 2."""
        match = _NAME_RE.match(name)
        if match is None:
            raise ValueError(f"not a lattice index name: {name!r}")
        digits = match.group(2)
        level = int(digits) if digits else 0
        return cls(name, "slow" if level else "fast", level)


def _is_symbolic(c: Any) -> bool:
    return hasattr(c, "free_symbols") and hasattr(c, "expand")


def _normalize(c: Any) -> Any:
    if _is_symbolic(c):
        return c.expand()
    return c


def _is_zero(c: Any) -> bool:
    if _is_symbolic(c):
        return c.expand() == 0
    return c == 0


def _op_key(op: str | DiffVariant) -> str:
    op = op.value if isinstance(op, DiffVariant) else op
    if op not in _OPS:
        raise ValueError(f"unknown operator kind {op!r}")
    return op


@dataclass(frozen=True, order=True)
class OperatorMonomial:
    """Canonical product ``(1/N)^inv_n * prod T_i^a * prod op_{i}^e``.

    ``shifts`` holds ``(index, offset)`` pairs and ``factors`` holds
    ``(index, op, exponent)`` triples, both sorted and free of zero entries.
    """

    inv_n: int = 0
    shifts: tuple[tuple[str, int], ...] = ()
    factors: tuple[tuple[str, str, int], ...] = ()

    @classmethod
    def make(
        cls,
        factors: Mapping[tuple[str, Any], int] | Iterable[tuple[str, Any, int]] = (),
        shifts: Mapping[str, int] | Iterable[tuple[str, int]] = (),
        inv_n: int = 0,
    ) -> "OperatorMonomial":
        if inv_n < 0:
            raise ValueError("inv_n must be >= 0")
        pows: dict[tuple[str, str], int] = {}
        items = factors.items() if isinstance(factors, Mapping) else ((f[:2], f[2]) for f in factors)
        for (index, op), e in items:
            if e < 0:
                raise ValueError("operator exponents must be >= 0")
            key = (index, _op_key(op))
            pows[key] = pows.get(key, 0) + e
        offs: dict[str, int] = {}
        for index, a in shifts.items() if isinstance(shifts, Mapping) else shifts:
            offs[index] = offs.get(index, 0) + a
        return cls(
            inv_n,
            tuple(sorted((k, v) for k, v in offs.items() if v)),
            tuple(sorted((i, op, e) for (i, op), e in pows.items() if e)),
        )

    def __mul__(self, other: "OperatorMonomial") -> "OperatorMonomial":
        if not isinstance(other, OperatorMonomial):
            return NotImplemented
        return OperatorMonomial.make(
            [*self.factors, *other.factors],
            [*self.shifts, *other.shifts],
            self.inv_n + other.inv_n,
        )

    def degree(self, index: str) -> int:
        """Total difference degree on ``index`` (each op lowers it by one)."""
        return sum(e for i, _, e in self.factors if i == index)

    def indices(self) -> set[str]:
        return {i for i, _, _ in self.factors} | {i for i, _ in self.shifts}

    def power(self, index: str, op: str | DiffVariant = DELTA) -> int:
        op = _op_key(op)
        return sum(e for i, o, e in self.factors if i == index and o == op)

    def without_grading(self) -> "OperatorMonomial":
        return OperatorMonomial(0, self.shifts, self.factors)

    def operator_text(self) -> str:
        parts = []
        for i, a in self.shifts:
            parts.append(f"T_{i}" if a == 1 else f"T_{i}^{a}")
        for i, op, e in self.factors:
            label = f"{_OP_LABEL[op]}_{i}"
            parts.append(label if e == 1 else f"{label}^{e}")
        return " ".join(parts) if parts else "1"

    def __str__(self) -> str:
        grading = "" if self.inv_n == 0 else ("1/N " if self.inv_n == 1 else f"1/N^{self.inv_n} ")
        return grading + self.operator_text()


def _format_coeff(c: Any) -> str:
    if isinstance(c, complex):
        return f"({c.real:.17g}{c.imag:+.17g}j)"
    if isinstance(c, float):
        return f"{c:.17g}"
    if _is_symbolic(c):
        import sympy

        return sympy.sstr(c, order="lex")
    return str(c)


def _min_bound(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


class OperatorSeries:
    """Finite sum of monomials with truncation in 1/N and per-index degree."""

    __slots__ = ("terms", "trunc_inv_n", "trunc_degree", "default_degree", "system")

    def __init__(
        self,
        terms: Mapping[OperatorMonomial, Any] | None = None,
        trunc_inv_n: int | None = None,
        trunc_degree: Mapping[str, int] | None = None,
        default_degree: int | None = None,
        system: Mapping[str, LatticeIndex] | None = None,
    ) -> None:
        self.trunc_inv_n = trunc_inv_n
        self.trunc_degree = dict(trunc_degree or {})
        self.default_degree = default_degree
        self.system: dict[str, LatticeIndex] = dict(system or {})
        self.terms: dict[OperatorMonomial, Any] = {}
        for mono, c in (terms or {}).items():
            self._accumulate(mono, c)

    # -- construction helpers -------------------------------------------------

    def degree_limit(self, index: str) -> int | None:
        return self.trunc_degree.get(index, self.default_degree)

    def admits(self, mono: OperatorMonomial) -> bool:
        if self.trunc_inv_n is not None and mono.inv_n > self.trunc_inv_n:
            return False
        for index in {i for i, _, _ in mono.factors}:
            limit = self.degree_limit(index)
            if limit is not None and mono.degree(index) > limit:
                return False
        return True

    def _register(self, mono: OperatorMonomial) -> None:
        for name in mono.indices():
            idx = self.system.get(name)
            if idx is None:
                self.system[name] = LatticeIndex.parse(name)

    def _accumulate(self, mono: OperatorMonomial, c: Any) -> None:
        if not self.admits(mono):
            return
        self._register(mono)
        total = _normalize(self.terms.get(mono, 0) + c)
        if _is_zero(total):
            self.terms.pop(mono, None)
        else:
            self.terms[mono] = total

    def _empty_like(self, other: "OperatorSeries | None" = None) -> "OperatorSeries":
        trunc = self.trunc_inv_n
        degrees = dict(self.trunc_degree)
        default = self.default_degree
        system = dict(self.system)
        if other is not None:
            trunc = _min_bound(trunc, other.trunc_inv_n)
            default = _min_bound(default, other.default_degree)
            for k in set(degrees) | set(other.trunc_degree):
                degrees[k] = _min_bound(
                    self.trunc_degree.get(k, self.default_degree),
                    other.trunc_degree.get(k, other.default_degree),
                )
            for name, idx in other.system.items():
                mine = system.get(name)
                if mine is not None and mine != idx:
                    raise ValueError(f"incompatible index systems for {name!r}: {mine} vs {idx}")
                system[name] = idx
        return OperatorSeries(None, trunc, degrees, default, system)

    # -- algebra --------------------------------------------------------------

    def __add__(self, other: "OperatorSeries | Any") -> "OperatorSeries":
        if not isinstance(other, OperatorSeries):
            other = identity() * other
        out = self._empty_like(other)
        for mono, c in self.terms.items():
            out._accumulate(mono, c)
        for mono, c in other.terms.items():
            out._accumulate(mono, c)
        return out

    __radd__ = __add__

    def __neg__(self) -> "OperatorSeries":
        return self * -1

    def __sub__(self, other: "OperatorSeries | Any") -> "OperatorSeries":
        if not isinstance(other, OperatorSeries):
            other = identity() * other
        return self + (-other)

    def __rsub__(self, other: Any) -> "OperatorSeries":
        return (-self) + other

    def __mul__(self, other: "OperatorSeries | Any") -> "OperatorSeries":
        if isinstance(other, OperatorSeries):
            return series_multiply(self, other)
        out = self._empty_like()
        for mono, c in self.terms.items():
            out._accumulate(mono, c * other)
        return out

    def __rmul__(self, other: Any) -> "OperatorSeries":
        out = self._empty_like()
        for mono, c in self.terms.items():
            out._accumulate(mono, other * c)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OperatorSeries):
            return NotImplemented
        keys = set(self.terms) | set(other.terms)
        return all(_is_zero(self.terms.get(k, 0) - other.terms.get(k, 0)) for k in keys)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[OperatorMonomial, Any]]:
        return iter(sorted(self.terms.items(), key=lambda kv: kv[0]))

    def coefficient(self, mono: OperatorMonomial) -> Any:
        return self.terms.get(mono, 0)

    def grade(self, k: int) -> "OperatorSeries":
        """Coefficient operator of (1/N)^k, returned with its grading removed."""
        out = OperatorSeries(None, None, self.trunc_degree, self.default_degree, self.system)
        for mono, c in self.terms.items():
            if mono.inv_n == k:
                out._accumulate(mono.without_grading(), c)
        return out

    def truncated(self, trunc_inv_n: int | None = None, ell: int | Mapping[str, int] | None = None) -> "OperatorSeries":
        out = self._empty_like()
        out.trunc_inv_n = _min_bound(out.trunc_inv_n, trunc_inv_n)
        if isinstance(ell, Mapping):
            for k, v in ell.items():
                out.trunc_degree[k] = _min_bound(out.degree_limit(k), v)
        elif ell is not None:
            out.default_degree = _min_bound(out.default_degree, ell)
            for k in list(out.trunc_degree):
                out.trunc_degree[k] = _min_bound(out.trunc_degree[k], ell)
        for mono, c in self.terms.items():
            out._accumulate(mono, c)
        return out

    def map_coefficients(self, func) -> "OperatorSeries":
        out = self._empty_like()
        for mono, c in self.terms.items():
            out._accumulate(mono, func(c))
        return out

    def subs(self, mapping: Mapping[Any, Any]) -> "OperatorSeries":
        """Substitute values into symbolic coefficients."""
        return self.map_coefficients(lambda c: c.subs(mapping) if _is_symbolic(c) else c)

    def numeric(self) -> "OperatorSeries":
        """Coefficients converted to Python ``complex``."""

        def conv(c: Any) -> complex:
            if _is_symbolic(c):
                if c.free_symbols:
                    raise ValueError(f"coefficient {c} still has free symbols {c.free_symbols}")
                return complex(c.evalf())
            return complex(c)

        return self.map_coefficients(conv)

    # -- output ---------------------------------------------------------------

    def pretty(self) -> str:
        """Deterministic one-term-per-line rendering, canonical order."""
        if not self.terms:
            return "0"
        return "\n".join(f"{_format_coeff(c)} * {mono}" for mono, c in self)

    def __str__(self) -> str:
        return self.pretty()

    def __repr__(self) -> str:
        return f"OperatorSeries({len(self.terms)} terms, trunc_inv_n={self.trunc_inv_n})"

    def to_records(self) -> list[dict[str, Any]]:
        rows = []
        for mono, c in self:
            row: dict[str, Any] = {"monomial": mono.operator_text(), "invN_power": mono.inv_n}
            if _is_symbolic(c) and c.free_symbols:
                row["expr"] = _format_coeff(c)
            else:
                z = complex(c.evalf()) if _is_symbolic(c) else complex(c)
                row["re"] = z.real
                row["im"] = z.imag
            rows.append(row)
        return rows

    def to_json(self) -> str:
        return json.dumps(self.to_records(), sort_keys=True)


def identity() -> OperatorSeries:
    return OperatorSeries({OperatorMonomial(): 1})


def monomial(
    coeff: Any = 1,
    factors: Mapping[tuple[str, Any], int] | Iterable[tuple[str, Any, int]] = (),
    shifts: Mapping[str, int] | Iterable[tuple[str, int]] = (),
    inv_n: int = 0,
) -> OperatorSeries:
    """Single-term series."""
    return OperatorSeries({OperatorMonomial.make(factors, shifts, inv_n): coeff})


def delta_series(variant: DiffVariant | str, ell: int, index: str = "n") -> OperatorSeries:
    """delta = ln T as a series in one kind of difference, degree <= ell."""
    variant = DiffVariant(variant)
    if ell < 0:
        raise ValueError("ell must be >= 0")
    if ell == 0:
        warnings.warn("delta_series with ell=0 is the zero operator", stacklevel=2)
    terms = {}
    for i in range(1, ell + 1):
        if variant is DiffVariant.FORWARD:
            c = Fraction((-1) ** (i - 1), i)
        elif variant is DiffVariant.BACKWARD:
            c = Fraction(1, i)
        else:
            c = legendre_at_zero(i - 1) / i
        if c:
            terms[OperatorMonomial.make({(index, variant): i})] = c
    return OperatorSeries(terms, trunc_degree={index: ell})


def exp_scaled_delta(
    index: str,
    epsilon_num: Any,
    epsilon_den_power: int,
    trunc: int,
    ell: int,
) -> OperatorSeries:
    """Partial shift sum_i (M/N^k)^i / i! delta_index^i through 1/N^trunc, degree ell."""
    if epsilon_den_power < 0:
        raise ValueError("epsilon_den_power must be >= 0")
    terms = {OperatorMonomial(): 1}
    if not _is_zero(epsilon_num):
        i = 1
        while i <= ell and i * epsilon_den_power <= trunc:
            mono = OperatorMonomial.make({(index, DELTA): i}, inv_n=i * epsilon_den_power)
            terms[mono] = epsilon_num**i * Fraction(1, factorial(i))
            i += 1
            if epsilon_den_power == 0 and i > ell:
                break
    return OperatorSeries(terms, trunc_inv_n=trunc, trunc_degree={index: ell})


def series_multiply(a: OperatorSeries, b: OperatorSeries) -> OperatorSeries:
    """Product with re-truncation at the tighter of the two bounds."""
    out = a._empty_like(b)
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            mono = ma * mb
            if out.admits(mono):
                out._accumulate(mono, ca * cb)
    return out


@dataclass(frozen=True)
class ShiftScales:
    """Scale integers of the slow lattices: eps_{n_i} = n[i-1] / N^i, same for m."""

    n: tuple[Any, ...] = ()
    m: tuple[Any, ...] = ()


def _scales_of(params: Any) -> ShiftScales:
    if isinstance(params, ShiftScales):
        return params
    if hasattr(params, "shift_scales"):
        return params.shift_scales()
    raise TypeError("params must be ShiftScales or provide shift_scales()")


def _partial_shift(prefix: str, scales: tuple[Any, ...], trunc: int, ell: int) -> OperatorSeries:
    out = identity().truncated(trunc)
    for level, scale in enumerate(scales, start=1):
        if level > trunc:
            break
        out = series_multiply(out, exp_scaled_delta(f"{prefix}{level}", scale, level, trunc, ell))
    return out


def shift_expansion(which: str, params: Any, trunc: int, ell: int) -> OperatorSeries:
    """Expansion of ``T_n``, ``T_m`` or ``T_nT_m`` on fast + slow lattices."""
    scales = _scales_of(params)
    if which not in ("Tn", "Tm", "TnTm"):
        raise ValueError(f"which must be 'Tn', 'Tm' or 'TnTm', got {which!r}")
    out = identity().truncated(trunc)
    if which in ("Tn", "TnTm"):
        out = series_multiply(out, monomial(1, shifts={"n": 1}))
        out = series_multiply(out, _partial_shift("n", scales.n, trunc, ell))
    if which in ("Tm", "TnTm"):
        out = series_multiply(out, monomial(1, shifts={"m": 1}))
        out = series_multiply(out, _partial_shift("m", scales.m, trunc, ell))
    return out


def change_of_lattice(j: int, omega: Any, ell: int, index: str = "n1") -> OperatorSeries:
    """Delta_n^j written as sum_{i=j}^{ell} j! P_{i,j}/i! Delta_{index}^i."""
    if j < 1:
        raise ValueError("j must be >= 1")
    terms = {}
    for i in range(j, ell + 1):
        c = Fraction(factorial(j), factorial(i)) * lattice_coeff_P(i, j, omega)
        terms[OperatorMonomial.make({(index, DiffVariant.FORWARD): i})] = c
    return OperatorSeries(terms, trunc_degree={index: ell})


def change_of_lattice_inverse(j: int, omega: Any, ell: int, index: str = "n") -> OperatorSeries:
    """Delta_{n1}^j in powers of Delta_{index} with the Q coefficients."""
    if j < 1:
        raise ValueError("j must be >= 1")
    terms = {}
    for i in range(j, ell + 1):
        c = Fraction(factorial(j), factorial(i)) * lattice_coeff_Q(i, j, omega)
        terms[OperatorMonomial.make({(index, DiffVariant.FORWARD): i})] = c
    return OperatorSeries(terms, trunc_degree={index: ell})


# -- stencil realization --------------------------------------------------------

_LAURENT = {
    DiffVariant.FORWARD.value: {1: Fraction(1), 0: Fraction(-1)},
    DiffVariant.BACKWARD.value: {0: Fraction(1), -1: Fraction(-1)},
    DiffVariant.SYMMETRIC.value: {1: Fraction(1, 2), -1: Fraction(-1, 2)},
}


def _laurent_mul(a: dict[int, Any], b: dict[int, Any]) -> dict[int, Any]:
    out: dict[int, Any] = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v != 0}


def _laurent_pow(a: dict[int, Any], e: int) -> dict[int, Any]:
    out: dict[int, Any] = {0: Fraction(1)}
    for _ in range(e):
        out = _laurent_mul(out, a)
    return out


def _poly_mul_trunc(a: list[Any], b: list[Any], deg: int) -> list[Any]:
    out = [Fraction(0)] * (deg + 1)
    for i, x in enumerate(a):
        if i > deg or x == 0:
            continue
        for j, y in enumerate(b):
            if i + j > deg:
                break
            out[i + j] += x * y
    return out


def index_stencil(
    factors: Iterable[tuple[str, int]],
    ell: int | None,
    variant: DiffVariant | str = DiffVariant.FORWARD,
) -> dict[int, Any]:
    """Laurent polynomial in T (offset -> coefficient) for ops on one index.

    ``factors`` are ``(op, exponent)`` pairs.  Powers of ``delta`` go through
    the ``variant`` series, truncated so that the total difference degree
    stays <= ``ell``.
    """
    variant = DiffVariant(variant)
    explicit_degree = 0
    delta_power = 0
    stencil: dict[int, Any] = {0: Fraction(1)}
    for op, e in factors:
        if op == DELTA:
            delta_power += e
        else:
            explicit_degree += e
            stencil = _laurent_mul(stencil, _laurent_pow(_LAURENT[op], e))
    if delta_power:
        if ell is None:
            raise ValueError("a finite ell is needed to realize delta as a stencil")
        room = ell - explicit_degree
        if room < delta_power:
            return {}
        # base[d] = coefficient of Delta_v^d in the delta series
        base = [Fraction(0)] * (room + 1)
        for mono, c in delta_series(variant, room, "_").terms.items():
            base[mono.power("_", variant)] = c
        poly = [Fraction(1)] + [Fraction(0)] * room
        for _ in range(delta_power):
            poly = _poly_mul_trunc(poly, base, room)
        realized: dict[int, Any] = {}
        unit = _LAURENT[variant.value]
        power = {0: Fraction(1)}
        for d in range(room + 1):
            if d:
                power = _laurent_mul(power, unit)
            if poly[d] != 0:
                for off, c in power.items():
                    realized[off] = realized.get(off, 0) + poly[d] * c
        stencil = _laurent_mul(stencil, {k: v for k, v in realized.items() if v != 0})
    return stencil


def monomial_stencil(
    mono: OperatorMonomial,
    ell: Mapping[str, int | None] | int | None,
    variant: DiffVariant | str = DiffVariant.FORWARD,
) -> dict[tuple[tuple[str, int], ...], Any]:
    """Multi-index stencil {((index, offset), ...): coefficient} of one monomial."""
    per_index: dict[str, list[tuple[str, int]]] = {}
    for i, op, e in mono.factors:
        per_index.setdefault(i, []).append((op, e))
    result: dict[tuple[tuple[str, int], ...], Any] = {tuple(mono.shifts): Fraction(1)}
    for i, facs in sorted(per_index.items()):
        limit = ell.get(i) if isinstance(ell, Mapping) else ell
        st = index_stencil(facs, limit, variant)
        nxt: dict[tuple[tuple[str, int], ...], Any] = {}
        for key, c in result.items():
            for off, d in st.items():
                offs = dict(key)
                offs[i] = offs.get(i, 0) + off
                k2 = tuple(sorted((a, b) for a, b in offs.items() if b))
                nxt[k2] = nxt.get(k2, 0) + c * d
        result = {k: v for k, v in nxt.items() if v != 0}
    return result


def series_stencil(
    series: OperatorSeries,
    *,
    inv_n_value: Any = None,
    ell: int | Mapping[str, int] | None = None,
    variant: DiffVariant | str = DiffVariant.FORWARD,
) -> dict[tuple[tuple[str, int], ...], Any]:
    """Combined stencil of the whole series (1/N replaced by ``inv_n_value``)."""
    total: dict[tuple[tuple[str, int], ...], Any] = {}
    for mono, c in series.terms.items():
        if mono.inv_n:
            if inv_n_value is None:
                raise ValueError("series is graded in 1/N; pass inv_n_value (or N) to realize it")
            c = c * inv_n_value**mono.inv_n
        limits: dict[str, int | None] = {}
        for i in mono.indices():
            if isinstance(ell, Mapping):
                limits[i] = ell.get(i, series.degree_limit(i))
            elif ell is not None:
                limits[i] = ell
            else:
                limits[i] = series.degree_limit(i)
        for key, d in monomial_stencil(mono, limits, variant).items():
            total[key] = total.get(key, 0) + c * d
    return {k: v for k, v in total.items() if not _is_zero(v)}


def series_symbol(
    series: OperatorSeries,
    phases: Mapping[str, float],
    *,
    inv_n_value: Any = None,
    ell: int | Mapping[str, int] | None = None,
    variant: DiffVariant | str = DiffVariant.FORWARD,
) -> complex:
    """Scalar by which the realized series multiplies prod exp(i phase_k k)."""
    total = 0j
    for key, c in series_stencil(series, inv_n_value=inv_n_value, ell=ell, variant=variant).items():
        arg = sum(phases[i] * off for i, off in key)
        coef = complex(c.evalf()) if _is_symbolic(c) else complex(c)
        total += coef * complex(math.cos(arg), math.sin(arg))
    return total
