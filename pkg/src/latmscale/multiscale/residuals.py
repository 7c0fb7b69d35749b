"""Residuals of the determining equations on concrete harmonic fields."""

from __future__ import annotations

import cmath

import numpy as np

from ..opcalc.grid import GridFunction
from .coefficients import SigmaCoefficients, rho_coefficients, sigma_coefficients
from .expansion import FieldAtom
from .fields import FieldSet
from .params import ReductionParams

__all__ = [
    "determining_residual_order2",
    "order3_residual",
    "secularity_split",
    "reduced_dnls_residual",
]


def _a(k: int, alpha: int, dn1: int = 0, dm1: int = 0, dm2: int = 0) -> FieldAtom:
    return FieldAtom(k, alpha, (dn1, dm1, dm2, 0))


def determining_residual_order2(fields: FieldSet, params: ReductionParams, alpha: int) -> GridFunction:
    """Left minus right side of the 1/N^2 equation for harmonic 0, 1 or 2."""
    mu, zeta = params.mu, params.zeta
    eik = params.eik
    eiw = cmath.exp(1j * params.omega)
    M1, M1t = params.M1, params.M1tilde
    v = fields.value
    if alpha == 0:
        fields.require((1, 0), (1, 1))
        lhs = (mu + zeta) * M1 * v(_a(1, 0, dn1=1)) + (mu - zeta) * M1t * v(_a(1, 0, dm1=1))
        mod2 = v(_a(1, 1)) * v(_a(1, -1))
        rhs = 2 * (-eik - 1 / eik + eiw + 1 / eiw) * mod2
    elif alpha == 1:
        fields.require((1, 1))
        lhs = eik * (mu / eiw + zeta) * M1 * v(_a(1, 1, dn1=1)) + (mu * eik - zeta) / eiw * M1t * v(_a(1, 1, dm1=1))
        rhs = 0
    elif alpha == 2:
        fields.require((1, 1), (2, 2))
        coef = zeta * (eik**2 - eiw**-2) + mu * (eik**2 * eiw**-2 - 1)
        lhs = coef * v(_a(2, 2))
        rhs = (-eik + 1 / eiw + eik**2 / eiw - eik / eiw**2) * v(_a(1, 1)) ** 2
    else:
        raise ValueError("alpha must be 0, 1 or 2")
    return fields.result(lhs - rhs)


def order3_residual(
    fields: FieldSet, params: ReductionParams, sigma: SigmaCoefficients | None = None
) -> GridFunction:
    """Left minus right side of the 1/N^3, harmonic-1 equation (all nine sigma terms)."""
    s = (sigma or sigma_coefficients(params)).sigma
    fields.require((1, 1), (1, 0), (2, 2))
    v = fields.value
    lhs = (
        s[2] * v(_a(1, 1, dn1=2))
        + s[3] * v(_a(1, 1, dm1=2))
        + s[4] * v(_a(1, 1, dn1=1, dm1=1))
        + s[5] * v(_a(1, 1, dm2=1))
    )
    if fields.has(2, 1):
        lhs = lhs + s[0] * v(_a(2, 1, dn1=1)) + s[1] * v(_a(2, 1, dm1=1))
    rhs = v(_a(1, 1)) * (s[6] * v(_a(1, 0, dn1=1)) + s[7] * v(_a(1, 0, dm1=1))) + s[8] * v(_a(1, -1)) * v(_a(2, 2))
    return fields.result(lhs - rhs)


def reduced_dnls_residual(
    fields: FieldSet, params: ReductionParams, rho: tuple[float, float] | None = None
) -> GridFunction:
    """i delta_m2 u - rho1 delta_n2^2 u - rho2 |u|^2 u for u = u_1^(1)."""
    fields.require((1, 1))
    r1, r2 = rho if rho is not None else rho_coefficients(params)
    v = fields.value
    u = v(_a(1, 1))
    res = 1j * v(_a(1, 1, dm2=1)) - r1 * v(_a(1, 1, dn1=2)) - r2 * u * v(_a(1, -1)) * u
    return fields.result(res)


def secularity_split(fields: FieldSet, params: ReductionParams) -> tuple[GridFunction, GridFunction]:
    """(sigma1 delta_n1 + sigma2 delta_m1) u_2^(1) and the reduced dNLS residual.

    A missing u_2^(1) is taken as zero.
    """
    fields.require((1, 1))
    s = sigma_coefficients(params).sigma
    if fields.has(2, 1):
        sec = s[0] * fields.value(_a(2, 1, dn1=1)) + s[1] * fields.value(_a(2, 1, dm1=1))
    else:
        sec = np.zeros(fields.template.values.shape, dtype=complex)
    secular = fields.result(sec)
    return secular, reduced_dnls_residual(fields, params)
