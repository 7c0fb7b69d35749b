"""Closed-form coefficients of the reduction: M1, M1tilde, alpha, sigma, rho."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .params import ConsistencyError, ReductionParams, SingularParameterError, _guard

__all__ = [
    "SigmaCoefficients",
    "solve_M_coefficients",
    "M_coefficients_unreduced",
    "alpha_coefficients",
    "sigma_coefficients",
    "rho_coefficients",
    "rho_complex_forms",
    "rho_real_forms",
    "rho_from_sigma",
]


def solve_M_coefficients(params: ReductionParams) -> tuple[complex, complex]:
    """M1 = gamma S (mu - zeta e^{ik}), M1t = S e^{ik}(zeta^2 - mu^2)/(mu e^{ik} - zeta)."""
    mu, zeta, eik, S = params.mu, params.zeta, params.eik, params.S
    _guard("mu e^{i kappa} - zeta", mu * eik - zeta)
    m1 = params.gamma * S * (mu - zeta * eik)
    m1t = S * eik * (zeta**2 - mu**2) / (mu * eik - zeta)
    return m1, m1t


def M_coefficients_unreduced(params: ReductionParams) -> tuple[complex, complex]:
    """The same pair before the dispersion relation is used (omega explicit)."""
    mu, zeta, eik, S = params.mu, params.zeta, params.eik, params.S
    eiw = cmath.exp(1j * params.omega)
    m1 = params.gamma * S / eiw * (mu * eik - zeta)
    m1t = -S * eik * (mu / eiw + zeta)
    return m1, m1t


def alpha_coefficients(params: ReductionParams) -> tuple[complex, complex]:
    mu, zeta, eik, S = params.mu, params.zeta, params.eik, params.S
    _guard("1 - e^{i kappa}", 1 - eik)
    _guard("mu - zeta e^{i kappa}", mu - zeta * eik)
    a1 = -2 * params.gamma * (1 + eik) ** 2 / (S * eik * (mu + zeta) * (mu - zeta * eik))
    a2 = (1 + eik) / ((1 - eik) * (mu + zeta))
    return a1, a2


@dataclass(frozen=True)
class SigmaCoefficients:
    sigma: tuple[complex, ...]
    alpha1: complex
    alpha2: complex
    rho1: float
    rho2: float

    def __getitem__(self, i: int) -> complex:
        """1-based access, ``sc[1]`` is sigma_1."""
        if not 1 <= i <= 9:
            raise IndexError("sigma index runs from 1 to 9")
        return self.sigma[i - 1]

    def identity_residuals(self, params: ReductionParams) -> dict[str, float]:
        """|lhs - rhs| of the structural relations among the sigma."""
        s = self.sigma
        g, S, mu, zeta = params.gamma, params.S, params.mu, params.zeta
        w = mu - zeta * params.eik
        return {
            "sigma2=-gamma*sigma1": abs(s[1] + g * s[0]),
            "sigma3=(gamma S/2) w sigma1": abs(s[2] - 0.5 * g * S * w * s[0]),
            "sigma4=sigma1^2/(2w)": abs(s[3] - s[0] ** 2 / (2 * w)),
            "sigma5=-gamma mu sigma1^2/(mu^2-zeta^2)": abs(s[4] + g * mu * s[0] ** 2 / (mu**2 - zeta**2)),
            "sigma6=M2t w": abs(s[5] - params.M2tilde * w),
        }


def sigma_coefficients(params: ReductionParams) -> SigmaCoefficients:
    mu, zeta, eik, S, g = params.mu, params.zeta, params.eik, params.S, params.gamma
    w = mu - zeta * eik
    wc = mu * eik - zeta
    for name, v in (
        ("mu - zeta e^{i kappa}", w),
        ("mu e^{i kappa} - zeta", wc),
        ("zeta e^{i kappa} - mu", zeta * eik - mu),
        ("mu + zeta", mu + zeta),
        ("mu - zeta", mu - zeta),
    ):
        _guard(name, v)
    s1 = g * S * eik * w * (mu**2 - zeta**2) / wc
    s2 = -g * s1
    s3 = 0.5 * g * S * w * s1
    s4 = s1**2 / (2 * w)
    s5 = -g * mu * s1**2 / (mu**2 - zeta**2)
    s6 = params.M2tilde * w
    s7 = s1 * (eik**2 - 1) / (eik * (mu + zeta))
    s8 = S * eik * (mu**2 - zeta**2) * (mu + zeta) * (1 - eik**2) / wc**2
    s9 = zeta * mu * (eik**2 - 1) ** 2 * (eik + 1) ** 2 * (mu - zeta) / (eik * w * wc**2)
    a1, a2 = alpha_coefficients(params)
    r1, r2 = rho_coefficients(params)
    return SigmaCoefficients((s1, s2, s3, s4, s5, s6, s7, s8, s9), a1, a2, r1, r2)


def rho_complex_forms(params: ReductionParams) -> tuple[complex, complex]:
    mu, zeta, eik, S = params.mu, params.zeta, params.eik, params.S
    wc = mu * eik - zeta
    _guard("mu e^{i kappa} - zeta", wc)
    _guard("zeta e^{i kappa} - mu", zeta * eik - mu)
    M2 = params.M2tilde
    rho1 = 1j * zeta * mu * S**2 * eik * (zeta**2 - mu**2) * (eik**2 - 1) / (2 * M2 * wc**2)
    rho2 = (
        1j * zeta * mu * (mu - zeta) * (eik**2 - 1) * (eik + 1) ** 4
        / (M2 * eik * (mu + zeta) * wc**2 * (zeta * eik - mu) ** 2)
    )
    return rho1, rho2


def rho_real_forms(params: ReductionParams) -> tuple[float, float]:
    mu, zeta, k, r, M2 = params.mu, params.zeta, params.kappa, params.r, params.M2tilde
    D = zeta**2 + mu**2 - 2 * zeta * mu * math.cos(k)
    _guard("zeta^2 + mu^2 - 2 zeta mu cos kappa", D)
    rho1 = -mu * zeta * r**2 * (zeta**2 - mu**2) * math.sin(k) / (M2 * D)
    rho2 = 8 * zeta * mu * (zeta - mu) * (1 + math.cos(k)) ** 2 * math.sin(k) / (M2 * (mu + zeta) * D**2)
    return rho1, rho2


def rho_from_sigma(sigma: tuple[complex, ...], alpha1: complex, alpha2: complex, gamma: int) -> tuple[complex, complex]:
    """Reduce the order-3 equation on fields of n2 = n1 + gamma m1 to i u_m2 = rho1 u'' + rho2 |u|^2 u."""
    s = sigma
    rho1 = -1j * (s[2] + s[3] + gamma * s[4]) / s[5]
    rho2 = 1j * ((s[6] + gamma * s[7]) * alpha1 + s[8] * alpha2) / s[5]
    return rho1, rho2


def rho_coefficients(params: ReductionParams, tol: float = 1e-10) -> tuple[float, float]:
    """Real (rho1, rho2), cross-checked against the complex closed forms."""
    c1, c2 = rho_complex_forms(params)
    r1, r2 = rho_real_forms(params)
    for name, c, r in (("rho1", c1, r1), ("rho2", c2, r2)):
        scale = max(1.0, abs(r))
        if abs(c.imag) > tol * scale or abs(c.real - r) > tol * scale:
            raise ConsistencyError(f"{name}: complex form {c} disagrees with real form {r}")
    if r1 == 0 or r2 == 0:
        raise SingularParameterError("sin kappa (rho vanishes)", math.sin(params.kappa))
    return r1, r2
