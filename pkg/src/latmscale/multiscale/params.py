"""Parameter record of the multiscale reduction."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field, replace
from typing import Any

from ..lpkdv import LpkdvParams, dispersion
from ..opcalc.series import ShiftScales

__all__ = ["ReductionParams", "SingularParameterError", "ConsistencyError", "theta_rule"]


class SingularParameterError(ValueError):
    """A denominator of the closed forms vanishes; ``factor`` names it."""

    def __init__(self, factor: str, value: complex | float = 0.0) -> None:
        self.factor = factor
        self.value = value
        super().__init__(f"singular parameters: {factor} vanishes (|value| = {abs(value):.3g})")


class ConsistencyError(RuntimeError):
    """Two independent evaluations of the same quantity disagree."""


SINGULAR_TOL = 1e-12


def _guard(name: str, value: complex | float) -> None:
    if abs(value) < SINGULAR_TOL:
        raise SingularParameterError(name, value)


def theta_rule(kappa: float, mu: float, zeta: float) -> float:
    """theta = -arctan(zeta sin kappa / (zeta cos kappa - mu)), principal branch."""
    den = zeta * math.cos(kappa) - mu
    num = zeta * math.sin(kappa)
    if den == 0:
        return -math.copysign(math.pi / 2, num) if num else 0.0
    return -math.atan(num / den)


@dataclass(frozen=True)
class ReductionParams:
    """Validated inputs of the reduction.

    ``theta`` follows the principal-branch rule, shifted by pi when that is
    needed to make ``M1tilde`` positive.  With that choice both M1 and
    M1tilde are real; M1 has the sign of ``gamma * p * q``.
    """

    lpkdv: LpkdvParams
    kappa: float
    omega: float
    N: int
    gamma: int
    r: float
    theta: float
    M1: complex
    M1tilde: complex
    M2tilde: int
    M3tilde: float = 0.0
    ell: int = 3
    theta_shifted: bool = False
    integerized: dict[str, Any] = field(default_factory=dict)

    @classmethod
    def from_inputs(
        cls,
        p: float = 2.0,
        q: float = 1.0,
        kappa: float = math.pi / 2,
        *,
        N: int = 16,
        gamma: int = 1,
        r: float = 1.0,
        M2tilde: int = 1,
        M3tilde: float = 0.0,
        ell: int = 3,
        omega: float | None = None,
        integerize: bool = False,
    ) -> "ReductionParams":
        lp = LpkdvParams(p, q)
        if gamma not in (1, -1):
            raise ValueError("gamma must be +1 or -1")
        if not r > 0:
            raise ValueError("r must be positive")
        if not (isinstance(N, int) and N >= 1):
            raise ValueError("N must be a positive integer")
        if M2tilde < 1:
            raise ValueError("M2tilde must be >= 1")
        if math.remainder(kappa, 2 * math.pi) == 0:
            raise SingularParameterError("1 - e^{i kappa} (kappa = 0)", 0.0)
        on_shell = dispersion(kappa, lp)
        if omega is None:
            omega = on_shell
        elif abs(math.remainder(omega - on_shell, 2 * math.pi)) > 1e-12:
            raise ValueError(f"omega={omega} is off-shell (dispersion gives {on_shell})")
        mu, zeta = lp.mu, lp.zeta
        eik = cmath.exp(1j * kappa)
        w = mu - zeta * eik
        _guard("mu - zeta e^{i kappa}", w)
        _guard("mu e^{i kappa} - zeta", mu * eik - zeta)
        theta = theta_rule(kappa, mu, zeta)
        shifted = False
        m1t = _m1tilde(r * cmath.exp(1j * theta), kappa, mu, zeta)
        if m1t.real < 0:
            theta += math.pi
            shifted = True
            m1t = -m1t
        S = r * cmath.exp(1j * theta)
        m1 = gamma * S * w
        info: dict[str, Any] = {}
        if integerize:
            target = max(1, round(abs(m1)))
            scale = target / abs(m1)
            r = r * scale
            S = S * scale
            m1 = gamma * S * w
            m1t = _m1tilde(S, kappa, mu, zeta)
            info = {
                "r_scale": scale,
                "M1_target": target,
                "M1tilde_mismatch": abs(m1t.real - round(m1t.real)),
            }
        out = cls(
            lp, kappa, float(omega), N, gamma, r, theta, m1, m1t, M2tilde, M3tilde, ell, shifted, info
        )
        out.validate()
        return out

    def validate(self, tol: float = 1e-10) -> None:
        for name, v in (("M1", self.M1), ("M1tilde", self.M1tilde)):
            if abs(v.imag) > tol * max(1.0, abs(v)):
                raise ConsistencyError(f"{name} has imaginary part {v.imag:.3g}")
        if self.M1tilde.real <= 0:
            raise ConsistencyError("M1tilde must be positive")

    # convenient views ----------------------------------------------------------

    @property
    def mu(self) -> float:
        return self.lpkdv.mu

    @property
    def zeta(self) -> float:
        return self.lpkdv.zeta

    @property
    def p(self) -> float:
        return self.lpkdv.p

    @property
    def q(self) -> float:
        return self.lpkdv.q

    @property
    def S(self) -> complex:
        return self.r * cmath.exp(1j * self.theta)

    @property
    def m1(self) -> float:
        return self.M1.real

    @property
    def m1tilde(self) -> float:
        return self.M1tilde.real

    @property
    def m1_positive(self) -> bool:
        return self.M1.real > 0

    @property
    def eik(self) -> complex:
        return cmath.exp(1j * self.kappa)

    def shift_scales(self) -> ShiftScales:
        return ShiftScales((self.m1,), (self.m1tilde, self.M2tilde, self.M3tilde))

    def with_N(self, N: int) -> "ReductionParams":
        return replace(self, N=N)

    def slow_coordinates(self, n, m):
        """(n1, m1, n2, m2) of fast cells: n1 = M1 n/N, m1 = M1t m/N, n2 = n1 + gamma m1."""
        n1 = self.m1 * n / self.N
        m1 = self.m1tilde * m / self.N
        return n1, m1, n1 + self.gamma * m1, self.M2tilde * m / self.N**2

    def carrier_phase(self, n, m):
        return self.kappa * n - self.omega * m

    def as_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "q": self.q,
            "mu": self.mu,
            "zeta": self.zeta,
            "kappa": self.kappa,
            "omega": self.omega,
            "N": self.N,
            "gamma": self.gamma,
            "r": self.r,
            "theta": self.theta,
            "theta_shifted": self.theta_shifted,
            "S": self.S,
            "M1": self.M1,
            "M1tilde": self.M1tilde,
            "M2tilde": self.M2tilde,
            "ell": self.ell,
            "m1_positive": self.m1_positive,
            "integerized": dict(self.integerized),
        }


def _m1tilde(S: complex, kappa: float, mu: float, zeta: float) -> complex:
    eik = cmath.exp(1j * kappa)
    return S * eik * (zeta**2 - mu**2) / (mu * eik - zeta)
