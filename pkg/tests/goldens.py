"""Hand-entered shift-operator expansions and L_0, L_1, L_2 used as frozen goldens."""

import sympy as sp

from latmscale.opcalc import DELTA, OperatorMonomial

M1, M1t, M2t, M3t = sp.symbols("M1 M1t M2t M3t")
mu, zeta = sp.symbols("mu zeta")
half, sixth = sp.Rational(1, 2), sp.Rational(1, 6)


def mono(shifts=(), inv_n=0, **powers):
    return OperatorMonomial.make({(k, DELTA): e for k, e in powers.items()}, dict(shifts), inv_n)


def tn_golden():
    s = {"n": 1}
    return {
        mono(s): 1,
        mono(s, 1, n1=1): M1,
        mono(s, 2, n1=2): half * M1**2,
        mono(s, 3, n1=3): sixth * M1**3,
    }


def tm_golden():
    s = {"m": 1}
    return {
        mono(s): 1,
        mono(s, 1, m1=1): M1t,
        mono(s, 2, m1=2): half * M1t**2,
        mono(s, 2, m2=1): M2t,
        mono(s, 3, m1=3): sixth * M1t**3,
        mono(s, 3, m1=1, m2=1): M1t * M2t,
        mono(s, 3, m3=1): M3t,
    }


def tntm_golden():
    s = {"n": 1, "m": 1}
    return {
        mono(s): 1,
        mono(s, 1, n1=1): M1,
        mono(s, 1, m1=1): M1t,
        mono(s, 2, n1=2): half * M1**2,
        mono(s, 2, n1=1, m1=1): M1 * M1t,
        mono(s, 2, m1=2): half * M1t**2,
        mono(s, 2, m2=1): M2t,
        mono(s, 3, n1=3): sixth * M1**3,
        mono(s, 3, n1=2, m1=1): half * M1**2 * M1t,
        mono(s, 3, n1=1, m1=2): half * M1t**2 * M1,
        mono(s, 3, n1=1, m2=1): M1 * M2t,
        mono(s, 3, m1=3): sixth * M1t**3,
        mono(s, 3, m1=1, m2=1): M1t * M2t,
        # the last 1/N^3 entry is a single delta on the third slow time
        mono(s, 3, m3=1): M3t,
    }


def L_golden(i):
    nm, n, m = {"n": 1, "m": 1}, {"n": 1}, {"m": 1}
    if i == 0:
        return {mono(nm): mu, mono(): -mu, mono(n): zeta, mono(m): -zeta}
    if i == 1:
        return {
            mono(nm, n1=1): mu * M1,
            mono(nm, m1=1): mu * M1t,
            mono(n, n1=1): zeta * M1,
            mono(m, m1=1): -zeta * M1t,
        }
    if i == 2:
        return {
            mono(nm, n1=2): mu * M1**2 / 2,
            mono(nm, n1=1, m1=1): mu * M1 * M1t,
            mono(nm, m1=2): mu * M1t**2 / 2,
            mono(nm, m2=1): mu * M2t,
            mono(n, n1=2): zeta * M1**2 / 2,
            mono(m, m1=2): -zeta * M1t**2 / 2,
            mono(m, m2=1): -zeta * M2t,
        }
    raise ValueError(i)


def as_dict(series):
    return {m: sp.expand(sp.sympify(c)) for m, c in series}


def same_terms(series, golden):
    got = as_dict(series)
    want = {m: sp.expand(sp.sympify(c)) for m, c in golden.items()}
    return set(got) == set(want) and all(sp.expand(got[k] - want[k]) == 0 for k in want)
