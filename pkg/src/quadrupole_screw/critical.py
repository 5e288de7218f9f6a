"""Critical angular velocities and critical dislocation parameters.

A critical angular velocity is a rotation rate at which an energy level
crosses zero. The closed forms below solve E(omega) = 0 after squaring away
the square root of omega_sq, so every candidate is substituted back into the
energy and rejected if it does not actually zero it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Literal

from scipy.optimize import bisect

from .errors import (
    DegenerateDenominator,
    NegativeDiscriminant,
    NegativeInnerRadical,
    NoSignChange,
    RealityViolatedInBracket,
    SpuriousRoot,
    ZeroWaveNumber,
)
from .model import (
    FREE,
    PotentialParams,
    QuantumNumbers,
    SystemParams,
    effective_angular_index,
    omega_sq_raw,
)
from .spectrum import energy_terms, energy_value

Branch = Literal["plus", "minus"]
Method = Literal["closed-form", "bisection"]

RESIDUAL_RTOL = 1e-8
BRACKET_LIMIT = 1e6


@dataclass(frozen=True)
class CriticalResult:
    omega_c: float
    branch: Branch | None
    residual: float
    method: Method


def _energy_at_omega(p, v, q, omega):
    return energy_value(p.replace(omega=omega), v, q)


def _residual_scale(p, v, q) -> float:
    return max(1.0, *(abs(t) for t in energy_terms(p, v, q)))


def _sign(branch: Branch) -> float:
    if branch == "plus":
        return 1.0
    if branch == "minus":
        return -1.0
    raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")


def _omega_c_free_expr(p: SystemParams, q: QuantumNumbers, sign: float) -> float:
    """Radical expression for the zero of the free-case energy, as derived
    term by term (note the mix of ell and nu inside the radicand)."""
    m, M, lam, k, beta = p.m, p.M, p.lam, p.k, p.beta
    ell = q.ell
    nu = ell - beta * k
    anu = abs(nu)
    n21 = 1.0 + 2.0 * q.n
    outer = 4.0 * k**2 * nu + 8.0 * M * lam * n21**2 + 16.0 * M * lam * n21 * anu
    inner = (
        4.0 * M**2 * lam**2 * n21**2
        - (k**2 - 2.0 * ell * M * lam) ** 2
        - 4.0 * k * M * lam * beta * (k**2 - 2.0 * ell * M * lam + k * M * beta * lam)
        + 8.0 * M**2 * lam**2 * n21 * anu
        + 4.0 * M**2 * lam**2 * anu**2
    )
    radicand = outer**2 / m**2 + 16.0 / m**2 * nu**2 * inner
    if radicand < 0:
        raise NegativeInnerRadical(f"radicand {radicand!r} < 0")
    return (outer / m + sign * math.sqrt(radicand)) / (8.0 * nu**2)


def _omega_c_pseudo_expr(
    p: SystemParams, v: PotentialParams, q: QuantumNumbers, sign: float
) -> float:
    """Radical expression for the zero of the pseudo-harmonic energy."""
    m, M, lam, k = p.m, p.M, p.lam, p.k
    c1, c2, c3 = v.c1, v.c2, v.c3
    nu = effective_angular_index(p, q)
    n21 = 1.0 + 2.0 * q.n
    s = math.sqrt(2.0 * m * c2 + nu**2)
    kc = k**2 + 2.0 * m * c3
    outer = 4.0 * kc * nu + 8.0 * M * lam * (2.0 * m * c2 + n21**2) + 16.0 * M * lam * n21 * s
    inner = (
        8.0 * m * c1 * (nu**2 + 2.0 * m * c2 + n21**2)
        - kc**2
        + 4.0 * M * lam * kc * nu
        + 4.0 * M**2 * lam**2 * (2.0 * m * c2 + n21**2)
        + 8.0 * (2.0 * m * c1 + M**2 * lam**2) * n21 * s
    )
    radicand = outer**2 / m**2 + 16.0 / m**2 * nu**2 * inner
    if radicand < 0:
        raise NegativeInnerRadical(f"radicand {radicand!r} < 0")
    return (outer / m + sign * math.sqrt(radicand)) / (8.0 * nu**2)


def omega_c_closed(
    p: SystemParams,
    v: PotentialParams = FREE,
    q: QuantumNumbers = QuantumNumbers(),
    branch: Branch = "plus",
) -> CriticalResult:
    """Critical angular velocity from the closed-form radical expression.

    The ``minus`` branch is experimental; for the configurations studied it
    is almost always a spurious root of the squared equation.
    """
    sign = _sign(branch)
    if branch == "minus":
        warnings.warn("the minus branch of the critical-velocity formula is experimental",
                      stacklevel=2)
    nu = effective_angular_index(p, q)
    if nu == 0:
        raise DegenerateDenominator(f"ell - beta*k == 0 for ell={q.ell}, beta={p.beta}, k={p.k}")
    if v.is_free:
        omega = _omega_c_free_expr(p, q, sign)
    else:
        omega = _omega_c_pseudo_expr(p, v, q, sign)
    at = p.replace(omega=omega)
    if omega_sq_raw(at, v) < 0:
        raise SpuriousRoot(omega, math.nan)
    residual = abs(energy_value(at, v, q))
    if residual > RESIDUAL_RTOL * _residual_scale(at, v, q):
        raise SpuriousRoot(omega, residual)
    return CriticalResult(omega, branch, residual, "closed-form")


def _check_real(p, v, omega):
    value = omega_sq_raw(p.replace(omega=omega), v)
    if value < 0:
        raise RealityViolatedInBracket(
            f"omega = {omega!r} gives omega_sq = {value!r} < 0"
        )


def auto_bracket(
    f: Callable[[float], float], lo: float = 0.0, hi: float = 1.0, limit: float = BRACKET_LIMIT
) -> tuple[float, float]:
    """Grow ``hi`` geometrically until ``f`` changes sign on [lo, hi]."""
    f_lo = f(lo)
    while hi <= limit:
        if f_lo * f(hi) < 0:
            return lo, hi
        hi *= 2.0
    raise NoSignChange(f"no sign change on [{lo}, {limit}]")


def omega_c_bisect(
    p: SystemParams,
    v: PotentialParams = FREE,
    q: QuantumNumbers = QuantumNumbers(),
    bracket: tuple[float, float] | None = None,
    tol: float = 1e-10,
) -> CriticalResult:
    """Critical angular velocity by bisection on omega -> E(omega).

    Without a bracket the upper end grows from 1 geometrically up to 1e6.
    """

    def f(omega):
        return _energy_at_omega(p, v, q, omega)

    if bracket is None:
        _check_real(p, v, 0.0)
        try:
            lo, hi = auto_bracket(f)
        except NegativeDiscriminant as exc:
            raise RealityViolatedInBracket(str(exc)) from exc
    else:
        lo, hi = map(float, bracket)
        _check_real(p, v, lo)
        _check_real(p, v, hi)
        if not f(lo) * f(hi) < 0:
            raise NoSignChange(
                f"E({lo}) = {f(lo)!r} and E({hi}) = {f(hi)!r} have the same sign"
            )
    root = bisect(f, lo, hi, xtol=tol)
    return CriticalResult(root, None, abs(f(root)), "bisection")


@dataclass(frozen=True)
class BetaKink:
    beta_star: float
    quoted: float


def beta_kink(p: SystemParams, ell: int) -> BetaKink:
    """Dislocation parameter where the energy is non-smooth in beta.

    |ell - beta*k| has its kink at beta* = ell/k. The ratio k/ell (the form
    that is sometimes quoted) is returned alongside for comparison.
    """
    if p.k == 0:
        raise ZeroWaveNumber("energy does not depend on beta when k == 0")
    quoted = p.k / ell if ell != 0 else math.inf
    return BetaKink(ell / p.k, quoted)


def beta_confinement_threshold(
    p: SystemParams,
    v: PotentialParams = FREE,
    q: QuantumNumbers = QuantumNumbers(),
    bracket: tuple[float, float] = (0.0, 1.6),
    tol: float = 1e-10,
) -> float:
    """Dislocation parameter at which E changes sign, at fixed omega."""

    def f(beta):
        return energy_value(p.replace(beta=beta), v, q)

    lo, hi = map(float, bracket)
    f_lo, f_hi = f(lo), f(hi)
    if not f_lo * f_hi < 0:
        raise NoSignChange(
            f"E(beta={lo}) = {f_lo!r} and E(beta={hi}) = {f_hi!r} have the same sign"
        )
    return bisect(f, lo, hi, xtol=tol)
