"""Radial eigenfunctions psi(rho) = N rho^a exp(-w rho^2 / 2) L_n^a(w rho^2).

``a`` is |nu| in the free case and sqrt(2 m c2 + nu^2) with a potential;
``w`` is sqrt(omega_sq). Two normalization measures are supported:

``rho``
    int_0^inf |psi|^2 rho drho = 1, the volume element of the dislocated
    metric (default).
``flat``
    int_0^inf |psi|^2 drho = 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Literal

import numpy as np
from scipy.integrate import quad
from scipy.special import logsumexp, roots_genlaguerre

from .errors import QuadratureNonConvergent, TruncationTooSmall, UnboundSpectrum
from .model import (
    FREE,
    PotentialParams,
    QuantumNumbers,
    SystemParams,
    effective_angular_index,
    effective_frequency_sq,
)

Measure = Literal["rho", "flat"]
MEASURES = ("rho", "flat")

GAUSS_RTOL = 1e-10
DEFAULT_GRID_POINTS = 2001
TAIL_TOL = 1e-12


def laguerre(n: int, alpha: float, x):
    """Generalized Laguerre polynomial L_n^alpha(x) by upward recurrence.

    Works elementwise on arrays.
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev if prev.ndim else float(prev)
    cur = 1.0 + alpha - x
    for j in range(2, n + 1):
        prev, cur = cur, ((2 * j - 1 + alpha - x) * cur - (j - 1 + alpha) * prev) / j
    return cur if cur.ndim else float(cur)


@dataclass(frozen=True)
class RadialSolution:
    nu_abs: float
    width: float
    laguerre_alpha: float
    n: int
    norm: float
    measure: Measure = "rho"

    def __call__(self, rho):
        return radial_wavefunction(self, rho)


def _shift(measure: str) -> float:
    # the flat measure drops one power of rho: s^(a - 1/2) instead of s^a
    return 0.0 if measure == "rho" else -0.5


def _log_closed_integral(nu_abs: float, n: int) -> float:
    """log int_0^inf s^a e^-s L_n^a(s)^2 ds = log Gamma(n+a+1)/n!."""
    return math.lgamma(n + nu_abs + 1.0) - math.lgamma(n + 1.0)


def _log_gauss_integral(nu_abs: float, n: int, measure: str) -> float:
    # exact at n+1 nodes: the integrand is a degree-2n polynomial times the weight
    x, wts = roots_genlaguerre(n + 1, nu_abs + _shift(measure))
    poly = laguerre(n, nu_abs, x)
    with np.errstate(divide="ignore"):
        terms = np.log(wts) + 2.0 * np.log(np.abs(poly))
    return float(logsumexp(terms))


def _scaled_integrand(nu_abs: float, n: int, measure: str, log_ref: float):
    power = nu_abs + _shift(measure)

    def integrand(s):
        if s == 0.0:
            return 0.0 if power > 0 else (1.0 if power == 0 else math.inf) * math.exp(-log_ref)
        with np.errstate(over="ignore", invalid="ignore"):
            poly = laguerre(n, nu_abs, s)
        if poly == 0.0 or not math.isfinite(poly):
            # overflow only happens far past the last node, where e^-s wins
            return 0.0
        return math.exp(power * math.log(s) - s + 2.0 * math.log(abs(poly)) - log_ref)

    return integrand


def _log_quad_integral(nu_abs: float, n: int, measure: str, log_ref: float) -> float:
    """Adaptive quadrature of the reduced integral, returned as a log.

    The integrand is divided by exp(log_ref) so large n + a cannot overflow.
    """
    f = _scaled_integrand(nu_abs, n, measure, log_ref)
    peak = max(nu_abs + 2.0 * n, 1.0)
    edge = 2.0 * (4.0 * n + 2.0 * nu_abs + 2.0) + 50.0  # well past the largest node
    pieces = [(0.0, peak), (peak, edge), (edge, math.inf)]
    total = err = 0.0
    for lo, hi in pieces:
        value, abserr = quad(f, lo, hi, limit=400, epsabs=0.0, epsrel=1e-12)
        total += value
        err += abserr
    if not (total > 0 and err <= 1e-11 * total):
        raise QuadratureNonConvergent(
            f"norm integral {total!r} with error estimate {err!r}"
        )
    return log_ref + math.log(total)


def _log_reduced_integral(sol: "RadialSolution") -> tuple[float, float]:
    """(primary, Gauss-Laguerre) logs of int s^(a+shift) e^-s L^2 ds."""
    gauss = _log_gauss_integral(sol.nu_abs, sol.n, sol.measure)
    if sol.measure == "rho":
        primary = _log_closed_integral(sol.nu_abs, sol.n)
    elif sol.measure == "flat":
        primary = _log_quad_integral(sol.nu_abs, sol.n, "flat", gauss)
    else:
        raise ValueError(f"unknown measure {sol.measure!r}")
    return primary, gauss


def norm_discrepancy(sol: "RadialSolution") -> float:
    """Relative gap between the primary norm integral and Gauss-Laguerre."""
    primary, gauss = _log_reduced_integral(sol)
    return abs(math.expm1(primary - gauss))


def normalization(sol: RadialSolution) -> float:
    """Normalization constant of ``sol`` under ``sol.measure``.

    The rho measure uses the closed log-gamma form, the flat measure adaptive
    quadrature; either is checked against Gauss-Laguerre quadrature.
    """
    if not sol.width > 0:
        raise UnboundSpectrum(f"width {sol.width!r} is not positive")
    primary, gauss = _log_reduced_integral(sol)
    if abs(math.expm1(primary - gauss)) > GAUSS_RTOL:
        raise QuadratureNonConvergent(
            f"log norm integral {primary!r} disagrees with Gauss-Laguerre value {gauss!r}"
        )
    # int |psi/N|^2 d(measure) = I / (2 w^(a + 1 + shift)), I the reduced integral
    exponent = sol.nu_abs + 1.0 + _shift(sol.measure)
    return math.exp(0.5 * (math.log(2.0) + exponent * math.log(sol.width) - primary))


def build_solution(
    p: SystemParams,
    v: PotentialParams = FREE,
    q: QuantumNumbers = QuantumNumbers(),
    measure: Measure = "rho",
) -> RadialSolution:
    if measure not in MEASURES:
        raise ValueError(f"unknown measure {measure!r}")
    nu = effective_angular_index(p, q)
    omega_sq = effective_frequency_sq(p, v)
    if omega_sq == 0:
        raise UnboundSpectrum("omega_sq == 0: states are not normalizable")
    nu_abs = math.sqrt(2.0 * p.m * v.c2 + nu * nu)
    sol = RadialSolution(
        nu_abs=nu_abs,
        width=math.sqrt(omega_sq),
        laguerre_alpha=nu_abs,
        n=q.n,
        norm=1.0,
        measure=measure,
    )
    return replace(sol, norm=normalization(sol))


def radial_wavefunction(sol: RadialSolution, rho):
    rho = np.asarray(rho, dtype=float)
    s = sol.width * rho**2
    return sol.norm * rho**sol.nu_abs * np.exp(-0.5 * s) * laguerre(sol.n, sol.laguerre_alpha, s)


def probability_density(sol: RadialSolution, rho, weighted: bool = False):
    """|psi(rho)|^2 on ``rho``; with ``weighted`` the density is multiplied by rho."""
    rho = np.asarray(rho, dtype=float)
    if np.any(~np.isfinite(rho)) or np.any(rho < 0):
        raise ValueError("rho grid must be finite and non-negative")
    dens = radial_wavefunction(sol, rho) ** 2
    return dens * rho if weighted else dens


def density_peak(sol: RadialSolution, weighted: bool) -> float:
    """Location of the maximum of the n = 0 density (closed form)."""
    if sol.n != 0:
        raise ValueError("closed-form peak only for n = 0")
    a = sol.nu_abs + (0.5 if weighted else 0.0)
    return math.sqrt(a / sol.width)


def tail_mass(sol: RadialSolution, rho_max: float) -> float:
    """Fraction of the norm beyond ``rho_max`` under the solution's measure."""
    log_total = _log_gauss_integral(sol.nu_abs, sol.n, sol.measure)
    f = _scaled_integrand(sol.nu_abs, sol.n, sol.measure, log_total)
    tail, _ = quad(f, sol.width * rho_max**2, math.inf, limit=200)
    return tail


def default_rho_max(sol: RadialSolution) -> float:
    """6/sqrt(width), stretched in unit steps until the tail mass is below 1e-12."""
    c = 6.0
    while tail_mass(sol, c / math.sqrt(sol.width)) > TAIL_TOL:
        c += 1.0
    return c / math.sqrt(sol.width)


def density_grid(
    sol: RadialSolution,
    rho_max: float | None = None,
    points: int = DEFAULT_GRID_POINTS,
    max_tail: float = 1e-8,
):
    """Uniform grid on [0, rho_max] with the density on it.

    An explicit ``rho_max`` that leaves more than ``max_tail`` of the norm
    outside the grid raises :class:`TruncationTooSmall`.
    """
    if rho_max is None:
        rho_max = default_rho_max(sol)
    else:
        tail = tail_mass(sol, rho_max)
        if tail > max_tail:
            raise TruncationTooSmall(
                f"rho_max = {rho_max!r} leaves {tail:.3e} of the norm outside the grid"
            )
    rho = np.linspace(0.0, rho_max, points)
    return rho, probability_density(sol, rho)
