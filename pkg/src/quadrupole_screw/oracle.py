"""Finite-difference eigensolver for the radial equation.

With the potential c1 rho^2 + c2/rho^2 + c3 the radial equation reads

    psi'' + psi'/rho - (nu^2 + 2 m c2)/rho^2 psi - omega_sq rho^2 psi
        + (2 m E - k^2 + 2 (M lam + m omega) nu - 2 m c3) psi = 0.

Two discretizations are offered, both ending in a symmetric tridiagonal
eigenproblem on a uniform grid with a Dirichlet wall at ``rho_max``:

``plain``
    u = sqrt(rho) psi, -u'' + W u = 2 m E u with the centrifugal term
    (a^2 - 1/4)/rho^2 sampled on rho_i = i h, standard three-point stencil.
    Second order only when a = sqrt(nu^2 + 2 m c2) >= 1; below that the
    leading error is O(h^(2a)).
``frobenius`` (default)
    psi = rho^a f, with a the indicial exponent of the 1/rho^2 coefficient.
    f solves -(rho^(2a+1) f')'/rho^(2a+1) + V f = 2 m E f with V smooth, which
    a cell-centred finite-volume stencil resolves at O(h^2) for every a.

This module deliberately knows nothing about the closed-form spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import TruncationTooSmall, UnboundSpectrum
from .model import (
    FREE,
    PotentialParams,
    QuantumNumbers,
    SystemParams,
    effective_angular_index,
    effective_frequency_sq,
)

Scheme = Literal["frobenius", "plain"]

MIN_GRID_POINTS = 200
LOW_CONFIDENCE_INDEX = 0.05
BOUNDARY_FRACTION = 0.05
BOUNDARY_MASS_TOL = 1e-8


@dataclass(frozen=True)
class OracleConfig:
    rho_max: float | None = None
    grid_points: int = 4000
    eigs_requested: int = 6
    scheme: Scheme = "frobenius"

    def __post_init__(self):
        if self.grid_points < MIN_GRID_POINTS:
            raise ValueError(f"grid_points must be >= {MIN_GRID_POINTS}, got {self.grid_points}")
        if self.eigs_requested < 1:
            raise ValueError("eigs_requested must be >= 1")
        if self.rho_max is not None and not self.rho_max > 0:
            raise ValueError(f"rho_max must be positive, got {self.rho_max!r}")
        if self.scheme not in ("frobenius", "plain"):
            raise ValueError(f"unknown scheme {self.scheme!r}")


@dataclass(frozen=True)
class OracleSpectrum:
    eigenvalues: np.ndarray  # Richardson-extrapolated energies
    coarse: np.ndarray  # energies on N points
    fine: np.ndarray  # energies on 2N points
    error_estimate: np.ndarray
    rho_max: float
    grid_points: int
    scheme: Scheme
    index: float  # sqrt(nu^2 + 2 m c2)
    low_confidence: bool
    eigenvectors: np.ndarray = field(repr=False)  # columns, fine grid
    grid: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class _Problem:
    index: float
    omega_sq: float
    shift: float  # constant part of the operator
    two_m: float


def _problem(p: SystemParams, v: PotentialParams, ell: int) -> _Problem:
    nu = effective_angular_index(p, QuantumNumbers(0, ell))
    omega_sq = effective_frequency_sq(p, v)
    if omega_sq == 0:
        raise UnboundSpectrum("omega_sq == 0: no discrete spectrum")
    index = math.sqrt(nu * nu + 2.0 * p.m * v.c2)
    shift = p.k**2 - 2.0 * (p.M * p.lam + p.m * p.omega) * nu + 2.0 * p.m * v.c3
    return _Problem(index, omega_sq, shift, 2.0 * p.m)


def _tridiagonal(prob: _Problem, rho_max: float, n: int, scheme: Scheme):
    """Return (diag, offdiag, nodes, back) for the operator whose eigenvalues are 2mE.

    ``back`` maps symmetric-problem eigenvectors to psi on the nodes.
    """
    if scheme == "plain":
        h = rho_max / (n + 1)
        r = h * np.arange(1, n + 1)
        w = (prob.index**2 - 0.25) / r**2 + prob.omega_sq * r**2 + prob.shift
        diag = 2.0 / h**2 + w
        off = np.full(n - 1, -1.0 / h**2)
        back = 1.0 / np.sqrt(r)
        return diag, off, r, back
    h = rho_max / n
    faces = h * np.arange(n + 1)
    r = faces[:-1] + 0.5 * h
    q = 2.0 * prob.index + 1.0
    # Cell-averaged weight rho^q; the face at the origin carries zero flux.
    mass = (faces[1:] ** (q + 1) - faces[:-1] ** (q + 1)) / ((q + 1) * h)
    wf = faces**q
    diag = (wf[:-1] + wf[1:]) / (h**2 * mass) + prob.omega_sq * r**2 + prob.shift
    off = -wf[1:-1] / (h**2 * np.sqrt(mass[:-1] * mass[1:]))
    back = r**prob.index / np.sqrt(mass)
    return diag, off, r, back


def _solve_grid(prob: _Problem, rho_max: float, n: int, count: int, scheme: Scheme):
    diag, off, r, back = _tridiagonal(prob, rho_max, n, scheme)
    vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, count - 1))
    return vals / prob.two_m, vecs, r, back


def _check_boundary(vecs: np.ndarray, rho_max: float) -> None:
    n = vecs.shape[0]
    edge = int(math.ceil((1.0 - BOUNDARY_FRACTION) * n))
    weights = vecs**2
    mass = weights[edge:].sum(axis=0) / weights.sum(axis=0)
    worst = float(mass.max())
    if worst > BOUNDARY_MASS_TOL:
        raise TruncationTooSmall(
            f"rho_max = {rho_max!r}: {worst:.3e} of an eigenvector's mass sits "
            f"in the outer {BOUNDARY_FRACTION:.0%} of the domain"
        )


def auto_rho_max(p: SystemParams, v: PotentialParams = FREE) -> float:
    return 10.0 / math.sqrt(math.sqrt(effective_frequency_sq(p, v)))


def solve_radial(
    p: SystemParams,
    v: PotentialParams = FREE,
    ell: int = 1,
    cfg: OracleConfig = OracleConfig(),
) -> OracleSpectrum:
    """Lowest ``cfg.eigs_requested`` energies for angular number ``ell``.

    Solves on N and 2N points and Richardson-extrapolates assuming O(h^2).
    """
    prob = _problem(p, v, ell)
    width = math.sqrt(prob.omega_sq)
    rho_max = cfg.rho_max if cfg.rho_max is not None else auto_rho_max(p, v)
    if rho_max <= 3.0 / math.sqrt(width):
        raise TruncationTooSmall(
            f"rho_max = {rho_max!r} must exceed 3/sqrt(width) = {3.0 / math.sqrt(width)!r}"
        )
    n = cfg.grid_points
    coarse, _, _, _ = _solve_grid(prob, rho_max, n, cfg.eigs_requested, cfg.scheme)
    fine, vecs, r, back = _solve_grid(prob, rho_max, 2 * n, cfg.eigs_requested, cfg.scheme)
    _check_boundary(vecs, rho_max)
    extrapolated = (4.0 * fine - coarse) / 3.0
    if np.any(np.diff(extrapolated) <= 0):
        raise ArithmeticError("extrapolated eigenvalues are not strictly ascending")
    return OracleSpectrum(
        eigenvalues=extrapolated,
        coarse=coarse,
        fine=fine,
        error_estimate=np.abs(fine - coarse) / 3.0,
        rho_max=rho_max,
        grid_points=n,
        scheme=cfg.scheme,
        index=prob.index,
        low_confidence=prob.index < LOW_CONFIDENCE_INDEX,
        eigenvectors=vecs * back[:, None],
        grid=r,
    )


def raw_eigenvalues(
    p: SystemParams,
    v: PotentialParams,
    ell: int,
    grid_points: int,
    count: int = 4,
    rho_max: float | None = None,
    scheme: Scheme = "frobenius",
) -> np.ndarray:
    """Unextrapolated energies on a single grid (for convergence studies)."""
    prob = _problem(p, v, ell)
    if rho_max is None:
        rho_max = auto_rho_max(p, v)
    vals, _, _, _ = _solve_grid(prob, rho_max, grid_points, count, scheme)
    return vals


def observed_order(
    p: SystemParams,
    v: PotentialParams = FREE,
    ell: int = 1,
    grid_points: int = 1000,
    count: int = 4,
    scheme: Scheme = "frobenius",
) -> np.ndarray:
    """Convergence order log2((E_N - E_2N) / (E_2N - E_4N)) per eigenvalue."""
    e1, e2, e4 = (
        raw_eigenvalues(p, v, ell, grid_points * f, count, scheme=scheme) for f in (1, 2, 4)
    )
    return np.log2(np.abs(e1 - e2) / np.abs(e2 - e4))


def sign_changes(values: np.ndarray, rel_floor: float = 1e-10) -> int:
    """Number of sign changes, ignoring entries below ``rel_floor`` of the peak."""
    values = np.asarray(values)
    keep = np.abs(values) > rel_floor * np.abs(values).max()
    signs = np.sign(values[keep])
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
