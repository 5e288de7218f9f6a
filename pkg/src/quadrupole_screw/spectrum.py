"""Closed-form energy eigenvalues and degeneracy classification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal

from .model import (
    FREE,
    PotentialParams,
    QuantumNumbers,
    SystemParams,
    effective_angular_index,
    effective_frequency_sq,
)

Case = Literal["free", "pseudo-harmonic"]

DEFAULT_DEGENERACY_TOL = 1e-9


@dataclass(frozen=True)
class EnergyLevel:
    quantum: QuantumNumbers
    energy: float
    case: Case

    @property
    def n(self) -> int:
        return self.quantum.n

    @property
    def ell(self) -> int:
        return self.quantum.ell


def energy_free(p: SystemParams, q: QuantumNumbers) -> EnergyLevel:
    """Energy without a scalar potential.

    E = k^2/(2m) - (M lam/m + omega) nu + (1 + 2n + |nu|) sqrt(omega_sq) / m
    """
    nu = effective_angular_index(p, q)
    root = math.sqrt(effective_frequency_sq(p, FREE))
    energy = (
        p.k**2 / (2.0 * p.m)
        - (p.M * p.lam / p.m + p.omega) * nu
        + (1.0 + 2.0 * q.n + abs(nu)) * root / p.m
    )
    return EnergyLevel(q, energy, "free")


def energy_pseudoharmonic(
    p: SystemParams, v: PotentialParams, q: QuantumNumbers
) -> EnergyLevel:
    """Energy in the potential c1 rho^2 + c2/rho^2 + c3.

    The angular index |nu| of the free case becomes sqrt(2 m c2 + nu^2) and
    the frequency picks up 2 m c1. All-zero coefficients give the free
    energy bit for bit.
    """
    nu = effective_angular_index(p, q)
    root = math.sqrt(effective_frequency_sq(p, v))
    index = math.sqrt(2.0 * p.m * v.c2 + nu * nu)
    energy = (
        v.c3
        + p.k**2 / (2.0 * p.m)
        - (p.M * p.lam / p.m + p.omega) * nu
        + (1.0 + 2.0 * q.n + index) * root / p.m
    )
    return EnergyLevel(q, energy, "pseudo-harmonic")


def energy(p: SystemParams, v: PotentialParams, q: QuantumNumbers) -> EnergyLevel:
    """Dispatch to the free formula when every potential coefficient is zero."""
    if v.is_free:
        return energy_free(p, q)
    return energy_pseudoharmonic(p, v, q)


def energy_value(p: SystemParams, v: PotentialParams, q: QuantumNumbers) -> float:
    return energy(p, v, q).energy


def energy_terms(p: SystemParams, v: PotentialParams, q: QuantumNumbers) -> tuple[float, ...]:
    """The individual additive terms of E, used to scale residual tolerances."""
    nu = effective_angular_index(p, q)
    root = math.sqrt(max(effective_frequency_sq(p, v), 0.0))
    index = math.sqrt(2.0 * p.m * v.c2 + nu * nu)
    return (
        v.c3,
        p.k**2 / (2.0 * p.m),
        -(p.M * p.lam / p.m + p.omega) * nu,
        (1.0 + 2.0 * q.n + index) * root / p.m,
    )


def degeneracy_classes(
    p: SystemParams,
    v: PotentialParams,
    levels: Iterable[QuantumNumbers],
    tol: float = DEFAULT_DEGENERACY_TOL,
) -> list[tuple[EnergyLevel, ...]]:
    """Partition states into classes of equal energy.

    Classes are ordered by ascending energy; members by (n, ell). Two levels
    share a class when they lie within ``tol`` of the lowest energy in the
    class, so long chains of near-equal values cannot merge distinct levels.
    """
    if not tol > 0:
        raise ValueError(f"tol must be positive, got {tol!r}")
    evaluated = sorted(
        (energy(p, v, q) for q in levels),
        key=lambda lv: (lv.energy, lv.n, lv.ell),
    )
    classes: list[list[EnergyLevel]] = []
    for level in evaluated:
        if classes and level.energy - classes[-1][0].energy <= tol:
            classes[-1].append(level)
        else:
            classes.append([level])
    return [tuple(sorted(c, key=lambda lv: (lv.n, lv.ell))) for c in classes]
