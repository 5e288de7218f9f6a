"""Physical parameters and the derived effective quantities.

Natural units hbar = c = q = 1 throughout. A particle of mass ``m`` carrying a
magnetic quadrupole moment ``M`` moves in the radial field E = (lam/2) rho^2,
in a frame rotating at ``omega`` about z, in a medium with a screw dislocation
of strength ``beta`` (Burgers vector b_z = 2*pi*beta). ``k`` is the axial wave
number.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NegativeDiscriminant


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class SystemParams:
    m: float = 1.0
    M: float = 1.0
    lam: float = 1.0
    omega: float = 0.0
    k: float = 0.5
    beta: float = 0.5

    def __post_init__(self) -> None:
        for name in ("m", "M", "lam", "omega", "k", "beta"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        if self.m <= 0:
            raise ValueError(f"mass m must be positive, got {self.m!r}")
        if self.M <= 0:
            raise ValueError(f"quadrupole moment M must be positive, got {self.M!r}")
        if self.beta < 0:
            raise ValueError(f"dislocation parameter beta must be >= 0, got {self.beta!r}")

    def replace(self, **changes: float) -> "SystemParams":
        fields = {name: getattr(self, name) for name in ("m", "M", "lam", "omega", "k", "beta")}
        fields.update(changes)
        return SystemParams(**fields)


@dataclass(frozen=True)
class PotentialParams:
    """Pseudo-harmonic potential V(rho) = c1*rho^2 + c2/rho^2 + c3."""

    c1: float = 0.0
    c2: float = 0.0
    c3: float = 0.0

    def __post_init__(self) -> None:
        for name in ("c1", "c2", "c3"):
            object.__setattr__(self, name, _finite(name, getattr(self, name)))
        if self.c1 < 0:
            raise ValueError(f"c1 must be >= 0, got {self.c1!r}")
        if self.c2 < 0:
            raise ValueError(f"c2 must be >= 0, got {self.c2!r}")

    @property
    def is_free(self) -> bool:
        return self.c1 == 0.0 and self.c2 == 0.0 and self.c3 == 0.0

    def __call__(self, rho):
        return self.c1 * rho**2 + self.c2 / rho**2 + self.c3


FREE = PotentialParams()


@dataclass(frozen=True)
class QuantumNumbers:
    n: int = 0
    ell: int = 1

    def __post_init__(self) -> None:
        for name in ("n", "ell"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise ValueError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.n < 0:
            raise ValueError(f"radial quantum number n must be >= 0, got {self.n}")


@dataclass(frozen=True)
class EffectiveQuantities:
    nu: float
    b_eff: float
    omega_sq: float


def effective_angular_index(p: SystemParams, q: QuantumNumbers) -> float:
    """Torsion-shifted angular index nu = ell - beta*k."""
    return q.ell - p.beta * p.k


def effective_magnetic_field(p: SystemParams) -> float:
    """z-component of curl(M x E) = 2*M*lam."""
    return 2.0 * p.M * p.lam


def omega_sq_raw(p: SystemParams, v: PotentialParams = FREE) -> float:
    """M^2 lam^2 + 2 m M lam omega + 2 m c1, without the sign check."""
    return 2.0 * p.m * v.c1 + (p.M**2 * p.lam**2 + 2.0 * p.m * p.M * p.lam * p.omega)


def effective_frequency_sq(p: SystemParams, v: PotentialParams = FREE) -> float:
    """Squared Gaussian frequency under the root of the energy formulas.

    Raises
    ------
    NegativeDiscriminant
        If the value is negative; the radial equation then has no
        normalizable solution of the Laguerre-Gaussian form.
    """
    value = omega_sq_raw(p, v)
    if value < 0:
        raise NegativeDiscriminant(value)
    return value


def reality_bound(p: SystemParams, v: PotentialParams = FREE) -> float:
    """Angular velocity at which omega_sq crosses zero (-inf when lam == 0)."""
    if p.lam == 0:
        return -math.inf
    return -(p.M**2 * p.lam**2 + 2.0 * p.m * v.c1) / (2.0 * p.m * p.M * p.lam)


def effective_quantities(
    p: SystemParams, q: QuantumNumbers, v: PotentialParams = FREE
) -> EffectiveQuantities:
    return EffectiveQuantities(
        nu=effective_angular_index(p, q),
        b_eff=effective_magnetic_field(p),
        omega_sq=effective_frequency_sq(p, v),
    )
