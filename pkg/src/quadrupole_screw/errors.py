"""Exception hierarchy.

Every domain failure derives from :class:`PhysicsError`, which the CLI maps to
exit code 1. Configuration problems raise :class:`ConfigError` (exit code 2).
"""

from __future__ import annotations


class PhysicsError(ValueError):
    """A parameter set or request that has no physical answer."""


class NegativeDiscriminant(PhysicsError):
    """The squared Gaussian frequency is negative, so no real width exists."""

    def __init__(self, value: float, what: str = "omega_sq"):
        self.value = value
        super().__init__(
            f"{what} = {value!r} < 0: no bound-state family exists for these parameters"
        )


class UnboundSpectrum(PhysicsError):
    """The squared Gaussian frequency is exactly zero (no confinement)."""


class DegenerateDenominator(PhysicsError):
    """Critical-velocity closed form divides by (ell - beta*k)**2 == 0."""


class SpuriousRoot(PhysicsError):
    """A root of the squared equation that does not zero the energy."""

    def __init__(self, omega: float, residual: float):
        self.omega = omega
        self.residual = residual
        super().__init__(
            f"omega = {omega!r} is a spurious root introduced by squaring "
            f"(|E| = {residual:.3e})"
        )


class NegativeInnerRadical(PhysicsError):
    """The radicand of the critical-velocity closed form is negative."""


class NoSignChange(PhysicsError):
    """The function does not change sign over the bracket."""


class RealityViolatedInBracket(PhysicsError):
    """A bracket end leaves the domain where the energy is real."""


class ZeroWaveNumber(PhysicsError):
    """The energy does not depend on beta when k == 0."""


class QuadratureNonConvergent(PhysicsError):
    """Numerical integration did not reach the requested accuracy."""


class TruncationTooSmall(PhysicsError):
    """The radial domain cuts off a non-negligible part of the state."""


class ConfigError(ValueError):
    """Malformed configuration; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where = f"{source}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(f"{where}{message}")
