"""Bound states of a magnetic-quadrupole particle in a rotating frame around a
screw dislocation: closed-form spectra, critical angular velocities, radial
wave functions, and an independent finite-difference check."""

__version__ = "0.1.0"

from .errors import (
    ConfigError,
    DegenerateDenominator,
    NegativeDiscriminant,
    NegativeInnerRadical,
    NoSignChange,
    PhysicsError,
    QuadratureNonConvergent,
    RealityViolatedInBracket,
    SpuriousRoot,
    TruncationTooSmall,
    UnboundSpectrum,
    ZeroWaveNumber,
)
from .model import (
    FREE,
    EffectiveQuantities,
    PotentialParams,
    QuantumNumbers,
    SystemParams,
    effective_angular_index,
    effective_frequency_sq,
    effective_magnetic_field,
    effective_quantities,
)
from .spectrum import EnergyLevel, degeneracy_classes, energy, energy_free, energy_pseudoharmonic
from .critical import (
    CriticalResult,
    beta_confinement_threshold,
    beta_kink,
    omega_c_bisect,
    omega_c_closed,
)
from .wavefunction import (
    RadialSolution,
    build_solution,
    laguerre,
    normalization,
    probability_density,
)
from .oracle import OracleConfig, OracleSpectrum, solve_radial
