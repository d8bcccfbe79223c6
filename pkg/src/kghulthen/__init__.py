"""Relativistic bound states in screened vector/scalar potentials.

Closed-form spectra and eigenfunctions of the D-dimensional wave equation
with general exponentially screened vector and scalar potentials, validated
against an independent shooting-method oracle.
"""

from .errors import (
    ConfigError,
    ConstraintViolated,
    DegenerateDiscriminantWarning,
    DegenerateLevelSpacing,
    InvalidParams,
    InvalidQuantumNumbers,
    KGHulthenError,
    NonRealA,
    NoPhysicalBranch,
    NoRealK,
    NoRoot,
    NoSignChange,
    PoleAtRadius,
    QuadratureFailure,
    UnsupportedSigma,
)
from .potential import CentrifugalSpec, PotentialParams
from .spectrum import EnergyLevel, LevelCapacity, QuantumState

__version__ = "0.1.0"

__all__ = [
    "CentrifugalSpec",
    "ConfigError",
    "ConstraintViolated",
    "DegenerateDiscriminantWarning",
    "DegenerateLevelSpacing",
    "EnergyLevel",
    "InvalidParams",
    "InvalidQuantumNumbers",
    "KGHulthenError",
    "LevelCapacity",
    "NonRealA",
    "NoPhysicalBranch",
    "NoRealK",
    "NoRoot",
    "NoSignChange",
    "PoleAtRadius",
    "PotentialParams",
    "QuadratureFailure",
    "QuantumState",
    "UnsupportedSigma",
    "__version__",
]
