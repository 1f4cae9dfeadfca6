"""Exception types raised by :mod:`orbitframes`."""

import numpy as np


class DomainError(ValueError):
    """Argument lies outside the mathematical domain of an operation."""


class DimensionError(ValueError):
    """Array shapes are incompatible."""


class RankError(np.linalg.LinAlgError):
    """A family that must be linearly independent is numerically rank deficient."""


class SingularGram(np.linalg.LinAlgError):
    """Kernel Gram matrix is numerically singular."""


class TailError(RuntimeError):
    """Polynomial truncation degree is too small for the requested residual."""


class UnknownExample(KeyError):
    """No example family is registered under the requested name."""


class OverflowRisk(OverflowError):
    """Requested family size would overflow double precision."""


class ConfigError(ValueError):
    """Experiment configuration does not satisfy the schema."""
