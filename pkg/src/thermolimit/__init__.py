"""Desk-scale simulators for large-N classicality and unitary decoherence.

Four physics modules plus the exact-oracle layer:

* `thermolimit.linalg` — dense propagators, partial traces, distances.
* `thermolimit.ensemble` — N two-level systems: 1/sqrt(N) fluctuation
  scaling and rigid collective-spin rotation.
* `thermolimit.spinboson` — N spins coupled to one field mode: coherent
  leading-order field, first-order correction, large-N decay.
* `thermolimit.spinbath` — central spin flopping at 2*N*lam and its
  decoherence under the regularized N -> infinity limit.
* `thermolimit.regularization` — Abel / Cesàro / time-average values for the
  divergent oscillatory limits.

`thermolimit.cli` runs the batch experiments and the acceptance suite.
"""

__version__ = "0.1.0"

from . import ensemble, linalg, regularization, spinbath, spinboson  # noqa: F401
from .errors import (  # noqa: F401
    DimensionMismatch,
    DimensionTooLarge,
    InsufficientPoints,
    InvalidEpsilon,
    InvalidSector,
    InvalidWindow,
    NotHermitian,
    QuadratureError,
    QuadratureUnderResolved,
    SimulationError,
    TruncationLeakage,
    ZeroMeanEnergy,
)
