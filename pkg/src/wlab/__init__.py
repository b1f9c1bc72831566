"""Pure-state simulation of W-type channels: teleportation, concentration, dense coding."""
from .errors import (
    Ambiguous,
    BadDensity,
    BadPairing,
    BadParams,
    DimensionMismatch,
    LengthMismatch,
    NullOutcome,
    UnknownQubit,
    WLabError,
    ZeroVector,
)
from .states import BasisVariant, BellLabel, WParams
from .statevec import DensityMatrix, PureState

__version__ = "0.1.0"
