"""Finite meet-semilattices as States/Effects Chu spaces and their tensor products."""

from .boolean import BoolVal, bullet
from .effects import ChuSpace, Effect, natural_effects, reduced_effects
from .errors import (
    CapExceeded,
    ChuTensorError,
    ConsistencyError,
    PreconditionError,
    SchemaError,
    StructureError,
)
from .lattice import SemiLattice, Verdict

__version__ = "0.1.0"

__all__ = [
    "BoolVal",
    "bullet",
    "ChuSpace",
    "Effect",
    "natural_effects",
    "reduced_effects",
    "SemiLattice",
    "Verdict",
    "CapExceeded",
    "ChuTensorError",
    "ConsistencyError",
    "PreconditionError",
    "SchemaError",
    "StructureError",
]
