"""Orders of growth of dynamical systems and the flexibility construction."""
from .growth import (
    GrowthClassVerdict,
    GrowthError,
    GrowthExpr,
    Mode,
    Relation,
    Syndetic,
    TabulatedGrowth,
    check_bjp,
    check_lip,
    compare,
    lip_power_extension,
    ordered_chain,
    pi_E,
    pi_P,
    sup_pair,
    syndetic_transfer,
)

__version__ = "0.1.0"

__all__ = [
    "GrowthClassVerdict", "GrowthError", "GrowthExpr", "Mode", "Relation", "Syndetic",
    "TabulatedGrowth", "check_bjp", "check_lip", "compare", "lip_power_extension",
    "ordered_chain", "pi_E", "pi_P", "sup_pair", "syndetic_transfer",
]
