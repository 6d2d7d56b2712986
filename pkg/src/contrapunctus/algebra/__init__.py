"""Ring arithmetic: Zn, its affine symmetries, and the dual-number rings Zn[t]."""

from contrapunctus.algebra.dual import (
    DualNumber,
    DualSymmetry,
    apply_dual,
    compose_dual,
    enumerate_dual_symmetries,
    invert_dual,
    lift,
    mul,
    transport_pair,
    untransport,
)
from contrapunctus.algebra.ring import (
    AffineSymmetry,
    Residue,
    apply,
    compose,
    enumerate_symmetries,
    invert,
    units,
)

__all__ = [
    "AffineSymmetry",
    "DualNumber",
    "DualSymmetry",
    "Residue",
    "apply",
    "apply_dual",
    "compose",
    "compose_dual",
    "enumerate_dual_symmetries",
    "enumerate_symmetries",
    "invert",
    "invert_dual",
    "lift",
    "mul",
    "transport_pair",
    "units",
    "untransport",
]
