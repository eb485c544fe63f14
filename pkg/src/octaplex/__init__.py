"""octaplex: the 24-cell and friends, exactly, with lights.

Exact quaternionic vertex sets for the regular 4D polytopes around the
24-cell, brute-force incidence and compounds, quaternion-pair symmetry
groups with orbit/stabilizer machinery, stereographic projection of edges
to circular arcs, a virtual LED fixture laid out on those arcs, and a small
scene-scripting language that renders symmetry-driven light sequences.
"""

from .exactnum import (
    DUAL_UNIT,
    HALF,
    INV_SQRT2,
    OMEGA,
    ONE,
    QSqrt2,
    QUAT_I,
    QUAT_J,
    QUAT_K,
    QUAT_ONE,
    QuatEx,
    SQRT2,
    ZERO,
)

__version__ = "0.1.0"

__all__ = [
    "QSqrt2",
    "QuatEx",
    "ZERO",
    "ONE",
    "HALF",
    "SQRT2",
    "INV_SQRT2",
    "QUAT_ONE",
    "QUAT_I",
    "QUAT_J",
    "QUAT_K",
    "OMEGA",
    "DUAL_UNIT",
    "__version__",
]
