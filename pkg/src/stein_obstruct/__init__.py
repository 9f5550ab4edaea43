"""Mod-2 cohomology computations deciding Stein fillability of contact manifolds."""

from .ahss import omega7_su, su_coefficients
from .errors import SteinObstructError
from .fillability import (
    HomotopySphereDescriptor,
    ObstructionDescriptor,
    SevenManifoldDescriptor,
    Status,
    Verdict,
    check_obstructions,
    classify_seven,
    classify_sphere,
    subcritical_normal_form,
    subcritical_propagate,
)
from .homology import homology, kunneth_check, tensor
from .linalg import BACKEND, BitMatrix, BitVector, rank
from .thom import LineBundleClass, build_chain_complex, sq2_thom_matrix

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BitMatrix",
    "BitVector",
    "HomotopySphereDescriptor",
    "LineBundleClass",
    "ObstructionDescriptor",
    "SevenManifoldDescriptor",
    "Status",
    "SteinObstructError",
    "Verdict",
    "build_chain_complex",
    "check_obstructions",
    "classify_seven",
    "classify_sphere",
    "homology",
    "kunneth_check",
    "omega7_su",
    "rank",
    "sq2_thom_matrix",
    "su_coefficients",
    "subcritical_normal_form",
    "subcritical_propagate",
    "tensor",
]
