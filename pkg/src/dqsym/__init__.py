"""Exact computations with diagonally quasisymmetric functions: bicompositions,
the M/F/G bases, the Phi rewrite map, and Hilbert matrices of R_n/I_n."""

from .bases import ExpansionContext, expand, expand_F, expand_G, expand_M, reconstruct, to_G_expansion
from .bicomp import ZERO, GenBicomp, VarRef, gb, x, y
from .hilbert import (
    ComponentReport,
    HilbertMatrix,
    dim_quotient,
    enumerate_hilbert_basis,
    hilbert_matrix,
    normal_form,
    verify_second_column,
)
from .phimap import PhiPreimage, Phi_forward, expand_XF_in_G, g_cmp, in_img_Phi, mul_var_G, phi, phi_inv
from .polyring import ComponentKey, GExpansion, Polynomial

__version__ = "0.1.0"

__all__ = [
    "ComponentKey", "ComponentReport", "ExpansionContext", "GExpansion", "GenBicomp",
    "HilbertMatrix", "PhiPreimage", "Phi_forward", "Polynomial", "VarRef", "ZERO",
    "dim_quotient", "enumerate_hilbert_basis", "expand", "expand_F", "expand_G", "expand_M",
    "expand_XF_in_G", "g_cmp", "gb", "hilbert_matrix", "in_img_Phi", "mul_var_G",
    "normal_form", "phi", "phi_inv", "reconstruct", "to_G_expansion", "verify_second_column",
    "x", "y",
]
