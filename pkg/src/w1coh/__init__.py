"""Exact arithmetic for the Poisson algebra W_1(g) and its first cohomology on finite windows."""

from w1coh.bimodules import (
    Tensor2Element,
    Wedge2Element,
    act,
    act_tensor,
    act_wedge,
    coboundary_value,
    decompose_tensor,
    decompose_wedge,
    tensor_to_wedge,
    wedge_to_tensor,
)
from w1coh.cochains import (
    Cochain1,
    FiniteKMap,
    HomFunctional,
    cocycle_residual,
    coboundary_cochain,
    extend_to_hom,
    k_compatibility_check,
    make_delta0,
    make_delta_k,
    make_delta_k_left,
    make_delta_k_right,
    noncoboundary_certificate,
    residual_scan,
)
from w1coh.errors import GenusError, ParseError, WindowError
from w1coh.lattice_poisson import LaurentElement, bracket, intersection_form
from w1coh.solver import (
    build_cocycle_system,
    classification_report,
    is_coboundary,
    kernel_basis,
    propagate_from_generators,
)
from w1coh.turaev import gamma_coefficient, nontriviality_scan

__version__ = "0.1.0"

__all__ = [
    "Cochain1", "FiniteKMap", "GenusError", "HomFunctional", "LaurentElement",
    "ParseError", "Tensor2Element", "Wedge2Element", "WindowError", "act",
    "act_tensor", "act_wedge", "bracket", "build_cocycle_system",
    "classification_report", "coboundary_cochain", "coboundary_value",
    "cocycle_residual", "decompose_tensor", "decompose_wedge", "extend_to_hom",
    "gamma_coefficient", "intersection_form", "is_coboundary", "k_compatibility_check",
    "kernel_basis", "make_delta0", "make_delta_k", "make_delta_k_left",
    "make_delta_k_right", "noncoboundary_certificate", "nontriviality_scan",
    "propagate_from_generators", "residual_scan", "tensor_to_wedge", "wedge_to_tensor",
]
