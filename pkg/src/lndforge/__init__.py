"""Exact computations around the Kuroda locally nilpotent derivation:
sparse rational polynomials, kernel oracles, kernel element construction and
the differential module with its module derivation."""

from .delta_module import (
    FreeModuleElement,
    ModuleDerivation,
    apply_md,
    commutes_check,
    differential,
    in_m0,
    invariant_differential,
    omega_derivation,
    truncated_m0_basis,
)
from .derivation import Derivation, KernelBasis, apply, in_kernel, kuroda_delta, nilpotency_index, truncated_kernel_basis
from .invariant import build_invariant, check_conditions, choose_q_split, divided_form, make_F, verify_certificate
from .kernel_gens import KernelCombination, expand, f_gen, f_top, km_decompose
from .poly import Polynomial, coeff_in_y_last, exact_div_x1, split_by_x1, tau

__version__ = "0.1.0"
