"""Exact Hopf algebra cohomology and cochain-level Gerstenhaber structure."""

from .catalog import STANDARD, builtin
from .checks import check_bracket_structure, check_commutativity, check_thm2, check_thm3
from .cochains import (
    ADJOINT, TRIVIAL, Cochain, Coefficients, cohomology, diff_A, diff_k,
    differential_matrix, differential_sparse, is_coboundary,
)
from .doubles import drinfeld_double
from .field import FieldSpec
from .gerstenhaber import (
    brace_i, brace_i_k, bracket, circ, circ_k, cup_A, cup_k, epsilon_push, hat,
)
from .hopf import HopfData, check_hopf_axioms, dual_hopf, group_algebra, taft_algebra
from .io import parse_hopf, write_hopf

__version__ = "0.1.0"
