"""Tableaux over Lie algebras: prolongations, Cartan characters, involutivity,
Cartan tableaux of symmetric spaces and the associated linear Pfaffian systems."""

from .cartan import (
    CartanData,
    CartanError,
    SymmetricDecomposition,
    build_cartan_tableau,
    cartan_data,
    check_maximal_abelian,
    verify_decomposition,
    verify_cartan_tableau,
)
from .lie import LieAlgebra, Subspace, bracket, check_jacobi, killing_form
from .linalg import RatMatrix
from .pfaffian import (
    Coframe,
    PfaffianSystem,
    absorb_torsion,
    cartan_test,
    emit_gg0,
    emit_system,
    gg0_residual,
    reduced_characters,
    structure_equations,
)
from .poly import Poly
from .tableau import (
    TableauSpec,
    characters,
    generic_flag,
    involution_test,
    is_tableau_over,
    prolongation,
)

__version__ = "0.1.0"
