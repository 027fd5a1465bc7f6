"""Exact algebra for translation-invariant Clifford quantum cellular automata.

Symplectic matrices over F_p[x_1^{+-1}, ..., x_D^{+-1}], their boundary
antihermitian forms, Groebner-basis exactness certificates and Witt-group
congruence witnesses.
"""

from .boundary import BoundarySplit, antihermitian_form, boundary_commutant_check, free_basis, split_z
from .catalog import ExampleBundle, build_bundle, surface_exactness, topological_spin, xi_p2
from .errors import (CliffQCAError, DomainError, InconsistencyError, NormalizationError, NotAntihermitianError,
                    NotSymplecticError, PreconditionError, QuillenSuslinError, ResourceCapError, RingMismatchError,
                    ShapeError)
from .forms import AntihermitianForm
from .groebner import (ExactnessCertificate, GroebnerBasis, Ideal, check_complex_exact, determinantal_is_unit,
                       grade, groebner_basis, is_unit_ideal, krull_dimension, module_membership)
from .ring import LaurentPoly, LaurentRing, PolyMatrix, coarse_grain, dagger, determinant, poly_arith
from .symplectic import (ControlPhase, ControlX, ExtraJ, Hadamard, SymplecticMatrix, commutation_exponent,
                         compose, det_class, gate_matrix, inverse, is_symplectic, lambda_form, pairing)
from .witt import (CongruenceWitness, QuadFormClass, classify_theta, exponent_witness, gauss_sum, hyperbolic,
                   inverse_witness, qca_from_form, solve_sum_of_squares, sqrt_minus_one, witt_reduce_d1)

__version__ = "0.1.0"

__all__ = [
    "AntihermitianForm", "BoundarySplit", "CliffQCAError", "CongruenceWitness", "ControlPhase", "ControlX",
    "DomainError", "ExactnessCertificate", "ExampleBundle", "ExtraJ", "GroebnerBasis", "Hadamard", "Ideal",
    "InconsistencyError", "LaurentPoly", "LaurentRing", "NormalizationError", "NotAntihermitianError",
    "NotSymplecticError", "PolyMatrix", "PreconditionError", "QuadFormClass", "QuillenSuslinError",
    "ResourceCapError", "RingMismatchError", "ShapeError", "SymplecticMatrix", "antihermitian_form",
    "boundary_commutant_check", "build_bundle", "check_complex_exact", "classify_theta", "coarse_grain",
    "commutation_exponent", "compose", "dagger", "det_class", "determinant", "determinantal_is_unit",
    "exponent_witness", "free_basis", "gate_matrix", "gauss_sum", "grade", "groebner_basis", "hyperbolic",
    "inverse", "inverse_witness", "is_symplectic", "is_unit_ideal", "krull_dimension", "lambda_form",
    "module_membership", "pairing", "poly_arith", "qca_from_form", "solve_sum_of_squares", "split_z",
    "sqrt_minus_one", "surface_exactness", "topological_spin", "witt_reduce_d1", "xi_p2",
]
