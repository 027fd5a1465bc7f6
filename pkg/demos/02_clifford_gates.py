"""
Clifford circuits as symplectic matrices
========================================

Elementary gates, their products, inverses and the determinant class.
"""

from cliffqca import (ControlPhase, ControlX, ExtraJ, Hadamard, LaurentRing, PolyMatrix, SymplecticMatrix,
                      commutation_exponent, compose, det_class, determinant, gate_matrix, inverse, is_symplectic,
                      lambda_form, pairing)
from cliffqca.symplectic import pauli_vector

R = LaurentRing(3, ("x", "y"))
x, y = R.gens()

print(lambda_form(R, 1).pretty())

# a short circuit on two qutrits per site
gates = [Hadamard(1), ControlX(1, 2, x + y), ControlPhase(2, x + x ** -1), ExtraJ(1, y)]
circuit = SymplecticMatrix(PolyMatrix.identity(R, 4))
for g in gates:
    circuit = compose(circuit, gate_matrix(g, 2, R))

print(circuit.matrix.pretty())
print("symplectic:", is_symplectic(circuit.matrix))
print("det       :", determinant(circuit.matrix).pretty())
print("det class :", det_class(circuit).pretty())

back = compose(circuit, inverse(circuit))
print("Q Q^-1 == 1:", back.matrix == PolyMatrix.identity(R, 4))

# Pauli operators are columns; X and Z on one qutrit fail to commute by one unit
X = pauli_vector(R, [1], [0])
Z = pauli_vector(R, [0], [1])
print("pairing(X, Z) =", pairing(X, Z).pretty(), " exponent", commutation_exponent(X, Z))
