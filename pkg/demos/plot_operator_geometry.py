"""
Operators as vectors
====================

Unitaries on n qubits live in a 4**n-dimensional space of operators. With the
inner product Tr[A^dagger B] / 2**n every unitary has unit length, so the
squared projections onto any orthonormal operator basis form a probability
distribution.
"""

import numpy as np

from ucx import DEFAULT_GATE_SET, UnitaryOperator, decompose, fidelity, gram_schmidt_with_seed, pauli_basis, random_unitary
from ucx.basis import orthonormality_deviation, pauli_label_name

H = UnitaryOperator(DEFAULT_GATE_SET[0].matrix)
CNOT = UnitaryOperator(DEFAULT_GATE_SET[2].matrix)

###############################################################################
# The Hadamard gate is (X + Z)/sqrt(2), so it sits halfway between two Pauli
# directions.
for label, c in zip(pauli_basis(1).labels, decompose(H, pauli_basis(1))):
    print(f"  <{pauli_label_name(label, 1)}, H> = {c.real:+.5f}")

###############################################################################
# CNOT spreads evenly over four two-qubit Pauli strings.
coeffs = decompose(CNOT, pauli_basis(2))
for label in np.flatnonzero(np.abs(coeffs) > 1e-12):
    print(f"  <{pauli_label_name(int(label), 2)}, CNOT> = {coeffs[label].real:+.2f}")

###############################################################################
# A basis need not be made of Pauli strings. Seeding Gram-Schmidt with a random
# unitary U puts U first; the overlap of any other operator with U is then the
# first coefficient.
rng = np.random.default_rng(0)
u, v = random_unitary(2, rng), random_unitary(2, rng)
basis = gram_schmidt_with_seed(u)
probs = np.abs(decompose(v, basis)) ** 2
print(f"orthonormality deviation: {orthonormality_deviation(basis):.1e}")
print(f"sum of squared projections: {probs.sum():.15f}")
print(f"first projection {probs[0]:.6f} equals fidelity(U, V) {fidelity(u, v):.6f}")
