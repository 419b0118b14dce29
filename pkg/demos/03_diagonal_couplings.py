"""
Energy levels and sigma_z couplings
===================================

A diagonal Hamiltonian on n qubits is a combination of the 2^n strings built
from identity and sigma_z. Levels and couplings are related by the
Walsh-Hadamard matrix, which is its own inverse up to 2^n.
"""

import numpy as np

from hamlocality import CouplingVector, SpectrumVector, couplings_to_spectrum, hadamard_matrix
from hamlocality import diagonal_hamiltonian, pauli_decompose, spectrum_to_couplings
from hamlocality.coupling import zstring_labels

print(hadamard_matrix(2))

# an Ising ZZ coupling splits the levels into (+1, -1, -1, +1)
print(couplings_to_spectrum(CouplingVector(2, [0, 0, 0, 1])).epsilon)

# %%
# Which couplings does an arbitrary 3-qubit spectrum need?
levels = np.array([0.0, 1.0, 1.0, 2.0, 1.0, 2.0, 2.0, 7.0])
alpha = spectrum_to_couplings(SpectrumVector(3, levels)).alpha
for label, a in zip(zstring_labels(3), alpha):
    print(f"{label}: {a:+.3f}")

# the same numbers from the Pauli decomposition of the diagonal matrix
print(pauli_decompose(diagonal_hamiltonian(CouplingVector(3, alpha))).coeffs)
