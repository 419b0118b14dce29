"""
Hamiltonians behind CNOT and Toffoli
====================================

Exponentiate the projector-product Hamiltonians, expand them in the Pauli basis
and read off the interaction order.
"""

import numpy as np

from hamlocality import GateSpec, gate_matrix, matrix_exp_hermitian, paper_hamiltonian, pauli_decompose

for gate in (GateSpec.cnot(), GateSpec.toffoli(), GateSpec.ccx(4)):
    h, t = paper_hamiltonian(gate)
    err = np.abs(matrix_exp_hermitian(h, t) - gate_matrix(gate)).max()
    d = pauli_decompose(h)
    print(f"{gate.label}: t = pi/{round(np.pi / t)}, max |exp(i t h) - U| = {err:.1e}")
    print("   " + "  ".join(f"{s}:{c:+.0f}" for s, c in d.items()))
    print(f"   interaction order {d.order()}")

# %%
# A sum of single-qubit terms exponentiates to a product of single-qubit gates,
# so it can never produce an entangling gate like CNOT.
z = np.diag([1.0, -1.0])
x = np.array([[0.0, 1.0], [1.0, 0.0]])
one = np.eye(2)
lhs = matrix_exp_hermitian(np.kron(z, one) + np.kron(one, x))
rhs = np.kron(matrix_exp_hermitian(z), matrix_exp_hermitian(x))
print(f"\n||exp(i(Z x 1 + 1 x X)) - exp(iZ) x exp(iX)||_F = {np.linalg.norm(lhs - rhs):.1e}")
