"""
Logarithm branches
==================

Every eigenphase of ``t H`` can be moved by a multiple of 2 pi without changing
``exp(i t H)``. Shifting all levels by the same integer just adds a multiple of
the identity; shifting them by different integers inside a degenerate eigenspace
depends on the basis chosen there.
"""

import numpy as np
import scipy.linalg

from hamlocality import GateSpec, enumerate_branches, make_shift, paper_hamiltonian, shifted_hamiltonian
from hamlocality import pauli_decompose, spectral_decompose

h, t = paper_hamiltonian(GateSpec.cnot())
base = spectral_decompose(h, "hermitian")
for ints in ([1, 1, 1, 1], [0, 0, 1, -1], [2, -1, 0, 3]):
    hp = shifted_hamiltonian(h, t, make_shift(base, ints))
    same = np.linalg.norm(scipy.linalg.expm(1j * t * hp) - scipy.linalg.expm(1j * t * h))
    print(f"shift {ints}: ||exp(itH') - exp(itH)|| = {same:.1e}, order {pauli_decompose(hp).order()}")

# %%
# Exhaustive search over |n_k| <= 1 with 100 random bases of Toffoli's
# 7-fold degenerate +1 eigenspace.
report = enumerate_branches(GateSpec.toffoli(), bound=1, basis_samples=100, seed=7)
print(f"\nToffoli: {report.branches_examined} branches examined, lowest order found {report.min_weight}")
print(f"argmin integers {report.argmin.integers} in basis sample {report.argmin.basis_sample}")
