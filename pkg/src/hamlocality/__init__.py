"""Generating Hamiltonians of small quantum gates and their interaction order.

Builds the Hamiltonians behind multiply-controlled X gates, expands them in the
Pauli basis, walks the logarithm branches ``H + N/t`` that generate the same
unitary, and searches numerically for generators of lower Pauli weight.
"""

__version__ = "0.1.0"

from .coupling import (
    CouplingVector,
    SpectrumVector,
    couplings_to_spectrum,
    diagonal_hamiltonian,
    hadamard_matrix,
    spectrum_to_couplings,
)
from .linalg import (
    BadDimension,
    ConvergenceFailure,
    DimensionMismatch,
    NotNormal,
    SpectralDecomposition,
    is_hermitian,
    is_unitary,
    matrix_exp_hermitian,
    principal_log,
    read_matrix,
    spectral_decompose,
    write_matrix,
)
from .pauli import (
    PauliDecomposition,
    as_matrix,
    interaction_order,
    pauli_decompose,
    reconstruct,
    strings_of_weight_at_most,
    weight,
)
from .search import (
    BranchReport,
    SearchSpaceTooLarge,
    VariationalReport,
    distance,
    enumerate_branches,
    variational_fit,
)
from .synthesis import (
    GateSpec,
    NotUnitary,
    ShiftOperator,
    ZeroTime,
    gate_matrix,
    make_shift,
    paper_hamiltonian,
    parse_gate,
    shifted_hamiltonian,
)
