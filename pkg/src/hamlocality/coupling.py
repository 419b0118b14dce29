"""Energy levels of a diagonal Hamiltonian versus its sigma_z-string couplings.

Index ``k`` labels the string ``Z^{b_1} (x) ... (x) Z^{b_n}`` where ``b_1`` is the
most significant bit of ``k``, so ``k = 3`` on two qubits is ``ZZ``. The level
``epsilon_j`` is the diagonal entry at basis state ``j``, giving
``epsilon = M alpha`` with ``M_jk = (-1)^popcount(j & k)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

__all__ = [
    "CouplingVector",
    "SpectrumVector",
    "hadamard_matrix",
    "couplings_to_spectrum",
    "spectrum_to_couplings",
    "zstring_label",
    "zstring_labels",
    "diagonal_hamiltonian",
]

_H1 = np.array([[1, 1], [1, -1]], dtype=np.int64)


def _check_length(n: int, v: np.ndarray, what: str) -> None:
    if n < 1:
        raise ValueError(f"qubit count must be positive, got {n}")
    if v.shape != (2**n,):
        raise ValueError(f"{what} must have length 2^{n} = {2**n}, got shape {v.shape}")


@dataclass(frozen=True)
class CouplingVector:
    n: int
    alpha: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=float)
        _check_length(self.n, a, "alpha")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True)
class SpectrumVector:
    n: int
    epsilon: np.ndarray

    def __post_init__(self):
        e = np.asarray(self.epsilon, dtype=float)
        _check_length(self.n, e, "epsilon")
        object.__setattr__(self, "epsilon", e)


def hadamard_matrix(n: int) -> np.ndarray:
    """Integer ``2^n x 2^n`` Sylvester-Hadamard matrix (symmetric, ``M @ M = 2^n I``)."""
    if not 1 <= n <= 6:
        raise ValueError(f"n must be in 1..6, got {n}")
    return reduce(np.kron, [_H1] * n)


def _fwht(v: np.ndarray) -> np.ndarray:
    """In-place-style butterfly computing ``M @ v`` in ``O(n 2^n)``."""
    v = v.astype(float, copy=True)
    h = 1
    while h < v.size:
        v = v.reshape(-1, 2, h)
        v = np.stack([v[:, 0] + v[:, 1], v[:, 0] - v[:, 1]], axis=1).reshape(-1)
        h *= 2
    return v


def couplings_to_spectrum(a: CouplingVector) -> SpectrumVector:
    return SpectrumVector(a.n, _fwht(a.alpha))


def spectrum_to_couplings(e: SpectrumVector) -> CouplingVector:
    return CouplingVector(e.n, _fwht(e.epsilon) / 2**e.n)


def zstring_label(n: int, k: int) -> str:
    return "".join("Z" if b == "1" else "I" for b in format(k, f"0{n}b"))


def zstring_labels(n: int) -> list[str]:
    return [zstring_label(n, k) for k in range(2**n)]


def diagonal_hamiltonian(a: CouplingVector) -> np.ndarray:
    """Dense ``sum_k alpha_k Z-string_k`` built by Kronecker products."""
    z = np.diag([1.0, -1.0]).astype(complex)
    one = np.eye(2, dtype=complex)
    h = np.zeros((2**a.n, 2**a.n), dtype=complex)
    for k, coeff in enumerate(a.alpha):
        if coeff:
            h += coeff * reduce(np.kron, [z if c == "Z" else one for c in zstring_label(a.n, k)])
    return h
