"""Pauli tensor-product basis.

A Pauli string is a ``str`` over ``"IXYZ"``; the leftmost letter acts on qubit 0,
the most significant bit of the basis-state index. Strings are ordered
lexicographically with ``I < X < Y < Z``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache, reduce
from itertools import product
from math import comb

import numpy as np

from .linalg import BadDimension, NotNormal, is_hermitian, num_qubits

__all__ = [
    "LETTERS",
    "PAULI",
    "DROP_TOL",
    "WEIGHT_TOL",
    "PauliDecomposition",
    "weight",
    "as_matrix",
    "all_strings",
    "strings_of_weight_at_most",
    "count_strings_of_weight_at_most",
    "pauli_decompose",
    "pauli_coefficients",
    "interaction_order",
    "reconstruct",
]

LETTERS = "IXYZ"
PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_SIGMA = np.stack([PAULI[c] for c in LETTERS])

DROP_TOL = 1e-12
WEIGHT_TOL = 1e-9

# row (r, c) -> coefficient a: Tr(sigma_a h) = sum_rc sigma_a[c, r] h[r, c]
_FORWARD = _SIGMA.transpose(0, 2, 1).reshape(4, 4)
# coefficient a -> entry (r, c)
_BACKWARD = _SIGMA.reshape(4, 4).T


def _check_string(s: str) -> str:
    if not s or any(c not in LETTERS for c in s):
        raise ValueError(f"invalid Pauli string {s!r}")
    return s


def weight(s: str) -> int:
    """Number of non-identity letters."""
    return sum(c != "I" for c in _check_string(s))


def as_matrix(s: str) -> np.ndarray:
    return reduce(np.kron, (PAULI[c] for c in _check_string(s)))


@lru_cache(maxsize=None)
def all_strings(n: int) -> tuple[str, ...]:
    return tuple("".join(p) for p in product(LETTERS, repeat=n))


def strings_of_weight_at_most(n: int, k: int) -> list[str]:
    """All length-``n`` strings with at most ``k`` non-identity letters, in lexicographic order."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    return [s for s in all_strings(n) if weight(s) <= k]


def count_strings_of_weight_at_most(n: int, k: int) -> int:
    return sum(comb(n, j) * 3**j for j in range(k + 1))


def _apply_each_axis(t: np.ndarray, op: np.ndarray, n: int) -> np.ndarray:
    for axis in range(n):
        t = np.moveaxis(np.tensordot(op, t, axes=([1], [axis])), 0, axis)
    return t


def pauli_coefficients(h) -> np.ndarray:
    """Dense vector of ``Tr(P_s h) / 2^n`` over :func:`all_strings` order.

    Computed by contracting each qubit's (row, column) index pair with the
    four Pauli matrices, which costs ``O(n 4^n)`` instead of ``O(8^n)``.
    Complex in general; real for Hermitian ``h``.
    """
    h = np.asarray(h, dtype=complex)
    n = num_qubits(h)
    if n == 0:
        return h.reshape(1)
    t = h.reshape((2,) * (2 * n))
    # interleave to (r0, c0, r1, c1, ...) then fuse each pair into one axis of length 4
    t = t.transpose([ax for q in range(n) for ax in (q, n + q)]).reshape((4,) * n)
    return _apply_each_axis(t, _FORWARD, n).reshape(-1) / 2**n


@dataclass(frozen=True)
class PauliDecomposition:
    """Real Pauli expansion ``sum_s coeffs[s] * P_s`` of a Hermitian operator on ``n`` qubits."""

    n: int
    coeffs: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        for s in self.coeffs:
            if len(_check_string(s)) != self.n:
                raise ValueError(f"string {s!r} does not have length n={self.n}")

    def __getitem__(self, s: str) -> float:
        return self.coeffs.get(s, 0.0)

    def items(self):
        return self.coeffs.items()

    def order(self, tol: float = WEIGHT_TOL) -> int:
        return interaction_order(self, tol)

    def to_records(self) -> list[dict]:
        return [{"string": s, "coeff": c} for s, c in self.coeffs.items()]

    def to_matrix(self) -> np.ndarray:
        return reconstruct(self)


def pauli_decompose(h, drop_tol: float = DROP_TOL) -> PauliDecomposition:
    """Decompose a Hermitian ``2^n x 2^n`` matrix in the Pauli basis.

    Raises:
        BadDimension: the dimension is not a power of two.
        NotNormal: ``h`` is not Hermitian to 1e-10, or a coefficient carries an
            imaginary part above 1e-10.
    """
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise BadDimension(f"expected a square matrix, got shape {h.shape}")
    n = num_qubits(h)
    if not is_hermitian(h):
        raise NotNormal("matrix is not Hermitian")
    c = pauli_coefficients(h)
    if np.max(np.abs(c.imag)) >= 1e-10:
        raise NotNormal("Pauli coefficients have imaginary residue above 1e-10")
    c = c.real
    coeffs = {s: float(v) for s, v in zip(all_strings(n), c) if abs(v) >= drop_tol}
    return PauliDecomposition(n=n, coeffs=coeffs)


def interaction_order(d: PauliDecomposition, tol: float = WEIGHT_TOL) -> int:
    """Largest weight among strings with ``|coeff| >= tol``; 0 for the zero operator."""
    return max((weight(s) for s, c in d.coeffs.items() if abs(c) >= tol), default=0)


def reconstruct(d: PauliDecomposition) -> np.ndarray:
    n = d.n
    index = {s: i for i, s in enumerate(all_strings(n))}
    c = np.zeros(4**n, dtype=complex)
    for s, v in d.coeffs.items():
        c[index[s]] = v
    if n == 0:
        return c.reshape(1, 1)
    t = _apply_each_axis(c.reshape((4,) * n), _BACKWARD, n)
    t = t.reshape((2,) * (2 * n))
    # undo the (r0, c0, r1, c1, ...) interleave
    inverse = [2 * q for q in range(n)] + [2 * q + 1 for q in range(n)]
    return t.transpose(inverse).reshape(2**n, 2**n)
