"""Gate library, generating Hamiltonians and logarithm-branch shifts.

The multiply-controlled X on ``n`` qubits is generated by the projector product
``(1 - Z)^{(n-1)} (x) (1 - X)`` at time ``pi / 2^n``: the product is ``2^n`` on
the single state ``|1...1->`` and zero elsewhere, so the exponential puts a
``-1`` exactly there.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np

from .linalg import (
    CLASSIFY_TOL,
    DimensionMismatch,
    NotNormal,
    SpectralDecomposition,
    is_unitary,
    num_qubits,
    read_matrix,
)
from .pauli import PAULI

__all__ = [
    "NotUnitary",
    "ZeroTime",
    "GateSpec",
    "ShiftOperator",
    "parse_gate",
    "gate_matrix",
    "paper_hamiltonian",
    "make_shift",
    "shifted_hamiltonian",
    "branch_generator",
]

NAMED_GATES = ("identity", "cnot", "toffoli", "ccx")


class NotUnitary(NotNormal):
    pass


class ZeroTime(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GateSpec:
    """A named gate (``identity``, ``cnot``, ``toffoli``, ``ccx``) or a custom matrix."""

    name: str
    qubits: int
    matrix: np.ndarray | None = None
    source: str | None = None

    def __post_init__(self):
        if self.name == "custom":
            if self.matrix is None:
                raise ValueError("custom gate needs a matrix")
            m = np.asarray(self.matrix, dtype=complex)
            if num_qubits(m) != self.qubits:
                raise DimensionMismatch(f"matrix is {m.shape[0]}x{m.shape[0]}, expected {2**self.qubits}")
            if not is_unitary(m, CLASSIFY_TOL):
                resid = np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]))
                raise NotUnitary(f"custom gate is not unitary (residual {resid:.3e})")
            object.__setattr__(self, "matrix", m)
        elif self.name in NAMED_GATES:
            if self.qubits < 1:
                raise ValueError(f"{self.name} needs at least one qubit")
            if self.name == "cnot" and self.qubits != 2:
                raise ValueError("cnot acts on 2 qubits")
            if self.name == "toffoli" and self.qubits != 3:
                raise ValueError("toffoli acts on 3 qubits")
        else:
            raise ValueError(f"unknown gate name {self.name!r}")

    @classmethod
    def identity(cls, n: int = 1) -> GateSpec:
        return cls("identity", n)

    @classmethod
    def cnot(cls) -> GateSpec:
        return cls("cnot", 2)

    @classmethod
    def toffoli(cls) -> GateSpec:
        return cls("toffoli", 3)

    @classmethod
    def ccx(cls, n: int) -> GateSpec:
        return cls("ccx", n)

    @classmethod
    def custom(cls, matrix, source: str | None = None) -> GateSpec:
        m = np.asarray(matrix, dtype=complex)
        return cls("custom", num_qubits(m), m, source)

    @property
    def is_controlled_x(self) -> bool:
        return self.name in ("cnot", "toffoli", "ccx")

    @property
    def label(self) -> str:
        if self.name == "ccx":
            return f"ccx:{self.qubits}"
        if self.name == "custom":
            return f"file:{self.source}" if self.source else "custom"
        return self.name


def parse_gate(source: str, qubits: int | None = None) -> GateSpec:
    """Resolve ``identity``, ``cnot``, ``toffoli``, ``ccx:<n>`` or ``file:<path>``.

    ``qubits`` sets the width of ``identity`` (default 1).
    """
    if source == "identity":
        return GateSpec.identity(qubits or 1)
    if source == "cnot":
        return GateSpec.cnot()
    if source == "toffoli":
        return GateSpec.toffoli()
    if source.startswith("ccx:"):
        try:
            n = int(source[4:])
        except ValueError:
            raise ValueError(f"bad qubit count in {source!r}") from None
        return GateSpec.ccx(n)
    if source.startswith("file:"):
        path = source[5:]
        return GateSpec.custom(read_matrix(path), source=path)
    raise ValueError(f"unknown gate {source!r}; expected identity, cnot, toffoli, ccx:<n> or file:<path>")


def gate_matrix(g: GateSpec) -> np.ndarray:
    if g.name == "custom":
        return g.matrix.copy()
    dim = 2**g.qubits
    u = np.eye(dim, dtype=complex)
    if g.is_controlled_x:
        u[[dim - 2, dim - 1]] = u[[dim - 1, dim - 2]]
    return u


def paper_hamiltonian(g: GateSpec) -> tuple[np.ndarray, float]:
    """Projector-product Hamiltonian ``h`` and time ``t`` with ``exp(i t h)`` equal to the gate."""
    if not g.is_controlled_x:
        raise ValueError(f"no closed-form Hamiltonian for gate {g.label!r}")
    one = np.eye(2, dtype=complex)
    factors = [one - PAULI["Z"]] * (g.qubits - 1) + [one - PAULI["X"]]
    return reduce(np.kron, factors), np.pi / 2**g.qubits


@dataclass(frozen=True)
class ShiftOperator:
    """``N = 2 pi A diag(integers) A^dagger`` on the eigenbasis ``A`` of ``base``."""

    base: SpectralDecomposition
    integers: tuple[int, ...]

    @property
    def matrix(self) -> np.ndarray:
        a = self.base.vectors
        n = 2 * np.pi * (a * np.asarray(self.integers, dtype=float)) @ a.conj().T
        return (n + n.conj().T) / 2


def make_shift(base: SpectralDecomposition, integers) -> ShiftOperator:
    ints = tuple(int(k) for k in integers)
    if len(ints) != base.dim:
        raise DimensionMismatch(f"got {len(ints)} integers for a {base.dim}-dimensional eigenbasis")
    return ShiftOperator(base=base, integers=ints)


def shifted_hamiltonian(h, t: float, s: ShiftOperator) -> np.ndarray:
    """``h + N / t``, which generates the same unitary as ``h`` at time ``t``."""
    if t == 0:
        raise ZeroTime("time must be non-zero to absorb a shift")
    h = np.asarray(h, dtype=complex)
    if h.shape != (s.base.dim, s.base.dim):
        raise DimensionMismatch(f"h has shape {h.shape}, shift acts on dimension {s.base.dim}")
    return h + s.matrix / t


def branch_generator(u_decomp: SpectralDecomposition, integers) -> np.ndarray:
    """``A diag(theta_k + 2 pi n_k) A^dagger`` from a unitary's principal eigenphases."""
    if u_decomp.kind != "unitary":
        raise ValueError("branch_generator needs the spectral decomposition of a unitary")
    ints = np.asarray(integers, dtype=float)
    if ints.shape != (u_decomp.dim,):
        raise DimensionMismatch(f"got {ints.size} integers for dimension {u_decomp.dim}")
    a = u_decomp.vectors
    h = (a * (u_decomp.phases + 2 * np.pi * ints)) @ a.conj().T
    return (h + h.conj().T) / 2
