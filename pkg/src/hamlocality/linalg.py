"""Dense complex matrix kernel: classification, spectral decomposition,
Hermitian exponential and principal logarithm of unitaries.

Matrices are plain ``numpy.ndarray`` of dtype ``complex128``. Eigenvalues of a
unitary are reported as phases on the branch cut ``(-pi, pi]`` with ``-1``
mapped to ``+pi``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.linalg

__all__ = [
    "NotNormal",
    "ConvergenceFailure",
    "DimensionMismatch",
    "BadDimension",
    "CLUSTER_TOL",
    "num_qubits",
    "SpectralDecomposition",
    "is_hermitian",
    "is_unitary",
    "spectral_decompose",
    "degenerate_blocks",
    "matrix_exp_hermitian",
    "principal_log",
    "wrap_phase",
    "read_matrix",
    "write_matrix",
    "format_matrix",
    "parse_matrix",
]

CLUSTER_TOL = 1e-8
CLASSIFY_TOL = 1e-10
_CUT_TOL = 1e-12


class NotNormal(ValueError):
    """Input fails the Hermitian/unitary predicate required by an operation."""


class ConvergenceFailure(RuntimeError):
    pass


class DimensionMismatch(ValueError):
    pass


class BadDimension(ValueError):
    """Matrix dimension is not a power of two."""


def _as_square(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionMismatch(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    return m


def num_qubits(m) -> int:
    dim = np.shape(m)[0]
    n = dim.bit_length() - 1
    if dim < 1 or (1 << n) != dim:
        raise BadDimension(f"dimension {dim} is not a power of 2")
    return n


def is_hermitian(m, tol: float = CLASSIFY_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.linalg.norm(m - m.conj().T) < tol)


def is_unitary(m, tol: float = CLASSIFY_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    return bool(np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0])) < tol)


def wrap_phase(phi):
    """Map angles onto ``(-pi, pi]``; rounding noise just above -pi goes to +pi."""
    phi = np.mod(np.asarray(phi, dtype=float) + np.pi, 2 * np.pi) - np.pi
    return np.where(phi <= -np.pi + _CUT_TOL, phi + 2 * np.pi, phi)


@dataclass(frozen=True)
class SpectralDecomposition:
    """``m = vectors @ diag(values) @ vectors^dagger``.

    For ``kind == "unitary"`` the ``values`` are complex eigenvalues on the unit
    circle and ``phases`` their angles in ``(-pi, pi]``; for ``"hermitian"``
    ``phases`` is None and ``values`` is real.
    """

    values: np.ndarray
    vectors: np.ndarray
    kind: str
    phases: np.ndarray | None = None

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def sort_keys(self) -> np.ndarray:
        return self.phases if self.kind == "unitary" else self.values.real

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T

    def blocks(self, tol: float = CLUSTER_TOL) -> list[list[int]]:
        return degenerate_blocks(self, tol)


def spectral_decompose(m, kind: str = "hermitian", tol: float = CLASSIFY_TOL) -> SpectralDecomposition:
    """Diagonalize a Hermitian or unitary matrix with an orthonormal eigenbasis.

    Eigenvalues are sorted ascending (by phase for unitaries), ties broken by
    the solver's index, so repeated calls give identical labels.

    Raises:
        NotNormal: the classification predicate fails at ``tol``.
        ConvergenceFailure: LAPACK did not converge, or the residual check
            ``||A diag(l) A^+ - m||_F < 1e-9`` failed.
    """
    m = _as_square(m)
    dim = m.shape[0]
    if kind == "hermitian":
        if not is_hermitian(m, tol):
            raise NotNormal(f"matrix is not Hermitian (residual {np.linalg.norm(m - m.conj().T):.3e})")
        try:
            w, v = np.linalg.eigh((m + m.conj().T) / 2)
        except np.linalg.LinAlgError as exc:
            raise ConvergenceFailure(str(exc)) from exc
        order = np.argsort(w, kind="stable")
        values = w[order].astype(complex)
        phases = None
        vectors = v[:, order]
    elif kind == "unitary":
        if not is_unitary(m, tol):
            resid = np.linalg.norm(m.conj().T @ m - np.eye(dim))
            raise NotNormal(f"matrix is not unitary (residual {resid:.3e})")
        # complex Schur form of a normal matrix is diagonal with unitary Z
        try:
            t, z = scipy.linalg.schur(m, output="complex")
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise ConvergenceFailure(str(exc)) from exc
        d = np.diag(t)
        phases = wrap_phase(np.angle(d))
        order = np.argsort(phases, kind="stable")
        phases = phases[order]
        values = np.exp(1j * phases)
        vectors = z[:, order]
    else:
        raise ValueError(f"unknown kind {kind!r}; expected 'hermitian' or 'unitary'")

    decomp = SpectralDecomposition(values=values, vectors=vectors, kind=kind, phases=phases)
    resid = np.linalg.norm(decomp.reconstruct() - m)
    if resid >= 1e-9:
        raise ConvergenceFailure(f"spectral reconstruction residual {resid:.3e} exceeds 1e-9")
    return decomp


def degenerate_blocks(decomp: SpectralDecomposition, tol: float = CLUSTER_TOL) -> list[list[int]]:
    """Partition eigenvalue indices into clusters of (near-)equal eigenvalues.

    Keys are sorted, so clusters are runs of neighbours closer than ``tol``.
    Phases also wrap around the cut: a cluster straddling ``+-pi`` is merged.
    """
    keys = decomp.sort_keys()
    blocks: list[list[int]] = [[0]]
    for i in range(1, len(keys)):
        if keys[i] - keys[i - 1] < tol:
            blocks[-1].append(i)
        else:
            blocks.append([i])
    if decomp.kind == "unitary" and len(blocks) > 1:
        if keys[0] + 2 * np.pi - keys[-1] < tol:
            blocks[0] = blocks.pop() + blocks[0]
    return blocks


def matrix_exp_hermitian(h, scale: float = 1.0) -> np.ndarray:
    """Return ``exp(i * scale * h)`` through the eigendecomposition of ``h``."""
    d = spectral_decompose(h, "hermitian")
    return (d.vectors * np.exp(1j * scale * d.values.real)) @ d.vectors.conj().T


def principal_log(u) -> np.ndarray:
    """Hermitian ``H`` with ``exp(iH) = u`` and spectrum in ``(-pi, pi]``."""
    d = spectral_decompose(u, "unitary")
    h = (d.vectors * d.phases) @ d.vectors.conj().T
    return (h + h.conj().T) / 2


def format_matrix(m) -> str:
    """Render ``m`` in the qubit-count + ``re,im`` token text format."""
    m = _as_square(m)
    lines = [str(num_qubits(m))]
    for row in m:
        lines.append(" ".join(f"{float(z.real)!r},{float(z.imag)!r}" for z in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> np.ndarray:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty matrix text")
    try:
        n = int(lines[0].strip())
    except ValueError:
        raise ValueError(f"first line must be the qubit count, got {lines[0]!r}") from None
    if n < 0:
        raise ValueError(f"qubit count must be non-negative, got {n}")
    dim = 1 << n
    rows = lines[1:]
    if len(rows) != dim:
        raise ValueError(f"expected {dim} matrix rows for n={n}, found {len(rows)}")
    out = np.empty((dim, dim), dtype=complex)
    for i, row in enumerate(rows):
        tokens = row.split()
        if len(tokens) != dim:
            raise ValueError(f"row {i + 1}: expected {dim} entries, found {len(tokens)}")
        for j, tok in enumerate(tokens):
            re, sep, im = tok.partition(",")
            if not sep:
                raise ValueError(f"row {i + 1}, column {j + 1}: token {tok!r} is not of the form re,im")
            try:
                out[i, j] = complex(float(re), float(im))
            except ValueError:
                raise ValueError(f"row {i + 1}, column {j + 1}: cannot parse {tok!r}") from None
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix contains NaN or Inf entries")
    return out


def read_matrix(path) -> np.ndarray:
    return parse_matrix(Path(path).read_text())


def write_matrix(path, m) -> None:
    Path(path).write_text(format_matrix(m))
