"""Searches for low-weight generators of a fixed unitary.

Two probes of whether a gate whose natural generator has ``n``-body terms can
also be written as ``exp(i h)`` with a lower interaction order:

* :func:`enumerate_branches` walks every logarithm branch
  ``A diag(theta_k + 2 pi n_k) A^dagger`` with ``|n_k| <= bound``, re-drawing
  the eigenbasis inside degenerate eigenspaces with seeded Haar rotations.
* :func:`variational_fit` minimizes ``||exp(i h(theta)) - U||_F`` over the
  span of Pauli strings of weight at most ``k``.

Pauli coefficients are linear in the branch phases, ``c_s = sum_k W[s, k] phi_k``
with ``W[s, k] = <a_k|P_s|a_k> / 2^n``, so an entire chunk of integer vectors is
scored with one matrix product.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.optimize
from scipy.stats import unitary_group

from .linalg import CLUSTER_TOL, DimensionMismatch, SpectralDecomposition, spectral_decompose
from .pauli import (
    WEIGHT_TOL,
    PauliDecomposition,
    all_strings,
    as_matrix,
    interaction_order,
    pauli_coefficients,
    pauli_decompose,
    strings_of_weight_at_most,
    weight,
)
from .synthesis import GateSpec, gate_matrix

__all__ = [
    "SearchSpaceTooLarge",
    "MAX_BRANCHES",
    "LogBranch",
    "BranchReport",
    "VariationalReport",
    "distance",
    "sample_bases",
    "branch_hamiltonian",
    "enumerate_branches",
    "spot_check_branches",
    "fit_objective",
    "variational_fit",
]

MAX_BRANCHES = 10**8
MAX_QUBITS = 4
_CHUNK = 1 << 15


class SearchSpaceTooLarge(ValueError):
    pass


def distance(u, v) -> float:
    """Frobenius norm ``||u - v||_F`` (no global-phase quotient)."""
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != v.shape:
        raise DimensionMismatch(f"shapes {u.shape} and {v.shape} differ")
    return float(np.linalg.norm(u - v))


@dataclass(frozen=True)
class LogBranch:
    integers: tuple[int, ...]
    basis_sample: int
    hamiltonian: np.ndarray
    decomposition: PauliDecomposition
    weight: int


@dataclass(frozen=True)
class BranchReport:
    gate: GateSpec
    bound: int
    basis_samples: int
    seed: int
    branches_examined: int
    bases_examined: int
    min_weight: int
    argmin: LogBranch
    weight_tol: float = WEIGHT_TOL
    cluster_tol: float = CLUSTER_TOL
    degenerate_blocks: list[list[int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "gate": self.gate.label,
            "bound": self.bound,
            "basis_samples": self.basis_samples,
            "seed": self.seed,
            "branches_examined": self.branches_examined,
            "bases_examined": self.bases_examined,
            "min_weight": self.min_weight,
            "argmin_integers": list(self.argmin.integers),
            "argmin_basis_sample": self.argmin.basis_sample,
            "argmin_pauli": self.argmin.decomposition.to_records(),
            "degenerate_blocks": self.degenerate_blocks,
            "weight_tol": self.weight_tol,
            "cluster_tol": self.cluster_tol,
        }


@dataclass(frozen=True)
class VariationalReport:
    gate: GateSpec
    locality: int
    parameter_count: int
    restarts: int
    max_iters: int
    seed: int
    method: str
    strings: list[str]
    best_theta: np.ndarray
    best_distance: float
    history: list[float]

    def hamiltonian(self) -> np.ndarray:
        return np.tensordot(self.best_theta, _pauli_stack(tuple(self.strings)), axes=1)

    def to_dict(self) -> dict:
        return {
            "gate": self.gate.label,
            "locality": self.locality,
            "parameter_count": self.parameter_count,
            "restarts": self.restarts,
            "max_iters": self.max_iters,
            "seed": self.seed,
            "method": self.method,
            "best_distance": self.best_distance,
            "best_theta": [{"string": s, "coeff": float(c)} for s, c in zip(self.strings, self.best_theta)],
            "history": list(self.history),
        }


# -- branch enumeration -------------------------------------------------------


def sample_bases(decomp: SpectralDecomposition, samples: int, seed: int) -> list[np.ndarray]:
    """Eigenbases to enumerate: the solver's own, then ``samples`` Haar-rotated copies.

    Each rotated copy applies an independent Haar unitary to the columns of
    every degenerate block of size > 1. Without degenerate blocks a rotation
    only rephases eigenvectors, so no copies are drawn.
    """
    blocks = [b for b in decomp.blocks() if len(b) > 1]
    bases = [decomp.vectors]
    if not blocks:
        return bases
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        a = decomp.vectors.copy()
        for b in blocks:
            r = unitary_group.rvs(len(b), random_state=rng) if len(b) > 1 else np.eye(1)
            a[:, b] = a[:, b] @ r
        bases.append(a)
    return bases


def branch_hamiltonian(basis: np.ndarray, phases: np.ndarray, integers) -> np.ndarray:
    phi = np.asarray(phases, dtype=float) + 2 * np.pi * np.asarray(integers, dtype=float)
    h = (basis * phi) @ basis.conj().T
    return (h + h.conj().T) / 2


def _projector_weights(basis: np.ndarray) -> np.ndarray:
    """``W[k, s] = <a_k|P_s|a_k> / 2^n`` (real)."""
    rows = [pauli_coefficients(np.outer(a, a.conj())).real for a in basis.T]
    return np.array(rows)


def _integer_vectors(start: int, stop: int, dim: int, bound: int) -> np.ndarray:
    """Rows ``start..stop`` of the lexicographic listing of ``[-bound, bound]^dim``."""
    base = 2 * bound + 1
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, dim), dtype=np.int64)
    for j in range(dim - 1, -1, -1):
        out[:, j] = idx % base - bound
        idx //= base
    return out


def _scan_basis(basis, phases, string_weights, dim, bound, total, weight_tol):
    """Minimum order over all integer vectors for one basis: ``(weight, index)``."""
    w = _projector_weights(basis)
    best = (np.iinfo(np.int64).max, -1)
    for start in range(0, total, _CHUNK):
        ints = _integer_vectors(start, min(start + _CHUNK, total), dim, bound)
        coeffs = (phases + 2 * np.pi * ints) @ w
        present = np.abs(coeffs) >= weight_tol
        orders = np.max(np.where(present, string_weights, 0), axis=1)
        i = int(np.argmin(orders))
        if orders[i] < best[0]:
            best = (int(orders[i]), start + i)
        if best[0] == 0:
            break
    return best


def _check_search_space(g: GateSpec, bound: int) -> int:
    if bound < 0:
        raise ValueError(f"bound must be non-negative, got {bound}")
    if g.qubits > MAX_QUBITS:
        raise SearchSpaceTooLarge(f"branch enumeration supports at most {MAX_QUBITS} qubits, got {g.qubits}")
    total = (2 * bound + 1) ** (2**g.qubits)
    if total > MAX_BRANCHES:
        raise SearchSpaceTooLarge(f"{total} integer vectors exceed the limit of {MAX_BRANCHES}")
    return total


def enumerate_branches(
    g: GateSpec,
    bound: int,
    basis_samples: int = 0,
    seed: int = 0,
    weight_tol: float = WEIGHT_TOL,
    workers: int = 1,
) -> BranchReport:
    """Minimum interaction order over logarithm branches of ``g`` with ``|n_k| <= bound``.

    Ties are resolved towards the lexicographically smallest integer vector and
    then the lowest basis-sample index, so the report does not depend on
    ``workers``.

    Raises:
        SearchSpaceTooLarge: more than 4 qubits or more than ``MAX_BRANCHES``
            integer vectors per basis.
    """
    if basis_samples < 0:
        raise ValueError(f"basis_samples must be non-negative, got {basis_samples}")
    total = _check_search_space(g, bound)
    u = gate_matrix(g)
    decomp = spectral_decompose(u, "unitary")
    dim = decomp.dim
    bases = sample_bases(decomp, basis_samples, seed)
    string_weights = np.array([weight(s) for s in all_strings(g.qubits)])

    def scan(a):
        return _scan_basis(a, decomp.phases, string_weights, dim, bound, total, weight_tol)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(scan, bases))
    else:
        results = [scan(a) for a in bases]

    # the listing is lexicographic, so a smaller index is a smaller vector
    order, index, sample = min((w, i, s) for s, (w, i) in enumerate(results))
    integers = tuple(int(k) for k in _integer_vectors(index, index + 1, dim, bound)[0])
    h = branch_hamiltonian(bases[sample], decomp.phases, integers)
    d = pauli_decompose(h)
    argmin = LogBranch(integers, sample, h, d, interaction_order(d, weight_tol))

    resid = np.linalg.norm(scipy.linalg.expm(1j * h) - u)
    if resid >= 1e-8:
        raise RuntimeError(f"argmin branch does not regenerate the gate (residual {resid:.3e})")

    return BranchReport(
        gate=g,
        bound=bound,
        basis_samples=basis_samples,
        seed=seed,
        branches_examined=total * len(bases),
        bases_examined=len(bases),
        min_weight=order,
        argmin=argmin,
        weight_tol=weight_tol,
        degenerate_blocks=[b for b in decomp.blocks() if len(b) > 1],
    )


def spot_check_branches(
    g: GateSpec, bound: int, basis_samples: int = 0, seed: int = 0, checks: int = 1000, check_seed: int = 0
) -> float:
    """Largest ``||exp(iH') - U||_F`` over ``checks`` random branches of the search space."""
    total = _check_search_space(g, bound)
    u = gate_matrix(g)
    decomp = spectral_decompose(u, "unitary")
    bases = sample_bases(decomp, basis_samples, seed)
    rng = np.random.default_rng(check_seed)
    worst = 0.0
    for _ in range(checks):
        s = int(rng.integers(len(bases)))
        i = int(rng.integers(total))
        ints = _integer_vectors(i, i + 1, decomp.dim, bound)[0]
        h = branch_hamiltonian(bases[s], decomp.phases, ints)
        worst = max(worst, distance(scipy.linalg.expm(1j * h), u))
    return worst


# -- variational fit ----------------------------------------------------------

_STACK_CACHE: dict[tuple[str, ...], np.ndarray] = {}


def _pauli_stack(strings: tuple[str, ...]) -> np.ndarray:
    stack = _STACK_CACHE.get(strings)
    if stack is None:
        stack = np.stack([as_matrix(s) for s in strings])
        _STACK_CACHE[strings] = stack
    return stack


def fit_objective(theta, stack: np.ndarray, u: np.ndarray, index: np.ndarray):
    """Squared distance ``||exp(i h) - U||_F^2`` and its exact gradient.

    With ``h = A diag(l) A^dagger`` the derivative of ``exp(i h)`` along ``X`` is
    ``A (F o A^dagger X A) A^dagger`` with divided differences
    ``F_jk = (e^{i l_j} - e^{i l_k}) / (l_j - l_k)`` (``i e^{i l_j}`` on ties).
    ``index`` maps each parameter to its position in the full Pauli listing.
    """
    h = np.tensordot(theta, stack, axes=1)
    lam, a = np.linalg.eigh(h)
    e = np.exp(1j * lam)
    expo = (a * e) @ a.conj().T
    r = expo - u
    f = float(np.vdot(r, r).real)

    dl = lam[:, None] - lam[None, :]
    close = np.abs(dl) < 1e-12
    with np.errstate(divide="ignore", invalid="ignore"):
        div = np.where(close, 1j * e[:, None], (e[:, None] - e[None, :]) / np.where(close, 1.0, dl))
    m = a.conj().T @ r.conj().T @ a
    k = a @ (m.T * div).T @ a.conj().T
    # Tr(P_s K) = 2^n * (Pauli coefficient of K on s)
    grad = 2 * u.shape[0] * pauli_coefficients(k)[index].real
    return f, grad


def variational_fit(
    g: GateSpec,
    k: int,
    restarts: int = 20,
    max_iters: int = 2000,
    seed: int = 0,
    method: str = "L-BFGS-B",
    workers: int = 1,
) -> VariationalReport:
    """Multi-start fit of ``exp(i h(theta))`` to the gate with ``h`` at most ``k``-local.

    ``h(theta) = sum_s theta_s P_s`` over every string of weight ``<= k``; the
    ``I...I`` term absorbs global phase. Starting points are uniform on
    ``[-pi, pi]^d``, all drawn up front from ``seed``. ``method`` is
    ``"L-BFGS-B"`` (exact gradient) or ``"Nelder-Mead"``.
    """
    n = g.qubits
    if not 0 <= k <= n:
        raise ValueError(f"locality must satisfy 0 <= k <= {n}, got {k}")
    if restarts < 1:
        raise ValueError(f"restarts must be at least 1, got {restarts}")
    if method not in ("L-BFGS-B", "Nelder-Mead"):
        raise ValueError(f"unknown method {method!r}")
    u = gate_matrix(g)
    strings = strings_of_weight_at_most(n, k)
    position = {s: i for i, s in enumerate(all_strings(n))}
    index = np.array([position[s] for s in strings])
    stack = _pauli_stack(tuple(strings))
    d = len(strings)
    starts = np.random.default_rng(seed).uniform(-np.pi, np.pi, size=(restarts, d))

    def run(theta0):
        if method == "L-BFGS-B":
            res = scipy.optimize.minimize(
                fit_objective,
                theta0,
                args=(stack, u, index),
                jac=True,
                method="L-BFGS-B",
                options={"maxiter": max_iters, "ftol": 0.0, "gtol": 1e-13, "maxcor": 30},
            )
        else:
            res = scipy.optimize.minimize(
                lambda x: fit_objective(x, stack, u, index)[0],
                theta0,
                method="Nelder-Mead",
                options={"maxiter": max_iters, "xatol": 1e-12, "fatol": 1e-16, "adaptive": True},
            )
        theta = np.asarray(res.x, dtype=float)
        return theta, float(np.sqrt(max(fit_objective(theta, stack, u, index)[0], 0.0)))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, starts))
    else:
        results = [run(t) for t in starts]

    history = [dist for _, dist in results]
    best = int(np.argmin(history))
    return VariationalReport(
        gate=g,
        locality=k,
        parameter_count=d,
        restarts=restarts,
        max_iters=max_iters,
        seed=seed,
        method=method,
        strings=strings,
        best_theta=results[best][0],
        best_distance=history[best],
        history=history,
    )
