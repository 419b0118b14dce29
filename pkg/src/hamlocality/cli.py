"""Command-line front end.

    hamlocality analyze toffoli
    hamlocality branches toffoli --bound 1 --samples 100 --seed 7 --output json
    hamlocality variational toffoli --locality 2 --restarts 50 --seed 1
    hamlocality couplings --n 2 --alpha 0,0,0,1

Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import __version__
from .coupling import (
    CouplingVector,
    SpectrumVector,
    couplings_to_spectrum,
    spectrum_to_couplings,
    zstring_labels,
)
from .linalg import ConvergenceFailure, matrix_exp_hermitian, principal_log, spectral_decompose
from .pauli import all_strings, pauli_decompose
from .search import SearchSpaceTooLarge, distance, enumerate_branches, variational_fit
from .synthesis import gate_matrix, paper_hamiltonian, parse_gate

EXIT_USAGE = 2
EXIT_NUMERIC = 3


class UsageError(Exception):
    """Bad flag value; the message names the flag."""


def _json_value(x) -> str:
    if isinstance(x, bool) or x is None:
        return json.dumps(x)
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return "null"
        if x == 0:
            return "0.0"
        s = format(x, ".17g")
        return s if any(c in s for c in ".e") else s + ".0"
    if isinstance(x, str):
        return json.dumps(x)
    if isinstance(x, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(v)}" for k, v in x.items()) + "}"
    if isinstance(x, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_json_value(v) for v in x) + "]"
    raise TypeError(f"cannot serialize {type(x).__name__}")


def dumps(obj) -> str:
    """JSON with every float printed to 17 significant digits."""
    return _json_value(obj) + "\n"


def _parse_list(text: str, flag: str) -> np.ndarray:
    try:
        return np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise UsageError(f"{flag}: expected a comma-separated list of numbers, got {text!r}") from None


def _gate(args):
    try:
        return parse_gate(args.gate, args.n)
    except FileNotFoundError as exc:
        raise UsageError(f"gate: cannot read {exc.filename}") from None
    except ValueError as exc:
        raise UsageError(f"gate: {exc}") from None


def _fmt(x: float) -> str:
    return f"{x:+.6f}"


def cmd_analyze(args) -> tuple[dict, str]:
    g = _gate(args)
    u = gate_matrix(g)
    phases = spectral_decompose(u, "unitary").phases
    h = principal_log(u)
    d = pauli_decompose(h)
    result = {
        "gate": g.label,
        "qubits": g.qubits,
        "eigenphases": phases.tolist(),
        "principal_pauli": d.to_records(),
        "order": d.order(),
        "principal_residual": distance(matrix_exp_hermitian(h), u),
    }
    paper = None
    if g.is_controlled_x:
        ph, t = paper_hamiltonian(g)
        paper = pauli_decompose(ph)
        result["paper"] = {
            "t": t,
            "pauli": paper.to_records(),
            "order": paper.order(),
            "residual": distance(matrix_exp_hermitian(ph, t), u),
        }

    lines = [f"gate: {g.label} ({g.qubits} qubits)"]
    lines.append("eigenphases: " + " ".join(_fmt(p) for p in phases))
    rows = [s for s in all_strings(g.qubits) if s in d.coeffs or (paper and s in paper.coeffs)]
    if paper:
        lines.append(f"{'string':<8} {'h':>10} {'principal':>10}")
        for s in rows:
            lines.append(f"{s:<8} {_fmt(paper[s]):>10} {_fmt(d[s]):>10}")
        lines.append(f"h generates U at t = pi/{2**g.qubits}: residual {result['paper']['residual']:.3e}")
        lines.append(f"h order: {paper.order()}")
    else:
        lines.append(f"{'string':<8} {'principal':>10}")
        for s in rows:
            lines.append(f"{s:<8} {_fmt(d[s]):>10}")
        if not rows:
            lines.append("(zero Hamiltonian)")
    lines.append(f"order: {d.order()}")
    return result, "\n".join(lines) + "\n"


def cmd_branches(args) -> tuple[dict, str]:
    g = _gate(args)
    try:
        r = enumerate_branches(g, args.bound, args.samples, args.seed, workers=args.workers)
    except SearchSpaceTooLarge as exc:
        raise UsageError(f"--bound: {exc}") from None
    result = r.to_dict()
    lines = [
        f"gate: {r.gate.label}",
        f"bound: {r.bound}  basis samples: {r.basis_samples}  seed: {r.seed}",
        f"branches examined: {r.branches_examined} over {r.bases_examined} bases",
        f"min_weight: {r.min_weight}",
        f"argmin integers: {list(r.argmin.integers)} (basis sample {r.argmin.basis_sample})",
    ]
    lines += [f"  {s:<8} {_fmt(c)}" for s, c in r.argmin.decomposition.items()]
    return result, "\n".join(lines) + "\n"


def cmd_variational(args) -> tuple[dict, str]:
    g = _gate(args)
    k = g.qubits - 1 if args.locality is None else args.locality
    if not 0 <= k <= g.qubits:
        raise UsageError(f"--locality: must be between 0 and {g.qubits}, got {k}")
    if args.restarts < 1:
        raise UsageError(f"--restarts: must be at least 1, got {args.restarts}")
    if args.iters < 1:
        raise UsageError(f"--iters: must be at least 1, got {args.iters}")
    r = variational_fit(g, k, args.restarts, args.iters, args.seed, workers=args.workers)
    result = r.to_dict()
    lines = [
        f"gate: {r.gate.label}",
        f"locality: {r.locality}  parameters: {r.parameter_count}  restarts: {r.restarts}  seed: {r.seed}",
        f"best_distance: {r.best_distance:.6e}",
        "history: " + " ".join(f"{x:.3e}" for x in r.history),
    ]
    return result, "\n".join(lines) + "\n"


def cmd_couplings(args) -> tuple[dict, str]:
    if args.n is None:
        raise UsageError("--n: required for couplings")
    if not 1 <= args.n <= 6:
        raise UsageError(f"--n: must be in 1..6, got {args.n}")
    if (args.alpha is None) == (args.epsilon is None):
        raise UsageError("--alpha/--epsilon: give exactly one")
    dim = 2**args.n
    if args.alpha is not None:
        alpha = _parse_list(args.alpha, "--alpha")
        if alpha.size != dim:
            raise UsageError(f"--alpha: expected {dim} values for n={args.n}, got {alpha.size}")
        epsilon = couplings_to_spectrum(CouplingVector(args.n, alpha)).epsilon
    else:
        epsilon = _parse_list(args.epsilon, "--epsilon")
        if epsilon.size != dim:
            raise UsageError(f"--epsilon: expected {dim} values for n={args.n}, got {epsilon.size}")
        alpha = spectrum_to_couplings(SpectrumVector(args.n, epsilon)).alpha
    labels = zstring_labels(args.n)
    result = {"n": args.n, "labels": labels, "alpha": alpha.tolist(), "epsilon": epsilon.tolist()}
    lines = [f"{'k':>3} {'string':<8} {'alpha':>12} {'epsilon':>12}"]
    for k, (s, a, e) in enumerate(zip(labels, alpha, epsilon)):
        lines.append(f"{k:>3} {s:<8} {a:>12.6g} {e:>12.6g}")
    return result, "\n".join(lines) + "\n"


COMMANDS = {
    "analyze": cmd_analyze,
    "branches": cmd_branches,
    "variational": cmd_variational,
    "couplings": cmd_couplings,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hamlocality", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=["text", "json"], default="text")
    common.add_argument("--out", metavar="PATH", help="write the report here instead of stdout")
    common.add_argument("--n", type=int, help="qubit count (identity width; couplings size)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)

    sub = parser.add_subparsers(dest="command", required=True)
    gate_help = "identity, cnot, toffoli, ccx:<n> or file:<path>"

    p = sub.add_parser("analyze", parents=[common], help="principal Hamiltonian and Pauli table")
    p.add_argument("gate", help=gate_help)

    p = sub.add_parser("branches", parents=[common], help="enumerate logarithm branches")
    p.add_argument("gate", help=gate_help)
    p.add_argument("--bound", type=int, default=1)
    p.add_argument("--samples", type=int, default=0)

    p = sub.add_parser("variational", parents=[common], help="fit a k-local generator")
    p.add_argument("gate", help=gate_help)
    p.add_argument("--locality", type=int, help="max Pauli weight (default n-1)")
    p.add_argument("--restarts", type=int, default=20)
    p.add_argument("--iters", type=int, default=2000)

    p = sub.add_parser("couplings", parents=[common], help="energy levels <-> sigma_z couplings")
    p.add_argument("--alpha", help="comma-separated coupling strengths")
    p.add_argument("--epsilon", help="comma-separated energy levels")
    return parser


def _config(args) -> dict:
    skip = {"command", "output", "out", "workers"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip and v is not None}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.workers < 1:
        print("error: --workers: must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    if args.command in ("branches",) and (args.bound < 0 or args.samples < 0):
        flag = "--bound" if args.bound < 0 else "--samples"
        print(f"error: {flag}: must be non-negative", file=sys.stderr)
        return EXIT_USAGE
    try:
        result, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceFailure, ArithmeticError, RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC

    if args.output == "json":
        text = dumps({"command": args.command, "config": _config(args), "result": result})
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
