# Batch command-line surface over the library: spectrum verification,
# pattern search and tables, the conjecture scan, tableau simulation, gate
# factorization, and the six-qubit witness check.
#
# Exit codes: 0 all checks passed, 1 a verification failed, 2 usage error.
# All randomness flows from the --seed argument; reports embed the seed and
# tolerances, and repeated runs with the same arguments are byte-identical.

from __future__ import annotations

import argparse
import json
import os
import sys

import numpy as np

from . import binaryops, factorizer, gksim, linalg, patterns, xstab


def _threads() -> int:
    """Parallelism cap from STABKIT_THREADS; execution is serial, which
    always respects the cap, but the value is echoed in reports."""
    try:
        return max(1, int(os.environ.get("STABKIT_THREADS", "1")))
    except ValueError:
        return 1


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(report, sort_keys=True, indent=2))
        return
    for key, value in sorted(report.items()):
        if isinstance(value, dict):
            print(f"{key}:")
            for k2, v2 in sorted(value.items()):
                print(f"  {k2:<24} {v2}")
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            print(f"{key}:")
            for item in value:
                print("  " + "  ".join(f"{k}={item[k]}" for k in sorted(item)))
        else:
            print(f"{key:<24} {value}")


def _cmd_verify_spectrum(args) -> tuple[dict, bool]:
    rng = np.random.default_rng(args.seed)
    tol = args.tol if args.tol is not None else 1e-8
    worst = 0.0
    worst_res = 0.0
    for _ in range(args.trials):
        n = int(rng.integers(1, args.n + 1))
        thetas = rng.uniform(0, 2 * np.pi, size=n)
        rep = binaryops.verify_theorem_spectrum(thetas, tol)
        worst = max(worst, rep["max_deviation"])
        worst_res = max(worst_res, max(rep["eigvec_residuals"].values()))
    passed = worst < tol and worst_res < tol
    return {
        "command": "verify-spectrum",
        "seed": args.seed,
        "tolerance": tol,
        "threads": _threads(),
        "trials": args.trials,
        "max_qubits": args.n,
        "max_deviation": worst,
        "max_eigvec_residual": worst_res,
        "passed": passed,
    }, passed


def _pattern_label(pattern) -> str:
    chars = {"I": "1", "Z": "Z", "A": "A"}
    return " / ".join(
        ".".join(chars[s.kind] for s in row) for row in pattern.operators
    )


def _cmd_search(args) -> tuple[dict, bool]:
    classes = patterns.enumerate_patterns(args.qubits, args.ops)
    return {
        "command": "search",
        "seed": args.seed,
        "threads": _threads(),
        "n_qubits": args.qubits,
        "n_ops": args.ops,
        "class_count": len(classes),
        "classes": [_pattern_label(p) for p in classes],
        "passed": True,
    }, True


def _cmd_table(args) -> tuple[dict, bool]:
    tol = args.tol if args.tol is not None else 1e-8
    report = patterns.reproduce_table(args.table_id, seed=args.seed, tol=tol)
    report["command"] = "table"
    report["threads"] = _threads()
    return report, report["passed"]


def _cmd_conjecture_scan(args) -> tuple[dict, bool]:
    tol = args.tol if args.tol is not None else 1e-8
    report = patterns.conjecture_scan(args.qubits, args.samples, seed=args.seed, tol=tol)
    report["command"] = "conjecture-scan"
    report["threads"] = _threads()
    return report, report["passed"]


def _load_circuit(path: str) -> gksim.Circuit:
    try:
        with open(path) as fh:
            return gksim.parse_circuit(fh.read())
    except OSError as exc:
        raise SystemExit(f"error: cannot read circuit file: {exc}")
    except ValueError as exc:
        raise SystemExit(f"error: malformed circuit text: {exc}")


def _cmd_gk_sim(args) -> tuple[dict, bool]:
    circuit = _load_circuit(args.circuit)
    hist = gksim.sample_outcomes(circuit, args.shots, seed=args.seed)
    report = {
        "command": "gk-sim",
        "seed": args.seed,
        "threads": _threads(),
        "shots": args.shots,
        "n_qubits": circuit.n_qubits,
        "histogram": dict(sorted(hist.items())),
        "passed": True,
    }
    return report, True


def _cmd_gk_compare(args) -> tuple[dict, bool]:
    circuit = _load_circuit(args.circuit)
    report = gksim.compare_simulators(circuit, shots=args.shots, seed=args.seed)
    report["command"] = "gk-compare"
    report["threads"] = _threads()
    return report, report["passed"]


def _load_matrix(path: str) -> np.ndarray:
    try:
        return linalg.load_matrix(path)
    except OSError as exc:
        raise SystemExit(f"error: cannot read matrix file: {exc}")
    except (ValueError, KeyError, json.JSONDecodeError) as exc:
        raise SystemExit(f"error: malformed matrix JSON: {exc}")


def _cmd_factorize(args) -> tuple[dict, bool]:
    U = _load_matrix(args.matrix)
    tol = args.tol if args.tol is not None else 1e-8
    if U.shape != (args.d**args.n, args.d**args.n):
        raise SystemExit("error: matrix dimension does not equal d^n")
    base = {
        "command": "factorize",
        "seed": args.seed,
        "threads": _threads(),
        "tolerance": tol,
        "d": args.d,
        "n": args.n,
    }
    try:
        dec = factorizer.factor_nonentangling(U, args.d, args.n, tol)
    except factorizer.FactorizationError as exc:
        base.update({"passed": False, "error": str(exc)})
        return base, False
    cycle = " ".join(str(q + 1) for q in dec.permutation)
    base.update(
        {
            "passed": True,
            "permutation_one_line": f"({cycle})",
            "phase": [dec.phase.real, dec.phase.imag],
            "residual": dec.residual,
            "locals": [linalg.matrix_to_json(u) for u in dec.locals],
        }
    )
    return base, True


def _cmd_densify(args) -> tuple[dict, bool]:
    U = _load_matrix(args.matrix)
    dim = U.shape[0]
    n = 0
    while args.d**n < dim:
        n += 1
    if args.d**n != dim:
        raise SystemExit("error: matrix dimension is not a power of d")
    try:
        u_list, v_list, V = factorizer.densify(U, args.d, n, seed=args.seed)
    except factorizer.DensificationError as exc:
        return {
            "command": "densify",
            "seed": args.seed,
            "threads": _threads(),
            "passed": False,
            "error": str(exc),
        }, False
    report = {
        "command": "densify",
        "seed": args.seed,
        "threads": _threads(),
        "d": args.d,
        "n": n,
        "min_abs_entry": float(np.min(np.abs(V))),
        "left_factors": [linalg.matrix_to_json(u) for u in u_list],
        "right_factors": [linalg.matrix_to_json(v) for v in v_list],
        "passed": True,
    }
    return report, True


def _cmd_xs_verify(args) -> tuple[dict, bool]:
    tol = args.tol if args.tol is not None else 1e-10
    report = xstab.verify_xs(tol)
    report["command"] = "xs-verify"
    report["seed"] = args.seed
    report["threads"] = _threads()
    return report, report["passed"]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stabkit")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--tol", type=float, default=None, help="tolerance override")
    # accept the global flags after the subcommand too; SUPPRESS keeps the
    # subparser from clobbering values parsed at the top level
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument(
        "--format", choices=("json", "text"), default=argparse.SUPPRESS
    )
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=lambda **kw: argparse.ArgumentParser(parents=[common], **kw))

    p = sub.add_parser("verify-spectrum")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(func=_cmd_verify_spectrum)

    p = sub.add_parser("search")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--ops", type=int, required=True)
    p.set_defaults(func=_cmd_search)

    p = sub.add_parser("table")
    p.add_argument("table_id", choices=("I", "II", "III"))
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("conjecture-scan")
    p.add_argument("--qubits", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=_cmd_conjecture_scan)

    p = sub.add_parser("gk-sim")
    p.add_argument("--circuit", required=True)
    p.add_argument("--shots", type=int, default=1000)
    p.set_defaults(func=_cmd_gk_sim)

    p = sub.add_parser("gk-compare")
    p.add_argument("--circuit", required=True)
    p.add_argument("--shots", type=int, default=10_000)
    p.set_defaults(func=_cmd_gk_compare)

    p = sub.add_parser("factorize")
    p.add_argument("--matrix", required=True)
    p.add_argument("--d", type=int, default=2)
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=_cmd_factorize)

    p = sub.add_parser("densify")
    p.add_argument("--matrix", required=True)
    p.add_argument("--d", type=int, default=2)
    p.set_defaults(func=_cmd_densify)

    p = sub.add_parser("xs-verify")
    p.set_defaults(func=_cmd_xs_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report, passed = args.func(args)
    except SystemExit as exc:
        if isinstance(exc.code, str):
            print(exc.code, file=sys.stderr)
            return 2
        raise
    _emit(report, args.format)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
