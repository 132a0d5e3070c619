"""Command-line front end.

Subcommands: ``synth``, ``verify``, ``path``, ``bench-sparse``,
``bench-u1``. Exit codes: 0 success, 1 verification failure, 2 input
error, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import sys

from .batch import choose_params, synth_be
from .bench import (DEFAULT_INSTANCES, DEFAULT_U1_BUDGET, BudgetError,
                    bench_sparse, bench_u1, write_csv)
from .circuit import Circuit, load_circuit, save_circuit
from .cvo import synth_cvo
from .decompose import (ELEMENTARY, HIGH_LEVEL, CostModel, WorkQubitError,
                        count_gates)
from .hampath import (OPTIMAL_PATH_BUDGET, PathBudgetError,
                      constant_weight_path, constant_weight_strings,
                      greedy_path, optimal_path)
from .lazytree import synth_lt
from .simulator import VERIFY_TOL, verify_preparation
from .state import FormatError, SparseState, load_state

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_INPUT_ERROR = 2
EXIT_BUDGET = 3

DEFAULT_MAX_SIM_QUBITS = 256

_COST_MODES = {"high": HIGH_LEVEL, "elementary": ELEMENTARY}


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT_ERROR):
        super().__init__(message)
        self.code = code


def _load_state(path: str) -> SparseState:
    try:
        return load_state(path)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}") from None
    except FormatError as exc:
        raise CliError(f"{path}: {exc}") from None


def _load_circuit(path: str) -> Circuit:
    try:
        return load_circuit(path)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}") from None
    except FormatError as exc:
        raise CliError(f"{path}: {exc}") from None


def _resolve_path_order(state: SparseState, args) -> tuple[str, ...]:
    strategy = args.path_strategy
    if strategy == "greedy":
        return greedy_path(state.strings()).order
    if strategy == "optimal":
        try:
            return optimal_path(state.strings()).order
        except PathBudgetError as exc:
            raise CliError(str(exc), code=EXIT_BUDGET) from None
    if strategy == "given-file":
        if not args.path_file:
            raise CliError("--path-file is required with --path-strategy given-file")
        try:
            with open(args.path_file, encoding="utf-8") as fh:
                order = tuple(line.strip() for line in fh if line.strip())
        except OSError as exc:
            raise CliError(f"{args.path_file}: {exc.strerror or exc}") from None
        return order
    if strategy == "constant-weight":
        weights = {s.count("1") for s in state.strings()}
        if len(weights) != 1:
            raise CliError("constant-weight path needs a support of uniform Hamming weight")
        k = weights.pop()
        full = constant_weight_path(state.n, k)
        if set(full.order) != set(state.strings()):
            raise CliError(
                f"support is not all C({state.n},{k}) weight-{k} strings; "
                "constant-weight path does not apply")
        return full.order
    raise CliError(f"unknown path strategy {strategy!r}")


def cmd_synth(args) -> int:
    state = _load_state(args.state_file)
    if args.k is not None and args.algorithm != "be":
        raise CliError("--k applies only to the be algorithm")
    if args.path_file and args.algorithm != "lt":
        raise CliError("--path-file applies only to the lt algorithm")
    try:
        if args.algorithm == "cvo":
            circ = synth_cvo(state)
        elif args.algorithm == "be":
            params = choose_params(state.n, state.s, override_k=args.k)
            circ = synth_be(state, params)
        else:
            circ = synth_lt(state, _resolve_path_order(state, args))
    except ValueError as exc:
        raise CliError(str(exc)) from None

    save_circuit(circ, args.output)
    regs = " ".join(f"{name}={hi - lo + 1}" for name, (lo, hi) in circ.registers.items())
    print(f"algorithm    {args.algorithm}")
    print(f"qubits       {circ.width} ({regs})")
    high = count_gates(circ, CostModel(HIGH_LEVEL))
    kinds = " ".join(f"{k}={v}" for k, v in sorted(high.by_kind.items()))
    print(f"high-level   {high.total} gates ({kinds})")
    if _COST_MODES[args.cost_model] == ELEMENTARY:
        try:
            elem = count_gates(circ, CostModel(ELEMENTARY))
            print(f"elementary   {elem.total} = {elem.cnot} cnot + {elem.single_qubit} single-qubit")
        except WorkQubitError as exc:
            print(f"elementary   unavailable: {exc}", file=sys.stderr)
    print(f"circuit      {args.output}")
    return EXIT_OK


def cmd_verify(args) -> int:
    circ = _load_circuit(args.circuit_file)
    state = _load_state(args.state_file)
    if circ.width > args.max_sim_qubits:
        raise CliError(f"circuit width {circ.width} exceeds --max-sim-qubits "
                       f"{args.max_sim_qubits}", code=EXIT_BUDGET)
    if "M" not in circ.registers:
        raise CliError("circuit file declares no M register")
    try:
        report = verify_preparation(circ, state)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    print(report.describe())
    if report.ok:
        print(f"PASS (componentwise within {VERIFY_TOL:g})")
        return EXIT_OK
    print("FAIL")
    return EXIT_VERIFY_FAIL


def cmd_path(args) -> int:
    if args.constant_weight:
        n, k = args.constant_weight
        if not 0 <= k <= n:
            raise CliError(f"need 0 <= k <= n, got n={n} k={k}")
        count = 0
        for s in constant_weight_strings(n, k):
            print(s)
            count += 1
        print(f"length {2 * (count - 1)}")
        return EXIT_OK
    if not args.state_file:
        raise CliError("state file required unless --constant-weight is given")
    state = _load_state(args.state_file)
    if args.strategy == "greedy":
        result = greedy_path(state.strings())
    else:
        try:
            result = optimal_path(state.strings())
        except PathBudgetError as exc:
            raise CliError(str(exc), code=EXIT_BUDGET) from None
    for s in result.order:
        print(s)
    print(f"length {result.length}")
    return EXIT_OK


def _parse_n_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.split(",") if tok]
    except ValueError:
        raise CliError(f"bad n list {text!r}") from None


def _emit_rows(rows, csv_path: str | None) -> None:
    if csv_path:
        with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
            write_csv(rows, fh)
        print(f"wrote {len(rows)} rows to {csv_path}")
    else:
        write_csv(rows, sys.stdout)


def cmd_bench_sparse(args) -> int:
    rows = bench_sparse(_parse_n_list(args.n), s_rule=args.s_rule,
                        algorithms=args.algorithms.split(","),
                        cost_model=CostModel(_COST_MODES[args.cost_model]),
                        seed=args.seed, instances=args.instances,
                        verify=not args.no_verify)
    _emit_rows(rows, args.csv)
    return EXIT_OK


def cmd_bench_u1(args) -> int:
    try:
        rows = bench_u1(_parse_n_list(args.n),
                        cost_model=CostModel(_COST_MODES[args.cost_model]),
                        budget=args.budget)
    except BudgetError as exc:
        raise CliError(str(exc), code=EXIT_BUDGET) from None
    _emit_rows(rows, args.csv)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sparseprep",
        description="Compile sparse quantum states into circuits, verify them, "
                    "and reproduce gate-count scaling sweeps.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", help="compile a state file into a circuit file")
    p.add_argument("state_file")
    p.add_argument("--algorithm", "-a", choices=("cvo", "be", "lt"), required=True)
    p.add_argument("--output", "-o", required=True, help="circuit file to write")
    p.add_argument("--k", type=int, default=None, help="batch size override (be)")
    p.add_argument("--path-strategy", choices=("greedy", "optimal", "given-file",
                                               "constant-weight"), default="greedy",
                   help="term ordering for lt (default greedy)")
    p.add_argument("--path-file", default=None, help="bitstring-per-line order for given-file")
    p.add_argument("--cost-model", choices=("high", "elementary"), default="elementary")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("verify", help="check that a circuit prepares a state exactly")
    p.add_argument("circuit_file")
    p.add_argument("state_file")
    p.add_argument("--max-sim-qubits", type=int, default=DEFAULT_MAX_SIM_QUBITS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("path", help="print a Hamiltonian path over a support")
    p.add_argument("state_file", nargs="?")
    p.add_argument("--strategy", choices=("greedy", "optimal"), default="greedy")
    p.add_argument("--constant-weight", nargs=2, type=int, metavar=("N", "K"),
                   help="stream all weight-K strings of length N instead")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("bench-sparse", help="gate-count sweep on random sparse states")
    p.add_argument("--n", required=True, help="comma-separated qubit counts")
    p.add_argument("--s-rule", default="s=n")
    p.add_argument("--algorithms", default="cvo,be")
    p.add_argument("--instances", type=int, default=DEFAULT_INSTANCES)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cost-model", choices=("high", "elementary"), default="elementary")
    p.add_argument("--csv", default=None, help="write rows to this file instead of stdout")
    p.add_argument("--no-verify", action="store_true",
                   help="skip the simulation pass on small instances")
    p.set_defaults(func=cmd_bench_sparse)

    p = sub.add_parser("bench-u1", help="gate-count sweep on weight-n/2 superpositions")
    p.add_argument("--n", required=True, help="comma-separated qubit counts")
    p.add_argument("--budget", type=int, default=DEFAULT_U1_BUDGET,
                   help="largest C(n,k) accepted")
    p.add_argument("--cost-model", choices=("high", "elementary"), default="elementary")
    p.add_argument("--csv", default=None)
    p.set_defaults(func=cmd_bench_u1)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except PathBudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
