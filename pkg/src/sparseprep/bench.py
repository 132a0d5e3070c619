"""Random instances and gate-count scaling benchmarks.

Two sweeps, both emitting CSV rows with the header::

    n,s,algorithm,mode,gates_total,cnot,single_qubit,normalized,seed,wall_ms

* :func:`bench_sparse` — uniformly random supports with s = n (or a given
  rule); CNOT counts normalized by 1/(n*s). The cvo metric stays flat as
  n grows while be decreases.
* :func:`bench_u1` — all weight-k strings with k = n/2, loaded by the
  lazy-tree synthesizer along the revolving-door order; CNOT counts
  normalized by 1/(C(n,k)*k). A ``baseline-model`` row carrying the
  analytic C(n,k)*k reference scaling is emitted next to each point; it
  is a labeled model, not an implemented algorithm.

Counting streams gate censuses (no circuit materialization, no
simulation). Instances small enough to simulate (n <= 32, s <= 16) are
additionally synthesized for real and verified exactly, so the counted
synthesizers are the verified ones.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import IO, Callable, Iterable, Iterator, Sequence

import numpy as np

from .batch import be_gates, choose_params, synth_be
from .circuit import Gate
from .cvo import cvo_gates, synth_cvo
from .decompose import (ELEMENTARY, HIGH_LEVEL, CostModel, GateCounts,
                        counts_from_census, gate_census)
from .hampath import constant_weight_strings, greedy_path
from .lazytree import lt_gates, lt_registers, synth_lt
from .simulator import assert_prepares
from .state import SparseState

CSV_HEADER = "n,s,algorithm,mode,gates_total,cnot,single_qubit,normalized,seed,wall_ms"

VERIFY_MAX_N = 32
VERIFY_MAX_S = 16
DEFAULT_U1_BUDGET = 10 ** 6
DEFAULT_INSTANCES = 5


class BudgetError(ValueError):
    pass


def random_sparse_state(n: int, s: int, seed: int) -> SparseState:
    """s distinct uniform n-bit strings with normalized complex Gaussian
    amplitudes; deterministic per seed."""
    if s > 2 ** n:
        raise ValueError(f"cannot draw {s} distinct strings on {n} qubits")
    rng = np.random.default_rng(seed)
    strings: list[str] = []
    seen: set[str] = set()
    while len(strings) < s:
        bits = rng.integers(0, 2, size=n, dtype=np.uint8)
        candidate = "".join("1" if b else "0" for b in bits)
        if candidate not in seen:
            seen.add(candidate)
            strings.append(candidate)
    amps = rng.standard_normal(s) + 1j * rng.standard_normal(s)
    amps = amps / np.linalg.norm(amps)
    return SparseState(n, tuple(zip(strings, (complex(a) for a in amps))))


@dataclass(frozen=True)
class BenchRow:
    n: int
    s: int
    algorithm: str
    mode: str
    seed: int
    wall_ms: float
    high_level: GateCounts
    elementary: GateCounts
    norm_denom: float

    def counts(self, mode: str | None = None) -> GateCounts:
        mode = mode or self.mode
        if mode == HIGH_LEVEL:
            return self.high_level
        return self.elementary

    def normalized(self, mode: str | None = None) -> float:
        return self.counts(mode).cnot / self.norm_denom

    def csv_line(self) -> str:
        c = self.counts()
        return (f"{self.n},{self.s},{self.algorithm},{self.mode},{c.total},{c.cnot},"
                f"{c.single_qubit},{self.normalized():.12g},{self.seed},{self.wall_ms:.3f}")


def write_csv(rows: Iterable[BenchRow], fh: IO[str]) -> None:
    fh.write(CSV_HEADER + "\n")
    for row in rows:
        fh.write(row.csv_line() + "\n")


def _resolve_rule(rule: str | int | Callable[[int], int], n: int, name: str) -> int:
    if callable(rule):
        return rule(n)
    if isinstance(rule, int):
        return rule
    if rule == "s=n":
        return n
    if rule == "k=floor(n/2)":
        return n // 2
    if rule.startswith(f"{name}="):
        return int(rule.split("=", 1)[1])
    raise ValueError(f"unrecognized {name} rule {rule!r}")


def _instance_seeds(seed: int, n: int, instances: int) -> list[int]:
    ss = np.random.SeedSequence(entropy=[seed, n])
    return [int(x) for x in ss.generate_state(instances)]


def _gate_stream(algorithm: str, state: SparseState) -> tuple[int, Iterator[Gate]]:
    if algorithm == "cvo":
        return state.n + 1, cvo_gates(state)
    if algorithm == "be":
        params = choose_params(state.n, state.s)
        return state.n + 2, be_gates(state, params)
    if algorithm == "lt":
        path = greedy_path(state.strings())
        amp = dict(state.terms)
        _, regs = lt_registers(state.n)
        return regs["F"][0] + 1, lt_gates(state.n, [(s, amp[s]) for s in path.order])
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _synthesize(algorithm: str, state: SparseState):
    if algorithm == "cvo":
        return synth_cvo(state)
    if algorithm == "be":
        return synth_be(state)
    if algorithm == "lt":
        return synth_lt(state, greedy_path(state.strings()).order)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def bench_sparse(n_values: Sequence[int], s_rule: str | int | Callable[[int], int] = "s=n",
                 algorithms: Sequence[str] = ("cvo", "be"),
                 cost_model: CostModel | None = None, seed: int = 0,
                 instances: int = DEFAULT_INSTANCES, verify: bool = True) -> list[BenchRow]:
    """Count-only sweep over random s-sparse states for each n.

    Small instances (n <= 32, s <= 16) are also synthesized for real and
    checked exactly in the sparse simulator before their counts are
    reported.
    """
    model = cost_model or CostModel()
    rows = []
    for n in n_values:
        s = _resolve_rule(s_rule, n, "s")
        for iseed in _instance_seeds(seed, n, instances):
            state = random_sparse_state(n, s, iseed)
            for algorithm in algorithms:
                if verify and n <= VERIFY_MAX_N and s <= VERIFY_MAX_S:
                    assert_prepares(_synthesize(algorithm, state), state)
                t0 = time.perf_counter()
                width, gates = _gate_stream(algorithm, state)
                census = gate_census(gates)
                high = counts_from_census(census, CostModel(HIGH_LEVEL), width)
                elem = counts_from_census(census, CostModel(ELEMENTARY), width)
                wall_ms = (time.perf_counter() - t0) * 1e3
                rows.append(BenchRow(n=n, s=s, algorithm=algorithm, mode=model.mode,
                                     seed=iseed, wall_ms=wall_ms, high_level=high,
                                     elementary=elem, norm_denom=float(n) * s))
    return rows


def bench_u1(n_values: Sequence[int], k_rule: str | int | Callable[[int], int] = "k=floor(n/2)",
             cost_model: CostModel | None = None, budget: int = DEFAULT_U1_BUDGET,
             include_baseline: bool = True) -> list[BenchRow]:
    """Count-only sweep over weight-k superpositions, k = n/2 by default.

    The lazy-tree synthesizer consumes the revolving-door order as a
    stream, so nothing of size C(n,k) is materialized. Points with
    C(n,k) above ``budget`` raise :class:`BudgetError`.
    """
    model = cost_model or CostModel()
    rows = []
    for n in n_values:
        k = _resolve_rule(k_rule, n, "k")
        count = math.comb(n, k)
        if count > budget:
            raise BudgetError(f"C({n},{k}) = {count} exceeds budget {budget}")
        amp = 1.0 / math.sqrt(count)
        terms = ((s, amp) for s in constant_weight_strings(n, k))
        gammas = (math.sqrt((count - i) / count) for i in range(count))
        _, regs = lt_registers(n)
        width = regs["F"][0] + 1
        t0 = time.perf_counter()
        census = gate_census(lt_gates(n, terms, gammas))
        high = counts_from_census(census, CostModel(HIGH_LEVEL), width)
        elem = counts_from_census(census, CostModel(ELEMENTARY), width)
        wall_ms = (time.perf_counter() - t0) * 1e3
        denom = float(count) * max(k, 1)
        rows.append(BenchRow(n=n, s=count, algorithm="lt", mode=model.mode, seed=0,
                             wall_ms=wall_ms, high_level=high, elementary=elem,
                             norm_denom=denom))
        if include_baseline:
            reference = GateCounts(total=count * k, cnot=count * k, single_qubit=0,
                                   by_kind={"model": count * k})
            rows.append(BenchRow(n=n, s=count, algorithm="baseline-model", mode="model",
                                 seed=0, wall_ms=0.0, high_level=reference,
                                 elementary=reference, norm_denom=denom))
    return rows
