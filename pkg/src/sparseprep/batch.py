"""Batch-elimination loader (the ``be`` algorithm).

The support is processed in batches of at most k strings. Any k strings
define at most 2^k distinct column patterns across the n positions, so a
set T of t = 2^k representative positions can absorb the remaining
r = n - t positions: one CNOT from the representative l(i) onto each
position i outside T zeroes that position in every batch string. Loading
then runs on the eliminated strings, whose support lives entirely inside
T, and a one-qubit batch ancilla A caches "all positions outside T are
zero" so the per-string split gate needs only t+1 controls instead of n.

Registers: M (n, memory) + A (1, batch ancilla, starts |0>) + F (1, flag,
starts |1>).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .bits import one_positions
from .circuit import CSPL, CX, Circuit, Gate, X, controlled_x
from .cvo import gamma_schedule
from .state import SparseState


@dataclass(frozen=True)
class BatchParams:
    """Strings per batch k, representative-set size t = 2^k, remainder r = n - t."""

    k: int
    t: int
    r: int

    @staticmethod
    def for_width(n: int, k: int) -> "BatchParams":
        t = 2 ** k
        if t > n:
            raise ValueError(f"2^k = {t} exceeds n = {n}")
        return BatchParams(k=k, t=t, r=n - t)


def choose_params(n: int, s: int, override_k: int | None = None) -> BatchParams:
    """Default k = floor(log2 n - log2 log2 n), clamped to 2^k <= n, k >= 1,
    and k <= s. An explicit override must satisfy 1 <= k < log2 n."""
    if n < 2:
        raise ValueError("need at least 2 qubits")
    if override_k is not None:
        if override_k < 1 or 2 ** override_k >= n:
            raise ValueError(f"override k = {override_k} violates 1 <= k < log2({n})")
        return BatchParams.for_width(n, override_k)
    k = max(1, math.floor(math.log2(n) - math.log2(math.log2(n))))
    while 2 ** k > n:
        k -= 1
    k = max(1, min(k, s))
    return BatchParams.for_width(n, k)


@dataclass(frozen=True)
class EliminationPlan:
    """Representative positions T, eliminated positions R, and the map
    l: R -> T sending each position to the representative sharing its
    column pattern. All positions are 0-based."""

    T: tuple[int, ...]
    R: tuple[int, ...]
    l: dict[int, int]


def plan_elimination(batch: Sequence[str], n: int,
                     params: BatchParams) -> tuple[EliminationPlan, tuple[CX, ...], list[str]]:
    """Plan the CNOT elimination for one batch of at most k strings.

    Returns the plan, the r CNOT gates (control l(i), target i, on
    0-based memory positions), and the eliminated strings, which are zero
    at every position in R.
    """
    if not batch:
        raise ValueError("empty batch")
    if len(batch) > params.k:
        raise ValueError(f"batch of {len(batch)} exceeds k = {params.k}")
    for s in batch:
        if len(s) != n:
            raise ValueError(f"string {s!r} is not {n} bits")

    pattern_rep: dict[str, int] = {}
    for i in range(n):
        column = "".join(s[i] for s in batch)
        pattern_rep.setdefault(column, i)
    reps = sorted(pattern_rep.values())
    t_set = set(reps)
    for i in range(n):  # fill T with the smallest unused positions
        if len(t_set) == params.t:
            break
        t_set.add(i)
    T = tuple(sorted(t_set))
    R = tuple(i for i in range(n) if i not in t_set)
    l = {}
    for i in R:
        column = "".join(s[i] for s in batch)
        l[i] = pattern_rep[column]

    cnots = tuple(CX(l[i], i) for i in R)
    eliminated = []
    for s in batch:
        bits = list(s)
        for i in R:
            if s[l[i]] == "1":
                bits[i] = "0" if bits[i] == "1" else "1"
        eliminated.append("".join(bits))
    return EliminationPlan(T, R, l), cnots, eliminated


def be_gates(state: SparseState, params: BatchParams) -> Iterator[Gate]:
    n = state.n
    anc = n
    flag = n + 1
    terms = state.terms
    gammas = gamma_schedule([c for _, c in terms])

    k = params.k
    for start in range(0, len(terms), k):
        chunk = terms[start:start + k]
        plan, cnots, eliminated = plan_elimination([s for s, _ in chunk], n, params)

        yield from cnots
        yield from _flip_ancilla(plan.R, anc)
        for (_, c), elim, gamma in zip(chunk, eliminated, gammas[start:start + k]):
            ones = one_positions(elim)
            write = [CX(flag, q) for q in ones]
            zero_t = [q for q in plan.T if elim[q] == "0"]
            yield from write
            for q in zero_t:
                yield X(q)
            yield CSPL(tuple(plan.T) + (anc,), c, gamma, flag)
            for q in zero_t:
                yield X(q)
            yield from reversed(write)
        yield from _flip_ancilla(plan.R, anc)
        yield from reversed(cnots)


def _flip_ancilla(R: tuple[int, ...], anc: int) -> list[Gate]:
    # A <- A xor [all R positions read 0]; for r = 0 the condition is vacuous
    if not R:
        return [X(anc)]
    conj = [X(q) for q in R]
    return conj + [controlled_x(R, anc)] + conj


def synth_be(state: SparseState, params: BatchParams | None = None) -> Circuit:
    """Compile ``state`` over M (n) + A (batch ancilla) + F (flag, starts |1>)."""
    n = state.n
    if params is None:
        params = choose_params(n, state.s)
    return Circuit(
        width=n + 2,
        registers={"M": (0, n - 1), "A": (n, n), "F": (n + 1, n + 1)},
        gates=tuple(be_gates(state, params)),
        initial_ones=(n + 1,),
    )
