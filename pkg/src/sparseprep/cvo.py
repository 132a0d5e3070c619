"""Hamming-weight-ordered loader (the ``cvo`` algorithm).

Terms are loaded one at a time into the memory register M, with a 1-qubit
flag F distinguishing loaded terms (F=0) from the in-progress reservoir
branch (F=1). The reservoir starts as |0^n>|1>_F; for each term the
string is written into M under flag control, a multi-controlled split
gate moves the term's amplitude onto the F=0 branch, and the write is
undone. Sorting by Hamming weight guarantees that no previously loaded
string can satisfy all the controls of a later split gate.
"""
from __future__ import annotations

import math
from typing import Iterator, Sequence

from .bits import one_positions
from .circuit import CX, Circuit, Gate, controlled_split
from .state import SparseState


def gamma_schedule(amplitudes: Sequence[complex]) -> list[float]:
    """Reservoir weights: gamma_j = sqrt(1 - sum_{i<j} |c_i|^2).

    Kahan-compensated running sum so the radicand stays accurate for
    supports of any size; tiny negative radicands are clamped to zero.
    gamma_1 is exactly 1 and gamma_s approaches |c_s|.
    """
    gammas = []
    acc = comp = 0.0
    for c in amplitudes:
        gammas.append(math.sqrt(max(1.0 - acc, 0.0)))
        y = abs(c) ** 2 - comp
        t = acc + y
        comp = (t - acc) - y
        acc = t
    return gammas


def cvo_gates(state: SparseState) -> Iterator[Gate]:
    n = state.n
    flag = n
    terms = state.sorted_by_weight().terms
    gammas = gamma_schedule([c for _, c in terms])
    for (s, c), gamma in zip(terms, gammas):
        ones = one_positions(s)
        write = [CX(flag, q) for q in ones]
        yield from write
        yield controlled_split(ones, c, gamma, flag)
        yield from reversed(write)


def synth_cvo(state: SparseState) -> Circuit:
    """Compile ``state`` into a circuit over M (n qubits) + F (flag, starts |1>)."""
    n = state.n
    return Circuit(
        width=n + 1,
        registers={"M": (0, n - 1), "F": (n, n)},
        gates=tuple(cvo_gates(state)),
        initial_ones=(n,),
    )
