"""Lazy-tree loader (the ``lt`` algorithm).

Terms are loaded along a caller-supplied ordering of the support (a
Hamiltonian path); consecutive strings should differ in few positions.
Instead of multi-controlling each split gate on the whole string, the
circuit maintains an equality tree T over the memory register: each leaf
records whether the corresponding memory bit agrees with the current
path head, interior nodes AND their children, and the root is 1 exactly
on the reservoir branch. Each path step touches only the tree paths
above the flipped bits — a helper chain H of log-depth Toffolis updates
them — so a step of Hamming distance d costs O(d log n) gates and every
split gate has a single control (the root).

Registers: M (n) + T (equality tree, 2n'-1 qubits for n' = n rounded up
to a power of two) + H (helper chain, log2(n') + 1) + F (flag, starts
|1>). Padding leaves for n < n' hold the constant 1 until the final
sweep clears them.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .bits import diff_positions, one_positions
from .circuit import CCX, CSPL, CX, Circuit, Gate, SPL, X
from .cvo import gamma_schedule
from .state import SparseState


@dataclass(frozen=True)
class TreeLayout:
    """Heap-indexed perfect binary tree over the padded leaf count.

    Node 1 is the root; node v has children 2v and 2v+1; leaf for memory
    position i (0-based) is node ``n_padded + i``. ``chain(i)`` walks leaf
    to root (length ``n_helper``); ``siblings(i)`` are the sibling nodes
    along that walk (length ``n_helper - 1``).
    """

    n: int
    n_padded: int
    n_tree: int
    n_helper: int

    def leaf(self, i: int) -> int:
        if not 0 <= i < self.n_padded:
            raise IndexError(f"leaf {i} outside padded width {self.n_padded}")
        return self.n_padded + i

    def chain(self, i: int) -> list[int]:
        node = self.leaf(i)
        out = [node]
        while node > 1:
            node //= 2
            out.append(node)
        return out

    def siblings(self, i: int) -> list[int]:
        return [node ^ 1 for node in self.chain(i)[:-1]]

    def depth(self, node: int) -> int:
        # root has depth 1, leaves have depth n_helper
        return node.bit_length()

    @property
    def root(self) -> int:
        return 1

    def interior_by_depth(self) -> Iterator[int]:
        """Interior nodes from the root down, the uncompute order."""
        for node in range(1, self.n_padded):
            yield node


def build_layout(n: int) -> TreeLayout:
    if n < 1:
        raise ValueError("need at least 1 qubit")
    n_padded = 1 << max(0, math.ceil(math.log2(n)))
    return TreeLayout(n=n, n_padded=n_padded, n_tree=2 * n_padded - 1,
                      n_helper=int(math.log2(n_padded)) + 1)


def lt_registers(n: int) -> tuple[TreeLayout, dict[str, tuple[int, int]]]:
    layout = build_layout(n)
    t_lo = n
    h_lo = t_lo + layout.n_tree
    f = h_lo + layout.n_helper
    regs = {"M": (0, n - 1), "T": (t_lo, t_lo + layout.n_tree - 1),
            "H": (h_lo, h_lo + layout.n_helper - 1), "F": (f, f)}
    return layout, regs


def lt_gates(n: int, terms: Iterable[tuple[str, complex]],
             gammas: Iterable[float] | None = None) -> Iterator[Gate]:
    """Stream the gate sequence loading ``terms`` in the given order.

    ``gammas`` defaults to the running reservoir schedule of the term
    amplitudes; both iterables are consumed lazily so callers may stream
    arbitrarily long supports when only counting.
    """
    layout, regs = lt_registers(n)
    t_lo = regs["T"][0]
    h_lo = regs["H"][0]
    flag = regs["F"][0]

    def tq(node: int) -> int:
        return t_lo + node - 1

    def hq(j: int) -> int:  # helper j, 1-based as in chain order
        return h_lo + j - 1

    terms = iter(terms)
    first = next(terms, None)
    if first is None:
        raise ValueError("state has no terms")
    x_first, c_first = first

    if gammas is not None:
        gammas = iter(gammas)
        next(gammas)  # first reservoir weight is always 1

    # write the head string and fill the whole tree with 1s
    for q in one_positions(x_first):
        yield X(q)
    for node in range(1, layout.n_tree + 1):
        yield X(tq(node))
    yield SPL(c_first, 1.0, flag)

    acc = abs(c_first) ** 2
    comp = 0.0
    prev = x_first
    for x, c in terms:
        if gammas is None:
            gamma = math.sqrt(max(1.0 - acc, 0.0))
            y = abs(c) ** 2 - comp
            t = acc + y
            comp = (t - acc) - y
            acc = t
        else:
            gamma = next(gammas)
        diffs = diff_positions(prev, x)
        for j in diffs:
            yield CX(flag, j)
        for j in diffs:
            chain = layout.chain(j)
            sibs = layout.siblings(j)
            n_h = layout.n_helper
            yield X(flag)
            yield CX(flag, hq(1))
            yield X(flag)
            for kk in range(2, n_h + 1):
                yield CCX(hq(kk - 1), tq(sibs[kk - 2]), hq(kk))
            for kk in range(1, n_h + 1):
                yield CX(hq(kk), tq(chain[kk - 1]))
            for kk in range(n_h, 1, -1):
                yield CCX(hq(kk - 1), tq(sibs[kk - 2]), hq(kk))
            yield X(flag)
            yield CX(flag, hq(1))
            yield X(flag)
        yield CSPL((tq(layout.root),), c, gamma, flag)
        prev = x

    # uncompute: interior nodes from the root down, then clear the leaves
    # against memory (padding leaves are constant 1)
    for node in layout.interior_by_depth():
        yield CCX(tq(2 * node), tq(2 * node + 1), tq(node))
    for j in range(n):
        if prev[j] == "0":
            yield X(j)
            yield CX(j, tq(layout.leaf(j)))
            yield X(j)
        else:
            yield CX(j, tq(layout.leaf(j)))
    for j in range(n, layout.n_padded):
        yield X(tq(layout.leaf(j)))


def synth_lt(state: SparseState, path: Sequence[str]) -> Circuit:
    """Compile ``state`` loading terms in ``path`` order.

    ``path`` must be a permutation of the support strings.
    """
    if sorted(path) != sorted(state.strings()):
        raise ValueError("path is not a permutation of the support")
    amp = dict(state.terms)
    terms = [(s, amp[s]) for s in path]
    gammas = gamma_schedule([c for _, c in terms])
    layout, regs = lt_registers(state.n)
    width = regs["F"][0] + 1
    return Circuit(
        width=width,
        registers=regs,
        gates=tuple(lt_gates(state.n, terms, gammas)),
        initial_ones=(regs["F"][0],),
    )
