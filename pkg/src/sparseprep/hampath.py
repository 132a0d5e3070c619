"""Hamiltonian paths over sets of bitstrings.

A path is an ordering of the strings; its length is the sum of Hamming
distances between neighbours. Three constructions:

* :func:`greedy_path` — nearest-neighbour heuristic for arbitrary sets.
* :func:`optimal_path` — exact minimum via Held-Karp dynamic programming,
  capped at 15 strings (the state table is 2^s * s).
* :func:`constant_weight_path` — all weight-k strings of length n in
  revolving-door order, successive strings at Hamming distance exactly 2.
  :func:`constant_weight_strings` streams the same order so consumers can
  count without materializing the full set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

from .bits import hamming_distance, hamming_weight, path_length, validate_bitstring

OPTIMAL_PATH_BUDGET = 15


class PathBudgetError(ValueError):
    pass


@dataclass(frozen=True)
class PathResult:
    order: tuple[str, ...]
    length: int

    @staticmethod
    def from_order(order: Sequence[str]) -> "PathResult":
        return PathResult(tuple(order), path_length(order))


def _checked_strings(strings: Iterable[str]) -> list[str]:
    out = list(strings)
    if not out:
        raise ValueError("empty string set")
    n = len(out[0])
    for s in out:
        validate_bitstring(s, n)
    if len(set(out)) != len(out):
        raise ValueError("duplicate strings")
    return out


def greedy_path(strings: Iterable[str]) -> PathResult:
    """Nearest-neighbour order: start at the minimum-weight string (ties
    lexicographic), repeatedly append the closest unvisited string."""
    pool = _checked_strings(strings)
    current = min(pool, key=lambda s: (hamming_weight(s), s))
    pool.remove(current)
    order = [current]
    while pool:
        current = min(pool, key=lambda s: (hamming_distance(order[-1], s), s))
        pool.remove(current)
        order.append(current)
    return PathResult.from_order(order)


def optimal_path(strings: Iterable[str]) -> PathResult:
    """Minimum-length Hamiltonian path by Held-Karp over all start points.

    Among minimum-length paths, returns the lexicographically smallest
    order. Limited to 15 strings.
    """
    pool = _checked_strings(strings)
    s = len(pool)
    if s > OPTIMAL_PATH_BUDGET:
        raise PathBudgetError(f"{s} strings exceed the exact-path budget of {OPTIMAL_PATH_BUDGET}")
    if s == 1:
        return PathResult.from_order(pool)
    idx = sorted(range(s), key=lambda i: pool[i])  # lexicographic tie-breaking
    ordered = [pool[i] for i in idx]
    dist = np.array([[hamming_distance(a, b) for b in ordered] for a in ordered], dtype=np.int64)

    # best[mask, v] = min length of a path visiting exactly `mask`, starting at v
    full = (1 << s) - 1
    inf = np.iinfo(np.int64).max // 2
    best = np.full((full + 1, s), inf, dtype=np.int64)
    for v in range(s):
        best[1 << v, v] = 0
    for mask in range(1, full + 1):
        if mask & (mask - 1) == 0:
            continue
        for v in range(s):
            if not mask & (1 << v):
                continue
            rest = mask ^ (1 << v)
            cand = best[rest] + dist[v]
            cand[~_members(rest, s)] = inf
            best[mask, v] = cand.min()

    total = int(best[full].min())
    order: list[int] = []
    mask = full
    # lexicographic reconstruction: vertices were sorted, so smallest index wins
    prev = None
    while mask:
        for v in range(s):
            if not mask & (1 << v):
                continue
            cost = int(best[mask, v])
            need = total if prev is None else int(best[mask | (1 << prev), prev]) - int(dist[prev, v])
            if cost == need:
                order.append(v)
                mask ^= 1 << v
                prev = v
                break
    return PathResult(tuple(ordered[v] for v in order), total)


def _members(mask: int, s: int) -> np.ndarray:
    return np.array([(mask >> v) & 1 for v in range(s)], dtype=bool)


def _transitions(n: int, k: int, rev: bool) -> Iterator[tuple[int, int]]:
    """(removed, added) position swaps of the revolving-door listing of
    k-subsets of {0..n-1}, or of its reversal."""
    if k == 0 or k == n:
        return
    if not rev:
        yield from _transitions(n - 1, k, False)
        if k >= 2:
            yield (k - 2, n - 1)
        else:  # k == 1: predecessor set is {n-2}
            yield (n - 2, n - 1)
        yield from _transitions(n - 1, k - 1, True)
    else:
        yield from _transitions(n - 1, k - 1, False)
        if k >= 2:
            yield (n - 1, k - 2)
        else:
            yield (n - 1, n - 2)
        yield from _transitions(n - 1, k, True)


def constant_weight_strings(n: int, k: int) -> Iterator[str]:
    """Stream all C(n, k) weight-k strings, neighbours at Hamming distance 2."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    bits = ["1"] * k + ["0"] * (n - k)
    yield "".join(bits)
    for removed, added in _transitions(n, k, False):
        bits[removed] = "0"
        bits[added] = "1"
        yield "".join(bits)


def constant_weight_path(n: int, k: int) -> PathResult:
    order = tuple(constant_weight_strings(n, k))
    return PathResult(order, 2 * (len(order) - 1))


def constant_weight_count(n: int, k: int) -> int:
    return math.comb(n, k)
