"""Bitstring helpers.

Bitstrings are plain ``str`` objects over ``{'0', '1'}``. The leftmost
character is bit 0 and maps to the lowest qubit index of the register
holding the string; this convention is shared by the state/circuit file
formats and every synthesizer.
"""
from __future__ import annotations

from collections.abc import Iterable


def validate_bitstring(s: str, n: int | None = None) -> str:
    if not s or any(ch not in "01" for ch in s):
        raise ValueError(f"not a bitstring: {s!r}")
    if n is not None and len(s) != n:
        raise ValueError(f"bitstring {s!r} has length {len(s)}, expected {n}")
    return s


def hamming_weight(s: str) -> int:
    return s.count("1")


def hamming_distance(a: str, b: str) -> int:
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return sum(x != y for x, y in zip(a, b))


def flip_all(s: str) -> str:
    return s.translate(_FLIP)


_FLIP = str.maketrans("01", "10")


def diff_positions(a: str, b: str) -> list[int]:
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return [i for i, (x, y) in enumerate(zip(a, b)) if x != y]


def one_positions(s: str) -> list[int]:
    return [i for i, ch in enumerate(s) if ch == "1"]


def path_length(order: Iterable[str]) -> int:
    """Sum of Hamming distances between successive strings."""
    total = 0
    prev = None
    for s in order:
        if prev is not None:
            total += hamming_distance(prev, s)
        prev = s
    return total


# Basis-state indices pack bit 0 of the string into the most significant
# position, so ``index == int(bitstring, 2)``.

def string_to_index(s: str) -> int:
    return int(s, 2)


def index_to_string(index: int, width: int) -> str:
    return format(index, f"0{width}b")


def qubit_mask(qubit: int, width: int) -> int:
    if not 0 <= qubit < width:
        raise IndexError(f"qubit {qubit} outside width {width}")
    return 1 << (width - 1 - qubit)
