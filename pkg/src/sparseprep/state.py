"""Sparse quantum states and their on-disk format.

A state is a normalized list of (bitstring, complex amplitude) pairs.
The file format is line-oriented::

    n <qubits> s <terms>
    <bitstring> <re> <im>        (s lines)

Floats are rendered in ``.16e`` notation (17 significant digits), which
round-trips ``float64`` exactly.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import IO, Iterable

from .bits import hamming_weight, validate_bitstring

NORM_TOL = 1e-9


class FormatError(ValueError):
    """Malformed input file; carries a line/column diagnostic."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        loc = ""
        if line is not None:
            loc = f"line {line}"
            if column is not None:
                loc += f", column {column}"
            loc += ": "
        super().__init__(loc + message)
        self.line = line
        self.column = column


def format_float(x: float) -> str:
    return format(x, ".16e")


@dataclass(frozen=True)
class SparseState:
    """Normalized sparse state: distinct bitstrings with nonzero amplitudes."""

    n: int
    terms: tuple[tuple[str, complex], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("qubit count must be >= 1")
        if not self.terms:
            raise ValueError("state has no terms")
        seen = set()
        norm_sq = 0.0
        for s, c in self.terms:
            validate_bitstring(s, self.n)
            if s in seen:
                raise ValueError(f"duplicate basis string {s}")
            seen.add(s)
            if c == 0:
                raise ValueError(f"zero amplitude on {s}")
            norm_sq += abs(c) ** 2
        if abs(norm_sq - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 = {norm_sq!r}, expected 1 within {NORM_TOL}")

    @property
    def s(self) -> int:
        return len(self.terms)

    def strings(self) -> list[str]:
        return [s for s, _ in self.terms]

    def amplitude_of(self, s: str) -> complex:
        for t, c in self.terms:
            if t == s:
                return c
        return 0j

    def sorted_by_weight(self) -> "SparseState":
        """Terms reordered by Hamming weight, ties broken lexicographically."""
        order = sorted(self.terms, key=lambda tc: (hamming_weight(tc[0]), tc[0]))
        return SparseState(self.n, tuple(order))


def sparse_state(n: int, terms: Iterable[tuple[str, complex]]) -> SparseState:
    return SparseState(n, tuple((s, complex(c)) for s, c in terms))


def uniform_state(n: int, strings: Iterable[str]) -> SparseState:
    strings = list(strings)
    amp = 1.0 / math.sqrt(len(strings))
    return sparse_state(n, [(s, amp) for s in strings])


def dump_state(state: SparseState, fh: IO[str]) -> None:
    fh.write(f"n {state.n} s {state.s}\n")
    for s, c in state.terms:
        fh.write(f"{s} {format_float(c.real)} {format_float(c.imag)}\n")


def save_state(state: SparseState, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        dump_state(state, fh)


def parse_state(fh: IO[str]) -> SparseState:
    lines = fh.read().splitlines()
    if not lines:
        raise FormatError("empty state file", line=1)
    head = lines[0].split()
    if len(head) != 4 or head[0] != "n" or head[2] != "s":
        raise FormatError(f"expected 'n <qubits> s <terms>', got {lines[0]!r}", line=1)
    try:
        n, s = int(head[1]), int(head[3])
    except ValueError:
        raise FormatError(f"bad header numbers in {lines[0]!r}", line=1) from None
    terms = []
    for i, raw in enumerate(lines[1:], start=2):
        if not raw.strip():
            continue
        tok = raw.split()
        if len(tok) != 3:
            raise FormatError(f"expected '<bitstring> <re> <im>', got {raw!r}", line=i)
        try:
            bitstring = validate_bitstring(tok[0], n)
        except ValueError as exc:
            raise FormatError(str(exc), line=i, column=1) from None
        try:
            c = complex(float(tok[1]), float(tok[2]))
        except ValueError:
            raise FormatError(f"bad amplitude in {raw!r}", line=i, column=len(tok[0]) + 2) from None
        terms.append((bitstring, c))
    if len(terms) != s:
        raise FormatError(f"header declares s={s} but file has {len(terms)} terms", line=1)
    try:
        return SparseState(n, tuple(terms))
    except ValueError as exc:
        raise FormatError(str(exc), line=1) from None


def load_state(path: str) -> SparseState:
    with open(path, encoding="utf-8") as fh:
        return parse_state(fh)
