"""Circuit intermediate representation.

Gates form a small tagged union over global qubit indices: ``X``, ``CX``,
``CCX``, ``MCX``, and the amplitude-splitting gates ``SPL``/``CSPL``. All
controls are positive; synthesizers express zero-valued conditions by
conjugating with explicit ``X`` pairs. A :class:`Circuit` bundles a qubit
width, named register ranges, an ordered gate list, and the set of qubits
that start in |1> ("initial ones" — everything else starts in |0>).

The text format (one gate per line, ``#`` starts a comment)::

    qubits <width>
    # initial_ones: <q1> <q2> ...          (omitted when empty)
    reg <NAME> <lo> <hi>                   (inclusive, 0-based)
    X <t>
    CX <c> <t>
    CCX <c1> <c2> <t>
    MCX <k> <c1> ... <ck> <t>
    SPL <re> <im> <beta> <t>
    CSPL <k> <c1> ... <ck> <re> <im> <beta> <t>
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import IO, Iterable, Union

import numpy as np

from .state import FormatError, format_float

ALPHA_SLACK = 1e-12


def spl_matrix(alpha: complex, beta: float) -> np.ndarray:
    """2x2 unitary that moves amplitude ``alpha`` out of a ``beta``-weighted branch.

    Returns (1/beta) * [[-w, alpha], [conj(alpha), w]] with
    w = sqrt(beta^2 - |alpha|^2). The radicand is clamped to zero when it
    is negative within a 1e-12 slack; beyond that the parameters are
    rejected as non-unitary.
    """
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    rad = beta * beta - abs(alpha) ** 2
    if rad < -ALPHA_SLACK:
        raise ValueError(f"|alpha| = {abs(alpha)!r} exceeds beta = {beta!r}")
    w = math.sqrt(max(rad, 0.0))
    a = complex(alpha)
    return np.array([[-w, a], [a.conjugate(), w]], dtype=complex) / beta


def _check_split_params(alpha: complex, beta: float) -> None:
    if beta <= 0:
        raise ValueError(f"beta must be positive, got {beta}")
    if abs(alpha) ** 2 > beta * beta + ALPHA_SLACK:
        raise ValueError(f"|alpha| = {abs(alpha)!r} exceeds beta = {beta!r}")


def _check_controls(controls: tuple[int, ...], target: int) -> None:
    if len(set(controls)) != len(controls):
        raise ValueError(f"duplicate controls {controls}")
    if target in controls:
        raise ValueError(f"target {target} collides with controls")


@dataclass(frozen=True, slots=True)
class X:
    target: int


@dataclass(frozen=True, slots=True)
class CX:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError("control equals target")


@dataclass(frozen=True, slots=True)
class CCX:
    control1: int
    control2: int
    target: int

    def __post_init__(self):
        _check_controls((self.control1, self.control2), self.target)


@dataclass(frozen=True, slots=True)
class MCX:
    controls: tuple[int, ...]
    target: int

    def __post_init__(self):
        if not self.controls:
            raise ValueError("MCX needs at least one control")
        _check_controls(self.controls, self.target)


@dataclass(frozen=True, slots=True)
class SPL:
    alpha: complex
    beta: float
    target: int

    def __post_init__(self):
        _check_split_params(self.alpha, self.beta)


@dataclass(frozen=True, slots=True)
class CSPL:
    controls: tuple[int, ...]
    alpha: complex
    beta: float
    target: int

    def __post_init__(self):
        if not self.controls:
            raise ValueError("CSPL needs at least one control; use SPL")
        _check_controls(self.controls, self.target)
        _check_split_params(self.alpha, self.beta)


Gate = Union[X, CX, CCX, MCX, SPL, CSPL]


def controls_of(gate: Gate) -> tuple[int, ...]:
    if isinstance(gate, CX):
        return (gate.control,)
    if isinstance(gate, CCX):
        return (gate.control1, gate.control2)
    if isinstance(gate, (MCX, CSPL)):
        return gate.controls
    return ()


def qubits_of(gate: Gate) -> tuple[int, ...]:
    return controls_of(gate) + (gate.target,)


def controlled_x(controls: Iterable[int], target: int) -> Gate:
    """X on ``target`` conditioned on every control being |1>."""
    controls = tuple(controls)
    if not controls:
        return X(target)
    if len(controls) == 1:
        return CX(controls[0], target)
    if len(controls) == 2:
        return CCX(controls[0], controls[1], target)
    return MCX(controls, target)


def controlled_split(controls: Iterable[int], alpha: complex, beta: float, target: int) -> Gate:
    controls = tuple(controls)
    if not controls:
        return SPL(alpha, beta, target)
    return CSPL(controls, alpha, beta, target)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over ``width`` qubits with named register ranges."""

    width: int
    registers: dict[str, tuple[int, int]]
    gates: tuple[Gate, ...]
    initial_ones: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if self.width < 1:
            raise ValueError("width must be >= 1")
        used: set[int] = set()
        for name, (lo, hi) in self.registers.items():
            if not (0 <= lo <= hi < self.width):
                raise ValueError(f"register {name} range ({lo},{hi}) outside width {self.width}")
            span = set(range(lo, hi + 1))
            if used & span:
                raise ValueError(f"register {name} overlaps another register")
            used |= span
        for q in self.initial_ones:
            if not 0 <= q < self.width:
                raise ValueError(f"initial-one qubit {q} outside width {self.width}")
        for i, g in enumerate(self.gates):
            for q in qubits_of(g):
                if not 0 <= q < self.width:
                    raise ValueError(f"gate {i} ({g}) touches qubit {q} outside width {self.width}")

    def register(self, name: str) -> range:
        lo, hi = self.registers[name]
        return range(lo, hi + 1)

    @property
    def n_gates(self) -> int:
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if (self.width, self.registers) != (other.width, other.registers):
            raise ValueError("cannot concatenate circuits with different layouts")
        if self.initial_ones != other.initial_ones:
            raise ValueError("cannot concatenate circuits with different initial states")
        return Circuit(self.width, self.registers, self.gates + other.gates, self.initial_ones)


def circuit(width: int, registers: dict[str, tuple[int, int]] | None = None,
            gates: Iterable[Gate] = (), initial_ones: Iterable[int] = ()) -> Circuit:
    return Circuit(width, dict(registers or {}), tuple(gates), tuple(initial_ones))


# --- text format ---

def _gate_line(g: Gate) -> str:
    if isinstance(g, X):
        return f"X {g.target}"
    if isinstance(g, CX):
        return f"CX {g.control} {g.target}"
    if isinstance(g, CCX):
        return f"CCX {g.control1} {g.control2} {g.target}"
    if isinstance(g, MCX):
        ctl = " ".join(map(str, g.controls))
        return f"MCX {len(g.controls)} {ctl} {g.target}"
    if isinstance(g, SPL):
        return (f"SPL {format_float(g.alpha.real)} {format_float(g.alpha.imag)} "
                f"{format_float(g.beta)} {g.target}")
    if isinstance(g, CSPL):
        ctl = " ".join(map(str, g.controls))
        return (f"CSPL {len(g.controls)} {ctl} {format_float(g.alpha.real)} "
                f"{format_float(g.alpha.imag)} {format_float(g.beta)} {g.target}")
    raise TypeError(f"unknown gate {g!r}")


def dump_circuit(circ: Circuit, fh: IO[str]) -> None:
    fh.write(f"qubits {circ.width}\n")
    if circ.initial_ones:
        fh.write("# initial_ones: " + " ".join(map(str, circ.initial_ones)) + "\n")
    for name, (lo, hi) in circ.registers.items():
        fh.write(f"reg {name} {lo} {hi}\n")
    for g in circ.gates:
        fh.write(_gate_line(g) + "\n")


def save_circuit(circ: Circuit, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        dump_circuit(circ, fh)


def _parse_ints(tokens: list[str], line: int) -> list[int]:
    out = []
    for i, tok in enumerate(tokens):
        try:
            out.append(int(tok))
        except ValueError:
            raise FormatError(f"expected integer, got {tok!r}", line=line, column=i + 1) from None
    return out


def _parse_gate(tokens: list[str], line: int) -> Gate:
    kind = tokens[0]
    args = tokens[1:]
    try:
        if kind == "X" and len(args) == 1:
            return X(*_parse_ints(args, line))
        if kind == "CX" and len(args) == 2:
            return CX(*_parse_ints(args, line))
        if kind == "CCX" and len(args) == 3:
            return CCX(*_parse_ints(args, line))
        if kind == "MCX" and len(args) >= 3:
            k = _parse_ints(args[:1], line)[0]
            if len(args) != k + 2:
                raise FormatError(f"MCX declares {k} controls but has {len(args) - 2}", line=line)
            idx = _parse_ints(args[1:], line)
            return MCX(tuple(idx[:-1]), idx[-1])
        if kind == "SPL" and len(args) == 4:
            re, im, beta = (float(a) for a in args[:3])
            return SPL(complex(re, im), beta, _parse_ints(args[3:], line)[0])
        if kind == "CSPL" and len(args) >= 5:
            k = _parse_ints(args[:1], line)[0]
            if len(args) != k + 5:
                raise FormatError(f"CSPL declares {k} controls but has {len(args) - 5}", line=line)
            ctl = tuple(_parse_ints(args[1:1 + k], line))
            re, im, beta = (float(a) for a in args[1 + k:4 + k])
            return CSPL(ctl, complex(re, im), beta, _parse_ints(args[4 + k:], line)[0])
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc), line=line) from None
    raise FormatError(f"unrecognized gate line {' '.join(tokens)!r}", line=line)


def parse_circuit(fh: IO[str]) -> Circuit:
    width = None
    registers: dict[str, tuple[int, int]] = {}
    gates: list[Gate] = []
    initial_ones: tuple[int, ...] = ()
    for lineno, raw in enumerate(fh, start=1):
        stripped = raw.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            body = stripped[1:].strip()
            if body.startswith("initial_ones:"):
                initial_ones = tuple(_parse_ints(body.split()[1:], lineno))
            continue
        tokens = stripped.split()
        if tokens[0] == "qubits":
            if width is not None:
                raise FormatError("duplicate 'qubits' line", line=lineno)
            if len(tokens) != 2:
                raise FormatError("expected 'qubits <width>'", line=lineno)
            width = _parse_ints(tokens[1:], lineno)[0]
        elif tokens[0] == "reg":
            if len(tokens) != 4:
                raise FormatError("expected 'reg <NAME> <lo> <hi>'", line=lineno)
            lo, hi = _parse_ints(tokens[2:], lineno)
            if tokens[1] in registers:
                raise FormatError(f"duplicate register {tokens[1]}", line=lineno)
            registers[tokens[1]] = (lo, hi)
        else:
            if width is None:
                raise FormatError("gate line before 'qubits' header", line=lineno)
            gates.append(_parse_gate(tokens, lineno))
    if width is None:
        raise FormatError("missing 'qubits' header", line=1)
    try:
        return Circuit(width, registers, tuple(gates), initial_ones)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_circuit(path: str) -> Circuit:
    with open(path, encoding="utf-8") as fh:
        return parse_circuit(fh)
