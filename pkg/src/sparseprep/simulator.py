"""Map-based sparse statevector simulator.

States are dictionaries from basis-state index to complex amplitude
(bit 0 of the corresponding bitstring in the most significant position).
Permutation gates (X/CX/CCX/MCX) move keys; SPL/CSPL mix each affected
key with its partner under the 2x2 split matrix and prune residue below
1e-14, five orders of magnitude under the verification tolerance so that
exact-zero leftovers of the amplitude schedule disappear without hiding
real errors.

This simulator is the correctness oracle for every synthesized circuit:
outputs are compared componentwise against the target (the constructions
are phase-exact, so no global-phase slack is granted) and all ancilla
qubits must return to |0>.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .bits import index_to_string, qubit_mask, string_to_index
from .circuit import CCX, CSPL, CX, MCX, SPL, Circuit, Gate, X, spl_matrix
from .state import SparseState

PRUNE_THRESHOLD = 1e-14
VERIFY_TOL = 1e-9


@dataclass
class SimState:
    """Sparse register state; treated as an immutable value."""

    width: int
    amplitudes: dict[int, complex]

    @property
    def support_size(self) -> int:
        return len(self.amplitudes)

    def norm_sq(self) -> float:
        return sum(abs(a) ** 2 for a in self.amplitudes.values())

    def amplitude(self, bitstring: str) -> complex:
        return self.amplitudes.get(string_to_index(bitstring), 0j)


def basis_state(width: int, ones: tuple[int, ...] = ()) -> SimState:
    key = 0
    for q in ones:
        key |= qubit_mask(q, width)
    return SimState(width, {key: 1.0 + 0j})


def initial_state(circ: Circuit) -> SimState:
    return basis_state(circ.width, circ.initial_ones)


def apply(state: SimState, gate: Gate) -> SimState:
    w = state.width
    amps = state.amplitudes
    if isinstance(gate, X):
        m = qubit_mask(gate.target, w)
        return SimState(w, {k ^ m: a for k, a in amps.items()})
    if isinstance(gate, (CX, CCX, MCX)):
        if isinstance(gate, CX):
            cmask = qubit_mask(gate.control, w)
        elif isinstance(gate, CCX):
            cmask = qubit_mask(gate.control1, w) | qubit_mask(gate.control2, w)
        else:
            cmask = 0
            for c in gate.controls:
                cmask |= qubit_mask(c, w)
        tmask = qubit_mask(gate.target, w)
        return SimState(w, {(k ^ tmask if k & cmask == cmask else k): a
                            for k, a in amps.items()})
    if isinstance(gate, (SPL, CSPL)):
        cmask = 0
        if isinstance(gate, CSPL):
            for c in gate.controls:
                cmask |= qubit_mask(c, w)
        tmask = qubit_mask(gate.target, w)
        mat = spl_matrix(gate.alpha, gate.beta)
        out: dict[int, complex] = {}
        done: set[int] = set()
        for k, a in amps.items():
            if k & cmask != cmask:
                out[k] = out.get(k, 0j) + a
                continue
            base = k & ~tmask
            if base in done:
                continue
            done.add(base)
            a0 = amps.get(base, 0j)
            a1 = amps.get(base | tmask, 0j)
            b0 = mat[0, 0] * a0 + mat[0, 1] * a1
            b1 = mat[1, 0] * a0 + mat[1, 1] * a1
            if abs(b0) > PRUNE_THRESHOLD:
                out[base] = out.get(base, 0j) + b0
            if abs(b1) > PRUNE_THRESHOLD:
                out[base | tmask] = out.get(base | tmask, 0j) + b1
        return SimState(w, out)
    raise TypeError(f"unknown gate {gate!r}")


def run(circ: Circuit, initial: SimState | None = None) -> SimState:
    state = initial if initial is not None else initial_state(circ)
    if state.width != circ.width:
        raise ValueError(f"state width {state.width} != circuit width {circ.width}")
    for g in circ.gates:
        state = apply(state, g)
    return state


class PreparationError(AssertionError):
    def __init__(self, report: "VerificationReport"):
        super().__init__(report.describe())
        self.report = report


@dataclass
class VerificationReport:
    fidelity: float
    max_deviation: float
    ancillas_clean: bool
    dirty_states: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.ancillas_clean and self.max_deviation <= VERIFY_TOL

    def describe(self) -> str:
        lines = [f"fidelity          {self.fidelity:.12f}",
                 f"max deviation     {self.max_deviation:.3e}",
                 f"ancillas restored {'yes' if self.ancillas_clean else 'no'}"]
        if self.dirty_states:
            lines.append("offending basis states:")
            lines.extend(f"  {s}" for s in self.dirty_states[:20])
            if len(self.dirty_states) > 20:
                lines.append(f"  ... and {len(self.dirty_states) - 20} more")
        return "\n".join(lines)


def verify_preparation(circ: Circuit, target: SparseState,
                       memory_register: str = "M") -> VerificationReport:
    """Run the circuit and compare against ``target`` on the memory register.

    Every qubit outside the memory register must end in |0>; the memory
    amplitudes must match the target componentwise within 1e-9.
    """
    mem = list(circ.register(memory_register))
    if len(mem) != target.n:
        raise ValueError(f"memory register holds {len(mem)} qubits, target has {target.n}")
    out = run(circ)

    anc_mask = 0
    for q in range(circ.width):
        if q not in set(mem):
            anc_mask |= qubit_mask(q, circ.width)

    # target extended by |0...0> on every non-memory qubit
    expected: dict[int, complex] = {}
    for s, c in target.terms:
        key = 0
        for bit, q in zip(s, mem):
            if bit == "1":
                key |= qubit_mask(q, circ.width)
        expected[key] = c

    dirty: list[str] = []
    max_dev = 0.0
    overlap = 0j
    for k, a in out.amplitudes.items():
        if k & anc_mask:
            dirty.append(index_to_string(k, circ.width))
            max_dev = max(max_dev, abs(a))
            continue
        c = expected.get(k, 0j)
        overlap += c.conjugate() * a
        max_dev = max(max_dev, abs(a - c))
    for k, c in expected.items():
        if k not in out.amplitudes:
            max_dev = max(max_dev, abs(c))
    return VerificationReport(fidelity=abs(overlap), max_deviation=max_dev,
                              ancillas_clean=not dirty, dirty_states=sorted(dirty))


def assert_prepares(circ: Circuit, target: SparseState) -> float:
    """Verify exact preparation; raises :class:`PreparationError` on failure."""
    report = verify_preparation(circ, target)
    if not report.ok:
        raise PreparationError(report)
    return report.fidelity
