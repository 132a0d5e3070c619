"""Elementary-gate decompositions and circuit-size accounting.

"Elementary" means single-qubit gates plus CNOT. The cost model expands
every higher-level gate through the decompositions in this module, so the
counts always reflect what the constructions actually emit:

* ``CCX`` expands to 6 CNOT + 10 single-qubit gates (exact, no phase).
* ``MCX`` with t controls expands through dirty-ancilla ladders: a V-chain
  of 4(t-2) Toffolis when t-2 borrowed qubits are free, otherwise a
  four-fold split that needs only one borrowed qubit (~8t Toffolis).
  Borrowed qubits may hold any state; the ladders restore them.
* ``SPL`` is a single-qubit gate; ``CSPL`` is one MCX-equivalent plus two
  single-qubit gates.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .circuit import CCX, CSPL, CX, MCX, SPL, Circuit, Gate, X

HADAMARD = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
T_GATE = np.diag([1, np.exp(1j * np.pi / 4)]).astype(complex)
T_DAGGER = T_GATE.conj().T
S_GATE = np.diag([1, 1j]).astype(complex)


@dataclass(frozen=True, slots=True)
class OneQubit:
    """Named single-qubit elementary gate; appears only in decompositions."""

    name: str
    target: int

    @property
    def matrix(self) -> np.ndarray:
        return _ONE_QUBIT_MATRICES[self.name]


_ONE_QUBIT_MATRICES = {"H": HADAMARD, "T": T_GATE, "TDG": T_DAGGER, "S": S_GATE}


def decompose_toffoli(gate: CCX) -> list[OneQubit | CX]:
    """Exact 16-gate network: 6 CNOTs and 10 single-qubit gates."""
    a, b, c = gate.control1, gate.control2, gate.target
    return [
        OneQubit("H", c),
        CX(b, c), OneQubit("TDG", c),
        CX(a, c), OneQubit("T", c),
        CX(b, c), OneQubit("TDG", c),
        CX(a, c),
        OneQubit("S", b), OneQubit("TDG", b),
        OneQubit("T", c), OneQubit("H", c),
        CX(a, b), OneQubit("T", a), OneQubit("TDG", b), CX(a, b),
    ]


class WorkQubitError(ValueError):
    """Not enough borrowed qubits to expand a multi-controlled X."""

    def __init__(self, needed: int, available: int):
        super().__init__(
            f"multi-controlled X needs {needed} borrowed work qubit(s), "
            f"only {available} available")
        self.needed = needed
        self.available = available


def _vchain(controls: Sequence[int], work: Sequence[int], target: int) -> list[Gate]:
    # Barenco-style ladder: both passes restore the borrowed qubits.
    t = len(controls)
    head = [CCX(controls[t - 1], work[t - 3], target)]
    down = [CCX(controls[i], work[i - 2], work[i - 1]) for i in range(t - 2, 1, -1)]
    seed = [CCX(controls[0], controls[1], work[0])]
    one_pass = head + down + seed + list(reversed(down))
    return one_pass + one_pass


def decompose_mcx(gate: MCX, work_qubits: Sequence[int]) -> list[Gate]:
    """Expand ``gate`` into Toffoli/CNOT gates using borrowed qubits.

    ``work_qubits`` must be disjoint from the gate's own qubits; they may
    be dirty (any state) and are returned to it. t-2 of them give the
    linear V-chain; a single one still suffices via recursive splitting.
    Raises :class:`WorkQubitError` when t >= 3 and none are available.
    """
    controls, target = gate.controls, gate.target
    own = set(controls) | {target}
    if own & set(work_qubits):
        raise ValueError("work qubits overlap the gate's controls/target")
    return _mcx_gates(list(controls), target, list(work_qubits))


def _mcx_gates(controls: list[int], target: int, work: list[int]) -> list[Gate]:
    t = len(controls)
    if t == 1:
        return [CX(controls[0], target)]
    if t == 2:
        return [CCX(controls[0], controls[1], target)]
    if len(work) >= t - 2:
        return _vchain(controls, work[: t - 2], target)
    if not work:
        raise WorkQubitError(needed=1, available=0)
    # One borrowed qubit: split the controls in half; each half-gate uses
    # the other half (plus target) as dirty work, and the double repeat
    # cancels the parasitic flips on the borrowed qubit.
    w = work[0]
    m = (t + 1) // 2
    first, second = controls[:m], controls[m:] + [w]
    g1 = _mcx_gates(first, w, controls[m:] + [target])
    g2 = _mcx_gates(second, target, controls[:m])
    return g1 + g2 + g1 + g2


# --- counting ---

HIGH_LEVEL = "high_level"
ELEMENTARY = "elementary"

_TOFFOLI_CNOTS = 6
_TOFFOLI_SINGLES = 10


@dataclass(frozen=True)
class CostModel:
    """Counting mode: ``high_level`` tallies IR gates as-is, ``elementary``
    expands them through this module's decompositions."""

    mode: str = ELEMENTARY

    def __post_init__(self):
        if self.mode not in (HIGH_LEVEL, ELEMENTARY):
            raise ValueError(f"unknown cost mode {self.mode!r}")


@dataclass
class GateCounts:
    total: int = 0
    cnot: int = 0
    single_qubit: int = 0
    by_kind: dict[str, int] = field(default_factory=dict)

    def __add__(self, other: "GateCounts") -> "GateCounts":
        merged = dict(self.by_kind)
        for k, v in other.by_kind.items():
            merged[k] = merged.get(k, 0) + v
        return GateCounts(self.total + other.total, self.cnot + other.cnot,
                          self.single_qubit + other.single_qubit, merged)


_mcx_profile_cache: dict[tuple[int, int], tuple[int, int]] = {}


def mcx_elementary_profile(n_controls: int, n_work_available: int) -> tuple[int, int]:
    """(cnot, single) census of an MCX expansion, derived by running it."""
    key = (n_controls, min(n_work_available, max(n_controls - 2, 1)))
    cached = _mcx_profile_cache.get(key)
    if cached is not None:
        return cached
    gates = _mcx_gates(list(range(n_controls)), n_controls,
                       list(range(n_controls + 1, n_controls + 1 + key[1])))
    cnot = single = 0
    for g in gates:
        if isinstance(g, CX):
            cnot += 1
        elif isinstance(g, CCX):
            cnot += _TOFFOLI_CNOTS
            single += _TOFFOLI_SINGLES
        else:  # X never appears today; kept for safety
            single += 1
    _mcx_profile_cache[key] = (cnot, single)
    return cnot, single


def gate_census(gates: Iterable[Gate]) -> dict[tuple[str, int], int]:
    """Multiset of (gate kind, control count) over a gate stream.

    Both counting modes derive from this census, so long synthesizer
    streams need only one pass and no materialized circuit.
    """
    census: dict[tuple[str, int], int] = {}
    for g in gates:
        kind = type(g).__name__
        t = len(g.controls) if kind in ("MCX", "CSPL") else 0
        key = (kind, t)
        census[key] = census.get(key, 0) + 1
    return census


def counts_from_census(census: dict[tuple[str, int], int], model: CostModel,
                       width: int) -> GateCounts:
    """Expand a census into counts.

    ``width`` bounds the borrowed qubits available to MCX/CSPL expansions
    (anything outside a gate's own qubits can be borrowed dirty).
    """
    counts = GateCounts()
    elementary = model.mode == ELEMENTARY
    for (kind, t), mult in census.items():
        counts.by_kind[kind] = counts.by_kind.get(kind, 0) + mult
        if not elementary:
            counts.total += mult
            if kind == "CX":
                counts.cnot += mult
            elif kind in ("X", "SPL"):
                counts.single_qubit += mult
            continue
        if kind in ("X", "SPL"):
            counts.single_qubit += mult
        elif kind == "CX":
            counts.cnot += mult
        elif kind == "CCX":
            counts.cnot += _TOFFOLI_CNOTS * mult
            counts.single_qubit += _TOFFOLI_SINGLES * mult
        elif kind == "MCX":
            c, s = mcx_elementary_profile(t, width - t - 1)
            counts.cnot += c * mult
            counts.single_qubit += s * mult
        elif kind == "CSPL":
            c, s = mcx_elementary_profile(t, width - t - 1)
            counts.cnot += c * mult
            counts.single_qubit += (s + 2) * mult
        else:
            raise TypeError(f"unknown gate kind {kind!r}")
    if elementary:
        counts.total = counts.cnot + counts.single_qubit
    return counts


def tally_gates(gates: Iterable[Gate], model: CostModel, width: int) -> GateCounts:
    return counts_from_census(gate_census(gates), model, width)


def count_gates(circ: Circuit, model: CostModel | None = None) -> GateCounts:
    return tally_gates(circ.gates, model or CostModel(), circ.width)
