"""Circuit cost metrics: CNOT counts, depth, duration and a fidelity proxy."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from .circuit import Circuit


@dataclass(frozen=True)
class NoiseParams:
    p_2q: float = 1e-3
    p_1q: float = 1e-4

    def __post_init__(self):
        for p in (self.p_2q, self.p_1q):
            if not 0 <= p < 1:
                raise ValueError("error rates must lie in [0, 1)")


@dataclass(frozen=True)
class DurationModel:
    one_qubit: float = 1.0
    cnot: float = 10.0
    reset: float = 1.0


def cnot_count(circ: Circuit) -> int:
    """CNOTs after decomposing each SWAP into three."""
    return circ.count("cx") + 3 * circ.count("swap")


def depth(circ: Circuit) -> int:
    level = [0] * circ.n_qubits
    for g in circ.decompose_swaps():
        t = max(level[q] for q in g.qubits) + 1
        for q in g.qubits:
            level[q] = t
    return max(level, default=0)


def duration(circ: Circuit, model: DurationModel | None = None) -> float:
    """ASAP makespan."""
    model = model or DurationModel()
    ready = [0.0] * circ.n_qubits
    for g in circ.decompose_swaps():
        if g.name == "cx":
            cost = model.cnot
        elif g.name == "reset":
            cost = model.reset
        else:
            cost = model.one_qubit
        t = max(ready[q] for q in g.qubits) + cost
        for q in g.qubits:
            ready[q] = t
    return max(ready, default=0.0)


def fidelity_proxy(circ: Circuit, noise: NoiseParams | None = None) -> float:
    noise = noise or NoiseParams()
    n2 = cnot_count(circ)
    n1 = sum(1 for g in circ if g.name in ("h", "x", "rx", "rz"))
    return (1 - noise.p_2q) ** n2 * (1 - noise.p_1q) ** n1


@dataclass(frozen=True)
class MetricsReport:
    cnot_count: int
    logical_cnots: int
    swap_count: int
    swap_induced_cnots: int
    total_gate_count: int
    single_qubit_gates: int
    depth: int
    duration: float
    original_cnots: int
    canceled_cnots: int
    gcr: float | None
    fidelity_proxy: float

    def to_text(self) -> str:
        rows = []
        for k, v in asdict(self).items():
            rows.append(f"{k}={'absent' if v is None else v}")
        return "\n".join(rows) + "\n"

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True) + "\n"


def measure(circ: Circuit, original_cnots: int, canceled_cnots: int,
            noise: NoiseParams | None = None, model: DurationModel | None = None) -> MetricsReport:
    """Metrics of a final (peephole-reduced, SWAP-bearing) circuit.

    ``original_cnots`` counts logical CNOTs before cancellation, bridge
    relays included and SWAPs excluded.
    """
    swaps = circ.count("swap")
    decomposed = circ.decompose_swaps()
    return MetricsReport(
        cnot_count=cnot_count(circ),
        logical_cnots=circ.count("cx"),
        swap_count=swaps,
        swap_induced_cnots=3 * swaps,
        total_gate_count=len(decomposed),
        single_qubit_gates=sum(1 for g in circ if g.name in ("h", "x", "rx", "rz")),
        depth=depth(circ),
        duration=duration(circ, model),
        original_cnots=original_cnots,
        canceled_cnots=canceled_cnots,
        gcr=canceled_cnots / original_cnots if original_cnots else None,
        fidelity_proxy=fidelity_proxy(circ, noise),
    )
