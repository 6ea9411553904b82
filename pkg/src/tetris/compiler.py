"""End-to-end compilation: schedule, synthesize, cancel, measure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping as TMapping

import numpy as np

from .circuit import RESET, Circuit, Gate
from .metrics import MetricsReport, measure
from .pauli import Kernel
from .peephole import cancel
from .qasm import to_qasm
from .sched import BlockScheduler, SchedConfig, schedule, swap_cost_estimate
from .synth import SynthConfig, SynthesisTree, synthesize_block, synthesize_max_cancel, synthesize_naive_chain
from .topology import CouplingGraph, Mapping
from .verify import apply_circuit, embedding_indices, equivalent_up_to_phase_and_permutation, random_bindings, reference_unitary

MODES = ("tetris", "max_cancel", "naive_chain")


@dataclass(frozen=True)
class CompileOptions:
    mode: str = "tetris"
    swap_weight: float = 3.0
    lookahead_k: int = 10
    bridging: bool = False
    leaf_trees: str = "adaptive"
    reclaim: bool = False
    seed: int = 0
    layout: TMapping[int, int] | None = None

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {', '.join(MODES)}; got {self.mode!r}")

    def synth_config(self) -> SynthConfig:
        return SynthConfig(self.swap_weight, self.bridging, self.leaf_trees, self.lookahead_k)


@dataclass
class CompileResult:
    kernel: Kernel
    options: CompileOptions
    order: list[int]
    raw: Circuit
    circuit: Circuit
    initial_layout: list[int]
    final_layout: list[int]
    canceled_cnots: int
    canceled_1q: int
    metrics: MetricsReport
    swaps: int = 0
    bridges: int = 0
    trees: list[SynthesisTree] = field(default_factory=list)
    graph_name: str = "logical"

    @property
    def bindings(self) -> dict[str, float]:
        return random_bindings(self.raw.symbols(), self.options.seed)

    def qasm(self) -> str:
        b = self.bindings
        notes = [
            f"mode={self.options.mode} topology={self.graph_name} w={self.options.swap_weight:g} "
            f"k={self.options.lookahead_k} bridge={'on' if self.options.bridging else 'off'}",
            "initial_layout=" + " ".join(map(str, self.initial_layout)),
            "final_layout=" + " ".join(map(str, self.final_layout)),
            "block_order=" + " ".join(map(str, self.order)),
        ]
        notes += [f"bind {k}={v!r}" for k, v in b.items()]
        return to_qasm(self.circuit, b, notes)

    def verify(self, seed: int | None = None, tol: float = 1e-8, reduced: bool = True) -> bool:
        """Statevector check of the compiled circuit against the IR product."""
        circ = self.circuit if reduced else self.raw
        if any(g.name == "reset" for g in circ):
            raise ValueError("cannot verify a circuit with qubit reclaim resets")
        bindings = random_bindings(self.raw.symbols(), self.options.seed if seed is None else seed)
        n_log = self.kernel.n_qubits
        cols = np.zeros((2**circ.n_qubits, 2**n_log), dtype=complex)
        cols[embedding_indices(self.initial_layout, circ.n_qubits), np.arange(2**n_log)] = 1
        images = apply_circuit(circ, cols, bindings)
        ref = reference_unitary(self.kernel, self.order, bindings)
        anc = set(range(circ.n_qubits)) - set(self.final_layout)
        return equivalent_up_to_phase_and_permutation(images, ref, self.final_layout, anc, tol=tol, embedded=True)


def _finish(kernel, opts, order, gates, n_wires, initial, final, swaps=0, bridges=0, trees=(), name="logical"):
    raw = Circuit(n_wires, gates)
    reduced, cx, oneq = cancel(raw)
    report = measure(reduced, raw.count("cx"), cx)
    return CompileResult(kernel, opts, list(order), raw, reduced, initial, final, cx, oneq, report,
                         swaps, bridges, list(trees), name)


def compile_kernel(kernel: Kernel, graph: CouplingGraph | None = None,
                   options: CompileOptions | None = None) -> CompileResult:
    opts = options or CompileOptions()
    n = kernel.n_qubits
    if opts.mode == "max_cancel":
        order = schedule(kernel, SchedConfig(opts.lookahead_k))
        gates: list[Gate] = []
        for i in order:
            gates += synthesize_max_cancel(kernel.blocks[i]).gates
        ident = list(range(n))
        return _finish(kernel, opts, order, gates, n, ident, ident)

    if graph is None:
        raise ValueError(f"mode {opts.mode} needs a coupling graph")
    mapping = Mapping.initial(graph, n, opts.layout)
    initial = mapping.as_list(n)
    gates = []
    trees: list[SynthesisTree] = []
    swaps = bridges = 0
    order: list[int] = []

    if opts.mode == "naive_chain":
        for i, block in enumerate(kernel.blocks):
            res = synthesize_naive_chain(graph, mapping, block)
            gates += res.gates
            mapping = res.mapping
            swaps += res.swaps
            trees.append(res.tree)
            order.append(i)
        return _finish(kernel, opts, order, gates, graph.n_phys, initial, mapping.as_list(n),
                       swaps, 0, trees, graph.name)

    cfg = opts.synth_config()
    sched = BlockScheduler(kernel.blocks, SchedConfig(opts.lookahead_k))
    while sched:
        i = sched.next(lambda b: swap_cost_estimate(graph, mapping, b))
        order.append(i)
        upcoming = [s for j in sorted(sched.remaining)[: opts.lookahead_k] for s in kernel.blocks[j].strings]
        res = synthesize_block(graph, mapping, kernel.blocks[i], cfg, upcoming)
        gates += res.gates
        mapping = res.mapping
        swaps += res.swaps
        bridges += res.bridges
        trees.append(res.tree)
        if opts.reclaim:
            still_needed = set().union(*(kernel.blocks[j].support for j in sched.remaining))
            for q in sorted(kernel.blocks[i].support - still_needed):
                gates.append(RESET(mapping.release(q)))
    final = [mapping.l2p.get(q, -1) for q in range(n)]
    return _finish(kernel, opts, order, gates, graph.n_phys, initial, final, swaps, bridges, trees, graph.name)
