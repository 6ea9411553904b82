"""Pauli-string block compiler that trades CNOT cancellation against SWAP cost."""

from .circuit import Angle, Circuit, Gate
from .compiler import CompileOptions, CompileResult, compile_kernel
from .metrics import MetricsReport, NoiseParams, depth, duration, fidelity_proxy
from .pauli import IRParseError, Kernel, PauliString, TetrisBlock, build_tetris_ir, make_kernel, parse_kernel
from .peephole import cancel, gate_cancellation_ratio
from .sched import SchedConfig, schedule, similarity
from .synth import SynthConfig, SynthesisTree, synthesize_block, synthesize_max_cancel
from .topology import CouplingGraph, Mapping, topology_from_name

__all__ = [
    "Angle", "Circuit", "Gate", "CompileOptions", "CompileResult", "compile_kernel", "MetricsReport",
    "NoiseParams", "depth", "duration", "fidelity_proxy", "IRParseError", "Kernel", "PauliString",
    "TetrisBlock", "build_tetris_ir", "make_kernel", "parse_kernel", "cancel", "gate_cancellation_ratio",
    "SchedConfig", "schedule", "similarity", "SynthConfig", "SynthesisTree", "synthesize_block",
    "synthesize_max_cancel", "CouplingGraph", "Mapping", "topology_from_name",
]
