"""Shared strategies and small oracles for the test suite."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from tetris.circuit import Circuit
from tetris.pauli import Kernel, make_kernel
from tetris.topology import CouplingGraph


def random_kernel(seed: int, max_qubits: int = 5, max_strings: int = 4, max_blocks: int = 3,
                  mutate: float = 0.35) -> Kernel:
    """Blocks of strings sharing a random base word, so leaf sets are non-trivial."""
    rng = random.Random(seed)
    n = rng.randint(1, max_qubits)
    blocks = []
    for _ in range(rng.randint(1, max_blocks)):
        base = [rng.choice("IXYZ") for _ in range(n)]
        strings = []
        for _ in range(rng.randint(1, max_strings)):
            w = [rng.choice("IXYZ") if rng.random() < mutate else c for c in base]
            if all(c == "I" for c in w):
                w[rng.randrange(n)] = rng.choice("XYZ")
            strings.append("".join(w))
        blocks.append(strings)
    return make_kernel(blocks)


kernel_seeds = st.integers(min_value=0, max_value=10**6)


def illegal_two_qubit_gates(circ: Circuit, graph: CouplingGraph) -> list:
    return [g for g in circ.decompose_swaps() if g.is_two_qubit and not graph.are_coupled(*g.qubits)]


ACCEPTANCE_LINES: list[str] = []


def report(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
