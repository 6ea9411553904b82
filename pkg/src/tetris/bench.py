"""Synthetic VQE (Jordan-Wigner UCC) and QAOA kernels."""

from __future__ import annotations

import itertools
import random

import networkx as nx

from .pauli import Kernel, make_kernel

# operator patterns on (p, q, r, s) for one JW double excitation
DOUBLE_PATTERNS = ("XXXY", "XXYX", "XYXX", "YXXX", "YYYX", "YYXY", "YXYY", "XYYY")


def _jw_word(n: int, ops: dict[int, str], runs: list[tuple[int, int]]) -> str:
    word = ["I"] * n
    for a, b in runs:
        for k in range(a + 1, b):
            word[k] = "Z"
    for k, op in ops.items():
        word[k] = op
    return "".join(word)


def single_excitation(n: int, p: int, q: int) -> list[str]:
    if not 0 <= p < q < n:
        raise ValueError("need 0 <= p < q < n")
    return [_jw_word(n, {p: op, q: op}, [(p, q)]) for op in "XY"]


def double_excitation(n: int, p: int, q: int, r: int, s: int) -> list[str]:
    if not 0 <= p < q < r < s < n:
        raise ValueError("need 0 <= p < q < r < s < n")
    out = []
    for pat in DOUBLE_PATTERNS:
        ops = dict(zip((p, q, r, s), pat))
        out.append(_jw_word(n, ops, [(p, q), (r, s)]))
    return out


def gen_ucc(n_qubits: int, n_blocks: int | None = None, seed: int = 0, singles: bool = False) -> Kernel:
    """Random sample of UCC excitation blocks (n^2 blocks by default).

    Doubles only unless ``singles`` is set; this matches eight strings per
    block in the synthetic UCC-n family.
    """
    if n_qubits < 4:
        raise ValueError("gen_ucc needs at least 4 qubits")
    n_blocks = n_qubits**2 if n_blocks is None else n_blocks
    if n_blocks < 1:
        raise ValueError("n_blocks must be >= 1")
    pool: list[list[str]] = [double_excitation(n_qubits, *c) for c in itertools.combinations(range(n_qubits), 4)]
    if singles:
        pool += [single_excitation(n_qubits, *c) for c in itertools.combinations(range(n_qubits), 2)]
    rng = random.Random(seed)
    picks = rng.sample(pool, n_blocks) if n_blocks <= len(pool) else rng.choices(pool, k=n_blocks)
    return make_kernel(picks)


def qaoa_graph(kind: str, n: int, seed: int = 0) -> nx.Graph:
    if n < 3:
        raise ValueError("QAOA graphs need n >= 3")
    if kind == "regular":
        if (3 * n) % 2:
            raise ValueError(f"no 3-regular graph on {n} nodes (odd degree sum)")
        return nx.random_regular_graph(3, n, seed=seed)
    if kind == "random":
        return nx.gnp_random_graph(n, 0.1, seed=seed)
    raise ValueError(f"unknown QAOA graph kind {kind!r}; use 'random' or 'regular'")


def gen_qaoa(kind: str, n: int, seed: int = 0) -> Kernel:
    """One single-string ZZ block per graph edge, edges in sorted order."""
    g = qaoa_graph(kind, n, seed)
    edges = sorted(tuple(sorted(e)) for e in g.edges())
    if not edges:
        raise ValueError(f"{kind} graph on {n} nodes with seed {seed} has no edges")
    blocks = []
    for a, b in edges:
        word = ["I"] * n
        word[a] = word[b] = "Z"
        blocks.append(["".join(word)])
    return make_kernel(blocks)
