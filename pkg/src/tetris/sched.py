"""Greedy block ordering: similar leaf trees back to back, cheap roots first."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .pauli import Kernel, TetrisBlock, active_length
from .topology import CouplingGraph, Mapping, find_center


@dataclass(frozen=True)
class SchedConfig:
    lookahead_k: int = 10

    def __post_init__(self):
        if self.lookahead_k < 1:
            raise ValueError("lookahead_k must be >= 1")


def similarity(t1: TetrisBlock, t2: TetrisBlock) -> float:
    """Jaccard index over (qubit, operator) leaf assignments; 0 if both are empty."""
    a = set(t1.leaf_ops().items()) if t1.leaf_set else set()
    b = set(t2.leaf_ops().items()) if t2.leaf_set else set()
    if not a and not b:
        return 0.0
    common = len(a & b)
    return common / (len(a) + len(b) - common)


def swap_cost_estimate(graph: CouplingGraph, mapping: Mapping, block: TetrisBlock) -> int:
    """SWAPs needed to gather the block's root qubits around their 1-median.

    Each root contributes ``max(d - 1, 0)`` where ``d`` is its distance to
    the center. Roots that are not placed are ignored.
    """
    roots = sorted(block.root_set) or sorted(block.leaf_set)[:1]
    pos = [mapping.phys(q) for q in roots if q in mapping.l2p]
    if not pos:
        return 0
    center, _ = find_center(graph, pos)
    return sum(max(graph.distance(p, center) - 1, 0) for p in pos)


class BlockScheduler:
    """Step-wise scheduler; ``swap_cost`` is queried against live state."""

    def __init__(self, blocks: Sequence[TetrisBlock], cfg: SchedConfig | None = None):
        if not blocks:
            raise ValueError("nothing to schedule")
        self.blocks = list(blocks)
        self.cfg = cfg or SchedConfig()
        self.remaining = list(range(len(self.blocks)))
        self.last: int | None = None

    def __bool__(self) -> bool:
        return bool(self.remaining)

    def next(self, swap_cost: Callable[[TetrisBlock], float] | None = None) -> int:
        if not self.remaining:
            raise StopIteration
        if self.last is None:
            pick = min(self.remaining, key=lambda i: (-active_length(self.blocks[i]), i))
        else:
            prev = self.blocks[self.last]
            sims = {i: similarity(prev, self.blocks[i]) for i in self.remaining}
            ranked = sorted(self.remaining, key=lambda i: (-sims[i], i))[: self.cfg.lookahead_k]
            cost = swap_cost or (lambda _b: 0)
            pick = min(ranked, key=lambda i: (cost(self.blocks[i]), -sims[i], i))
        self.remaining.remove(pick)
        self.last = pick
        return pick


def iter_schedule(blocks: Sequence[TetrisBlock], cfg: SchedConfig | None = None,
                  swap_cost: Callable[[TetrisBlock], float] | None = None) -> Iterator[int]:
    """Yield block indices; ``swap_cost`` may read state updated between yields."""
    s = BlockScheduler(blocks, cfg)
    while s:
        yield s.next(swap_cost)


def schedule(kernel: Kernel, cfg: SchedConfig | None = None, graph: CouplingGraph | None = None,
             mapping: Mapping | None = None) -> list[int]:
    """Static ordering. Without a graph and mapping the SWAP cost term is zero."""
    cost = None
    if graph is not None and mapping is not None:
        cost = lambda b: swap_cost_estimate(graph, mapping, b)  # noqa: E731
    return list(iter_schedule(kernel.blocks, cfg, cost))
