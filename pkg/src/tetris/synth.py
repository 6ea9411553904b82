"""Tree synthesis of Pauli-string blocks onto a coupling graph.

A block is placed once: root-tree qubits are clustered around a 1-median
center, then leaf-tree qubits are attached one at a time to whichever placed
node minimises

    (d - 1) * w + (2 * #strings if the parent is a root qubit else 2)

where ``d`` is the hop distance avoiding already-placed tree nodes. Every
string of the block is then emitted over the same tree, so identical
leaf-tree subcircuits of consecutive strings sit back to back and the
peephole pass removes them.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .circuit import CX, HALF_PI, RX, RZ, SWAP, Angle, Circuit, Gate, H
from .pauli import PauliString, TetrisBlock
from .topology import CouplingGraph, Mapping, RoutingError, bfs_distances, find_center, shortest_path

INF = math.inf


class SynthesisError(ValueError):
    pass


@dataclass(frozen=True)
class SynthConfig:
    swap_weight: float = 3.0
    bridging: bool = False
    leaf_trees: str = "adaptive"  # or "single"
    lookahead: int = 10
    max_verify_qubits: int = 12

    def __post_init__(self):
        if self.swap_weight < 0:
            raise ValueError("swap_weight must be >= 0")
        if self.leaf_trees not in ("adaptive", "single"):
            raise ValueError(f"leaf_trees must be 'adaptive' or 'single', got {self.leaf_trees!r}")
        if self.lookahead < 0:
            raise ValueError("lookahead must be >= 0")


@dataclass(frozen=True)
class SynthesisTree:
    """Undirected tree over wires, oriented towards ``root`` by ``parent``.

    ``labels`` maps each data wire to its logical qubit; ``ancillas`` are
    |0> wires used as bridges (they act as a Z operator on |0>).
    """

    root: int
    parent: dict[int, int]
    labels: dict[int, int]
    ancillas: frozenset[int] = frozenset()

    @classmethod
    def from_edges(cls, root: int, edges: Iterable[tuple[int, int]], labels: dict[int, int],
                   ancillas: Iterable[int] = ()) -> SynthesisTree:
        adj: dict[int, set[int]] = {root: set()}
        for a, b in edges:
            adj.setdefault(a, set()).add(b)
            adj.setdefault(b, set()).add(a)
        parent: dict[int, int] = {}
        seen = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in sorted(adj[u]):
                if v not in seen:
                    seen.add(v)
                    parent[v] = u
                    queue.append(v)
        if len(seen) != len(adj):
            raise SynthesisError("tree edges do not form a connected tree")
        return cls(root, parent, dict(labels), frozenset(ancillas))

    @property
    def nodes(self) -> list[int]:
        return sorted({self.root, *self.parent})

    def edges(self) -> list[tuple[int, int]]:
        return sorted(self.parent.items())

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.nodes}
        for c, p in self.parent.items():
            adj[c].add(p)
            adj[p].add(c)
        return adj

    def parent_label(self, q: int) -> int | None:
        """Logical parent of logical qubit ``q``, skipping bridge ancillas."""
        wire = next(w for w, l in self.labels.items() if l == q)
        while wire in self.parent:
            wire = self.parent[wire]
            if wire not in self.ancillas:
                return self.labels[wire]
        return None


@dataclass
class BlockSynthesis:
    """Routing SWAPs plus string gadgets for one block.

    ``leaf_parents`` maps each leaf qubit to its logical parent in the tree.
    """

    gates: list[Gate]
    mapping: Mapping
    tree: SynthesisTree
    swaps: int = 0
    bridges: int = 0
    leaf_parents: dict[int, int | None] = field(default_factory=dict)


def score(d: float, num_ps: int, w: float, to_root: bool) -> float:
    """Cost of attaching a leaf qubit at distance ``d`` to a placed node."""
    if d < 1:
        raise ValueError("distance must be >= 1")
    return (d - 1) * w + (2 * num_ps if to_root else 2)


# -- routing primitives ------------------------------------------------------

def _walk(mapping: Mapping, nodes: Sequence[int]) -> list[Gate]:
    """Move the occupant of nodes[0] to nodes[-1] by adjacent SWAPs (mutates)."""
    gates = []
    for a, b in zip(nodes, nodes[1:]):
        gates.append(SWAP(a, b))
        mapping.swap(a, b)
    return gates


def route_swap(mapping: Mapping, path: Sequence[int]) -> tuple[list[Gate], Mapping]:
    """SWAP the occupant of ``path[0]`` forward until it is adjacent to ``path[-1]``."""
    out = mapping.copy()
    return _walk(out, list(path[:-1])), out


def bridge_cnot(mapping: Mapping, control: int, target: int, ancillas: Sequence[int],
                graph: CouplingGraph | None = None, restore: bool = True) -> list[Gate]:
    """CNOT(control -> target) relayed through a chain of |0> ancillas.

    With ``restore=False`` only the forward relay is returned; the ancillas
    then hold the control value until the mirrored relay runs.
    """
    for a in ancillas:
        if not mapping.is_zero(a):
            raise SynthesisError(f"ancilla {a} is {mapping.liveness(a)}, not guaranteed |0>")
    chain = [control, *ancillas, target]
    if len(set(chain)) != len(chain):
        raise SynthesisError("bridge chain repeats a qubit")
    if graph is not None:
        for a, b in zip(chain, chain[1:]):
            if not graph.are_coupled(a, b):
                raise SynthesisError(f"bridge chain link ({a}, {b}) is not a coupling edge")
    forward = [CX(a, b) for a, b in zip(chain, chain[1:])]
    if not restore:
        return forward
    undo = [CX(a, b) for a, b in zip(chain[:-2], chain[1:-1])][::-1]
    return forward + undo


def _zero_suffix(mapping: Mapping, path: Sequence[int]) -> list[int]:
    """Longest run of |0> interior nodes ending next to ``path[-1]``."""
    run: list[int] = []
    for p in reversed(path[1:-1]):
        if not mapping.is_zero(p):
            break
        run.append(p)
    return run[::-1]


def choose_swap_or_bridge(graph: CouplingGraph, mapping: Mapping, path: Sequence[int],
                          future: Sequence[PauliString] = (), role: str = "root") -> str:
    """Return ``"swap"`` or ``"bridge"`` for connecting ``path[0]`` to ``path[-1]``.

    Leaf connections bridge whenever |0> qubits sit on the path. Root
    connections SWAP only if the relocated qubit becomes adjacent to its
    partners in at least two more future interactions than before.
    """
    if not _zero_suffix(mapping, path):
        return "swap"
    if role == "leaf":
        return "bridge"
    mover = mapping.logical_at(path[0])
    if mover is None:
        return "bridge"
    moved = mapping.copy()
    _walk(moved, list(path[:-1]))
    gain = 0
    for s in future:
        if mover not in s.support:
            continue
        for x in s.support - {mover}:
            if x not in mapping.l2p:
                continue
            before = graph.are_coupled(mapping.phys(mover), mapping.phys(x))
            after = graph.are_coupled(moved.phys(mover), moved.phys(x))
            gain += int(after) - int(before)
    return "swap" if gain >= 2 else "bridge"


# -- per-string emission -----------------------------------------------------

def _string_root(tree: SynthesisTree, adj: dict[int, set[int]], real: set[int]) -> int:
    if tree.root in real:
        return tree.root
    seen = {tree.root}
    frontier = [tree.root]
    while frontier:
        hits = sorted(v for v in frontier if v in real)
        if hits:
            return hits[0]
        nxt = []
        for u in frontier:
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    nxt.append(v)
        frontier = nxt
    raise SynthesisError("string has no support on the tree")


def emit_string(tree: SynthesisTree, ps: PauliString) -> list[Gate]:
    """Gates for exp(-i * coefficient * theta / 2 * P) over ``tree``.

    Identity subtrees are pruned; an identity node that still relays parity
    for its children is wrapped by a CNOT pair so its own value drops out.
    """
    ops = {v: ("Z" if v in tree.ancillas else ps.ops[tree.labels[v]]) for v in tree.nodes}
    real = {v for v in tree.nodes if v not in tree.ancillas and ops[v] != "I"}
    missing = ps.support - {tree.labels[v] for v in real}
    if missing:
        raise SynthesisError(f"string {ps.ops!r} acts on qubits {sorted(missing)} outside the tree")
    if not real:
        return []

    adj = tree.adjacency()
    keep = set(tree.nodes)
    deg = {v: len(adj[v]) for v in keep}
    stack = [v for v in keep if v not in real and deg[v] <= 1]
    while stack:
        v = stack.pop()
        if v not in keep:
            continue
        keep.discard(v)
        for u in adj[v]:
            if u in keep:
                deg[u] -= 1
                if u not in real and deg[u] <= 1:
                    stack.append(u)

    root = _string_root(tree, adj, real)
    children: dict[int, list[int]] = {v: [] for v in keep}
    parent: dict[int, int] = {}
    queue = deque([root])
    seen = {root}
    while queue:
        u = queue.popleft()
        for v in sorted(adj[u] & keep):
            if v not in seen:
                seen.add(v)
                parent[v] = u
                children[u].append(v)
                queue.append(v)

    forward: list[Gate] = []

    def visit(v: int) -> None:
        relay = v not in real and v not in tree.ancillas
        if relay:
            forward.append(CX(v, parent[v]))
        for c in children[v]:
            visit(c)
        forward.append(CX(v, parent[v]))

    for c in children[root]:
        visit(c)

    openers, closers = [], []
    for v in sorted(real):
        if ops[v] == "X":
            openers.append(H(v))
            closers.append(H(v))
        elif ops[v] == "Y":
            openers.append(RX(v, HALF_PI))
            closers.append(RX(v, -HALF_PI))
    angle = Angle.symbol(ps.angle_ref, ps.coefficient)
    return openers + forward + [RZ(root, angle)] + forward[::-1] + closers


def block_gates(block: TetrisBlock, tree: SynthesisTree) -> list[Gate]:
    out: list[Gate] = []
    for ps in block.strings:
        out += emit_string(tree, ps)
    return out


# -- block synthesis ---------------------------------------------------------

def _split_sets(block: TetrisBlock) -> tuple[list[int], list[int]]:
    roots, leaves = sorted(block.root_set), sorted(block.leaf_set)
    if not roots and not leaves:
        raise SynthesisError("block has empty support")
    if not roots:
        roots, leaves = leaves[:1], leaves[1:]
    return roots, leaves


def _hop_distance(graph: CouplingGraph, reach: dict[int, int], target: int) -> float:
    """Distance to ``target`` given BFS distances that never enter tree nodes."""
    best = min((reach[u] for u in graph.adjacency[target] if u in reach), default=None)
    return INF if best is None else best + 1


class _Builder:
    """Mutable state while placing one block."""

    def __init__(self, graph: CouplingGraph, mapping: Mapping, block: TetrisBlock,
                 cfg: SynthConfig, lookahead: Sequence[PauliString]):
        self.graph = graph
        self.work = mapping.copy()
        self.block = block
        self.cfg = cfg
        self.future = list(block.strings[1:]) + list(lookahead)
        self.gates: list[Gate] = []
        self.edges: list[tuple[int, int]] = []
        self.tree_nodes: set[int] = set()
        self.ancillas: set[int] = set()
        self.swaps = 0
        for q in block.support:
            if q not in self.work.l2p:
                raise SynthesisError(f"logical qubit {q} is not placed")

    def connect(self, q: int, target: int, role: str) -> None:
        """Join logical ``q`` to the tree node at ``target`` (physical)."""
        src = self.work.phys(q)
        if self.graph.are_coupled(src, target):
            self.edges.append((src, target))
            self.tree_nodes.add(src)
            return
        path = shortest_path(self.graph, src, target, excluded=self.tree_nodes)
        suffix: list[int] = []
        if self.cfg.bridging:
            if choose_swap_or_bridge(self.graph, self.work, path, self.future, role) == "bridge":
                suffix = _zero_suffix(self.work, path)
        stop = len(path) - 1 - len(suffix)
        moves = _walk(self.work, path[:stop])
        self.gates += moves
        self.swaps += len(moves)
        chain = path[stop - 1:]
        self.edges += list(zip(chain, chain[1:]))
        self.tree_nodes.update(chain[:-1])
        self.ancillas.update(suffix)

    def cluster_roots(self, roots: list[int]) -> int:
        g, work = self.graph, self.work
        center, _ = find_center(g, [work.phys(q) for q in roots])
        first = min(roots, key=lambda q: (g.distance(work.phys(q), center), q))
        if work.phys(first) != center:
            moves = _walk(work, shortest_path(g, work.phys(first), center))
            self.gates += moves
            self.swaps += len(moves)
        self.tree_nodes.add(center)
        pending = [q for q in roots if q != first]
        while pending:
            best = None
            for q in pending:
                reach = bfs_distances(g, work.phys(q), self.tree_nodes)
                for t in sorted(self.tree_nodes - self.ancillas):
                    key = (_hop_distance(g, reach, t), q, t)
                    if best is None or key < best:
                        best = key
            if best is None or best[0] == INF:
                raise RoutingError(f"root qubits {pending} cannot reach the root cluster")
            _, q, t = best
            self.connect(q, t, "root")
            pending.remove(q)
        return center

    def _leaf_candidates(self, leaves: Iterable[int], roots: set[int], num_ps: int,
                         parents: set[int] | None = None) -> list[tuple[float, int, int, int]]:
        out = []
        w = self.cfg.swap_weight
        for q in leaves:
            reach = bfs_distances(self.graph, self.work.phys(q), self.tree_nodes)
            for t in sorted(self.tree_nodes if parents is None else parents):
                d = _hop_distance(self.graph, reach, t)
                if d == INF:
                    continue
                label = self.work.logical_at(t)
                to_root = label is not None and label in roots
                out.append((score(d, num_ps, w, to_root), q, -1 if label is None else label, t))
        return out

    def attach_leaves(self, leaves: list[int], roots: set[int]) -> None:
        num_ps = len(self.block.strings)
        pending = list(leaves)
        while pending:
            cands = self._leaf_candidates(pending, roots, num_ps)
            if not cands:
                raise RoutingError(f"leaf qubits {pending} cannot reach the tree")
            _, q, _, t = min(cands)
            self.connect(q, t, "leaf")
            pending.remove(q)

    def finish(self, root_phys: int) -> BlockSynthesis:
        labels: dict[int, int] = {}
        for p in self.tree_nodes - self.ancillas:
            q = self.work.logical_at(p)
            if q is None:
                raise SynthesisError("tree node lost its logical qubit during routing")
            labels[p] = q
        tree = SynthesisTree.from_edges(root_phys, self.edges, labels, self.ancillas)
        for c, p in tree.parent.items():
            if not self.graph.are_coupled(c, p):
                raise SynthesisError(f"tree edge ({c}, {p}) is not a coupling edge")
        gates = self.gates + block_gates(self.block, tree)
        parents = {q: tree.parent_label(q) for q in sorted(self.block.leaf_set) if q != labels[root_phys]}
        return BlockSynthesis(gates, self.work, tree, self.swaps, len(self.ancillas), parents)


def synthesize_block(graph: CouplingGraph, mapping: Mapping, block: TetrisBlock,
                     cfg: SynthConfig | None = None,
                     lookahead: Sequence[PauliString] = ()) -> BlockSynthesis:
    """Place one block on the device and emit all of its strings.

    ``lookahead`` holds upcoming strings; it only informs the SWAP versus
    bridge choice for root qubits. The input mapping is not modified.
    """
    cfg = cfg or SynthConfig()
    roots, leaves = _split_sets(block)
    if cfg.leaf_trees == "single" and leaves:
        return _synthesize_single(graph, mapping, block, cfg, roots, leaves)
    b = _Builder(graph, mapping, block, cfg, lookahead)
    center = b.cluster_roots(roots)
    b.attach_leaves(leaves, set(roots))
    return b.finish(center)


# -- single leaf tree --------------------------------------------------------

def _components(graph: CouplingGraph, nodes: set[int]) -> list[set[int]]:
    comps, seen = [], set()
    for s in sorted(nodes):
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in graph.adjacency[u]:
                if v in nodes and v not in comp:
                    comp.add(v)
                    queue.append(v)
        seen |= comp
        comps.append(comp)
    return comps


def _single_layout_ok(graph: CouplingGraph, work: Mapping, roots: list[int], placed: list[int]) -> bool:
    rpos = {work.phys(q) for q in roots}
    if len(_components(graph, rpos)) != 1:
        return False
    for comp in _components(graph, {work.phys(q) for q in placed}):
        if not any(graph.are_coupled(a, r) for a in comp for r in rpos):
            return False
    return True


def _grow_single(graph, mapping, block, cfg, roots, leaves, seed):
    """Greedy single-leaf-tree growth from a seed (leaf, root) attachment."""
    b = _Builder(graph, mapping, block, cfg, ())
    center = b.cluster_roots(roots)
    root_q = b.work.logical_at(center)
    root_nodes = set(b.tree_nodes)
    q0, t0 = seed
    if t0 not in root_nodes:
        return None
    b.connect(q0, t0, "leaf")
    placed = [q0]
    pending = [q for q in leaves if q != q0]
    num_ps = len(block.strings)
    w = cfg.swap_weight
    while pending:
        leaf_nodes = {b.work.phys(q) for q in placed}
        options = []
        for q in pending:
            src = b.work.phys(q)
            strict = bfs_distances(graph, src, b.tree_nodes)
            loose = bfs_distances(graph, src, leaf_nodes)
            for t in sorted(leaf_nodes):
                ds = _hop_distance(graph, strict, t)
                dl = _hop_distance(graph, loose, t)
                if dl < ds:
                    options.append((score(dl, num_ps, w, False), q, t, True))
                if ds < INF:
                    options.append((score(ds, num_ps, w, False), q, t, False))
        chosen = None
        for _, q, t, through_roots in sorted(options):
            if not through_roots:
                chosen = (q, t, False)
                break
            trial = b.work.copy()
            path = shortest_path(graph, trial.phys(q), t, excluded=leaf_nodes)
            _walk(trial, path[:-1])
            if _single_layout_ok(graph, trial, roots, placed + [q]):
                chosen = (q, t, True)
                break
        if chosen is None:
            # no route into the leaf tree: start another leaf tree on a root,
            # or hang off any reachable tree node
            cands = b._leaf_candidates(pending, set(roots), num_ps, parents=root_nodes)
            cands = cands or b._leaf_candidates(pending, set(roots), num_ps)
            if not cands:
                return None
            _, q, _, t = min(cands)
            b.connect(q, t, "leaf")
        else:
            q, t, through_roots = chosen
            if through_roots:
                path = shortest_path(graph, b.work.phys(q), t, excluded=leaf_nodes)
                moves = _walk(b.work, path[:-1])
                b.gates += moves
                b.swaps += len(moves)
            else:
                b.connect(q, t, "leaf")
        placed.append(q)
        pending.remove(q)
        root_nodes = {b.work.phys(r) for r in roots}
        b.tree_nodes = root_nodes | {b.work.phys(x) for x in placed}
    return b, placed, root_q


def _synthesize_single(graph, mapping, block, cfg, roots, leaves) -> BlockSynthesis:
    # the seed search replays placements, so routing stays SWAP-only here
    cfg = replace(cfg, bridging=False)
    probe = _Builder(graph, mapping, block, cfg, ())
    probe.cluster_roots(roots)
    seeds = sorted(probe._leaf_candidates(leaves, set(roots), len(block.strings)))
    best = None
    for sc, q, _, t in seeds:
        grown = _grow_single(graph, mapping, block, cfg, roots, leaves, (q, t))
        if grown is None:
            continue
        key = (grown[0].swaps, sc, q, t)
        if best is None or key < best[0]:
            best = (key, grown)
    if best is None:
        raise RoutingError("no single-leaf-tree placement found")
    b, placed, root_q = best[1]
    work = b.work
    rpos = {work.phys(q) for q in roots}
    edges: list[tuple[int, int]] = []
    edges += _spanning_edges(graph, rpos, work.phys(root_q))
    for comp in _components(graph, {work.phys(q) for q in placed}):
        a, r = min((a, r) for a in comp for r in rpos if graph.are_coupled(a, r))
        edges.append((a, r))
        edges += _spanning_edges(graph, comp, a)
    b.edges = edges
    b.tree_nodes = rpos | {work.phys(q) for q in placed}
    return b.finish(work.phys(root_q))


def _spanning_edges(graph: CouplingGraph, nodes: set[int], start: int) -> list[tuple[int, int]]:
    edges = []
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in graph.adjacency[u]:
            if v in nodes and v not in seen:
                seen.add(v)
                edges.append((v, u))
                queue.append(v)
    if seen != nodes:
        raise SynthesisError("node set is not connected")
    return edges


# -- baselines ---------------------------------------------------------------

def synthesize_naive_chain(graph: CouplingGraph, mapping: Mapping, block: TetrisBlock) -> BlockSynthesis:
    """One chain over the block support in index order, root at the last qubit."""
    work = mapping.copy()
    order = sorted(block.support)
    if not order:
        raise SynthesisError("block has empty support")
    for q in order:
        if q not in work.l2p:
            raise SynthesisError(f"logical qubit {q} is not placed")
    gates: list[Gate] = []
    swaps = 0
    chain_nodes = {work.phys(order[0])}
    edges = []
    prev = order[0]
    for q in order[1:]:
        src = work.phys(q)
        target = work.phys(prev)
        try:
            path = shortest_path(graph, src, target, excluded=chain_nodes)
        except RoutingError:
            reach = bfs_distances(graph, src, chain_nodes)
            target = min(chain_nodes, key=lambda t: (_hop_distance(graph, reach, t), t))
            path = shortest_path(graph, src, target, excluded=chain_nodes)
        moves = _walk(work, path[:-1])
        gates += moves
        swaps += len(moves)
        edges.append((work.phys(q), target))
        chain_nodes.add(work.phys(q))
        prev = q
    labels = {work.phys(q): q for q in order}
    tree = SynthesisTree.from_edges(work.phys(order[-1]), edges, labels)
    return BlockSynthesis(gates + block_gates(block, tree), work, tree, swaps, 0)


def logical_tree(block: TetrisBlock) -> SynthesisTree:
    """Root chain over root qubits, one leaf chain hung off the first root."""
    roots, leaves = _split_sets(block)
    edges = list(zip(roots[1:], roots))
    if leaves:
        edges.append((leaves[0], roots[0]))
        edges += list(zip(leaves[1:], leaves))
    labels = {q: q for q in roots + leaves}
    return SynthesisTree.from_edges(roots[0], edges, labels)


def synthesize_max_cancel(block: TetrisBlock) -> Circuit:
    """Logical circuit with a single leaf tree (no coupling constraints)."""
    return Circuit(block.n_qubits, block_gates(block, logical_tree(block)))


def synthesize_with_tree(block: TetrisBlock, tree: SynthesisTree, n_wires: int | None = None) -> Circuit:
    return Circuit(n_wires or block.n_qubits, block_gates(block, tree))
