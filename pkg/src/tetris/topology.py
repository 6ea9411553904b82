"""Coupling graphs, distance queries and the logical-to-physical mapping."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Mapping as TMapping

UNTOUCHED = "untouched"
IN_USE = "in-use"
RELEASED = "released-to-zero"


class RoutingError(RuntimeError):
    """No route exists under the requested exclusions."""


@dataclass(frozen=True)
class CouplingGraph:
    n_phys: int
    edges: frozenset[tuple[int, int]]
    name: str = "custom"

    def __post_init__(self):
        if self.n_phys < 1:
            raise ValueError("coupling graph needs at least one qubit")
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop on {a}")
            if not (0 <= a < self.n_phys and 0 <= b < self.n_phys):
                raise ValueError(f"edge ({a}, {b}) out of range for {self.n_phys} qubits")
            if a > b:
                raise ValueError("edges must be stored as (low, high)")
        if not self.is_connected():
            raise ValueError("coupling graph is not connected")

    @classmethod
    def from_edges(cls, n_phys: int, edges: Iterable[tuple[int, int]], name: str = "custom") -> CouplingGraph:
        return cls(n_phys, frozenset((min(a, b), max(a, b)) for a, b in edges), name)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n_phys)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(x)) for x in adj)

    def neighbors(self, p: int) -> tuple[int, ...]:
        return self.adjacency[p]

    def degree(self, p: int) -> int:
        return len(self.adjacency[p])

    def are_coupled(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def is_connected(self) -> bool:
        return len(bfs_distances(self, 0)) == self.n_phys

    @cached_property
    def distance_matrix(self) -> tuple[tuple[int, ...], ...]:
        rows = []
        for s in range(self.n_phys):
            d = bfs_distances(self, s)
            rows.append(tuple(d[t] for t in range(self.n_phys)))
        return tuple(rows)

    def distance(self, a: int, b: int) -> int:
        return self.distance_matrix[a][b]

    def bfs_order(self, start: int = 0) -> list[int]:
        seen = {start}
        order = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in self.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    order.append(v)
                    queue.append(v)
        return order


def bfs_distances(g: CouplingGraph, source: int, excluded: Iterable[int] = ()) -> dict[int, int]:
    """Hop distances from ``source`` to every node reachable without entering ``excluded``."""
    blocked = set(excluded)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adjacency[u]:
            if v not in dist and v not in blocked:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


# -- builders ---------------------------------------------------------------

def make_linear(n: int) -> CouplingGraph:
    if n < 1:
        raise ValueError("linear topology needs n >= 1")
    return CouplingGraph.from_edges(n, ((i, i + 1) for i in range(n - 1)), f"linear-{n}")


def make_grid(rows: int, cols: int) -> CouplingGraph:
    if rows < 1 or cols < 1:
        raise ValueError("grid dimensions must be >= 1")
    edges = []
    for r in range(rows):
        for c in range(cols):
            p = r * cols + c
            if c + 1 < cols:
                edges.append((p, p + 1))
            if r + 1 < rows:
                edges.append((p, p + cols))
    return CouplingGraph.from_edges(rows * cols, edges, f"grid-{rows}x{cols}")


def make_sycamore(rows: int, cols: int) -> CouplingGraph:
    """Diagonal lattice: odd rows sit half a column to the right of even rows."""
    if rows < 1 or cols < 1:
        raise ValueError("sycamore dimensions must be >= 1")
    edges = []
    for r in range(rows - 1):
        for c in range(cols):
            p = r * cols + c
            below = [c - 1, c] if r % 2 == 0 else [c, c + 1]
            for cc in below:
                if 0 <= cc < cols:
                    edges.append((p, (r + 1) * cols + cc))
    if rows == 1:
        edges = [(c, c + 1) for c in range(cols - 1)]
    return CouplingGraph.from_edges(rows * cols, edges, f"sycamore-{rows}x{cols}")


def make_heavy_hex(rows: int = 5, cols: int = 11) -> CouplingGraph:
    """Heavy-hexagon lattice in the IBM row/bridge layout.

    ``rows`` horizontal chains of ``cols`` qubits joined by bridge qubits
    every four columns, at column offsets alternating 0 and 2. The first
    chain drops its last column and the last chain drops the column its
    bridges cannot reach. Numbering runs row by row, each row followed by the
    bridges below it. The defaults give the 65-qubit device layout.
    """
    if rows < 1 or cols < 1:
        raise ValueError("heavy-hex dimensions must be >= 1")
    edges: list[tuple[int, int]] = []
    n = 0
    bridges_above: dict[int, int] = {}
    for r in range(rows):
        cols_here = list(range(cols))
        if rows > 1 and r == 0:
            cols_here = cols_here[:-1]
        elif rows > 1 and r == rows - 1:
            cols_here = cols_here[1:] if r % 2 == 0 else cols_here[:-1]
        nodes = {c: n + i for i, c in enumerate(cols_here)}
        n += len(nodes)
        edges.extend((nodes[c], nodes[c + 1]) for c in cols_here if c + 1 in nodes)
        edges.extend((b, nodes[c]) for c, b in bridges_above.items() if c in nodes)
        bridges_above = {}
        if r < rows - 1:
            for c in range(0 if r % 2 == 0 else 2, cols, 4):
                if c in nodes:
                    bridges_above[c] = n
                    edges.append((nodes[c], n))
                    n += 1
    return CouplingGraph.from_edges(n, edges, f"heavyhex-{rows}x{cols}")


def load_coupling_graph(path: str | Path) -> CouplingGraph:
    """Read the ``n <count>`` + ``u v`` per line format."""
    text = Path(path).read_text()
    return parse_coupling_graph(text, name=Path(path).stem)


def parse_coupling_graph(text: str, name: str = "file") -> CouplingGraph:
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ValueError(f"line {lineno}: expected 'n <count>' header")
            n = int(parts[1])
            continue
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v'")
        edges.append((int(parts[0]), int(parts[1])))
    if n is None:
        raise ValueError("missing 'n <count>' header")
    return CouplingGraph.from_edges(n, edges, name)


def format_coupling_graph(g: CouplingGraph) -> str:
    lines = [f"n {g.n_phys}"] + [f"{a} {b}" for a, b in sorted(g.edges)]
    return "\n".join(lines) + "\n"


def topology_from_name(spec: str) -> CouplingGraph:
    """Resolve ``linear:8``, ``grid:3x3``, ``heavyhex`` / ``heavyhex:5x11``,
    ``sycamore:8x8`` or a path to a coupling-graph file."""
    kind, _, arg = spec.partition(":")
    kind = kind.lower()
    try:
        if kind == "linear":
            return make_linear(int(arg or 8))
        if kind == "grid":
            r, c = (arg or "3x3").lower().split("x")
            return make_grid(int(r), int(c))
        if kind == "sycamore":
            r, c = (arg or "8x8").lower().split("x")
            return make_sycamore(int(r), int(c))
        if kind == "heavyhex":
            r, c = (arg or "5x11").lower().split("x")
            return make_heavy_hex(int(r), int(c))
    except ValueError as exc:
        raise ValueError(f"bad topology spec {spec!r}: {exc}") from None
    if Path(spec).is_file():
        return load_coupling_graph(spec)
    raise ValueError(f"unknown topology {spec!r} (linear|grid|heavyhex|sycamore or a file)")


# -- queries ----------------------------------------------------------------

def shortest_path(g: CouplingGraph, a: int, b: int, excluded: Iterable[int] = ()) -> list[int]:
    """Lexicographically smallest among the shortest a->b paths avoiding ``excluded``.

    Endpoints are always allowed.
    """
    if a == b:
        raise ValueError("shortest_path needs distinct endpoints")
    blocked = set(excluded) - {a, b}
    to_b = bfs_distances(g, b, blocked)
    if a not in to_b:
        raise RoutingError(f"no path from {a} to {b} avoiding {sorted(blocked)}")
    path = [a]
    cur = a
    while cur != b:
        want = to_b[cur] - 1
        cur = min(v for v in g.adjacency[cur] if to_b.get(v) == want)
        path.append(cur)
    return path


def find_center(g: CouplingGraph, positions: Iterable[int]) -> tuple[int, dict[int, list[int]]]:
    """1-median of ``positions``: the node with least summed distance (ties: lowest index).

    Returns the center and one shortest path from each position to it (an
    empty list for a position already on the center).
    """
    pos = sorted(set(positions))
    if not pos:
        raise ValueError("find_center needs at least one position")
    dm = g.distance_matrix
    center = min(range(g.n_phys), key=lambda c: (sum(dm[p][c] for p in pos), c))
    paths = {p: ([] if p == center else shortest_path(g, p, center)) for p in pos}
    return center, paths


# -- mapping ----------------------------------------------------------------

@dataclass
class Mapping:
    """Partial logical->physical placement plus the state of free physical qubits.

    A free physical qubit is either ``untouched`` or ``released-to-zero``;
    both hold |0>.
    """

    n_phys: int
    l2p: dict[int, int] = field(default_factory=dict)
    free_state: dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        if len(set(self.l2p.values())) != len(self.l2p):
            raise ValueError("mapping is not injective")
        for p in self.l2p.values():
            if not 0 <= p < self.n_phys:
                raise ValueError(f"physical qubit {p} out of range")
        used = set(self.l2p.values())
        for p in range(self.n_phys):
            if p not in used:
                self.free_state.setdefault(p, UNTOUCHED)
            else:
                self.free_state.pop(p, None)
        self._p2l = {p: q for q, p in self.l2p.items()}

    @classmethod
    def initial(cls, g: CouplingGraph, n_logical: int, layout: TMapping[int, int] | None = None) -> Mapping:
        """Layout defaults to logical i on the i-th node of a BFS from node 0."""
        if n_logical > g.n_phys:
            raise ValueError(f"{n_logical} logical qubits do not fit on {g.n_phys} physical qubits")
        if layout is None:
            order = g.bfs_order(0)
            layout = {q: order[q] for q in range(n_logical)}
        return cls(g.n_phys, dict(layout))

    def copy(self) -> Mapping:
        return Mapping(self.n_phys, dict(self.l2p), dict(self.free_state))

    def phys(self, q: int) -> int:
        return self.l2p[q]

    def logical_at(self, p: int) -> int | None:
        return self._p2l.get(p)

    def liveness(self, p: int) -> str:
        return IN_USE if p in self._p2l else self.free_state[p]

    def is_zero(self, p: int) -> bool:
        return p not in self._p2l

    def swap(self, a: int, b: int) -> None:
        qa, qb = self._p2l.get(a), self._p2l.get(b)
        sa, sb = self.free_state.pop(a, None), self.free_state.pop(b, None)
        self._p2l.pop(a, None)
        self._p2l.pop(b, None)
        if qa is not None:
            self.l2p[qa] = b
            self._p2l[b] = qa
        else:
            self.free_state[b] = sa
        if qb is not None:
            self.l2p[qb] = a
            self._p2l[a] = qb
        else:
            self.free_state[a] = sb

    def release(self, q: int) -> int:
        """Unmap logical ``q`` after a reset; its qubit becomes a |0> ancilla."""
        p = self.l2p.pop(q)
        del self._p2l[p]
        self.free_state[p] = RELEASED
        return p

    def as_list(self, n_logical: int) -> list[int | None]:
        return [self.l2p.get(q) for q in range(n_logical)]
