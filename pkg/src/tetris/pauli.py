"""Pauli-string kernels and the root/leaf block IR.

A kernel file is a list of blocks separated by a single blank line. Each
non-blank line holds one Pauli string over ``IXYZ``, optionally followed by
``; w=<float>``. ``#`` starts a comment.

    # single excitation
    YZZZY ; w=0.5
    XZZZX ; w=-0.5

    ZZIII
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

PAULI_OPS = "IXYZ"

_WEIGHT_RE = re.compile(r"^w\s*=\s*(\S+)$")


class IRParseError(ValueError):
    """Malformed kernel text. ``line`` is 1-based, or None for file-level errors."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


@dataclass(frozen=True)
class PauliString:
    ops: str
    coefficient: float = 1.0
    angle_ref: str = "theta"

    def __post_init__(self):
        bad = set(self.ops) - set(PAULI_OPS)
        if bad:
            raise ValueError(f"invalid operator {sorted(bad)[0]!r} in {self.ops!r}")

    def __len__(self) -> int:
        return len(self.ops)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, op in enumerate(self.ops) if op != "I")


@dataclass(frozen=True)
class TetrisBlock:
    """Ordered Pauli strings plus their root/leaf qubit partition.

    ``leaf_set`` holds the qubits on which every string carries the same
    non-identity operator; ``root_set`` the rest of the union support.
    ``qubit_order`` lists root qubits then leaf qubits, ascending within each.
    """

    strings: tuple[PauliString, ...]
    leaf_set: frozenset[int] = frozenset()
    root_set: frozenset[int] = frozenset()
    qubit_order: tuple[int, ...] = ()

    @property
    def n_qubits(self) -> int:
        return len(self.strings[0]) if self.strings else 0

    @property
    def support(self) -> frozenset[int]:
        out: set[int] = set()
        for s in self.strings:
            out |= s.support
        return frozenset(out)

    def leaf_ops(self) -> dict[int, str]:
        """Operator carried on each leaf qubit (identical across strings)."""
        first = self.strings[0].ops
        return {q: first[q] for q in self.leaf_set}


@dataclass(frozen=True)
class Kernel:
    n_qubits: int
    blocks: tuple[TetrisBlock, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for b in self.blocks:
            for s in b.strings:
                if len(s) != self.n_qubits:
                    raise ValueError(
                        f"string {s.ops!r} has length {len(s)}, kernel has {self.n_qubits} qubits"
                    )

    @property
    def n_strings(self) -> int:
        return sum(len(b.strings) for b in self.blocks)


def make_block(strings: Iterable[str | PauliString], angle_ref: str = "theta") -> TetrisBlock:
    """Build an IR block from raw words (or PauliStrings)."""
    items = tuple(s if isinstance(s, PauliString) else PauliString(s, 1.0, angle_ref) for s in strings)
    return build_block_ir(TetrisBlock(items))


def make_kernel(blocks: Sequence[Iterable[str | PauliString]]) -> Kernel:
    built = tuple(make_block(b, angle_ref=f"t{i}") for i, b in enumerate(blocks))
    if not built:
        raise ValueError("kernel needs at least one block")
    return Kernel(built[0].n_qubits, built)


def parse_kernel(text: str) -> Kernel:
    """Parse kernel text into an IR kernel (root/leaf sets populated)."""
    blocks: list[list[PauliString]] = []
    n_qubits: int | None = None
    blanks = 0
    first_blank = 0
    lines = text.splitlines()

    for lineno, raw in enumerate(lines, start=1):
        if not raw.strip():
            if blocks:
                blanks += 1
                if blanks == 2:
                    first_blank = lineno
            continue
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if blanks >= 2:
            raise IRParseError("empty block (more than one blank line between blocks)", first_blank)
        word, _, tail = body.partition(";")
        word = word.strip()
        coefficient = 1.0
        if tail.strip():
            m = _WEIGHT_RE.match(tail.strip())
            if not m:
                raise IRParseError(f"expected '; w=<float>', got {tail.strip()!r}", lineno)
            try:
                coefficient = float(m.group(1))
            except ValueError:
                raise IRParseError(f"bad weight {m.group(1)!r}", lineno) from None
        if not word:
            raise IRParseError("missing Pauli word", lineno)
        for ch in word:
            if ch not in PAULI_OPS:
                raise IRParseError(f"invalid operator {ch!r}", lineno)
        if n_qubits is None:
            n_qubits = len(word)
        elif len(word) != n_qubits:
            raise IRParseError(f"string length {len(word)} differs from kernel width {n_qubits}", lineno)
        if not blocks or blanks:
            blocks.append([])
        blanks = 0
        blocks[-1].append(PauliString(word, coefficient, f"t{len(blocks) - 1}"))

    if n_qubits is None:
        raise IRParseError("empty kernel: no Pauli strings found", max(len(lines), 1))
    return Kernel(n_qubits, tuple(build_block_ir(TetrisBlock(tuple(b))) for b in blocks))


def format_kernel(kernel: Kernel) -> str:
    """Inverse of :func:`parse_kernel` (angle refs follow block position)."""
    chunks = []
    for block in kernel.blocks:
        lines = []
        for s in block.strings:
            lines.append(s.ops if s.coefficient == 1.0 else f"{s.ops} ; w={s.coefficient!r}")
        chunks.append("\n".join(lines))
    return "\n\n".join(chunks) + "\n"


def build_block_ir(block: TetrisBlock) -> TetrisBlock:
    if not block.strings:
        raise ValueError("block has no strings")
    words = [s.ops for s in block.strings]
    n = len(words[0])
    support = {i for w in words for i, op in enumerate(w) if op != "I"}
    if len(words) == 1:
        leaf: set[int] = set()
    else:
        leaf = {i for i in range(n) if words[0][i] != "I" and all(w[i] == words[0][i] for w in words)}
    root = support - leaf
    order = tuple(sorted(root)) + tuple(sorted(leaf))
    return replace(block, leaf_set=frozenset(leaf), root_set=frozenset(root), qubit_order=order)


def build_tetris_ir(kernel: Kernel) -> Kernel:
    """Recompute root/leaf sets for every block. Idempotent."""
    return Kernel(kernel.n_qubits, tuple(build_block_ir(b) for b in kernel.blocks))


def active_length(block: TetrisBlock) -> int:
    """Number of qubits with a non-identity operator in some string."""
    return len(block.root_set) + len(block.leaf_set)
