"""Gate netlist and symbolic rotation angles."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping

ONE_QUBIT = frozenset({"h", "x", "rx", "rz"})
TWO_QUBIT = frozenset({"cx", "swap"})
KINDS = ONE_QUBIT | TWO_QUBIT | {"reset"}

_EPS = 1e-12


@dataclass(frozen=True)
class Angle:
    """Linear form ``const + sum(coeff * symbol)`` over named rotation parameters."""

    terms: tuple[tuple[str, float], ...] = ()
    const: float = 0.0

    @classmethod
    def symbol(cls, name: str, coeff: float = 1.0) -> Angle:
        return cls(((name, float(coeff)),))

    @classmethod
    def constant(cls, value: float) -> Angle:
        return cls((), float(value))

    def __add__(self, other: Angle) -> Angle:
        acc = dict(self.terms)
        for k, v in other.terms:
            acc[k] = acc.get(k, 0.0) + v
        terms = tuple(sorted((k, v) for k, v in acc.items() if abs(v) > _EPS))
        return Angle(terms, self.const + other.const)

    def __neg__(self) -> Angle:
        return Angle(tuple((k, -v) for k, v in self.terms), -self.const)

    def is_zero(self) -> bool:
        return not self.terms and abs(self.const) <= _EPS

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(k for k, _ in self.terms)

    def evaluate(self, bindings: Mapping[str, float]) -> float:
        try:
            return self.const + sum(c * bindings[k] for k, c in self.terms)
        except KeyError as exc:
            raise KeyError(f"unbound rotation parameter {exc.args[0]!r}") from None

    def __str__(self) -> str:
        parts = [f"{c:g}*{k}" if c != 1.0 else k for k, c in self.terms]
        if self.const or not parts:
            parts.append(f"{self.const:g}")
        return " + ".join(parts)


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]
    angle: Angle | float | None = None

    def __post_init__(self):
        if self.name not in KINDS:
            raise ValueError(f"unknown gate {self.name!r}")
        arity = 2 if self.name in TWO_QUBIT else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.name} takes {arity} qubit(s), got {self.qubits}")
        if arity == 2 and self.qubits[0] == self.qubits[1]:
            raise ValueError(f"{self.name} needs distinct operands, got {self.qubits}")

    @property
    def is_two_qubit(self) -> bool:
        return self.name in TWO_QUBIT

    def inverts(self, other: Gate) -> bool:
        """True if ``other`` followed by ``self`` is the identity."""
        if self.name != other.name or self.qubits != other.qubits:
            return False
        if self.name in ("h", "x", "cx"):
            return True
        if self.name == "rx":
            return abs(float(self.angle) + float(other.angle)) <= _EPS  # type: ignore[arg-type]
        if self.name == "rz":
            return (as_angle(self.angle) + as_angle(other.angle)).is_zero()
        return False

    def __str__(self) -> str:
        arg = "" if self.angle is None else f"({self.angle})"
        return f"{self.name}{arg} " + ",".join(map(str, self.qubits))


def as_angle(value: Angle | float | None) -> Angle:
    if isinstance(value, Angle):
        return value
    return Angle.constant(0.0 if value is None else float(value))


# convenience constructors
def H(q: int) -> Gate:
    return Gate("h", (q,))


def RX(q: int, theta: float) -> Gate:
    return Gate("rx", (q,), float(theta))


def RZ(q: int, theta: Angle | float) -> Gate:
    return Gate("rz", (q,), as_angle(theta))


def CX(control: int, target: int) -> Gate:
    return Gate("cx", (control, target))


def SWAP(a: int, b: int) -> Gate:
    return Gate("swap", (a, b))


def RESET(q: int) -> Gate:
    return Gate("reset", (q,))


HALF_PI = math.pi / 2


@dataclass
class Circuit:
    n_qubits: int
    gates: list[Gate] = field(default_factory=list)

    def __post_init__(self):
        for g in self.gates:
            self._check(g)

    def _check(self, g: Gate) -> None:
        for q in g.qubits:
            if not 0 <= q < self.n_qubits:
                raise ValueError(f"{g} touches qubit {q} outside 0..{self.n_qubits - 1}")

    def append(self, g: Gate) -> None:
        self._check(g)
        self.gates.append(g)

    def extend(self, gates: Iterable[Gate]) -> None:
        for g in gates:
            self.append(g)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def count(self, name: str) -> int:
        return sum(1 for g in self.gates if g.name == name)

    def symbols(self) -> list[str]:
        seen: dict[str, None] = {}
        for g in self.gates:
            if isinstance(g.angle, Angle):
                for s in g.angle.symbols:
                    seen.setdefault(s, None)
        return list(seen)

    def decompose_swaps(self) -> Circuit:
        out = []
        for g in self.gates:
            if g.name == "swap":
                a, b = g.qubits
                out += [CX(a, b), CX(b, a), CX(a, b)]
            else:
                out.append(g)
        return Circuit(self.n_qubits, out)

    def copy(self) -> Circuit:
        return Circuit(self.n_qubits, list(self.gates))
