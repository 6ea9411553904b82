"""OpenQASM 2.0 emission and a parser for the emitted subset."""

from __future__ import annotations

import re
from typing import Iterable, Mapping

from .circuit import Circuit, Gate, as_angle

_LINE = re.compile(r"^(h|x|rx|rz|cx|reset)(?:\(([^)]*)\))?\s+(q\[\d+\](?:\s*,\s*q\[\d+\])?)\s*;$")
_QUBIT = re.compile(r"q\[(\d+)\]")


class QasmError(ValueError):
    pass


def to_qasm(circ: Circuit, bindings: Mapping[str, float] | None = None,
            comments: Iterable[str] = ()) -> str:
    """Emit OpenQASM 2.0. SWAPs are decomposed; symbolic angles are bound."""
    bindings = bindings or {}
    lines = [f"// {c}" for c in comments]
    lines += ["OPENQASM 2.0;", 'include "qelib1.inc";', f"qreg q[{circ.n_qubits}];"]
    for g in circ.decompose_swaps():
        args = ",".join(f"q[{q}]" for q in g.qubits)
        if g.name in ("rx", "rz"):
            value = as_angle(g.angle).evaluate(bindings)
            lines.append(f"{g.name}({value!r}) {args};")
        else:
            lines.append(f"{g.name} {args};")
    return "\n".join(lines) + "\n"


def parse_qasm(text: str) -> Circuit:
    n = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("//", 1)[0].strip()
        if not line or line.startswith(("OPENQASM", "include")):
            continue
        m = re.match(r"^qreg\s+q\[(\d+)\];$", line)
        if m:
            n = int(m.group(1))
            continue
        m = _LINE.match(line)
        if not m:
            raise QasmError(f"line {lineno}: unsupported statement {line!r}")
        name, arg, operands = m.groups()
        qubits = tuple(int(x) for x in _QUBIT.findall(operands))
        angle = float(arg) if arg is not None else None
        gates.append(Gate(name, qubits, as_angle(angle) if name == "rz" else angle))
    if n is None:
        raise QasmError("missing qreg declaration")
    return Circuit(n, gates)
