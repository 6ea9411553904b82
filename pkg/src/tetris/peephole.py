"""Adjacent-gate cancellation.

Each wire keeps a stack of the live gates touching it. A new gate is
compared with the top of the stacks it touches: inverse pairs vanish and
adjacent RZ rotations merge into one. SWAP and RESET never cancel, so they
act as barriers.
"""

from __future__ import annotations

from .circuit import Circuit, Gate, as_angle


def _pass(gates: list[Gate], n_qubits: int) -> tuple[list[Gate], int, int]:
    out: list[Gate | None] = []
    stacks: list[list[int]] = [[] for _ in range(n_qubits)]
    cx_gone = oneq_gone = 0

    def drop(i: int) -> None:
        for q in out[i].qubits:  # type: ignore[union-attr]
            stacks[q].pop()
        out[i] = None

    for g in gates:
        tops = [stacks[q][-1] if stacks[q] else None for q in g.qubits]
        i = tops[0]
        same_top = i is not None and all(t == i for t in tops)
        prev = out[i] if same_top else None
        if prev is not None and prev.qubits == g.qubits and g.name not in ("swap", "reset"):
            if g.inverts(prev):
                drop(i)  # type: ignore[arg-type]
                if g.name == "cx":
                    cx_gone += 2
                else:
                    oneq_gone += 2
                continue
            if g.name == "rz" and prev.name == "rz":
                merged = as_angle(prev.angle) + as_angle(g.angle)
                out[i] = Gate("rz", g.qubits, merged)  # type: ignore[index]
                oneq_gone += 1
                continue
        out.append(g)
        for q in g.qubits:
            stacks[q].append(len(out) - 1)
    return [g for g in out if g is not None], cx_gone, oneq_gone


def cancel(circuit: Circuit) -> tuple[Circuit, int, int]:
    """Cancel inverse neighbours to a fixpoint.

    Returns the reduced circuit, the number of CNOTs removed and the number
    of single-qubit gates removed (an RZ merge removes one).
    """
    gates = list(circuit.gates)
    total_cx = total_1q = 0
    while True:
        gates, cx, oneq = _pass(gates, circuit.n_qubits)
        total_cx += cx
        total_1q += oneq
        if cx == 0 and oneq == 0:
            return Circuit(circuit.n_qubits, gates), total_cx, total_1q


def gate_cancellation_ratio(before: Circuit, canceled_cnots: int) -> float | None:
    """Canceled CNOTs over the logical CNOTs of ``before`` (SWAPs excluded).

    Returns None when ``before`` has no CNOTs.
    """
    total = before.count("cx")
    if total == 0:
        return None
    if not 0 <= canceled_cnots <= total:
        raise ValueError(f"canceled count {canceled_cnots} outside 0..{total}")
    return canceled_cnots / total
