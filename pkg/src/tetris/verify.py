"""Dense statevector checks for small circuits (big-endian: qubit 0 is the
most significant bit)."""

from __future__ import annotations

import math
import random
from typing import Iterable, Mapping, Sequence

import numpy as np

from .circuit import Circuit, as_angle
from .pauli import Kernel, PauliString

MAX_QUBITS = 12

_H = np.array([[1, 1], [1, -1]], dtype=complex) / math.sqrt(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)


def _rx(t: float) -> np.ndarray:
    c, s = math.cos(t / 2), math.sin(t / 2)
    return np.array([[c, -1j * s], [-1j * s, c]])


def _rz(t: float) -> np.ndarray:
    return np.diag([np.exp(-0.5j * t), np.exp(0.5j * t)])


def _check_size(n: int, limit: int = MAX_QUBITS) -> None:
    if n > limit:
        raise ValueError(f"dense verification limited to {limit} qubits, got {n}")


def random_bindings(symbols: Iterable[str], seed: int = 0) -> dict[str, float]:
    rng = random.Random(seed)
    return {s: rng.uniform(-math.pi, math.pi) for s in sorted(set(symbols))}


def apply_circuit(circuit: Circuit, states: np.ndarray, bindings: Mapping[str, float] | None = None) -> np.ndarray:
    """Apply ``circuit`` to each column of ``states`` (shape ``(2**n, batch)``)."""
    n = circuit.n_qubits
    _check_size(n, 24)
    batch = states.shape[1]
    psi = np.array(states, dtype=complex).reshape((2,) * n + (batch,))
    bindings = bindings or {}
    for g in circuit.gates:
        if g.name == "swap":
            a, b = g.qubits
            psi = np.swapaxes(psi, a, b)
            continue
        if g.name == "cx":
            c, t = g.qubits
            idx: list[slice | int] = [slice(None)] * (n + 1)
            idx[c] = 1
            sub = psi[tuple(idx)]
            psi = psi.copy()
            psi[tuple(idx)] = np.flip(sub, axis=t if t < c else t - 1)
            continue
        if g.name == "reset":
            raise ValueError("reset is not unitary; disable qubit reclaim for verification")
        q = g.qubits[0]
        if g.name == "h":
            m = _H
        elif g.name == "x":
            m = _X
        elif g.name == "rx":
            m = _rx(as_angle(g.angle).evaluate(bindings))
        else:
            m = _rz(as_angle(g.angle).evaluate(bindings))
        psi = np.moveaxis(np.tensordot(m, psi, axes=([1], [q])), 0, q)
    return np.ascontiguousarray(psi).reshape(2**n, batch)


def circuit_unitary(circuit: Circuit, bindings: Mapping[str, float] | None = None) -> np.ndarray:
    _check_size(circuit.n_qubits)
    return apply_circuit(circuit, np.eye(2**circuit.n_qubits, dtype=complex), bindings)


def pauli_matrix(ops: str) -> np.ndarray:
    table = {
        "I": np.eye(2, dtype=complex),
        "X": _X,
        "Y": np.array([[0, -1j], [1j, 0]]),
        "Z": np.diag([1, -1]).astype(complex),
    }
    out = np.ones((1, 1), dtype=complex)
    for op in ops:
        out = np.kron(out, table[op])
    return out


def apply_pauli(ops: str, states: np.ndarray) -> np.ndarray:
    """P @ states without building P."""
    n = len(ops)
    flip = zmask = 0
    n_y = 0
    for q, op in enumerate(ops):
        bit = 1 << (n - 1 - q)
        if op in "XY":
            flip |= bit
        if op in "YZ":
            zmask |= bit
        n_y += op == "Y"
    x = np.arange(2**n)
    parity = np.array([bin(v).count("1") & 1 for v in (x & zmask)])
    coeff = (1j**n_y) * (1 - 2 * parity)
    out = np.empty_like(states)
    out[x ^ flip] = coeff[:, None] * states
    return out


def pauli_exponential(ps: PauliString | str, theta: float) -> np.ndarray:
    """exp(-i theta/2 P) = cos(theta/2) I - i sin(theta/2) P."""
    ops = ps.ops if isinstance(ps, PauliString) else ps
    _check_size(len(ops))
    return math.cos(theta / 2) * np.eye(2 ** len(ops)) - 1j * math.sin(theta / 2) * pauli_matrix(ops)


def reference_unitary(kernel: Kernel, order: Sequence[int], bindings: Mapping[str, float]) -> np.ndarray:
    """Product of string exponentials, blocks in ``order``, strings in IR order."""
    n = kernel.n_qubits
    _check_size(n)
    u = np.eye(2**n, dtype=complex)
    for b in order:
        for ps in kernel.blocks[b].strings:
            t = ps.coefficient * bindings[ps.angle_ref]
            u = math.cos(t / 2) * u - 1j * math.sin(t / 2) * apply_pauli(ps.ops, u)
    return u


def embedding_indices(layout: Sequence[int], n_phys: int) -> np.ndarray:
    """Physical basis index of each logical basis state (other qubits in |0>)."""
    n_log = len(layout)
    idx = np.zeros(2**n_log, dtype=np.int64)
    for q, p in enumerate(layout):
        bit_log = (np.arange(2**n_log) >> (n_log - 1 - q)) & 1
        idx |= bit_log << (n_phys - 1 - p)
    return idx


def equivalent_up_to_phase_and_permutation(u_circ: np.ndarray, u_ref: np.ndarray,
                                           final_mapping: Sequence[int], ancilla_set: Iterable[int] = (),
                                           initial_mapping: Sequence[int] | None = None,
                                           tol: float = 1e-8, embedded: bool = False) -> bool:
    """Check E_f^dag U E_0 == e^{i phi} U_ref.

    ``u_circ`` acts on physical qubits. With ``embedded=True`` it is instead
    the tall matrix whose columns are the images of the initial embedding
    (see :func:`apply_circuit`). ``ancilla_set``
    lists physical qubits that must start and end in |0>.
    """
    n_phys = int(round(math.log2(u_circ.shape[0])))
    final = list(final_mapping)
    anc = set(ancilla_set)
    if anc & set(final):
        raise ValueError("ancilla overlaps a data qubit")
    rows = embedding_indices(final, n_phys)
    if embedded:
        m = u_circ[rows, :]
    else:
        start = list(initial_mapping) if initial_mapping is not None else list(range(len(final)))
        m = u_circ[np.ix_(rows, embedding_indices(start, n_phys))]
    k = np.unravel_index(np.argmax(np.abs(u_ref)), u_ref.shape)
    if abs(m[k]) < 1e-12:
        return False
    phase = m[k] / u_ref[k]
    if abs(abs(phase) - 1) > tol:
        return False
    return bool(np.max(np.abs(m - phase * u_ref)) <= tol)
