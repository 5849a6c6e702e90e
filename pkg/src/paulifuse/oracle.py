"""Dense complex-matrix reference implementation for small instances.

Tensor convention, fixed globally: qubit 0 is the leftmost factor, so
``M(P) = sign * kron(sigma_q0, sigma_q1, ..., sigma_q(n-1))``.  Mismatched
conventions are the dominant source of verification bugs; every matrix in
this package goes through the helpers here.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .pauli import DimensionError, PauliTerm
from .tableau import CliffordCircuit, CliffordGate

DEFAULT_QUBIT_CAP = 12

_SIGMA = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_S = np.array([[1, 0], [0, 1j]], dtype=complex)
_SDG = _S.conj().T


class OracleCapExceeded(ValueError):
    """Raised when a dense-matrix request exceeds the qubit cap."""


def qubit_cap() -> int:
    """Dense-matrix qubit limit; the NCF_ORACLE_CAP env var overrides it."""
    raw = os.environ.get("NCF_ORACLE_CAP")
    if raw is None:
        return DEFAULT_QUBIT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise OracleCapExceeded(f"NCF_ORACLE_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise OracleCapExceeded(f"NCF_ORACLE_CAP must be >= 1, got {cap}")
    return cap


def _check_cap(n: int, cap: int | None = None) -> None:
    limit = qubit_cap() if cap is None else cap
    if n > limit:
        raise OracleCapExceeded(f"{n} qubits exceeds the dense-matrix cap of {limit}")


def _embed_1q(mat: np.ndarray, q: int, n: int) -> np.ndarray:
    out = np.eye(1, dtype=complex)
    for i in range(n):
        out = np.kron(out, mat if i == q else _SIGMA["I"])
    return out


def _cx_matrix(control: int, target: int, n: int) -> np.ndarray:
    dim = 1 << n
    out = np.zeros((dim, dim), dtype=complex)
    for basis in range(dim):
        # Basis index reads qubit 0 from the most significant bit, matching
        # the qubit-0-leftmost kron order.
        cbit = (basis >> (n - 1 - control)) & 1
        flipped = basis ^ (cbit << (n - 1 - target))
        out[flipped, basis] = 1.0
    return out


def pauli_matrix(p: PauliTerm, cap: int | None = None) -> np.ndarray:
    """Signed dense matrix of a Pauli term."""
    _check_cap(p.n, cap)
    out = np.eye(1, dtype=complex)
    for q in range(p.n):
        out = np.kron(out, _SIGMA[p.op_at(q)])
    return p.sign * out


def exp_pauli(p: PauliTerm, theta: float, cap: int | None = None) -> np.ndarray:
    """``exp(-i * theta/2 * M(p))``; exact because ``M(p)^2 = I``."""
    _check_cap(p.n, cap)
    dim = 1 << p.n
    return np.cos(theta / 2.0) * np.eye(dim, dtype=complex) - 1j * np.sin(theta / 2.0) * pauli_matrix(p, cap=cap)


def gate_matrix(gate: CliffordGate, n: int) -> np.ndarray:
    if gate.kind == "h":
        return _embed_1q(_H, gate.qubits[0], n)
    if gate.kind == "s":
        return _embed_1q(_S, gate.qubits[0], n)
    if gate.kind == "sdg":
        return _embed_1q(_SDG, gate.qubits[0], n)
    return _cx_matrix(gate.qubits[0], gate.qubits[1], n)


def circuit_unitary(circuit: CliffordCircuit, cap: int | None = None) -> np.ndarray:
    """Ordered product of gate matrices; gates[0] is applied first."""
    _check_cap(circuit.n, cap)
    out = np.eye(1 << circuit.n, dtype=complex)
    for gate in circuit.gates:
        out = gate_matrix(gate, circuit.n) @ out
    return out


def block_unitary(block, n: int, cap: int | None = None) -> np.ndarray:
    """Ordered product of the block's rotation exponentials."""
    from .pauli import parse_pauli

    _check_cap(n, cap)
    out = np.eye(1 << n, dtype=complex)
    for op in block.ops:
        if set(op.pauli) <= {"I"} or not op.pauli:
            # Phase-only op from an all-identity source term.
            out = np.exp(-1j * op.angle / 2.0) * out
            continue
        x = z = 0
        probe = parse_pauli(op.pauli)
        for pos, q in enumerate(block.support):
            x |= ((probe.x_bits >> pos) & 1) << q
            z |= ((probe.z_bits >> pos) & 1) << q
        out = exp_pauli(PauliTerm(x, z, n), op.angle, cap=cap) @ out
    return out


def segment_unitary(segment, n: int, cap: int | None = None) -> np.ndarray:
    out = circuit_unitary(segment.frame, cap=cap)
    for layer in segment.layers:
        for block in layer:
            out = block_unitary(block, n, cap=cap) @ out
    return circuit_unitary(segment.unframe, cap=cap) @ out


def program_unitary(program, cap: int | None = None) -> np.ndarray:
    """Dense unitary of a whole compiled program."""
    _check_cap(program.n, cap)
    out = np.eye(1 << program.n, dtype=complex)
    for segment in program.segments:
        out = segment_unitary(segment, program.n, cap=cap) @ out
    return out


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    failed_segments: tuple[int, ...]
    max_deviation: float

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "failed_segments": list(self.failed_segments),
            "max_deviation": self.max_deviation,
        }


def _phase_aligned_deviation(u: np.ndarray, v: np.ndarray) -> float:
    tr = np.trace(v.conj().T @ u)
    phi = tr / abs(tr) if abs(tr) > 1e-14 else 1.0
    return float(np.linalg.norm(u - phi * v))


def verify_program(program, terms, tol: float = 1e-8, cap: int | None = None) -> VerifyReport:
    """Check each segment against the ordered product of its source rotations.

    Every segment must equal, up to a global phase, the product of
    ``exp(-i angle/2 P)`` over the origin terms of its blocks in compiled
    order; segments compose exactly, so segment-level agreement implies
    whole-program agreement.
    """
    _check_cap(program.n, cap)
    by_id = {t.id: t for t in terms}
    failed = []
    worst = 0.0
    for si, segment in enumerate(program.segments):
        got = segment_unitary(segment, program.n, cap=cap)
        want = np.eye(1 << program.n, dtype=complex)
        for layer in segment.layers:
            for block in layer:
                for op in block.ops:
                    term = by_id[op.origin]
                    want = exp_pauli(term, term.angle, cap=cap) @ want
        dev = _phase_aligned_deviation(got, want)
        worst = max(worst, dev)
        if dev > tol:
            failed.append(si)
    return VerifyReport(not failed, tuple(failed), worst)


def equal_up_to_phase(u: np.ndarray, v: np.ndarray, tol: float) -> bool:
    """True iff ``min over |phi|=1 of ||u - phi v||_F <= tol``.

    The optimal phase is ``trace(v^dagger u)`` normalized; when that trace
    vanishes the phase is read off the largest-magnitude entry of v.
    """
    if u.shape != v.shape:
        raise DimensionError(f"shape mismatch: {u.shape} vs {v.shape}")
    tr = np.trace(v.conj().T @ u)
    if abs(tr) > 1e-14:
        phi = tr / abs(tr)
    else:
        idx = np.unravel_index(np.argmax(np.abs(v)), v.shape)
        if abs(v[idx]) < 1e-14:
            phi = 1.0
        else:
            phi = u[idx] / v[idx]
            mag = abs(phi)
            phi = phi / mag if mag > 1e-14 else 1.0
    return float(np.linalg.norm(u - phi * v)) <= tol
