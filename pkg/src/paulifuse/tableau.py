"""Clifford gates, circuits, and tableau conjugation with sign tracking.

A tableau is an ordered list of Pauli terms sharing one qubit count.
Conjugating by a gate updates the x/z columns of every row at once and
never permutes rows.  The sign column follows the standard stabilizer
update rules, which reproduce the textbook single-gate conjugation table
(H: X<->Z, Y -> -Y; S: X -> Y, Y -> -X; CNOT propagates X control->target
and Z target->control); the dense-matrix oracle pins this down in tests.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Iterator

from .pauli import DimensionError, PauliTerm

GATE_KINDS = ("h", "s", "sdg", "cx")

_INVERSE_KIND = {"h": "h", "s": "sdg", "sdg": "s", "cx": "cx"}


@dataclass(frozen=True)
class CliffordGate:
    """One of H, S, S-dagger, or CNOT on explicit qubit indices."""

    kind: str
    qubits: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        want = 2 if self.kind == "cx" else 1
        if len(self.qubits) != want:
            raise ValueError(f"{self.kind} takes {want} qubit(s), got {self.qubits}")
        if self.kind == "cx" and self.qubits[0] == self.qubits[1]:
            raise ValueError("cx control and target must differ")

    def inverse(self) -> "CliffordGate":
        return CliffordGate(_INVERSE_KIND[self.kind], self.qubits)


def H(q: int) -> CliffordGate:
    return CliffordGate("h", (q,))


def S(q: int) -> CliffordGate:
    return CliffordGate("s", (q,))


def Sdg(q: int) -> CliffordGate:
    return CliffordGate("sdg", (q,))


def CX(control: int, target: int) -> CliffordGate:
    return CliffordGate("cx", (control, target))


@dataclass(frozen=True)
class CliffordCircuit:
    """Ordered gate list; gates[0] acts first."""

    gates: tuple[CliffordGate, ...]
    n: int

    def __post_init__(self) -> None:
        for g in self.gates:
            if any(q < 0 or q >= self.n for q in g.qubits):
                raise IndexError(f"gate {g} out of range for {self.n} qubits")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[CliffordGate]:
        return iter(self.gates)

    def inverse(self) -> "CliffordCircuit":
        return CliffordCircuit(tuple(g.inverse() for g in reversed(self.gates)), self.n)

    def touched_qubits(self) -> frozenset[int]:
        return frozenset(q for g in self.gates for q in g.qubits)

    def concat(self, other: "CliffordCircuit") -> "CliffordCircuit":
        if other.n != self.n:
            raise DimensionError(f"qubit counts differ: {self.n} vs {other.n}")
        return CliffordCircuit(self.gates + other.gates, self.n)


def empty_circuit(n: int) -> CliffordCircuit:
    return CliffordCircuit((), n)


def apply_gate_bits(x: int, z: int, r: int, gate: CliffordGate) -> tuple[int, int, int]:
    """Conjugate one row, given as (x bits, z bits, sign bit), by one gate."""
    kind = gate.kind
    if kind == "cx":
        c, t = gate.qubits
        xc = (x >> c) & 1
        zc = (z >> c) & 1
        xt = (x >> t) & 1
        zt = (z >> t) & 1
        r ^= xc & zt & (xt ^ zc ^ 1)
        x ^= (xc << t)
        z ^= (zt << c)
        return x, z, r
    (q,) = gate.qubits
    m = 1 << q
    xq = x & m
    zq = z & m
    if kind == "h":
        if xq and zq:
            r ^= 1
        x = (x & ~m) | zq
        z = (z & ~m) | xq
    elif kind == "s":
        if xq and zq:
            r ^= 1
        z ^= xq
    else:  # sdg
        if xq and not zq:
            r ^= 1
        z ^= xq
    return x, z, r


@dataclass(frozen=True)
class Tableau:
    """Ordered rows of Pauli terms with a shared qubit count."""

    rows: tuple[PauliTerm, ...]

    def __post_init__(self) -> None:
        if not self.rows:
            raise ValueError("tableau needs at least one row")
        n = self.rows[0].n
        if any(row.n != n for row in self.rows):
            raise DimensionError("tableau rows have mixed qubit counts")

    @classmethod
    def from_terms(cls, terms: Iterable[PauliTerm]) -> "Tableau":
        return cls(tuple(terms))

    @property
    def n(self) -> int:
        return self.rows[0].n

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[PauliTerm]:
        return iter(self.rows)


def conjugate_gate(t: Tableau, gate: CliffordGate) -> Tableau:
    """Conjugate every row by one Clifford gate: row_i -> g . row_i . g^dagger."""
    if any(q < 0 or q >= t.n for q in gate.qubits):
        raise IndexError(f"gate {gate} out of range for {t.n} qubits")
    out = []
    for row in t.rows:
        x, z, r = apply_gate_bits(row.x_bits, row.z_bits, 0 if row.sign > 0 else 1, gate)
        out.append(replace(row, x_bits=x, z_bits=z, sign=-1 if r else 1))
    return Tableau(tuple(out))


def conjugate_circuit(t: Tableau, circuit: CliffordCircuit) -> Tableau:
    """Conjugate every row by the whole circuit, first gate first."""
    if circuit.n != t.n:
        raise DimensionError(f"qubit counts differ: {t.n} vs {circuit.n}")
    for gate in circuit.gates:
        t = conjugate_gate(t, gate)
    return t


def conjugate_term(term: PauliTerm, circuit: CliffordCircuit) -> PauliTerm:
    return conjugate_circuit(Tableau((term,)), circuit).rows[0]
