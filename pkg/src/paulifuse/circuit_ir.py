"""Compiled-program assembly, emission, and the analytic cost model.

A compiled program is a sequence of segments, each a Clifford frame, one
layer of rotation blocks on pairwise disjoint supports, and the inverse
frame.  Blocks hold conjugated rotations confined to one or two qubits and
stay unsynthesized; the cost model prices them analytically: a width-1
block costs coeff_1q * log2(1/eps) T gates per rotation budgeted at
eps = eps_base * n_paulis / n_unitaries, a width-2 block coeff_2q.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .grouping import ANTI_1Q, ANTI_2Q, COMMUTING, Group, Schedule, reorder
from .pauli import PauliTerm
from .synth import ConjugationResult, conjugate_members
from .tableau import (
    CX,
    CliffordCircuit,
    CliffordGate,
    H,
    Sdg,
    Tableau,
    conjugate_term,
    empty_circuit,
)


class ScheduleViolation(ValueError):
    """Two units in one declared layer overlap on a qubit."""


@dataclass(frozen=True)
class BlockOp:
    """One conjugated rotation inside a block.

    ``pauli`` holds the operator letters on the block's support qubits in
    support order.  The empty string marks the flagged phase-only op of an
    all-identity source term; it synthesizes to nothing.
    """

    pauli: str
    angle: float
    origin: int


@dataclass(frozen=True)
class RotationBlock:
    """Ordered rotations fused onto a 1- or 2-qubit support."""

    support: tuple[int, ...]
    ops: tuple[BlockOp, ...]

    @property
    def origin_ids(self) -> tuple[int, ...]:
        return tuple(op.origin for op in self.ops)

    @property
    def width(self) -> int:
        return len(self.support)

    def is_noop(self) -> bool:
        return all(set(op.pauli) <= {"I"} for op in self.ops)


@dataclass(frozen=True)
class Segment:
    frame: CliffordCircuit
    layers: tuple[tuple[RotationBlock, ...], ...]
    unframe: CliffordCircuit


@dataclass(frozen=True)
class CompiledProgram:
    n: int
    segments: tuple[Segment, ...]
    mode: str = "unknown"
    window: int | None = None

    def blocks(self) -> list[RotationBlock]:
        return [b for seg in self.segments for layer in seg.layers for b in layer]

    def compiled_order(self) -> list[int]:
        """Origin term ids in program execution order."""
        return [o for b in self.blocks() for o in b.origin_ids]


@dataclass(frozen=True)
class CostModel:
    """Analytic synthesizer model: T count per rotation block."""

    eps_base: float = 0.001
    coeff_1q: float = 3.0
    coeff_2q: float = 11.5
    clifford_per_t: float = 2.5

    def __post_init__(self) -> None:
        if not 0.0 < self.eps_base < 1.0:
            raise ValueError(f"eps_base must lie in (0, 1), got {self.eps_base}")
        if self.coeff_1q <= 0 or self.coeff_2q <= 0 or self.clifford_per_t < 0:
            raise ValueError("cost coefficients must be positive")

    def block_coeff(self, width: int) -> float:
        return self.coeff_1q if width <= 1 else self.coeff_2q


@dataclass(frozen=True)
class MetricsReport:
    unitary_count: int
    unitary_depth: int
    structural_clifford_count: int
    eps_per_unitary: float
    est_t_count: float
    est_t_depth: float
    est_total_clifford: float

    def to_dict(self) -> dict:
        return {
            "unitary_count": self.unitary_count,
            "unitary_depth": self.unitary_depth,
            "structural_clifford_count": self.structural_clifford_count,
            "eps_per_unitary": self.eps_per_unitary,
            "est_t_count": self.est_t_count,
            "est_t_depth": self.est_t_depth,
            "est_total_clifford": self.est_total_clifford,
        }


@dataclass(frozen=True)
class CompiledUnit:
    """One group's contribution before scheduling."""

    frame: CliffordCircuit
    blocks: tuple[RotationBlock, ...]
    support: frozenset[int]


def _restrict_label(term: PauliTerm, support: tuple[int, ...]) -> str:
    return "".join(term.op_at(q) for q in support)


def _block_for_anti_group(
    members: Tableau, conjugated: Tableau, support: frozenset[int]
) -> RotationBlock:
    cols = tuple(sorted(support))
    ops = []
    for original, row in zip(members.rows, conjugated.rows):
        ops.append(BlockOp(_restrict_label(row, cols), original.angle * row.sign, original.id))
    return RotationBlock(cols, tuple(ops))


def build_unit(group: Group, conj: ConjugationResult, terms: list[PauliTerm]) -> CompiledUnit:
    """Conjugate a group's members and package its blocks.

    Anticommuting groups fuse all members into one block on the pivot
    support; commuting groups emit one single-qubit block per member, all
    parallel.  A flagged identity singleton becomes a phase-only block.
    """
    members = Tableau(tuple(terms[i] for i in group.member_ids))
    if group.kind == COMMUTING and not group.generator_ids:
        (term,) = members.rows
        block = RotationBlock((), (BlockOp("", term.angle, term.id),))
        return CompiledUnit(empty_circuit(term.n), (block,), frozenset())
    conjugated = conjugate_members(members, conj)
    support = frozenset(conj.support) | conj.circuit.touched_qubits()
    if group.kind in (ANTI_1Q, ANTI_2Q):
        blocks = (_block_for_anti_group(members, conjugated, conj.support),)
    else:
        blocks = tuple(
            RotationBlock(
                (pivot,),
                (BlockOp(row.op_at(pivot), original.angle * row.sign, original.id),),
            )
            for pivot, original, row in zip(conj.pivots, members.rows, conjugated.rows)
        )
    return CompiledUnit(conj.circuit, blocks, support)


def units_to_program(
    units: list[CompiledUnit],
    schedule: Schedule,
    n: int,
    mode: str,
    window: int | None = None,
) -> CompiledProgram:
    """Fold scheduled units into segments, one block layer per segment."""
    segments = []
    for layer in schedule.layers:
        frame = empty_circuit(n)
        blocks: list[RotationBlock] = []
        occupied: set[int] = set()
        for gi in layer:
            unit = units[gi]
            if occupied & unit.support:
                raise ScheduleViolation(
                    f"unit {gi} overlaps qubits {sorted(occupied & unit.support)} in its layer"
                )
            occupied |= unit.support
            frame = frame.concat(unit.frame)
            blocks.extend(unit.blocks)
        segments.append(Segment(frame, (tuple(blocks),), frame.inverse()))
    return CompiledProgram(n, tuple(segments), mode=mode, window=window)


def assemble(
    groups: list[Group],
    conjugations: list[ConjugationResult],
    schedule: Schedule,
    terms: list[PauliTerm],
    mode: str = "unknown",
    window: int | None = None,
) -> CompiledProgram:
    """Build the compiled program for already-reduced groups."""
    if len(groups) != len(conjugations):
        raise ValueError("one conjugation result per group required")
    if not terms:
        return CompiledProgram(0 if not groups else terms[0].n, (), mode=mode, window=window)
    units = [build_unit(g, c, terms) for g, c in zip(groups, conjugations)]
    return units_to_program(units, schedule, terms[0].n, mode, window)


def baseline_compile(terms: list[PauliTerm]) -> CompiledProgram:
    """One rotation block per term behind its own basis-change/CNOT frame.

    The frame maps X to Z with H and Y to Z with Sdg then H, then chains
    CNOTs onto the highest-index non-trivial qubit, so every term reduces
    to a plain Z rotation there.
    """
    if not terms:
        return CompiledProgram(0, (), mode="baseline")
    n = terms[0].n
    units = []
    for term in terms:
        support = term.support()
        if not support:
            block = RotationBlock((), (BlockOp("", term.angle, term.id),))
            units.append(CompiledUnit(empty_circuit(n), (block,), frozenset()))
            continue
        gates: list[CliffordGate] = []
        for q in support:
            op = term.op_at(q)
            if op == "X":
                gates.append(H(q))
            elif op == "Y":
                gates.append(Sdg(q))
                gates.append(H(q))
        for a, b in zip(support, support[1:]):
            gates.append(CX(a, b))
        circuit = CliffordCircuit(tuple(gates), n)
        target = support[-1]
        reduced = conjugate_term(term, circuit)
        if reduced.op_at(target) != "Z" or reduced.weight() != 1:
            raise AssertionError(f"baseline reduction failed for term {term.id}")
        block = RotationBlock((target,), (BlockOp("Z", term.angle * reduced.sign, term.id),))
        units.append(CompiledUnit(circuit, (block,), frozenset(support)))
    schedule = reorder(units, [u.support for u in units])
    return units_to_program(units, schedule, n, "baseline")


def metrics(p: CompiledProgram, model: CostModel, n_paulis: int) -> MetricsReport:
    """Structural counts plus modeled T and Clifford costs.

    The per-unitary budget relaxes with fusion: eps_per_unitary scales by
    n_paulis / unitary_count, so fewer unitaries are each cheaper to
    synthesize as well as fewer in number.
    """
    live_blocks = [b for b in p.blocks() if not b.is_noop()]
    unitary_count = len(live_blocks)
    structural = sum(len(seg.frame) + len(seg.unframe) for seg in p.segments)
    if unitary_count == 0:
        return MetricsReport(0, 0, structural, 0.0, 0.0, 0.0, float(structural))
    if n_paulis < unitary_count:
        raise ValueError("n_paulis cannot be smaller than the unitary count")
    eps_u = model.eps_base * n_paulis / unitary_count
    bits = math.log2(1.0 / eps_u)
    est_t = sum(model.block_coeff(b.width) * bits for b in live_blocks)
    depth = 0
    est_t_depth = 0.0
    for seg in p.segments:
        for layer in seg.layers:
            live = [b for b in layer if not b.is_noop()]
            if not live:
                continue
            depth += 1
            est_t_depth += max(model.block_coeff(b.width) * bits for b in live)
    return MetricsReport(
        unitary_count=unitary_count,
        unitary_depth=depth,
        structural_clifford_count=structural,
        eps_per_unitary=eps_u,
        est_t_count=est_t,
        est_t_depth=est_t_depth,
        est_total_clifford=structural + model.clifford_per_t * est_t,
    )


# ---------------------------------------------------------------------------
# emission


def _gate_line(gate: CliffordGate) -> str:
    if gate.kind == "cx":
        return f"cx q[{gate.qubits[0]}],q[{gate.qubits[1]}];"
    return f"{gate.kind} q[{gate.qubits[0]}];"


def emit_qasm(p: CompiledProgram) -> str:
    """Readable gate listing with ``rot`` pragmas for unsynthesized blocks."""
    lines = [f"// paulifuse program: mode={p.mode} qubits={p.n}"]
    for si, seg in enumerate(p.segments):
        lines.append(f"// segment {si}")
        lines.extend(_gate_line(g) for g in seg.frame)
        for layer in seg.layers:
            for block in layer:
                for op in block.ops:
                    if set(op.pauli) <= {"I"}:
                        lines.append(f"// phase-only term {op.origin}: angle {op.angle!r}")
                    else:
                        qubits = ",".join(f"q[{q}]" for q in block.support)
                        lines.append(f"rot {op.pauli} {op.angle!r} {qubits};")
        lines.extend(_gate_line(g) for g in seg.unframe)
    return "\n".join(lines) + "\n"


def _circuit_to_json(c: CliffordCircuit) -> list[list]:
    return [[g.kind, *g.qubits] for g in c.gates]


def _circuit_from_json(data: list[list], n: int) -> CliffordCircuit:
    return CliffordCircuit(tuple(CliffordGate(item[0], tuple(item[1:])) for item in data), n)


def program_to_dict(p: CompiledProgram) -> dict:
    return {
        "version": 1,
        "qubits": p.n,
        "mode": p.mode,
        "window": p.window,
        "segments": [
            {
                "frame": _circuit_to_json(seg.frame),
                "layers": [
                    [
                        {
                            "support": list(block.support),
                            "ops": [
                                {"pauli": op.pauli, "angle": op.angle, "origin": op.origin}
                                for op in block.ops
                            ],
                        }
                        for block in layer
                    ]
                    for layer in seg.layers
                ],
                "unframe": _circuit_to_json(seg.unframe),
            }
            for seg in p.segments
        ],
    }


def program_from_dict(data: dict) -> CompiledProgram:
    n = data["qubits"]
    segments = []
    for seg in data["segments"]:
        layers = tuple(
            tuple(
                RotationBlock(
                    tuple(block["support"]),
                    tuple(
                        BlockOp(op["pauli"], float(op["angle"]), int(op["origin"]))
                        for op in block["ops"]
                    ),
                )
                for block in layer
            )
            for layer in seg["layers"]
        )
        segments.append(
            Segment(
                _circuit_from_json(seg["frame"], n),
                layers,
                _circuit_from_json(seg["unframe"], n),
            )
        )
    return CompiledProgram(n, tuple(segments), mode=data.get("mode", "unknown"),
                           window=data.get("window"))


def emit(p: CompiledProgram, format: str) -> str:
    """Serialize a program; byte-deterministic for a fixed program."""
    if format in ("qasm", "qasm-like"):
        return emit_qasm(p)
    if format == "json":
        return json.dumps(program_to_dict(p), indent=2, sort_keys=True) + "\n"
    raise ValueError(f"unknown emit format {format!r}; expected qasm or json")
