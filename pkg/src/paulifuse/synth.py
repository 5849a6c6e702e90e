"""Per-group Clifford circuit generation by tableau row reduction.

Each group of Pauli terms is conjugated onto a small support by reducing
its generator rows one at a time.  A "Z-target" pass turns a row into a
single Z on a fresh pivot column: H/S gates first empty the row's Z part
(H where the column holds a lone Z, S where it holds Y), rounds of
disjoint CNOTs then halve the remaining X-part 1s until one survives, and
a trailing H moves it into the Z part.  An "X-target" pass reduces the
next row to a single X on the same pivot; anticommutation with the
already-reduced partner guarantees the pivot bit is set, so CNOTs rooted
at the pivot can absorb every other 1.

When several CNOT pairings are possible the one minimizing the total
number of 1s in the generator tableau wins, ties resolved by lowest
partner column, then control-on-the-left.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .pauli import PauliTerm, commutes
from .tableau import CX, CliffordCircuit, CliffordGate, H, S, Tableau, conjugate_circuit


class ReductionImpossible(RuntimeError):
    """The rows violate the grouping preconditions for this reduction."""


class SupportViolation(RuntimeError):
    """A conjugated member escaped the support promised by its reduction."""


@dataclass(frozen=True)
class ConjugationResult:
    """Circuit plus the conjugated generator rows it produces.

    Every conjugated row is identity outside ``support``; ``pivots`` lists
    the pivot columns in the order they were claimed.
    """

    circuit: CliffordCircuit
    conjugated: Tableau
    support: frozenset[int]
    pivots: tuple[int, ...]


class _Work:
    """Mutable row state [x, z, r] shared by one reduction."""

    def __init__(self, tableau: Tableau):
        self.n = tableau.n
        self.rows = [[t.x_bits, t.z_bits, 0 if t.sign > 0 else 1] for t in tableau.rows]
        self.gates: list[CliffordGate] = []
        self.max_rounds = 0

    def apply(self, gate: CliffordGate) -> None:
        from .tableau import apply_gate_bits

        self.gates.append(gate)
        for row in self.rows:
            row[0], row[1], row[2] = apply_gate_bits(row[0], row[1], row[2], gate)

    def total_ones(self) -> int:
        return sum(x.bit_count() + z.bit_count() for x, z, _ in self.rows)

    def ones_after_cx(self, c: int, t: int) -> int:
        from .tableau import apply_gate_bits

        gate = CX(c, t)
        total = 0
        for x, z, r in self.rows:
            x2, z2, _ = apply_gate_bits(x, z, r, gate)
            total += x2.bit_count() + z2.bit_count()
        return total


def _bit_columns(bits: int) -> list[int]:
    cols = []
    q = 0
    while bits:
        if bits & 1:
            cols.append(q)
        bits >>= 1
        q += 1
    return cols


def _clear_z(work: _Work, ridx: int, allowed: int) -> None:
    """Empty the row's Z part within allowed columns using H and S gates."""
    x, z, _ = work.rows[ridx]
    for col in _bit_columns(z & allowed):
        if (x >> col) & 1:
            work.apply(S(col))
        else:
            work.apply(H(col))
        x, z, _ = work.rows[ridx]


def _cnot_rounds(work: _Work, ridx: int, allowed: int, keep: int | None) -> tuple[int, int]:
    """Shrink the row's X-part 1s to a single column via parallel CNOT rounds.

    ``keep``, when given, is never a CNOT target and therefore survives.
    Returns (surviving column, number of rounds).
    """
    rounds = 0
    while True:
        ones = _bit_columns(work.rows[ridx][0] & allowed)
        if len(ones) == 0:
            raise ReductionImpossible("row has no X-part 1s to reduce")
        if len(ones) == 1:
            return ones[0], rounds
        rounds += 1
        unpaired = ones[:]
        while len(unpaired) >= 2:
            u = unpaired[0]
            best = None
            for v in unpaired[1:]:
                for flag, (c, t) in enumerate(((u, v), (v, u))):
                    if keep is not None and t == keep:
                        continue
                    key = (work.ones_after_cx(c, t), v, flag)
                    if best is None or key < best[0]:
                        best = (key, c, t, v)
            if best is None:
                raise ReductionImpossible("no admissible CNOT pairing")
            _, c, t, v = best
            work.apply(CX(c, t))
            unpaired.remove(u)
            unpaired.remove(v)


def _reduce_z_target(work: _Work, ridx: int, allowed: int) -> tuple[int, int]:
    """Reduce a row to a single Z on a fresh pivot; returns (pivot, rounds)."""
    x, z, _ = work.rows[ridx]
    if x & allowed == 0 and (z & allowed).bit_count() == 1:
        return _bit_columns(z & allowed)[0], 0
    _clear_z(work, ridx, allowed)
    pivot, rounds = _cnot_rounds(work, ridx, allowed, keep=None)
    work.apply(H(pivot))
    return pivot, rounds


def _reduce_x_target(work: _Work, ridx: int, allowed: int, pivot: int) -> int:
    """Reduce a row to a single X on the given pivot; returns rounds used."""
    x, z, _ = work.rows[ridx]
    pivot_bit = 1 << pivot
    if z & allowed == 0 and x & allowed == pivot_bit:
        return 0
    _clear_z(work, ridx, allowed)
    if work.rows[ridx][0] & pivot_bit == 0:
        # Anticommutation with the reduced partner row forces this bit on;
        # reaching here means the rows never anticommuted.
        raise ReductionImpossible("row lost the pivot column; rows do not anticommute")
    col, rounds = _cnot_rounds(work, ridx, allowed, keep=pivot)
    if col != pivot:
        raise ReductionImpossible("reduction failed to converge on the pivot column")
    return rounds


def _restricted_empty(work: _Work, ridx: int, allowed: int) -> bool:
    x, z, _ = work.rows[ridx]
    return (x | z) & allowed == 0


def _finish(gens: Tableau, work: _Work, pivots: list[int]) -> ConjugationResult:
    circuit = CliffordCircuit(tuple(work.gates), gens.n)
    support = frozenset(pivots)
    mask = 0
    for p in pivots:
        mask |= 1 << p
    conjugated = []
    for term, (x, z, r) in zip(gens.rows, work.rows):
        if (x | z) & ~mask:
            raise ReductionImpossible("reduced generator escaped its pivot set")
        conjugated.append(replace(term, x_bits=x, z_bits=z, sign=-1 if r else 1))
    rounds_cap = max(1, math.ceil(math.log2(max(2, gens.n))))
    if work.max_rounds > rounds_cap:
        raise AssertionError(
            f"CNOT pass used {work.max_rounds} rounds, cap {rounds_cap}"
        )
    return ConjugationResult(circuit, Tableau(tuple(conjugated)), support, tuple(pivots))


def reduce_anticommuting(gens: Tableau, mode: int) -> ConjugationResult:
    """Conjugate 2-4 generator rows onto a 1- or 2-qubit support.

    Rows arrive ordered: the anticommuting pair first, then (mode 2) the
    second pair or lone third generator.  The second pair is reduced on a
    fresh pivot with the first pivot column excluded from every gate.
    """
    rows = gens.rows
    if mode not in (1, 2):
        raise ValueError(f"mode must be 1 or 2, got {mode}")
    if mode == 1 and len(rows) != 2:
        raise ReductionImpossible(f"mode 1 takes exactly 2 rows, got {len(rows)}")
    if mode == 2 and not 2 <= len(rows) <= 4:
        raise ReductionImpossible(f"mode 2 takes 2-4 rows, got {len(rows)}")
    if commutes(rows[0], rows[1]):
        raise ReductionImpossible("first two rows must anticommute")

    work = _Work(gens)
    full = (1 << gens.n) - 1

    # Already reduced: every row confined to one shared column.
    occupied = 0
    for x, z, _ in work.rows:
        occupied |= x | z
    if occupied.bit_count() == 1:
        return _finish(gens, work, _bit_columns(occupied))

    pivot1, r1 = _reduce_z_target(work, 0, full)
    r2 = _reduce_x_target(work, 1, full, pivot1)
    work.max_rounds = max(r1, r2)
    pivots = [pivot1]

    if mode == 2 and len(rows) > 2:
        allowed = full & ~(1 << pivot1)
        if _restricted_empty(work, 2, allowed):
            # A lone third generator may collapse onto the first pivot; a
            # fourth row cannot, or the quad predicate was violated.
            if len(rows) == 4:
                raise ReductionImpossible("fourth row present but third is pivot-only")
        else:
            pivot2, r3 = _reduce_z_target(work, 2, allowed)
            work.max_rounds = max(work.max_rounds, r3)
            pivots.append(pivot2)
            if len(rows) == 4:
                r4 = _reduce_x_target(work, 3, allowed, pivot2)
                work.max_rounds = max(work.max_rounds, r4)
    return _finish(gens, work, pivots)


def reduce_commuting(rows: Tableau) -> ConjugationResult:
    """Conjugate mutually commuting independent rows onto distinct pivots.

    Each row ends as a single Z on its own pivot column.  A row whose
    remaining columns are all spent on earlier pivots is a GF(2) product
    of earlier rows, which the precondition forbids.
    """
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            if not commutes(rows.rows[i], rows.rows[j]):
                raise ReductionImpossible("rows must pairwise commute")
    work = _Work(rows)
    full = (1 << rows.n) - 1
    pivots: list[int] = []
    claimed = 0
    for ridx in range(len(rows.rows)):
        allowed = full & ~claimed
        if _restricted_empty(work, ridx, allowed):
            raise ReductionImpossible(f"row {ridx} is dependent on earlier rows")
        if work.rows[ridx][0] & claimed:
            raise ReductionImpossible(
                f"row {ridx} holds X/Y on a claimed pivot; rows do not commute"
            )
        pivot, rounds = _reduce_z_target(work, ridx, allowed)
        work.max_rounds = max(work.max_rounds, rounds)
        # Absorb leftover Zs sitting on earlier pivots: CX(old, new) clears
        # them without disturbing any reduced row.
        for old in _bit_columns(work.rows[ridx][1] & claimed):
            work.apply(CX(old, pivot))
        claimed |= 1 << pivot
        pivots.append(pivot)
    return _finish(rows, work, pivots)


def conjugate_members(members: Tableau, result: ConjugationResult) -> Tableau:
    """Conjugate all group members and check they stay inside the support."""
    out = conjugate_circuit(members, result.circuit)
    mask = 0
    for p in result.pivots:
        mask |= 1 << p
    for row in out.rows:
        if (row.x_bits | row.z_bits) & ~mask:
            raise SupportViolation(
                f"member {row.id} acts outside the support {sorted(result.support)}"
            )
    return out
