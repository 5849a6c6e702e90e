"""GF(2) linear algebra over symplectic Pauli bit vectors (int bitsets)."""

from __future__ import annotations

from dataclasses import dataclass

from .pauli import PauliTerm


def symplectic_vector(term: PauliTerm) -> int:
    """Pack a term's bits into one 2n-bit integer: x part low, z part high."""
    return term.x_bits | (term.z_bits << term.n)


class Gf2Basis:
    """Incremental reduced basis that tracks which inserted vectors combine.

    Each basis row keeps the bitmask of original insertions whose XOR equals
    it, so membership queries can report the exact combination.
    """

    def __init__(self) -> None:
        # (pivot bit, vector, combination mask); every row is 1 at its own
        # pivot and 0 at all other pivots, so one reduction pass suffices.
        self._rows: list[tuple[int, int, int]] = []
        self._n_inserted = 0

    def __len__(self) -> int:
        return len(self._rows)

    def _reduce(self, vec: int) -> tuple[int, int]:
        comb = 0
        for pivot, row, row_comb in self._rows:
            if vec & pivot:
                vec ^= row
                comb ^= row_comb
        return vec, comb

    def contains(self, vec: int) -> int | None:
        """Combination mask of inserted vectors XOR-ing to vec, else None."""
        residue, comb = self._reduce(vec)
        return comb if residue == 0 else None

    def insert(self, vec: int) -> int | None:
        """Add a vector; returns its combination mask if dependent, else None.

        Independent vectors join the basis and consume the next insertion
        index; dependent ones (including the zero vector) do not.
        """
        residue, comb = self._reduce(vec)
        if residue == 0:
            return comb
        comb ^= 1 << self._n_inserted
        self._n_inserted += 1
        lead = residue & -residue
        for i, (pivot, row, row_comb) in enumerate(self._rows):
            if row & lead:
                self._rows[i] = (pivot, row ^ residue, row_comb ^ comb)
        self._rows.append((lead, residue, comb))
        return None


@dataclass(frozen=True)
class GeneratorDecomposition:
    """Split of a term list into GF(2) generators and generated products.

    ``generated`` maps a term id to the set of generator ids whose bitwise
    XOR equals that term's bit vector (the product up to phase).
    """

    generator_ids: tuple[int, ...]
    generated: dict[int, frozenset[int]]

    def all_ids(self) -> frozenset[int]:
        return frozenset(self.generator_ids) | frozenset(self.generated)


def decompose_generators(terms: list[PauliTerm]) -> GeneratorDecomposition:
    """Scan terms in order; a term is a generator iff independent so far.

    An all-identity term reduces to the zero vector and is recorded as
    generated by the empty set.
    """
    if not terms:
        raise ValueError("empty term list")
    n = terms[0].n
    if any(t.n != n for t in terms):
        raise ValueError("terms have mixed qubit counts")
    basis = Gf2Basis()
    inserted_ids: list[int] = []
    generator_ids: list[int] = []
    generated: dict[int, frozenset[int]] = {}
    for term in terms:
        comb = basis.insert(symplectic_vector(term))
        if comb is None:
            generator_ids.append(term.id)
            inserted_ids.append(term.id)
        else:
            members = frozenset(
                inserted_ids[i] for i in range(len(inserted_ids)) if (comb >> i) & 1
            )
            generated[term.id] = members
    return GeneratorDecomposition(tuple(generator_ids), generated)


def span_keys(generators: list[PauliTerm]) -> list[tuple[int, int]]:
    """All nonzero (x, z) bit pairs in the XOR span of the given terms.

    Distinct for independent inputs: 2**k - 1 pairs for k generators.
    """
    keys: list[tuple[int, int]] = [(0, 0)]
    for g in generators:
        keys = keys + [(x ^ g.x_bits, z ^ g.z_bits) for (x, z) in keys]
    return [k for k in keys if k != (0, 0)]
