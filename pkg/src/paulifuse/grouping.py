"""Partition a Pauli-term list into groups that fuse onto 1 or 2 qubits.

Anticommuting groups seed on a pair of anticommuting generators and pull
in every unpartitioned term lying in the generators' GF(2) span; after no
anticommuting pair remains, the mutually commuting leftovers are packed
into groups whose rotations run in parallel on distinct qubits.  A sliding
window bounds the Gaussian elimination cost per iteration.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass

import numpy as np

from .gf2 import Gf2Basis, GeneratorDecomposition, decompose_generators, span_keys, symplectic_vector
from .pauli import PauliTerm

ANTI_1Q = "anticommuting-1q"
ANTI_2Q = "anticommuting-2q"
COMMUTING = "commuting"

MIN_WINDOW_1Q = 4
MIN_WINDOW_2Q = 16
MAX_2Q_MEMBERS = 15


class MutuallyCommuting(Exception):
    """No anticommuting pair remains among the ungrouped terms."""


@dataclass(frozen=True)
class CommutationGraphs:
    """Pairwise (anti)commutation relations over term ids."""

    n_terms: int
    anticommute_adj: np.ndarray  # bool, symmetric, irreflexive

    @property
    def commute_adj(self) -> np.ndarray:
        out = ~self.anticommute_adj
        np.fill_diagonal(out, False)
        return out

    def anticommute(self, i: int, j: int) -> bool:
        return bool(self.anticommute_adj[i, j])


@dataclass(frozen=True)
class Group:
    """One partition cell.

    ``generator_ids`` keeps the reduction order: the anticommuting pair
    first, then the optional second pair or lone third generator.  For
    commuting groups every member is its own generator.
    """

    kind: str
    member_ids: tuple[int, ...]
    generator_ids: tuple[int, ...]
    generated_ids: tuple[int, ...]


@dataclass(frozen=True)
class Schedule:
    """Groups bucketed into layers of concurrently executable groups."""

    layers: tuple[tuple[int, ...], ...]


def build_graphs(terms: list[PauliTerm]) -> CommutationGraphs:
    """All-pairs anticommutation via the symplectic product over GF(2)."""
    m = len(terms)
    if m == 0:
        return CommutationGraphs(0, np.zeros((0, 0), dtype=bool))
    n = terms[0].n
    x = np.zeros((m, n), dtype=np.uint8)
    z = np.zeros((m, n), dtype=np.uint8)
    for i, t in enumerate(terms):
        for q in range(n):
            x[i, q] = (t.x_bits >> q) & 1
            z[i, q] = (t.z_bits >> q) & 1
    prod = (x @ z.T + z @ x.T) % 2
    adj = prod.astype(bool)
    np.fill_diagonal(adj, False)
    return CommutationGraphs(m, adj)


def _first_anticommuting_pair(
    ungrouped: list[int], graphs: CommutationGraphs
) -> tuple[int, int] | None:
    arr = np.asarray(ungrouped, dtype=np.intp)
    for idx in range(len(ungrouped) - 1):
        rest = arr[idx + 1 :]
        hits = np.nonzero(graphs.anticommute_adj[ungrouped[idx], rest])[0]
        if hits.size:
            return ungrouped[idx], int(rest[hits[0]])
    return None


def select_window(ungrouped: list[int], graphs: CommutationGraphs, w: int) -> list[int]:
    """First anticommuting pair plus the first w-2 remaining ungrouped ids.

    Raises :class:`MutuallyCommuting` when no anticommuting pair is left,
    which sends the caller to the commuting-group phase.
    """
    if w < MIN_WINDOW_1Q:
        raise ValueError(f"window must be >= {MIN_WINDOW_1Q}, got {w}")
    pair = _first_anticommuting_pair(ungrouped, graphs)
    if pair is None:
        raise MutuallyCommuting
    window = [pair[0], pair[1]]
    taken = set(window)
    for tid in ungrouped:
        if len(window) >= w:
            break
        if tid not in taken:
            window.append(tid)
            taken.add(tid)
    return window


def part1_relation(rel_ac: tuple[bool, bool, bool, bool]) -> bool:
    """Whether the pivot-column parts of the candidate second pair anticommute.

    ``rel_ac`` holds the anticommutation flags for (Pa-Pc, Pb-Pc, Pa-Pd,
    Pb-Pd).  A candidate commuting with both seed generators lands on the
    identity at the pivot; candidates with identical patterns land on the
    same operator; every other combination anticommutes there.
    """
    ac, bc, ad, bd = rel_ac
    if (not ac and not bc) or (not ad and not bd):
        return False
    if (ac, bc) == (ad, bd):
        return False
    return True


def quad_compatible(rel_ac: tuple[bool, bool, bool, bool], pcd_anticommute: bool) -> bool:
    """True iff the quad conjugates onto two qubits.

    The second pair's off-pivot parts anticommute exactly when their full
    commutation relation differs from their pivot-part relation, so the
    whole-string relation must be the negation of :func:`part1_relation`.
    """
    return bool(pcd_anticommute) == (not part1_relation(rel_ac))


def grade_pair(pa: int, pb: int, decomp: GeneratorDecomposition) -> int:
    """3 points per term the pair generates outright, 1 when either
    generator merely appears in a generated term's generator set."""
    pair = frozenset((pa, pb))
    grade = 0
    for gens in decomp.generated.values():
        if gens == pair:
            grade += 3
        elif pa in gens or pb in gens:
            grade += 1
    return grade


def _pair_grades(decomp: GeneratorDecomposition) -> tuple[Counter, Counter, Counter]:
    """Batched grade ingredients: exact-pair hits, per-generator hits, and
    joint hits, so grade(a,b) = 2*exact + cnt[a] + cnt[b] - both."""
    exact: Counter = Counter()
    cnt: Counter = Counter()
    both: Counter = Counter()
    for gens in decomp.generated.values():
        members = sorted(gens)
        for g in members:
            cnt[g] += 1
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                both[(members[i], members[j])] += 1
        if len(members) == 2:
            exact[(members[0], members[1])] += 1
    return exact, cnt, both


class _Partitioner:
    """Shared state for one grouping run over a fixed term list."""

    def __init__(self, terms: list[PauliTerm], graphs: CommutationGraphs | None):
        if any(t.id != i for i, t in enumerate(terms)):
            raise ValueError("term ids must equal their list positions")
        self.terms = terms
        self.graphs = graphs if graphs is not None else build_graphs(terms)
        self.grouped = [False] * len(terms)
        self.ungrouped = list(range(len(terms)))
        self.by_key: defaultdict[tuple[int, int], list[int]] = defaultdict(list)
        for t in terms:
            self.by_key[t.key].append(t.id)

    def compact(self) -> None:
        self.ungrouped = [i for i in self.ungrouped if not self.grouped[i]]

    def take(self, ids: tuple[int, ...]) -> None:
        for i in ids:
            self.grouped[i] = True
        self.compact()

    def unpartitioned_with_key(self, key: tuple[int, int], exclude: frozenset[int]) -> list[int]:
        return [i for i in self.by_key.get(key, ()) if not self.grouped[i] and i not in exclude]

    def span_members(self, gen_ids: tuple[int, ...], cap: int) -> list[int]:
        """Unpartitioned non-generator ids inside the generators' span."""
        exclude = frozenset(gen_ids)
        found: set[int] = set()
        for key in span_keys([self.terms[g] for g in gen_ids]):
            found.update(self.unpartitioned_with_key(key, exclude))
        return sorted(found)[: max(0, cap - len(gen_ids))]


def _commuting_phase(part: _Partitioner) -> list[Group]:
    """Pack the mutually commuting leftovers greedily in list order.

    A term joins the open group while the group stays GF(2) independent
    (a dependent term could not be conjugated onto its own fresh qubit)
    and below the qubit-count bound.  All-identity terms become flagged
    singleton groups carrying a zero rotation.
    """
    n = part.terms[0].n if part.terms else 0
    groups: list[Group] = []
    identities: list[int] = []
    current: list[int] = []
    basis = Gf2Basis()

    def close() -> None:
        nonlocal current, basis
        if current:
            ids = tuple(current)
            groups.append(Group(COMMUTING, ids, ids, ()))
            current = []
            basis = Gf2Basis()

    for tid in part.ungrouped:
        term = part.terms[tid]
        if term.is_identity():
            identities.append(tid)
            continue
        vec = symplectic_vector(term)
        if current and (len(current) >= n or basis.contains(vec) is not None):
            close()
        basis.insert(vec)
        current.append(tid)
    close()
    for tid in identities:
        groups.append(Group(COMMUTING, (tid,), (), (tid,)))
    part.take(tuple(part.ungrouped))
    return groups


def group_single(
    terms: list[PauliTerm], w: int = MIN_WINDOW_1Q, graphs: CommutationGraphs | None = None
) -> list[Group]:
    """Single-qubit grouping: anticommuting pairs plus a directly generated term.

    Per window: decompose into generators, scan anticommuting generator
    pairs in id-lexicographic order, and take the first pair whose XOR
    product matches an unpartitioned term (that term joins the group);
    otherwise the first anticommuting pair stands alone.
    """
    if w < MIN_WINDOW_1Q:
        raise ValueError(f"single-qubit window must be >= {MIN_WINDOW_1Q}, got {w}")
    part = _Partitioner(terms, graphs)
    groups: list[Group] = []
    while True:
        try:
            window = select_window(part.ungrouped, part.graphs, w)
        except MutuallyCommuting:
            break
        dec = decompose_generators([part.terms[i] for i in window])
        gen_ids = sorted(dec.generator_ids)
        first_pair: tuple[int, int] | None = None
        chosen: tuple[int, int, int] | None = None
        for ai in range(len(gen_ids)):
            for bi in range(ai + 1, len(gen_ids)):
                a, b = gen_ids[ai], gen_ids[bi]
                if not part.graphs.anticommute(a, b):
                    continue
                if first_pair is None:
                    first_pair = (a, b)
                ta, tb = part.terms[a], part.terms[b]
                prod_key = (ta.x_bits ^ tb.x_bits, ta.z_bits ^ tb.z_bits)
                hits = part.unpartitioned_with_key(prod_key, frozenset((a, b)))
                if hits:
                    chosen = (a, b, hits[0])
                    break
            if chosen:
                break
        if chosen:
            a, b, g = chosen
            group = Group(ANTI_1Q, (a, b, g), (a, b), (g,))
        else:
            a, b = first_pair  # select_window guarantees one exists
            group = Group(ANTI_1Q, (a, b), (a, b), ())
        groups.append(group)
        part.take(group.member_ids)
    groups.extend(_commuting_phase(part))
    return groups


def group_two(
    terms: list[PauliTerm], w: int = 128, graphs: CommutationGraphs | None = None
) -> list[Group]:
    """Two-qubit grouping around the highest-graded anticommuting pair.

    The graded pair (Pa, Pb) seeds the group; candidate second pairs
    (Pc, Pd) are screened with the commutation truth table and the
    passing quad spanning the most unpartitioned terms wins.  With no
    passing quad, the best lone Pc forms a triple; with no other
    generator at all, the pair stands by itself.
    """
    if w < MIN_WINDOW_2Q:
        raise ValueError(f"two-qubit window must be >= {MIN_WINDOW_2Q}, got {w}")
    part = _Partitioner(terms, graphs)
    groups: list[Group] = []
    while True:
        try:
            window = select_window(part.ungrouped, part.graphs, w)
        except MutuallyCommuting:
            break
        dec = decompose_generators([part.terms[i] for i in window])
        gen_ids = sorted(dec.generator_ids)
        exact, cnt, both = _pair_grades(dec)
        best_pair: tuple[int, int, int] | None = None  # (-grade, a, b)
        for ai in range(len(gen_ids)):
            for bi in range(ai + 1, len(gen_ids)):
                a, b = gen_ids[ai], gen_ids[bi]
                if not part.graphs.anticommute(a, b):
                    continue
                grade = 2 * exact[(a, b)] + cnt[a] + cnt[b] - both[(a, b)]
                key = (-grade, a, b)
                if best_pair is None or key < best_pair:
                    best_pair = key
        assert best_pair is not None  # select_window guarantees a pair
        a, b = best_pair[1], best_pair[2]
        remaining = [g for g in gen_ids if g not in (a, b)]

        best_quad: tuple[int, int, int, tuple[int, ...], list[int]] | None = None
        for ci in range(len(remaining)):
            for di in range(ci + 1, len(remaining)):
                c, d = remaining[ci], remaining[di]
                rel = (
                    part.graphs.anticommute(a, c),
                    part.graphs.anticommute(b, c),
                    part.graphs.anticommute(a, d),
                    part.graphs.anticommute(b, d),
                )
                if not quad_compatible(rel, part.graphs.anticommute(c, d)):
                    continue
                gens = (a, b, c, d)
                others = part.span_members(gens, MAX_2Q_MEMBERS)
                key = (-(len(gens) + len(others)), c, d)
                if best_quad is None or key < best_quad[:3]:
                    best_quad = (*key, gens, others)
        if best_quad is not None:
            gens, others = best_quad[3], best_quad[4]
        elif remaining:
            best_triple: tuple[int, int, tuple[int, ...], list[int]] | None = None
            for c in remaining:
                gens = (a, b, c)
                others = part.span_members(gens, MAX_2Q_MEMBERS)
                key = (-(len(gens) + len(others)), c)
                if best_triple is None or key < best_triple[:2]:
                    best_triple = (*key, gens, others)
            gens, others = best_triple[2], best_triple[3]
        else:
            gens = (a, b)
            others = part.span_members(gens, MAX_2Q_MEMBERS)
        group = Group(ANTI_2Q, gens + tuple(others), gens, tuple(others))
        groups.append(group)
        part.take(group.member_ids)
    groups.extend(_commuting_phase(part))
    return groups


def reorder(groups: list, supports: list[frozenset[int]]) -> Schedule:
    """Greedy first-fit layering by disjoint compiled support.

    A group's support covers both its conjugated rotation qubits and every
    qubit its Clifford frame touches, so sharing a layer means the whole
    compiled segments are disjoint.
    """
    if len(groups) != len(supports):
        raise ValueError("one support set per group required")
    layers: list[tuple[list[int], set[int]]] = []
    for gi, sup in enumerate(supports):
        for members, occupied in layers:
            if not (occupied & sup):
                members.append(gi)
                occupied |= sup
                break
        else:
            layers.append(([gi], set(sup)))
    return Schedule(tuple(tuple(sorted(members)) for members, _ in layers))
