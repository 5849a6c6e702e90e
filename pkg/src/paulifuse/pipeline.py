"""End-to-end compilation: grouping, per-group reduction, scheduling, assembly."""

from __future__ import annotations

from .circuit_ir import CompiledProgram, assemble, baseline_compile
from .grouping import (
    ANTI_1Q,
    ANTI_2Q,
    COMMUTING,
    Group,
    build_graphs,
    group_single,
    group_two,
    reorder,
)
from .pauli import PauliTerm
from .synth import ConjugationResult, reduce_anticommuting, reduce_commuting
from .tableau import Tableau, empty_circuit

MODES = ("baseline", "ncf1q", "ncf2q")
DEFAULT_WINDOWS = {"ncf1q": 4, "ncf2q": 128}


def reduce_group(group: Group, terms: list[PauliTerm]) -> ConjugationResult:
    """Run the reduction matching the group's kind."""
    n = terms[0].n
    if group.kind == ANTI_1Q:
        gens = Tableau(tuple(terms[i] for i in group.generator_ids))
        return reduce_anticommuting(gens, mode=1)
    if group.kind == ANTI_2Q:
        gens = Tableau(tuple(terms[i] for i in group.generator_ids))
        return reduce_anticommuting(gens, mode=2)
    if not group.generator_ids:  # flagged all-identity singleton
        rows = Tableau(tuple(terms[i] for i in group.member_ids))
        return ConjugationResult(empty_circuit(n), rows, frozenset(), ())
    rows = Tableau(tuple(terms[i] for i in group.member_ids))
    return reduce_commuting(rows)


def _check_group_bounds(groups: list[Group], n: int) -> None:
    seen: set[int] = set()
    for g in groups:
        limit = {ANTI_1Q: 3, ANTI_2Q: 15, COMMUTING: max(1, n)}[g.kind]
        if len(g.member_ids) > limit:
            raise AssertionError(f"{g.kind} group exceeds {limit} members: {g.member_ids}")
        overlap = seen.intersection(g.member_ids)
        if overlap:
            raise AssertionError(f"term ids {sorted(overlap)} appear in multiple groups")
        seen.update(g.member_ids)


def compile_terms(
    terms: list[PauliTerm], mode: str, window: int | None = None
) -> CompiledProgram:
    """Compile a term list in one of the three modes.

    Group-size bounds and the partition property are enforced on every
    run; violations are compiler bugs, not input errors.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    if not terms:
        return CompiledProgram(0, (), mode=mode, window=window)
    if mode == "baseline":
        return baseline_compile(terms)
    w = DEFAULT_WINDOWS[mode] if window is None else window
    graphs = build_graphs(terms)
    if mode == "ncf1q":
        groups = group_single(terms, w, graphs)
    else:
        groups = group_two(terms, w, graphs)
    _check_group_bounds(groups, terms[0].n)
    if sorted(i for g in groups for i in g.member_ids) != list(range(len(terms))):
        raise AssertionError("groups do not partition the input terms")
    conjugations = [reduce_group(g, terms) for g in groups]
    supports = [
        frozenset(c.support) | c.circuit.touched_qubits() for c in conjugations
    ]
    schedule = reorder(groups, supports)
    return assemble(groups, conjugations, schedule, terms, mode=mode, window=w)
