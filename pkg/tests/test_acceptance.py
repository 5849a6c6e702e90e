"""Acceptance criteria, one test per criterion, with stated time budgets.

Each test prints a single PASS line on success (run with ``pytest -s`` or
``-rP`` to see them); pytest reports failures per criterion otherwise.
"""

import math
import time

import numpy as np
import pytest

from conftest import random_term_list
from paulifuse.circuit_ir import CostModel, metrics
from paulifuse.gf2 import decompose_generators
from paulifuse.grouping import (
    ANTI_1Q,
    ANTI_2Q,
    build_graphs,
    group_single,
    group_two,
    quad_compatible,
)
from paulifuse.hamlib import HEISENBERG, ISING, LatticeSpec, gen_heisenberg, gen_ising
from paulifuse.oracle import (
    circuit_unitary,
    equal_up_to_phase,
    exp_pauli,
    pauli_matrix,
    program_unitary,
    verify_program,
)
from paulifuse.pauli import PauliTerm, commutes
from paulifuse.pipeline import compile_terms
from paulifuse.synth import reduce_anticommuting
from paulifuse.tableau import CX, CliffordCircuit, H, S, Sdg, Tableau, conjugate_circuit

PAPER_BENCHMARKS = [
    (ISING, (5, 6), 79),
    (ISING, (6, 10), 164),
    (ISING, (2, 3, 5), 89),
    (ISING, (3, 4, 5), 193),
    (HEISENBERG, (5, 6), 147),
    (HEISENBERG, (6, 10), 312),
    (HEISENBERG, (2, 3, 5), 177),
    (HEISENBERG, (3, 4, 5), 399),
]


def _passed(name: str, elapsed: float, budget: float) -> None:
    assert elapsed < budget, f"{name} took {elapsed:.1f}s, budget {budget:.0f}s"
    print(f"ACCEPTANCE {name}: PASS ({elapsed:.2f}s)")


def _random_circuit(rng, n, max_gates=50):
    gates = []
    for _ in range(int(rng.integers(0, max_gates + 1))):
        kind = int(rng.integers(0, 4))
        if kind == 3 and n >= 2:
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(CX(int(c), int(t)))
        elif kind < 3:
            gates.append([H, S, Sdg][kind](int(rng.integers(0, n))))
    return CliffordCircuit(tuple(gates), n)


def test_criterion_1_benchmark_counts():
    t0 = time.monotonic()
    for model, dims, count in PAPER_BENCHMARKS:
        gen = gen_ising if model == ISING else gen_heisenberg
        terms = gen(LatticeSpec(dims, model))
        assert len(terms) == count, (model, dims, len(terms), count)
    _passed("criterion 1 (benchmark counts)", time.monotonic() - t0, 1.0)


def test_criterion_2_truth_table():
    # All 16 allowed rows: map from the four anticommutation flags to the
    # required Pc-Pd relation (1 = anticommute).
    table = {
        (0, 0, 0, 0): 1, (0, 0, 0, 1): 1, (0, 0, 1, 0): 1, (0, 0, 1, 1): 1,
        (0, 1, 0, 0): 1, (0, 1, 0, 1): 1, (0, 1, 1, 0): 0, (0, 1, 1, 1): 0,
        (1, 0, 0, 0): 1, (1, 0, 0, 1): 0, (1, 0, 1, 0): 1, (1, 0, 1, 1): 0,
        (1, 1, 0, 0): 1, (1, 1, 0, 1): 0, (1, 1, 1, 0): 0, (1, 1, 1, 1): 1,
    }
    t0 = time.perf_counter()
    for rel, want in table.items():
        rel_b = tuple(map(bool, rel))
        for pcd in (False, True):
            assert quad_compatible(rel_b, pcd) == (pcd == bool(want))
    _passed("criterion 2 (truth table, 32 inputs)", time.perf_counter() - t0, 0.001)


def test_criterion_3_conjugation_oracle_suite():
    rng = np.random.default_rng(3003)
    t0 = time.monotonic()
    for case in range(1000):
        n = int(rng.integers(1, 6))
        circ = _random_circuit(rng, n, 50)
        p = PauliTerm(
            int(rng.integers(0, 2**n)), int(rng.integers(0, 2**n)), n,
            sign=int(rng.choice([1, -1])),
        )
        q = PauliTerm(int(rng.integers(0, 2**n)), int(rng.integers(0, 2**n)), n)
        tab = Tableau((p, q))
        conj = conjugate_circuit(tab, circ)
        # Dense agreement including sign.
        c = circuit_unitary(circ)
        np.testing.assert_allclose(
            pauli_matrix(conj.rows[0]), c @ pauli_matrix(p) @ c.conj().T, atol=1e-12
        )
        # Rule-II round trip restores bits and signs.
        back = conjugate_circuit(conj, circ.inverse())
        assert (back.rows[0].key, back.rows[0].sign) == (p.key, p.sign)
        assert (back.rows[1].key, back.rows[1].sign) == (q.key, q.sign)
        # Rule-III commutation preservation.
        assert commutes(p, q) == commutes(conj.rows[0], conj.rows[1])
    _passed("criterion 3 (1000-case conjugation oracle)", time.monotonic() - t0, 30.0)


def test_criterion_4_reduction_soundness():
    rng = np.random.default_rng(4004)
    t0 = time.monotonic()

    pairs_done = 0
    while pairs_done < 200:
        n = int(rng.integers(1, 9))
        terms = random_term_list(rng, n, 2)
        if commutes(terms[0], terms[1]):
            continue
        pairs_done += 1
        result = reduce_anticommuting(Tableau(tuple(terms)), mode=1)
        assert len(result.support) == 1
        (pivot,) = result.support
        a, b = result.conjugated.rows
        assert a.weight() == 1 and b.weight() == 1
        assert "I" != a.op_at(pivot) != b.op_at(pivot) != "I"
        if n <= 6:
            c = circuit_unitary(result.circuit)
            for before, after in zip(terms, result.conjugated.rows):
                np.testing.assert_allclose(
                    c @ pauli_matrix(before) @ c.conj().T, pauli_matrix(after), atol=1e-12
                )

    quads_done = 0
    while quads_done < 100:
        n = int(rng.integers(2, 9))
        terms = random_term_list(rng, n, 4)
        a, b, c_, d = terms
        if commutes(a, b):
            continue
        rel = (
            not commutes(a, c_), not commutes(b, c_),
            not commutes(a, d), not commutes(b, d),
        )
        if not quad_compatible(rel, not commutes(c_, d)):
            continue
        if len(decompose_generators(terms).generator_ids) != 4:
            continue
        quads_done += 1
        result = reduce_anticommuting(Tableau(tuple(terms)), mode=2)
        assert len(result.support) <= 2
        for row in result.conjugated.rows:
            assert set(row.support()) <= result.support
        if n <= 6:
            c = circuit_unitary(result.circuit)
            for before, after in zip(terms, result.conjugated.rows):
                np.testing.assert_allclose(
                    c @ pauli_matrix(before) @ c.conj().T, pauli_matrix(after), atol=1e-12
                )
    _passed("criterion 4 (200 pairs + 100 quads reduced soundly)",
            time.monotonic() - t0, 60.0)


def test_criterion_5_end_to_end_equivalence():
    rng = np.random.default_rng(5005)
    t0 = time.monotonic()
    for case in range(50):
        n = int(rng.integers(2, 7))
        m = int(rng.integers(1, 13))
        terms = random_term_list(rng, n, m)
        by_id = {t.id: t for t in terms}
        for mode in ("baseline", "ncf1q", "ncf2q"):
            prog = compile_terms(terms, mode)
            got = program_unitary(prog)
            want = np.eye(2**n, dtype=complex)
            for tid in prog.compiled_order():
                t = by_id[tid]
                want = exp_pauli(t, t.angle) @ want
            assert equal_up_to_phase(got, want, 1e-8), (mode, case)
    _passed("criterion 5 (50 instances x 3 modes end-to-end)",
            time.monotonic() - t0, 300.0)


def test_criterion_6_fusion_effectiveness():
    t0 = time.monotonic()
    terms = gen_heisenberg(LatticeSpec((5, 6), HEISENBERG))
    model = CostModel()
    base = metrics(compile_terms(terms, "baseline"), model, len(terms))
    one = metrics(compile_terms(terms, "ncf1q"), model, len(terms))
    two = metrics(compile_terms(terms, "ncf2q"), model, len(terms))
    assert one.unitary_count <= 0.6 * 147, one.unitary_count
    assert two.unitary_count <= one.unitary_count, (two.unitary_count, one.unitary_count)
    ratio = one.est_t_count / base.est_t_count
    assert ratio <= 0.55, ratio
    _passed(
        f"criterion 6 (fusion: {one.unitary_count}/147 unitaries, "
        f"modeled T ratio {ratio:.3f})",
        time.monotonic() - t0, 120.0,
    )


def test_criterion_7_group_size_bounds():
    t0 = time.monotonic()
    for model, dims, _ in PAPER_BENCHMARKS:
        gen = gen_ising if model == ISING else gen_heisenberg
        terms = gen(LatticeSpec(dims, model))
        n = terms[0].n
        graphs = build_graphs(terms)
        for g in group_single(terms, 4, graphs):
            limit = 3 if g.kind == ANTI_1Q else n
            assert len(g.member_ids) <= limit, (model, dims, g)
        for g in group_two(terms, 128, graphs):
            limit = 15 if g.kind == ANTI_2Q else n
            assert len(g.member_ids) <= limit, (model, dims, g)
        # compile_terms re-checks the same bounds plus the partition
        # property on every run (criterion-6 runs included).
        compile_terms(terms, "ncf1q")
    _passed("criterion 7 (group bounds across all benchmarks)",
            time.monotonic() - t0, 120.0)


def test_criterion_8_scale_ingestion(tmp_path):
    print(
        "ACCEPTANCE criterion 8 note: the published absolute T-count/T-depth/"
        "Clifford comparison numbers depend on external Clifford+T synthesizers "
        "and are NOT reproduced at desk scale; this artifact substitutes the "
        "analytic cost model plus the invariant suites above."
    )
    rng = np.random.default_rng(8008)
    n, m = 30, 2000
    path = tmp_path / "large.txt"
    with open(path, "w", encoding="utf-8") as fh:
        for _ in range(m):
            while True:
                x = int(rng.integers(0, 2**n))
                z = int(rng.integers(0, 2**n))
                if x or z:
                    break
            label = "".join(
                {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}[
                    ((x >> q) & 1, (z >> q) & 1)
                ]
                for q in range(n)
            )
            fh.write(f"{float(rng.uniform(-1, 1))!r} {label}\n")

    from paulifuse.hamlib import load_terms

    t0 = time.monotonic()
    terms = load_terms(str(path))
    assert len(terms) == m and terms[0].n == n
    model = CostModel()
    for mode in ("ncf1q", "ncf2q"):
        prog = compile_terms(terms, mode)  # structural assertions run inside
        rep = metrics(prog, model, m)
        assert rep.unitary_count < m
        for seg in prog.segments:
            for layer in seg.layers:
                used = set()
                for block in layer:
                    assert len(block.support) <= 2
                    assert not (used & set(block.support))
                    used |= set(block.support)
    _passed(f"criterion 8 ({m} terms on {n} qubits ingested and compiled)",
            time.monotonic() - t0, 600.0)
