"""Pauli algebra: parsing, commutation, products, and conjugation updates."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from paulifuse.gf2 import decompose_generators, symplectic_vector
from paulifuse.oracle import circuit_unitary, gate_matrix, pauli_matrix
from paulifuse.pauli import (
    DimensionError,
    PauliParseError,
    PauliTerm,
    commutes,
    multiply,
    parse_pauli,
)
from paulifuse.tableau import (
    CX,
    CliffordCircuit,
    H,
    S,
    Sdg,
    Tableau,
    conjugate_circuit,
    conjugate_gate,
    conjugate_term,
)


def term(label, sign=1):
    t = parse_pauli(label)
    return PauliTerm(t.x_bits, t.z_bits, t.n, sign=sign)


# ---------------------------------------------------------------------------
# parse_pauli


def test_parse_xyiz():
    t = parse_pauli("XYIZ", coefficient=0.5, dt=1.0)
    assert t.x_bits == 0b0011  # X on q0, Y on q1
    assert t.z_bits == 0b1010  # Y on q1, Z on q3
    assert t.sign == 1
    assert t.angle == pytest.approx(1.0)
    assert t.label() == "XYIZ"


def test_parse_identity_string():
    t = parse_pauli("IIII", 1.0, 1.0)
    assert t.x_bits == 0 and t.z_bits == 0
    assert t.angle == pytest.approx(2.0)
    assert t.is_identity()


def test_parse_zx():
    t = parse_pauli("ZX", 0.25, 0.1)
    assert t.z_bits == 0b01 and t.x_bits == 0b10
    assert t.angle == pytest.approx(0.05)


def test_parse_rejects_bad_character():
    with pytest.raises(PauliParseError, match="position 2"):
        parse_pauli("XYAZ")
    with pytest.raises(PauliParseError):
        parse_pauli("")


# ---------------------------------------------------------------------------
# commutes


def test_commutes_worked_example():
    # XZ vs YI: a single anticommuting position -> anticommute.
    assert not commutes(term("XZ"), term("YI"))
    # XZ vs YX: both positions anticommute -> commute.
    assert commutes(term("XZ"), term("YX"))


@given(st.integers(0, 2**6 - 1), st.integers(0, 2**6 - 1))
def test_commutes_self(x, z):
    p = PauliTerm(x, z, 6)
    assert commutes(p, p)


def test_commutes_dimension_error():
    with pytest.raises(DimensionError):
        commutes(term("X"), term("XX"))


# ---------------------------------------------------------------------------
# multiply: checked against the 2x2 / 4x4 matrix product oracle


def assert_product_matches_matrices(p, q):
    r, k = multiply(p, q)
    lhs = pauli_matrix(p) @ pauli_matrix(q)
    unsigned = PauliTerm(r.x_bits, r.z_bits, r.n)
    rhs = (1j**k) * pauli_matrix(unsigned)
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)
    assert r.sign == (-1 if k == 2 else 1)


def test_multiply_x_times_y_gives_iz():
    r, k = multiply(term("X"), term("Y"))
    assert (r.x_bits, r.z_bits) == (0, 1)  # Z
    assert k == 1
    assert_product_matches_matrices(term("X"), term("Y"))


def test_multiply_by_identity():
    p = term("XZ")
    r, k = multiply(p, term("II"))
    assert (r.x_bits, r.z_bits) == p.key and k == 0
    assert_product_matches_matrices(p, term("II"))


def test_multiply_xx_times_yy_gives_minus_zz():
    r, k = multiply(term("XX"), term("YY"))
    assert r.label() == "ZZ"
    assert k == 2 and r.sign == -1
    assert_product_matches_matrices(term("XX"), term("YY"))


@given(
    st.integers(1, 3),
    st.data(),
)
@settings(max_examples=200)
def test_multiply_matches_matrix_oracle(n, data):
    bits = st.integers(0, 2**n - 1)
    p = PauliTerm(data.draw(bits), data.draw(bits), n, sign=data.draw(st.sampled_from([1, -1])))
    q = PauliTerm(data.draw(bits), data.draw(bits), n, sign=data.draw(st.sampled_from([1, -1])))
    assert_product_matches_matrices(p, q)


def test_multiply_dimension_error():
    with pytest.raises(DimensionError):
        multiply(term("X"), term("XX"))


# ---------------------------------------------------------------------------
# conjugate_gate: single-gate conjugation table


@pytest.mark.parametrize(
    "gate,label,expected,expected_sign",
    [
        (H(0), "X", "Z", 1),
        (H(0), "Y", "Y", -1),
        (H(0), "Z", "X", 1),
        (S(0), "X", "Y", 1),
        (S(0), "Y", "X", -1),
        (S(0), "Z", "Z", 1),
        (CX(0, 1), "XI", "XX", 1),
        (CX(0, 1), "YI", "YX", 1),
        (CX(0, 1), "ZI", "ZI", 1),
        (CX(0, 1), "IX", "IX", 1),
        (CX(0, 1), "IY", "ZY", 1),
        (CX(0, 1), "IZ", "ZZ", 1),
    ],
)
def test_single_gate_conjugation_table(gate, label, expected, expected_sign):
    out = conjugate_gate(Tableau((term(label),)), gate).rows[0]
    assert out.label() == expected
    assert out.sign == expected_sign


def test_sdg_conjugation():
    sdg = CliffordCircuit((Sdg(0),), 1)
    assert str(conjugate_term(term("X"), sdg)) == "-Y"
    assert str(conjugate_term(term("Y"), sdg)) == "+X"
    assert str(conjugate_term(term("Z"), sdg)) == "+Z"


def test_conjugate_identity_row_unchanged():
    for gate in (H(0), S(1), CX(0, 1)):
        out = conjugate_gate(Tableau((term("II"),)), gate).rows[0]
        assert out.is_identity() and out.sign == 1


def test_conjugate_gate_out_of_range():
    with pytest.raises(IndexError):
        conjugate_gate(Tableau((term("X"),)), H(3))


def test_conjugation_updates_all_rows_at_once():
    t = Tableau((term("XI"), term("ZI"), term("IY")))
    out = conjugate_gate(t, H(0))
    assert [r.label() for r in out.rows] == ["ZI", "XI", "IY"]


# ---------------------------------------------------------------------------
# random-circuit properties, pinned by the dense oracle

GATE_POOL = ("h", "s", "sdg", "cx")


def random_circuit(rng, n, max_gates=50):
    gates = []
    for _ in range(rng.integers(0, max_gates + 1)):
        kind = GATE_POOL[rng.integers(0, len(GATE_POOL))]
        if kind == "cx" and n >= 2:
            c, t = rng.choice(n, size=2, replace=False)
            gates.append(CX(int(c), int(t)))
        elif kind != "cx":
            gates.append({"h": H, "s": S, "sdg": Sdg}[kind](int(rng.integers(0, n))))
    return CliffordCircuit(tuple(gates), n)


def random_term(rng, n):
    return PauliTerm(
        int(rng.integers(0, 2**n)),
        int(rng.integers(0, 2**n)),
        n,
        sign=int(rng.choice([1, -1])),
    )


def test_conjugation_matches_matrix_oracle():
    rng = np.random.default_rng(7)
    for _ in range(150):
        n = int(rng.integers(1, 6))
        circ = random_circuit(rng, n)
        p = random_term(rng, n)
        got = conjugate_term(p, circ)
        c = circuit_unitary(circ)
        np.testing.assert_allclose(
            pauli_matrix(got), c @ pauli_matrix(p) @ c.conj().T, atol=1e-12
        )


def test_conjugation_preserves_commutation():
    rng = np.random.default_rng(8)
    for _ in range(200):
        n = int(rng.integers(1, 9))
        circ = random_circuit(rng, n)
        p, q = random_term(rng, n), random_term(rng, n)
        assert commutes(p, q) == commutes(conjugate_term(p, circ), conjugate_term(q, circ))


def test_conjugation_injective_on_distinct_rows():
    rng = np.random.default_rng(9)
    for _ in range(200):
        n = int(rng.integers(1, 8))
        circ = random_circuit(rng, n)
        p, q = random_term(rng, n), random_term(rng, n)
        if p.key == q.key:
            continue
        assert conjugate_term(p, circ).key != conjugate_term(q, circ).key


def test_conjugation_round_trip_restores_signs():
    rng = np.random.default_rng(10)
    for _ in range(200):
        n = int(rng.integers(1, 8))
        circ = random_circuit(rng, n)
        t = Tableau(tuple(random_term(rng, n) for _ in range(4)))
        back = conjugate_circuit(conjugate_circuit(t, circ), circ.inverse())
        for a, b in zip(t.rows, back.rows):
            assert (a.key, a.sign) == (b.key, b.sign)


def test_product_homomorphism_under_conjugation():
    # C (PQ) C^dag == (C P C^dag)(C Q C^dag), phases included.
    rng = np.random.default_rng(11)
    for _ in range(80):
        n = int(rng.integers(1, 5))
        circ = random_circuit(rng, n, max_gates=20)
        p, q = random_term(rng, n), random_term(rng, n)
        c = circuit_unitary(circ)
        r, k = multiply(p, q)
        lhs = (1j**k) * (c @ pauli_matrix(PauliTerm(r.x_bits, r.z_bits, n)) @ c.conj().T)
        rp, kp = multiply(conjugate_term(p, circ), conjugate_term(q, circ))
        rhs = (1j**kp) * pauli_matrix(PauliTerm(rp.x_bits, rp.z_bits, n))
        np.testing.assert_allclose(lhs, rhs, atol=1e-12)


# ---------------------------------------------------------------------------
# decompose_generators


def ids(labels):
    return [parse_pauli(lbl, id=i) for i, lbl in enumerate(labels)]


def test_decompose_simple_dependency():
    dec = decompose_generators(ids(["XI", "IZ", "XZ"]))
    assert dec.generator_ids == (0, 1)
    assert dec.generated == {2: frozenset({0, 1})}


def test_decompose_xx_yy_zz():
    terms = ids(["XX", "YY", "ZZ"])
    dec = decompose_generators(terms)
    assert dec.generator_ids == (0, 1)
    assert dec.generated == {2: frozenset({0, 1})}
    # Phase check: XX.YY is proportional to ZZ.
    r, _ = multiply(terms[0], terms[1])
    assert r.label() == "ZZ"


def test_decompose_single_term():
    dec = decompose_generators(ids(["X"]))
    assert dec.generator_ids == (0,)
    assert dec.generated == {}


def test_decompose_identity_generated_by_empty_set():
    dec = decompose_generators(ids(["II", "XI"]))
    assert dec.generator_ids == (1,)
    assert dec.generated == {0: frozenset()}


def test_decompose_xor_reconstruction_random():
    rng = np.random.default_rng(12)
    for _ in range(60):
        n = int(rng.integers(1, 7))
        m = int(rng.integers(1, 13))
        terms = [
            PauliTerm(int(rng.integers(0, 2**n)), int(rng.integers(0, 2**n)), n, id=i)
            for i in range(m)
        ]
        by_id = {t.id: t for t in terms}
        dec = decompose_generators(terms)
        assert sorted(dec.all_ids()) == list(range(m))
        assert len(dec.generator_ids) <= 2 * n
        for gid, gens in dec.generated.items():
            acc = 0
            for g in gens:
                acc ^= symplectic_vector(by_id[g])
            assert acc == symplectic_vector(by_id[gid])
        # Generators are linearly independent: re-decomposing them alone
        # yields no generated entries.
        gens_only = [by_id[g] for g in dec.generator_ids]
        if gens_only:
            assert decompose_generators(gens_only).generated == {}


# ---------------------------------------------------------------------------
# oracle helpers used above


def test_gate_matrices_are_unitary():
    for gate, n in [(H(0), 1), (S(0), 1), (Sdg(0), 1), (CX(0, 1), 2), (CX(1, 0), 2)]:
        u = gate_matrix(gate, n)
        np.testing.assert_allclose(u @ u.conj().T, np.eye(2**n), atol=1e-12)
