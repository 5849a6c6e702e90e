"""Shared builders for randomized compiler tests (seeded, deterministic)."""

import numpy as np
import pytest

from paulifuse.pauli import PauliTerm, parse_pauli


def make_terms(labels, angles=None):
    """Terms with ids equal to list positions, default distinct angles."""
    out = []
    for i, lbl in enumerate(labels):
        t = parse_pauli(lbl, id=i)
        angle = 0.1 * (i + 1) if angles is None else angles[i]
        out.append(PauliTerm(t.x_bits, t.z_bits, t.n, angle=angle, id=i))
    return out


def random_term_list(rng, n, m, allow_identity=False):
    terms = []
    for i in range(m):
        while True:
            x = int(rng.integers(0, 2**n))
            z = int(rng.integers(0, 2**n))
            if allow_identity or x or z:
                break
        angle = float(rng.uniform(-np.pi, np.pi))
        terms.append(PauliTerm(x, z, n, angle=angle, id=i))
    return terms


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
