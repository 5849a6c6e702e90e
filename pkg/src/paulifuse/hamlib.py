"""Benchmark term lists: lattice models and the term-file format.

Lattices use open boundaries and row-major site ordering; couplings come
before field terms.  The term-file format is one ``<coefficient>
<pauli letters>`` pair per line, ``#`` starting a comment, UTF-8 with LF
line endings.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .pauli import PauliTerm, parse_pauli

log = logging.getLogger(__name__)

ISING = "ising"
HEISENBERG = "heisenberg"


@dataclass(frozen=True)
class LatticeSpec:
    dims: tuple[int, ...]
    model: str
    coupling: float = 1.0
    fieldstrength: float = 1.0
    dt: float = 1.0

    def __post_init__(self) -> None:
        if self.model not in (ISING, HEISENBERG):
            raise ValueError(f"model must be {ISING!r} or {HEISENBERG!r}, got {self.model!r}")
        if len(self.dims) not in (2, 3) or any(d < 1 for d in self.dims):
            raise ValueError(f"dims must be 2 or 3 positive integers, got {self.dims}")

    @property
    def n_qubits(self) -> int:
        return math.prod(self.dims)


def _site_index(coord: tuple[int, ...], dims: tuple[int, ...]) -> int:
    idx = 0
    for c, d in zip(coord, dims):
        idx = idx * d + c
    return idx


def _edges(dims: tuple[int, ...]) -> list[tuple[int, int]]:
    """Nearest-neighbor open-boundary edges, row-major site order."""
    ranges = [range(d) for d in dims]
    coords = [()]
    for r in ranges:
        coords = [c + (i,) for c in coords for i in r]
    edges = []
    for coord in coords:
        for axis in range(len(dims)):
            if coord[axis] + 1 < dims[axis]:
                nbr = tuple(c + 1 if a == axis else c for a, c in enumerate(coord))
                edges.append((_site_index(coord, dims), _site_index(nbr, dims)))
    return edges


def _two_site_term(op: str, a: int, b: int, n: int, angle: float, id: int) -> PauliTerm:
    x = z = 0
    xb, zb = {"X": (1, 0), "Y": (1, 1), "Z": (0, 1)}[op]
    for q in (a, b):
        x |= xb << q
        z |= zb << q
    return PauliTerm(x, z, n, sign=1, angle=angle, id=id)


def gen_ising(spec: LatticeSpec) -> list[PauliTerm]:
    """ZZ term per edge plus a transverse X field term per site."""
    if spec.model != ISING:
        raise ValueError(f"spec.model is {spec.model!r}, expected {ISING!r}")
    n = spec.n_qubits
    terms: list[PauliTerm] = []
    zz_angle = 2.0 * spec.coupling * spec.dt
    for a, b in _edges(spec.dims):
        terms.append(_two_site_term("Z", a, b, n, zz_angle, len(terms)))
    x_angle = 2.0 * spec.fieldstrength * spec.dt
    for q in range(n):
        terms.append(PauliTerm(1 << q, 0, n, sign=1, angle=x_angle, id=len(terms)))
    return terms


def gen_heisenberg(spec: LatticeSpec) -> list[PauliTerm]:
    """XX, YY, ZZ terms per edge; no field terms."""
    if spec.model != HEISENBERG:
        raise ValueError(f"spec.model is {spec.model!r}, expected {HEISENBERG!r}")
    n = spec.n_qubits
    angle = 2.0 * spec.coupling * spec.dt
    terms: list[PauliTerm] = []
    for a, b in _edges(spec.dims):
        for op in ("X", "Y", "Z"):
            terms.append(_two_site_term(op, a, b, n, angle, len(terms)))
    return terms


def generate(spec: LatticeSpec) -> list[PauliTerm]:
    return gen_ising(spec) if spec.model == ISING else gen_heisenberg(spec)


class TermFileError(ValueError):
    """Malformed term file; the message names the offending line."""


def load_terms(path: str, dt: float = 1.0) -> list[PauliTerm]:
    """Read ``<coefficient> <letters>`` lines into terms, file order."""
    terms: list[PauliTerm] = []
    n: int | None = None
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise TermFileError(
                    f"{path}:{lineno}: expected '<coefficient> <pauli letters>', got {raw.strip()!r}"
                )
            try:
                coeff = float(parts[0])
            except ValueError:
                raise TermFileError(f"{path}:{lineno}: bad coefficient {parts[0]!r}") from None
            try:
                term = parse_pauli(parts[1], coeff, dt, id=len(terms))
            except ValueError as exc:
                raise TermFileError(f"{path}:{lineno}: {exc}") from None
            if n is None:
                n = term.n
            elif term.n != n:
                raise TermFileError(
                    f"{path}:{lineno}: string length {term.n} differs from earlier {n}"
                )
            if term.is_identity():
                log.warning("%s:%d: all-identity term contributes only a global phase", path, lineno)
            terms.append(term)
    if not terms:
        log.warning("%s: no terms found", path)
    return terms


def save_terms(terms: list[PauliTerm], path: str, dt: float = 1.0) -> None:
    """Write terms in the load format, recovering coefficients from angles."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for t in terms:
            coeff = t.sign * t.angle / (2.0 * dt)
            fh.write(f"{coeff!r} {t.label()}\n")
