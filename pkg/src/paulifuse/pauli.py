"""Signed Pauli strings in the binary symplectic representation.

A Pauli string on n qubits is stored as two integer bitmasks: bit i of
``x_bits`` marks an X component on qubit i, bit i of ``z_bits`` a Z
component.  A qubit with both bits set carries Y, with neither it carries
the identity.  Phases are restricted to a real sign in {+1, -1}; the
imaginary phase arising from products is reported separately by
:func:`multiply`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

PAULI_CHARS = "IXYZ"

# (x, z) bit pair -> letter; Y is the pair with both bits set.
_OP_FROM_BITS = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}
_BITS_FROM_OP = {v: k for k, v in _OP_FROM_BITS.items()}


class PauliParseError(ValueError):
    """Raised when a Pauli string contains a character outside {I,X,Y,Z}."""


class DimensionError(ValueError):
    """Raised when two operands act on different qubit counts."""


@dataclass(frozen=True)
class PauliTerm:
    """One Pauli string with a sign, a rotation angle, and a source index.

    ``angle`` is the theta of ``exp(-i * theta/2 * P)``; a Hamiltonian term
    with coefficient w and timestep dt carries ``angle = 2 * w * dt``.
    """

    x_bits: int
    z_bits: int
    n: int
    sign: int = 1
    angle: float = 0.0
    id: int = 0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError(f"qubit count must be >= 1, got {self.n}")
        mask = (1 << self.n) - 1
        if self.x_bits & ~mask or self.z_bits & ~mask:
            raise ValueError("bit vector wider than the declared qubit count")
        if self.sign not in (1, -1):
            raise ValueError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def key(self) -> tuple[int, int]:
        """Phase-insensitive identity of the operator: the (x, z) bit pair."""
        return (self.x_bits, self.z_bits)

    def op_at(self, qubit: int) -> str:
        return _OP_FROM_BITS[((self.x_bits >> qubit) & 1, (self.z_bits >> qubit) & 1)]

    def label(self) -> str:
        return "".join(self.op_at(q) for q in range(self.n))

    def support(self) -> tuple[int, ...]:
        """Qubits on which the string acts non-trivially, ascending."""
        occ = self.x_bits | self.z_bits
        return tuple(q for q in range(self.n) if (occ >> q) & 1)

    def weight(self) -> int:
        return (self.x_bits | self.z_bits).bit_count()

    def is_identity(self) -> bool:
        return self.x_bits == 0 and self.z_bits == 0

    def with_angle(self, angle: float) -> "PauliTerm":
        return replace(self, angle=angle)

    def __str__(self) -> str:
        return ("-" if self.sign < 0 else "+") + self.label()


def parse_pauli(text: str, coefficient: float = 1.0, dt: float = 1.0,
                id: int = 0) -> PauliTerm:
    """Build a term from a letter string such as ``"XYIZ"``.

    Character position k maps to qubit k.  The stored angle is
    ``2 * coefficient * dt``.
    """
    if not text:
        raise PauliParseError("empty Pauli string")
    x = z = 0
    for pos, ch in enumerate(text):
        try:
            xb, zb = _BITS_FROM_OP[ch]
        except KeyError:
            raise PauliParseError(
                f"invalid character {ch!r} at position {pos}; expected one of I, X, Y, Z"
            ) from None
        x |= xb << pos
        z |= zb << pos
    return PauliTerm(x, z, len(text), sign=1, angle=2.0 * coefficient * dt, id=id)


def _check_dims(p: PauliTerm, q: PauliTerm) -> None:
    if p.n != q.n:
        raise DimensionError(f"qubit counts differ: {p.n} vs {q.n}")


def commutes(p: PauliTerm, q: PauliTerm) -> bool:
    """True iff the strings commute.

    The strings anticommute on an odd number of qubit positions iff the
    symplectic inner product x_p.z_q + z_p.x_q is odd.
    """
    _check_dims(p, q)
    return (((p.x_bits & q.z_bits).bit_count() + (p.z_bits & q.x_bits).bit_count()) & 1) == 0


def multiply(p: PauliTerm, q: PauliTerm) -> tuple[PauliTerm, int]:
    """Product of two Pauli strings.

    Returns ``(r, k)`` with ``M(p) . M(q) == i**k . M(r-bits unsigned)``,
    where k (mod 4) folds in the per-qubit phases and the operand signs.
    The returned term's bits are the XOR of the operand bits; its sign is
    the real part of i**k (-1 exactly when k == 2, +1 otherwise), so for a
    real total phase ``M(p) . M(q) == M(r)`` holds exactly.
    """
    _check_dims(p, q)
    x = p.x_bits ^ q.x_bits
    z = p.z_bits ^ q.z_bits
    # Writing each single-qubit operator as i^(x.z) X^x Z^z, commuting the
    # operand's Z past the other's X contributes i^(2.z1x2) per overlap.
    k = (
        (p.x_bits & p.z_bits).bit_count()
        + (q.x_bits & q.z_bits).bit_count()
        + 2 * (p.z_bits & q.x_bits).bit_count()
        - (x & z).bit_count()
    )
    if p.sign < 0:
        k += 2
    if q.sign < 0:
        k += 2
    k %= 4
    sign = -1 if k == 2 else 1
    return PauliTerm(x, z, p.n, sign=sign, angle=0.0, id=p.id), k
