"""Exact integer model of the real first homology of N_g.

Homology classes live in the quotient lattice Z^g / <(1, ..., 1)>.  A class is
stored both by a raw representative over the one-sided classes mu_1..mu_g and
by canonical coordinates in the basis e_1..e_{g-1}, where e_g has been
eliminated as -(e_1 + ... + e_{g-1}).

Everything here is immutable and uses Python integers, so there is no
overflow and no floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "InvalidInputError",
    "InvariantError",
    "NotUnimodularError",
    "GenusContext",
    "LatticeVector",
    "LatticeCovector",
    "LatticeMatrix",
    "canonicalize",
    "basis_vector",
    "pair",
    "identity",
    "mat_compose",
    "mat_inverse",
    "mat_det",
    "mat_apply",
    "is_involution_matrix",
    "integer_det",
]


class InvalidInputError(ValueError):
    """Malformed input: wrong length, out-of-range index, bad genus."""


class InvariantError(ValueError):
    """A value violates a structural invariant of its type."""


class NotUnimodularError(InvariantError):
    """A matrix with determinant other than +1 or -1 was used as a group element."""


@dataclass(frozen=True)
class GenusContext:
    """Genus bookkeeping: ``g = 2r`` or ``g = 2r + 1``."""

    g: int

    def __post_init__(self):
        if not isinstance(self.g, int) or isinstance(self.g, bool):
            raise InvalidInputError(f"genus must be an integer, got {self.g!r}")
        if self.g < 2:
            raise InvalidInputError(f"genus must be at least 2, got {self.g}")

    @property
    def r(self) -> int:
        return self.g // 2

    @property
    def parity(self) -> str:
        return "even" if self.g % 2 == 0 else "odd"

    @property
    def dim(self) -> int:
        """Rank of the quotient lattice."""
        return self.g - 1


def _int_tuple(values: Iterable[int], what: str) -> tuple[int, ...]:
    out = tuple(values)
    for v in out:
        if not isinstance(v, int) or isinstance(v, bool):
            raise InvalidInputError(f"{what} entries must be integers, got {v!r}")
    return out


@dataclass(frozen=True)
class LatticeVector:
    """A homology class.  Equality compares canonical coordinates only."""

    raw: tuple[int, ...] = field(compare=False)
    canon: tuple[int, ...]

    @property
    def g(self) -> int:
        return len(self.canon) + 1

    def __neg__(self) -> LatticeVector:
        return LatticeVector(tuple(-x for x in self.raw), tuple(-x for x in self.canon))

    def is_zero(self) -> bool:
        return not any(self.canon)


@dataclass(frozen=True)
class LatticeCovector:
    """A functional on Z^g whose entries sum to zero, so it descends to the quotient."""

    entries: tuple[int, ...]

    def __post_init__(self):
        entries = _int_tuple(self.entries, "covector")
        object.__setattr__(self, "entries", entries)
        if sum(entries) != 0:
            raise InvariantError(f"covector entries must sum to zero, got {entries}")

    @classmethod
    def from_canon(cls, row: Sequence[int]) -> LatticeCovector:
        """Rebuild the full covector from its values on e_1..e_{g-1}."""
        row = tuple(row)
        return cls(row + (-sum(row),))

    @property
    def g(self) -> int:
        return len(self.entries)

    @property
    def canon(self) -> tuple[int, ...]:
        return self.entries[:-1]

    def __neg__(self) -> LatticeCovector:
        return LatticeCovector(tuple(-x for x in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)


def canonicalize(raw: Sequence[int], ctx: GenusContext) -> LatticeVector:
    """Reduce a raw coefficient tuple to canonical coordinates ``raw_i - raw_g``."""
    raw = _int_tuple(raw, "vector")
    if len(raw) != ctx.g:
        raise InvalidInputError(f"expected {ctx.g} coefficients, got {len(raw)}")
    last = raw[-1]
    return LatticeVector(raw, tuple(x - last for x in raw[:-1]))


def basis_vector(i: int, ctx: GenusContext) -> LatticeVector:
    """The class of mu_i (1-based)."""
    if not 1 <= i <= ctx.g:
        raise InvalidInputError(f"index {i} out of range 1..{ctx.g}")
    return canonicalize(tuple(int(k == i - 1) for k in range(ctx.g)), ctx)


def pair(phi: LatticeCovector, v: LatticeVector) -> int:
    if sum(phi.entries) != 0:
        raise InvariantError("covector does not sum to zero")
    if phi.g != v.g:
        raise InvalidInputError(f"genus mismatch: covector g={phi.g}, vector g={v.g}")
    # Sum phi = 0 makes this equal to the raw pairing for any representative.
    return sum(p * x for p, x in zip(phi.entries, v.canon))


def integer_det(rows: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class LatticeMatrix:
    """A unimodular (g-1) x (g-1) integer matrix acting on canonical coordinates.

    Column k is the image of e_k.  Construction rejects anything whose
    determinant is not +1 or -1.
    """

    entries: tuple[tuple[int, ...], ...]
    det: int = field(init=False, compare=False)

    def __post_init__(self):
        rows = tuple(_int_tuple(r, "matrix") for r in self.entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise InvalidInputError("matrix must be square")
        object.__setattr__(self, "entries", rows)
        d = integer_det(rows)
        if d not in (1, -1):
            raise NotUnimodularError(f"determinant {d} is not +1 or -1")
        object.__setattr__(self, "det", d)

    @property
    def g(self) -> int:
        return len(self.entries) + 1

    @property
    def n(self) -> int:
        return len(self.entries)

    def columns(self) -> tuple[tuple[int, ...], ...]:
        return tuple(zip(*self.entries))

    def to_lists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def __matmul__(self, other: LatticeMatrix) -> LatticeMatrix:
        return mat_compose(self, other)

    def __repr__(self) -> str:
        return f"LatticeMatrix({self.to_lists()})"


def identity(ctx: GenusContext) -> LatticeMatrix:
    n = ctx.dim
    return LatticeMatrix(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


def _check_same_size(a: LatticeMatrix, b: LatticeMatrix):
    if a.n != b.n:
        raise InvalidInputError(f"dimension mismatch: {a.n} vs {b.n}")


def mat_compose(a: LatticeMatrix, b: LatticeMatrix) -> LatticeMatrix:
    """Matrix product ``a @ b`` (apply ``b`` first)."""
    _check_same_size(a, b)
    cols = b.columns()
    return LatticeMatrix(
        tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a.entries)
    )


def mat_inverse(a: LatticeMatrix) -> LatticeMatrix:
    """Exact inverse by Gauss-Jordan over the rationals."""
    n = a.n
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a.entries)]
    for col in range(n):
        pivot = next(i for i in range(col, n) if m[i][col] != 0)
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for i in range(n):
            if i != col and m[i][col] != 0:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    inv = []
    for row in m:
        out = []
        for x in row[n:]:
            if x.denominator != 1:
                raise NotUnimodularError("inverse has non-integer entries")
            out.append(int(x))
        inv.append(tuple(out))
    return LatticeMatrix(tuple(inv))


def mat_det(a: LatticeMatrix) -> int:
    return a.det


def mat_apply(a: LatticeMatrix, v: LatticeVector) -> LatticeVector:
    """Image of a class; the raw representative is rebuilt from the image coordinates."""
    if a.n != len(v.canon):
        raise InvalidInputError(f"dimension mismatch: matrix {a.n}, vector {len(v.canon)}")
    canon = tuple(sum(x * y for x, y in zip(row, v.canon)) for row in a.entries)
    return LatticeVector(canon + (0,), canon)


def is_involution_matrix(a: LatticeMatrix) -> bool:
    n = a.n
    sq = mat_compose(a, a).entries
    return all(sq[i][j] == int(i == j) for i in range(n) for j in range(n))
