"""Homology matrices of the generator atoms.

* Dehn twists act as transvections ``x -> x + phi(x) * c`` for a curve record
  ``(c, phi)``.  ``(c, phi)`` and ``(-c, -phi)`` give the same twist,
  ``(c, -phi)`` gives its inverse.
* The crosscap slide ``Y_{m_j, a_j}`` sends ``mu_j -> -mu_j`` and
  ``mu_{j+1} -> 2 mu_j + mu_{j+1}``, fixing the other ``mu_k``.
* A crosscap involution is a signed permutation ``mu_i -> eps * mu_{pi(i)}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .homlat import (
    GenusContext,
    InvalidInputError,
    InvariantError,
    LatticeCovector,
    LatticeMatrix,
    LatticeVector,
    canonicalize,
    mat_apply,
    mat_inverse,
    pair,
)

__all__ = [
    "CurveRecord",
    "SlideSpec",
    "CrosscapInvolution",
    "make_record",
    "twist_matrix",
    "slide_matrix",
    "pair_slide_matrix",
    "perm_matrix",
    "d_hom",
    "transform_record",
    "record_key",
    "record_relation",
    "REMARK_D_NOTE",
]

REMARK_D_NOTE = (
    "crosscap slides have D = -1 on homology; the printed remark claiming "
    "D(y) = 1 contradicts the corrections sigma*Y, tau*Y, upsilon'*Y being "
    "twist-subgroup elements and is treated as a typo"
)


@dataclass(frozen=True)
class CurveRecord:
    """A two-sided curve as (homology class, intersection functional)."""

    name: str
    cls: LatticeVector
    fnl: LatticeCovector

    def __post_init__(self):
        if self.cls.g != self.fnl.g:
            raise InvalidInputError(
                f"record {self.name!r}: class has genus {self.cls.g}, functional {self.fnl.g}"
            )
        if pair(self.fnl, self.cls) != 0:
            raise InvariantError(f"record {self.name!r}: functional does not vanish on its class")

    @property
    def g(self) -> int:
        return self.fnl.g

    def negated(self) -> CurveRecord:
        """Same twist, opposite orientation of both data."""
        return CurveRecord(self.name, -self.cls, -self.fnl)

    def inverse(self) -> CurveRecord:
        """Record of the inverse twist."""
        return CurveRecord(self.name, self.cls, -self.fnl)

    def renamed(self, name: str) -> CurveRecord:
        return CurveRecord(name, self.cls, self.fnl)


def make_record(name: str, cls: Sequence[int], fnl: Sequence[int], ctx: GenusContext) -> CurveRecord:
    """Build a record from raw length-g class and covector tuples."""
    if len(fnl) != ctx.g:
        raise InvalidInputError(f"record {name!r}: covector needs {ctx.g} entries, got {len(fnl)}")
    return CurveRecord(name, canonicalize(cls, ctx), LatticeCovector(tuple(fnl)))


@dataclass(frozen=True)
class SlideSpec:
    j: int

    def check(self, ctx: GenusContext):
        if not isinstance(self.j, int) or not 1 <= self.j <= ctx.g - 1:
            raise InvalidInputError(f"slide index {self.j} out of range 1..{ctx.g - 1}")


@dataclass(frozen=True)
class CrosscapInvolution:
    """Signed permutation of the crosscaps.  ``perm`` is 1-based: ``perm[i-1] = pi(i)``."""

    perm: tuple[int, ...]
    sign: int = 1

    def __post_init__(self):
        perm = tuple(self.perm)
        object.__setattr__(self, "perm", perm)
        if self.sign not in (1, -1):
            raise InvalidInputError(f"sign must be +1 or -1, got {self.sign}")
        if sorted(perm) != list(range(1, len(perm) + 1)):
            raise InvalidInputError(f"not a permutation of 1..{len(perm)}: {perm}")
        if any(perm[p - 1] != i for i, p in enumerate(perm, 1)):
            raise InvariantError(f"permutation is not an involution: {perm}")

    @classmethod
    def from_cycles(cls, g: int, pairs: Sequence[tuple[int, int]], sign: int = 1) -> CrosscapInvolution:
        perm = list(range(1, g + 1))
        for i, j in pairs:
            perm[i - 1], perm[j - 1] = j, i
        return cls(tuple(perm), sign)

    def transpositions(self) -> int:
        return sum(1 for i, p in enumerate(self.perm, 1) if p > i)

    def fixes(self, i: int) -> bool:
        return self.perm[i - 1] == i

    def cycles(self) -> list[tuple[int, int]]:
        return [(i, p) for i, p in enumerate(self.perm, 1) if p > i]


def _matrix_from_images(images: Sequence[Sequence[int]], ctx: GenusContext) -> LatticeMatrix:
    """Matrix whose k-th column is the canonical class of ``images[k]`` (raw, length g)."""
    cols = [canonicalize(img, ctx).canon for img in images[: ctx.g - 1]]
    return LatticeMatrix(tuple(zip(*cols)))


def twist_matrix(rec: CurveRecord, ctx: GenusContext) -> LatticeMatrix:
    if rec.g != ctx.g:
        raise InvalidInputError(f"record genus {rec.g} does not match context genus {ctx.g}")
    c = rec.cls.canon
    phi = rec.fnl.canon
    n = ctx.g - 1
    return LatticeMatrix(
        tuple(tuple(int(i == k) + phi[k] * c[i] for k in range(n)) for i in range(n))
    )


def slide_matrix(s: SlideSpec, ctx: GenusContext) -> LatticeMatrix:
    s.check(ctx)
    return pair_slide_matrix(s.j, s.j + 1, ctx)


def pair_slide_matrix(m: int, n: int, ctx: GenusContext) -> LatticeMatrix:
    """Slide of crosscap ``m`` through crosscap ``n``: ``mu_m -> -mu_m``, ``mu_n -> 2 mu_m + mu_n``.

    ``slide_matrix(j)`` is the case ``(j, j + 1)``; other pairs arise as
    conjugates of slides by crosscap permutations.
    """
    if m == n or not (1 <= m <= ctx.g and 1 <= n <= ctx.g):
        raise InvalidInputError(f"slide crosscaps ({m}, {n}) invalid for genus {ctx.g}")
    images = []
    for k in range(1, ctx.g + 1):
        img = [0] * ctx.g
        if k == m:
            img[m - 1] = -1
        elif k == n:
            img[m - 1] = 2
            img[n - 1] = 1
        else:
            img[k - 1] = 1
        images.append(img)
    return _matrix_from_images(images, ctx)


def perm_matrix(cinv: CrosscapInvolution, ctx: GenusContext) -> LatticeMatrix:
    if len(cinv.perm) != ctx.g:
        raise InvalidInputError(f"permutation has length {len(cinv.perm)}, genus is {ctx.g}")
    images = []
    for i in range(ctx.g):
        img = [0] * ctx.g
        img[cinv.perm[i] - 1] = cinv.sign
        images.append(img)
    return _matrix_from_images(images, ctx)


def d_hom(a: LatticeMatrix) -> int:
    """The determinant homomorphism; +1 is necessary for twist-subgroup membership."""
    return a.det


def transform_record(a: LatticeMatrix, rec: CurveRecord, a_inv: LatticeMatrix | None = None) -> CurveRecord:
    """Push a record forward: ``(A c, phi o A^-1)``.

    The twist of the result equals ``A T A^-1``.  Pass ``a_inv`` to skip
    recomputing the inverse.
    """
    if a_inv is None:
        a_inv = mat_inverse(a)
    cls = mat_apply(a, rec.cls)
    phi = rec.fnl.canon
    cols = a_inv.columns()
    row = tuple(sum(p * x for p, x in zip(phi, col)) for col in cols)
    return CurveRecord(rec.name, cls, LatticeCovector.from_canon(row))


def record_key(rec: CurveRecord) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Hashable key identifying a twist: equal for (c, phi) and (-c, -phi)."""
    c, phi = rec.cls.canon, rec.fnl.canon
    lead = next((x for x in c + phi if x != 0), 0)
    if lead < 0:
        c = tuple(-x for x in c)
        phi = tuple(-x for x in phi)
    return c, phi


def record_relation(rec: CurveRecord, target: CurveRecord) -> int:
    """+1 if both records give the same twist, -1 if inverse twists, 0 otherwise."""
    if record_key(rec) == record_key(target):
        return 1
    if record_key(rec) == record_key(target.inverse()):
        return -1
    return 0
