"""Formal words over named generator atoms and their evaluation to matrices.

Text syntax: whitespace-separated atom names, ``^-1`` marks an inverse,
e.g. ``"sigma ta1 sigma^-1"``.  The leftmost atom is applied last, so a word
reads like a composition of maps.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .homlat import GenusContext, InvalidInputError, LatticeMatrix, identity, mat_compose, mat_inverse

__all__ = [
    "DEFAULT_MAX_LENGTH",
    "Letter",
    "Word",
    "GeneratorAtom",
    "GeneratorTable",
    "UnresolvedAtomError",
    "parse_word",
    "evaluate",
    "invert",
    "free_reduce",
    "conjugate",
]

DEFAULT_MAX_LENGTH = 10**6

KINDS = ("twist", "slide", "reflection", "preset")


class UnresolvedAtomError(InvalidInputError):
    pass


@dataclass(frozen=True)
class Letter:
    atom: str
    exp: int = 1

    def __post_init__(self):
        if self.exp not in (1, -1):
            raise InvalidInputError(f"exponent must be +1 or -1, got {self.exp}")
        if not self.atom or any(ch.isspace() for ch in self.atom) or "^" in self.atom:
            raise InvalidInputError(f"invalid atom name {self.atom!r}")

    def inverse(self) -> Letter:
        return Letter(self.atom, -self.exp)

    def __str__(self) -> str:
        return self.atom if self.exp == 1 else f"{self.atom}^-1"


@dataclass(frozen=True)
class Word:
    letters: tuple[Letter, ...] = ()

    @classmethod
    def of(cls, *atoms: str | Letter) -> Word:
        return cls(tuple(a if isinstance(a, Letter) else Letter(a) for a in atoms))

    def __mul__(self, other: Word) -> Word:
        return Word(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __str__(self) -> str:
        return " ".join(map(str, self.letters))

    def atoms(self) -> set[str]:
        return {l.atom for l in self.letters}


def parse_word(text: str, max_length: int = DEFAULT_MAX_LENGTH) -> Word:
    letters = []
    for tok in text.split():
        if tok.endswith("^-1"):
            letters.append(Letter(tok[:-3], -1))
        elif tok.endswith("^1"):
            letters.append(Letter(tok[:-2], 1))
        elif "^" in tok:
            raise InvalidInputError(f"only ^-1 exponents are supported: {tok!r}")
        else:
            letters.append(Letter(tok, 1))
        if len(letters) > max_length:
            raise InvalidInputError(f"word longer than the cap of {max_length} atoms")
    return Word(tuple(letters))


def invert(w: Word) -> Word:
    return Word(tuple(l.inverse() for l in reversed(w.letters)))


def free_reduce(w: Word) -> Word:
    stack: list[Letter] = []
    for l in w.letters:
        if stack and stack[-1].atom == l.atom and stack[-1].exp == -l.exp:
            stack.pop()
        else:
            stack.append(l)
    return Word(tuple(stack))


def conjugate(h: Word, w: Word) -> Word:
    """``h w h^-1``."""
    return h * w * invert(h)


@dataclass(frozen=True)
class GeneratorAtom:
    kind: str
    key: str
    matrix: LatticeMatrix
    payload: object = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown atom kind {self.kind!r}")


class GeneratorTable:
    """Atom name -> matrix for one genus.  Inverses are cached on first use."""

    def __init__(self, ctx: GenusContext, atoms: Iterable[GeneratorAtom] = ()):
        self.ctx = ctx
        self._atoms: dict[str, GeneratorAtom] = {}
        self._inverses: dict[str, LatticeMatrix] = {}
        for a in atoms:
            self.add(a)

    def add(self, atom: GeneratorAtom):
        if atom.matrix.n != self.ctx.dim:
            raise InvalidInputError(f"atom {atom.key!r} has wrong dimension for genus {self.ctx.g}")
        self._atoms[atom.key] = atom
        self._inverses.pop(atom.key, None)

    def __contains__(self, key: str) -> bool:
        return key in self._atoms

    def __getitem__(self, key: str) -> GeneratorAtom:
        try:
            return self._atoms[key]
        except KeyError:
            raise UnresolvedAtomError(f"unknown atom {key!r} at genus {self.ctx.g}") from None

    def keys(self) -> list[str]:
        return list(self._atoms)

    def items(self):
        return self._atoms.items()

    def matrix(self, key: str, exp: int = 1) -> LatticeMatrix:
        atom = self[key]
        if exp == 1:
            return atom.matrix
        if key not in self._inverses:
            self._inverses[key] = mat_inverse(atom.matrix)
        return self._inverses[key]

    def with_atoms(self, extra: Iterable[GeneratorAtom]) -> GeneratorTable:
        t = GeneratorTable(self.ctx, self._atoms.values())
        for a in extra:
            t.add(a)
        return t


def evaluate(w: Word, table: GeneratorTable | Mapping[str, LatticeMatrix], ctx: GenusContext) -> LatticeMatrix:
    """Product of the atom matrices, leftmost atom outermost."""
    if isinstance(table, GeneratorTable):
        lookup = table.matrix
    else:
        def lookup(key: str, exp: int) -> LatticeMatrix:
            try:
                m = table[key]
            except KeyError:
                raise UnresolvedAtomError(f"unknown atom {key!r}") from None
            return m if exp == 1 else mat_inverse(m)
    result = identity(ctx)
    for l in w.letters:
        result = mat_compose(result, lookup(l.atom, l.exp))
    return result


