"""Breadth-first search over curve records under a set of matrices.

States are records up to simultaneous sign ``(c, phi) ~ (-c, -phi)``, i.e. up
to the twist they define.  Each step pushes a record forward by one
generator (and by its inverse when the generator is not an involution).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .homlat import GenusContext, LatticeCovector, LatticeMatrix, LatticeVector, is_involution_matrix, mat_inverse
from .mcggen import CurveRecord, record_key
from .wordalg import Letter, Word

__all__ = ["DEFAULT_DEPTH_CAP", "OrbitResult", "orbit_bfs"]

DEFAULT_DEPTH_CAP = 10

Key = tuple[tuple[int, ...], tuple[int, ...]]


_INT64_SAFE = 2**62


class _Move:
    """One generator letter acting on stacked records by matrix products."""

    __slots__ = ("letter", "fwd", "inv", "growth")

    def __init__(self, letter: Letter, m: LatticeMatrix, m_inv: LatticeMatrix):
        self.letter = letter
        # c -> M c as rows:  C @ M^T ;  phi -> phi M^-1 as rows:  P @ M^-1
        self.fwd = np.array(m.entries, dtype=object).T.copy()
        self.inv = np.array(m_inv.entries, dtype=object)
        self.growth = max(
            max(sum(abs(x) for x in col) for col in m.columns()),
            max(sum(abs(x) for x in row) for row in m_inv.entries),
        )

    def push(self, states: np.ndarray, n: int) -> np.ndarray:
        """Push every row ``[c | phi]`` of ``states`` and normalize signs."""
        bound = int(np.abs(states).max()) if states.size else 0
        if states.dtype != object and bound * self.growth < _INT64_SAFE:
            fwd, inv = self.fwd.astype(np.int64), self.inv.astype(np.int64)
        else:
            states = states.astype(object)
            fwd, inv = self.fwd, self.inv
        out = np.concatenate([states[:, :n] @ fwd, states[:, n:] @ inv], axis=1)
        nz = out != 0
        first = nz.argmax(axis=1)
        lead = out[np.arange(len(out)), first]
        flip = np.asarray(lead < 0, dtype=bool)
        out[flip] = -out[flip]
        return out


@dataclass
class OrbitResult:
    """Witness words per target name; ``signs[name]`` is +1 when the image gives
    the target twist itself and -1 when it gives the inverse twist."""

    source: str
    generators: list[str]
    depth_cap: int
    witnesses: dict[str, Word] = field(default_factory=dict)
    signs: dict[str, int] = field(default_factory=dict)
    unreached: list[str] = field(default_factory=list)
    states_explored: int = 0

    @property
    def complete(self) -> bool:
        return not self.unreached


def orbit_bfs(
    ctx: GenusContext,
    generators: Sequence[tuple[str, LatticeMatrix]],
    source: CurveRecord,
    targets: Sequence[CurveRecord],
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> OrbitResult:
    """Shortest words carrying ``source`` to each target, up to twist inversion.

    Ties are broken by generator order along the path from the source, then
    by discovery order, so the output is deterministic for a fixed generator
    list.  Targets not reached within ``depth_cap`` steps are listed in
    ``unreached``.
    """
    n = ctx.dim
    moves: list[_Move] = []
    for name, m in generators:
        m_inv = mat_inverse(m)
        moves.append(_Move(Letter(name, 1), m, m_inv))
        if not is_involution_matrix(m):
            moves.append(_Move(Letter(name, -1), m_inv, m))

    wanted: dict[Key, list[tuple[str, int]]] = {}
    for t in targets:
        wanted.setdefault(_flat(record_key(t)), []).append((t.name, 1))
        inv_key = _flat(record_key(t.inverse()))
        if inv_key != _flat(record_key(t)):
            wanted.setdefault(inv_key, []).append((t.name, -1))

    result = OrbitResult(source.name, [name for name, _ in generators], depth_cap)
    names_left = {t.name for t in targets}

    start = _flat(record_key(source))
    # parent pointers: key -> (previous key, letter applied)
    parent: dict[tuple[int, ...], tuple[tuple[int, ...], Letter] | None] = {start: None}

    def word_to(key: tuple[int, ...]) -> Word:
        letters = []
        while parent[key] is not None:
            key, letter = parent[key]
            letters.append(letter)
        # collected last-applied first, which is left-to-right word order
        return Word(tuple(letters))

    def record_hit(key: tuple[int, ...]):
        for name, sign in wanted.get(key, ()):
            if name in names_left:
                names_left.discard(name)
                result.witnesses[name] = word_to(key)
                result.signs[name] = sign

    record_hit(start)
    frontier = [start]
    depth = 0
    while frontier and names_left and depth < depth_cap:
        depth += 1
        states = _stack(frontier)
        images = [mv.push(states, n).tolist() for mv in moves]
        nxt = []
        for row, key in enumerate(frontier):
            for mv, img in zip(moves, images):
                k2 = tuple(img[row])
                if k2 in parent:
                    continue
                parent[k2] = (key, mv.letter)
                nxt.append(k2)
                record_hit(k2)
        frontier = nxt

    result.states_explored = len(parent)
    result.unreached = [t.name for t in targets if t.name in names_left]
    return result


def _flat(key: Key) -> tuple[int, ...]:
    return key[0] + key[1]


def _stack(keys: list[tuple[int, ...]]) -> np.ndarray:
    if max(abs(x) for k in keys for x in k) < _INT64_SAFE:
        return np.array(keys, dtype=np.int64)
    return np.array(keys, dtype=object)


def record_from_key(name: str, key: tuple[int, ...]) -> CurveRecord:
    half = len(key) // 2
    c, phi = key[:half], key[half:]
    return CurveRecord(name, LatticeVector(c + (0,), c), LatticeCovector.from_canon(phi))
