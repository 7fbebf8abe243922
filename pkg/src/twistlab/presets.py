"""Named elements of the twist subgroup for a given genus.

Curves: Omori's ``a_1 .. a_{g-1}, b, e``.  Involutions: ``sigma, tau, upsilon,
rho1..rho3`` (six-element set, even g >= 14, odd g >= 17) and ``sigma, tau,
rho1..rho3, eta, theta, rho4`` (eight-element set, g >= 8).

The reflections are signed crosscap permutations.  ``sigma`` and ``tau`` use
fixed patterns; ``upsilon``, ``eta`` and ``theta`` are found by a
deterministic search over block-reversal involutions, accepting the first
candidate whose orbit of ``a_1`` covers every ``a_i``.  A raw reflection with
``D = -1`` is corrected on the right by a crosscap slide that it commutes
with.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .homlat import GenusContext, InvalidInputError, LatticeMatrix, is_involution_matrix
from .mcggen import (
    CrosscapInvolution,
    CurveRecord,
    SlideSpec,
    d_hom,
    make_record,
    perm_matrix,
    record_relation,
    slide_matrix,
    transform_record,
    twist_matrix,
)
from .orbit import DEFAULT_DEPTH_CAP, orbit_bfs
from .wordalg import GeneratorAtom, GeneratorTable, Word, evaluate

__all__ = [
    "UnsupportedGenusError",
    "SearchFailedError",
    "SIX_BOUND_MESSAGE",
    "EIGHT_BOUND_MESSAGE",
    "InvolutionPreset",
    "PresetSet",
    "ReflectionOverride",
    "supports_six",
    "supports_eight",
    "omori_curves",
    "standard_curve",
    "base_table",
    "sigma_reflection",
    "tau_reflection",
    "upsilon_candidates",
    "small_genus_upsilon_candidates",
    "search_upsilon",
    "search_eta_theta",
    "six_involutions",
    "eight_involutions",
    "ORBIT_GENERATORS",
]

SIX_BOUND_MESSAGE = "six involutions need g >= 16 or g = 14 (the theorem's bound)"
EIGHT_BOUND_MESSAGE = "eight involutions need g >= 8"

ORBIT_GENERATORS = {
    "six": ("sigma", "tau", "upsilon"),
    "eight": ("sigma", "tau", "eta", "theta"),
}


class UnsupportedGenusError(InvalidInputError):
    pass


class SearchFailedError(RuntimeError):
    """No candidate in the documented family satisfied every constraint."""


def supports_six(g: int) -> bool:
    return g == 14 or g >= 16


def supports_eight(g: int) -> bool:
    return g >= 8


# --- curves -----------------------------------------------------------------


def _unit(g: int, idx: Mapping[int, int]) -> tuple[int, ...]:
    v = [0] * g
    for i, x in idx.items():
        v[i - 1] = x
    return tuple(v)


def standard_curve(name: str, ctx: GenusContext) -> CurveRecord:
    """Default record for ``a<i>``, ``b`` or ``e``."""
    g = ctx.g
    if name.startswith("a") and name[1:].isdigit():
        i = int(name[1:])
        if not 1 <= i <= g - 1:
            raise InvalidInputError(f"curve {name} does not exist for g={g}")
        return make_record(name, _unit(g, {i: 1, i + 1: 1}), _unit(g, {i: 1, i + 1: -1}), ctx)
    if name == "b":
        if g < 4:
            raise UnsupportedGenusError("curve b needs g >= 4")
        return make_record("b", _unit(g, {1: 1, 2: 1, 3: 1, 4: 1}), _unit(g, {1: 1, 2: -1, 3: 1, 4: -1}), ctx)
    if name == "e":
        if g < 4:
            raise UnsupportedGenusError("curve e needs g >= 4")
        if g == 4:
            # no room for crosscaps 2..5; keep the class of b with a different functional
            return make_record("e", _unit(g, {1: 1, 2: 1, 3: 1, 4: 1}), _unit(g, {1: 1, 2: 1, 3: -1, 4: -1}), ctx)
        return make_record("e", _unit(g, {2: 1, 3: 1, 4: 1, 5: 1}), _unit(g, {2: 1, 3: -1, 4: 1, 5: -1}), ctx)
    raise InvalidInputError(f"no standard curve named {name!r}")


def omori_curves(ctx: GenusContext, overrides: Mapping[str, CurveRecord] | None = None) -> list[CurveRecord]:
    """The g+1 Omori curves ``a_1..a_{g-1}, b, e`` (overrides replace by name)."""
    if ctx.g < 4:
        raise UnsupportedGenusError(f"Omori's generators need g >= 4, got g={ctx.g}")
    overrides = dict(overrides or {})
    names = [f"a{i}" for i in range(1, ctx.g)] + ["b", "e"]
    return [overrides.get(n) or standard_curve(n, ctx) for n in names]


def twist_atom(name: str) -> str:
    return f"t{name}"


def slide_atom(j: int) -> str:
    return f"y{j}"


def base_table(ctx: GenusContext, curves: Iterable[CurveRecord]) -> GeneratorTable:
    """Twist atoms ``t<curve>`` and slide atoms ``y1..y{g-1}``."""
    table = GeneratorTable(ctx)
    for rec in curves:
        table.add(GeneratorAtom("twist", twist_atom(rec.name), twist_matrix(rec, ctx), rec))
    for j in range(1, ctx.g):
        table.add(GeneratorAtom("slide", slide_atom(j), slide_matrix(SlideSpec(j), ctx), SlideSpec(j)))
    return table


# --- reflections ---------------------------------------------------------------


def _reversal(lo: int, hi: int) -> list[tuple[int, int]]:
    return [(lo + k, hi - k) for k in range((hi - lo + 1) // 2)]


def _clip(pairs: Iterable[tuple[int, int]], hi: int) -> list[tuple[int, int]]:
    return [(i, j) for i, j in pairs if i <= hi and j <= hi]


def sigma_reflection(ctx: GenusContext) -> CrosscapInvolution:
    """(1 2)(3 4) then reversal of 5..g-2, sign -1; crosscaps g-1, g fixed.

    Negates the functional of a_1 and b (so sigma t_a1, sigma t_b are
    involutions) and has D = (-1)^r for g = 2r.
    """
    g = ctx.g
    pairs = _clip([(1, 2), (3, 4)], g - 2) + _reversal(5, g - 2)
    return CrosscapInvolution.from_cycles(g, pairs, -1)


def tau_reflection(ctx: GenusContext) -> CrosscapInvolution:
    """(2 3)(4 5) then reversal of 6..g-2, sign -1; crosscaps 1, g-1, g fixed.

    Negates the functional of e; D = (-1)^(r+1) for g = 2r.
    """
    g = ctx.g
    pairs = _clip([(2, 3), (4, 5)], g - 2) + _reversal(6, g - 2)
    return CrosscapInvolution.from_cycles(g, pairs, -1)


def _commutes_with_slide(cinv: CrosscapInvolution, j: int) -> bool:
    # conjugating Y_j by a signed permutation gives the slide over the image indices
    return cinv.fixes(j) and cinv.fixes(j + 1)


def upsilon_candidates(ctx: GenusContext, correction: int | None) -> Iterator[CrosscapInvolution]:
    """Two end-anchored block reversals ``rev[1, m] rev[m', g]``, ``2 <= m < m' <= g-1``.

    Ordered by ``(m, m', sign)`` with sign +1 first.  With a correction index
    ``j`` only candidates fixing ``j`` and ``j + 1`` are produced.
    """
    g = ctx.g
    for m in range(2, g - 1):
        for m2 in range(m + 1, g):
            pairs = _reversal(1, m) + _reversal(m2, g)
            for sign in (1, -1):
                cinv = CrosscapInvolution.from_cycles(g, pairs, sign)
                if correction is not None and not _commutes_with_slide(cinv, correction):
                    continue
                yield cinv


def _pairings(items: list[int]) -> Iterator[list[tuple[int, int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    yield from _pairings(rest)
    for k, other in enumerate(rest):
        for tail in _pairings(rest[:k] + rest[k + 1:]):
            yield [(first, other)] + tail


def small_genus_upsilon_candidates(ctx: GenusContext) -> Iterator[tuple[CrosscapInvolution, int | None]]:
    """Every signed crosscap involution usable as upsilon, with its correction index.

    Sorted by cycle list, then sign (+1 first).  A raw D = -1 reflection is
    paired with the first slide it commutes with and kept only if the
    product is an involution.  Meant for small genus, where the list is short.
    """
    g = ctx.g
    for pairs in sorted(_pairings(list(range(1, g + 1)))):
        for sign in (1, -1):
            cinv = CrosscapInvolution.from_cycles(g, pairs, sign)
            raw = perm_matrix(cinv, ctx)
            if d_hom(raw) == 1:
                yield cinv, None
                continue
            j = next((j for j in range(1, g) if _commutes_with_slide(cinv, j)), None)
            if j is not None and is_involution_matrix(raw @ slide_matrix(SlideSpec(j), ctx)):
                yield cinv, j


def _block_segments(g: int, avoid: set[int]) -> list[tuple[int, int]]:
    return [
        (lo, hi)
        for lo in range(1, g + 1)
        for hi in range(lo + 1, g + 1)
        if not any(lo <= x <= hi for x in avoid)
    ]


def _block_products(g: int, avoid: set[int]) -> Iterator[list[tuple[int, int]]]:
    """Products of zero, one or two disjoint block reversals avoiding ``avoid``."""
    segs = _block_segments(g, avoid)
    yield []
    for s in segs:
        yield _reversal(*s)
    for s, t in itertools.combinations(segs, 2):
        if t[0] > s[1]:
            yield _reversal(*s) + _reversal(*t)


def eta_candidates(ctx: GenusContext) -> Iterator[CrosscapInvolution]:
    """(3 4) times block reversals avoiding crosscaps 3, 4, 7, 8; raw D = -1."""
    for pairs in _block_products(ctx.g, {3, 4, 7, 8}):
        for sign in (1, -1):
            cinv = CrosscapInvolution.from_cycles(ctx.g, [(3, 4)] + pairs, sign)
            if d_hom(perm_matrix(cinv, ctx)) == -1:
                yield cinv


def theta_candidates(ctx: GenusContext) -> Iterator[CrosscapInvolution]:
    """Nonempty block-reversal products fixing crosscaps 1, 2; raw D = -1."""
    for pairs in _block_products(ctx.g, {1, 2}):
        if not pairs:
            continue
        for sign in (1, -1):
            cinv = CrosscapInvolution.from_cycles(ctx.g, pairs, sign)
            if d_hom(perm_matrix(cinv, ctx)) == -1:
                yield cinv


# --- presets ----------------------------------------------------------------


@dataclass(frozen=True)
class InvolutionPreset:
    name: str
    word: Word
    raw_reflection: CrosscapInvolution | None = None
    y_correction: SlideSpec | None = None


@dataclass(frozen=True)
class ReflectionOverride:
    """Replacement reflection for ``sigma``, ``tau``, ``upsilon``, ``eta`` or ``theta``.

    ``y_correction`` None means "apply the default rule" (correct iff D = -1);
    0 means "never correct".
    """

    name: str
    cinv: CrosscapInvolution
    y_correction: int | None = None


@dataclass
class PresetSet:
    """An involution generating set together with the table that evaluates it."""

    kind: str
    ctx: GenusContext
    curves: list[CurveRecord]
    presets: list[InvolutionPreset]
    table: GeneratorTable
    notes: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.presets)

    def __iter__(self):
        return iter(self.presets)

    def __getitem__(self, name: str) -> InvolutionPreset:
        for p in self.presets:
            if p.name == name:
                return p
        raise KeyError(name)

    def names(self) -> list[str]:
        return [p.name for p in self.presets]

    def matrix(self, name: str) -> LatticeMatrix:
        return self.table.matrix(name)

    def curve(self, name: str) -> CurveRecord:
        for c in self.curves:
            if c.name == name:
                return c
        raise KeyError(name)


def _default_correction_rule(raw: LatticeMatrix, j: int) -> int | None:
    return j if d_hom(raw) == -1 else None


def _register_reflection(
    table: GeneratorTable,
    name: str,
    cinv: CrosscapInvolution,
    correction: int | None,
) -> InvolutionPreset:
    ctx = table.ctx
    raw_key = f"{name}_raw"
    table.add(GeneratorAtom("reflection", raw_key, perm_matrix(cinv, ctx), cinv))
    letters = [raw_key]
    spec = None
    if correction:
        spec = SlideSpec(correction)
        spec.check(ctx)
        letters.append(slide_atom(correction))
    word = Word.of(*letters)
    preset = InvolutionPreset(name, word, cinv, spec)
    table.add(GeneratorAtom("preset", name, evaluate(word, table, ctx), preset))
    return preset


def _register_product(table: GeneratorTable, name: str, atoms: Sequence[str]) -> InvolutionPreset:
    word = Word.of(*atoms)
    preset = InvolutionPreset(name, word)
    table.add(GeneratorAtom("preset", name, evaluate(word, table, table.ctx), preset))
    return preset


def _resolve(
    table: GeneratorTable,
    name: str,
    default: CrosscapInvolution,
    default_j: int,
    overrides: Mapping[str, ReflectionOverride],
) -> InvolutionPreset:
    ov = overrides.get(name)
    cinv = ov.cinv if ov else default
    raw = perm_matrix(cinv, table.ctx)
    if ov is not None and ov.y_correction is not None:
        j = ov.y_correction or None
    else:
        j = _default_correction_rule(raw, default_j)
    return _register_reflection(table, name, cinv, j)


def _orbit_closes(table: GeneratorTable, gen_names: Sequence[str], curves: Sequence[CurveRecord], depth_cap: int) -> bool:
    ctx = table.ctx
    a = [c for c in curves if c.name.startswith("a")]
    res = orbit_bfs(ctx, [(n, table.matrix(n)) for n in gen_names], a[0], a, depth_cap)
    return res.complete


def _fixes_with_inversion(m: LatticeMatrix, rec: CurveRecord, ctx: GenusContext) -> bool:
    return record_relation(transform_record(m, rec), rec) == -1


def search_upsilon(
    ctx: GenusContext,
    table: GeneratorTable,
    curves: Sequence[CurveRecord],
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> tuple[CrosscapInvolution, SlideSpec | None]:
    """First candidate making {sigma, tau, upsilon} carry a_1 to every a_i.

    ``table`` must already hold ``sigma`` and ``tau``.  Even g: the raw
    reflection must have D = +1 and is used as is.  Odd g: it must have
    D = -1 and is corrected by ``Y_{m_9, a_9}``.
    """
    correction = 9 if ctx.g % 2 else None
    if correction and correction > ctx.g - 1:
        raise SearchFailedError(f"odd g={ctx.g} has no slide Y_9 for the upsilon correction")
    for cinv in upsilon_candidates(ctx, correction):
        raw = perm_matrix(cinv, ctx)
        if d_hom(raw) != (-1 if correction else 1):
            continue
        m = raw @ slide_matrix(SlideSpec(correction), ctx) if correction else raw
        if not is_involution_matrix(m):
            continue
        trial = table.with_atoms([GeneratorAtom("preset", "upsilon", m)])
        if _orbit_closes(trial, ("sigma", "tau", "upsilon"), curves, depth_cap):
            return cinv, SlideSpec(correction) if correction else None
    raise SearchFailedError(f"no upsilon candidate closes the orbit of a1 at g={ctx.g} within depth {depth_cap}")


def search_eta_theta(
    ctx: GenusContext,
    table: GeneratorTable,
    curves: Sequence[CurveRecord],
    depth_cap: int = DEFAULT_DEPTH_CAP,
) -> tuple[CrosscapInvolution, CrosscapInvolution]:
    """First (eta', theta') pair, eta' outer loop, closing the a_1 orbit.

    eta' = eta'' must swap crosscaps 3, 4 (so eta t_a3 is an involution) and
    fix 7, 8; theta' must fix 1, 2.  Both are corrected on the right, by
    ``Y_{m_7, a_7}`` and ``Y_{m_1, a_1}``.
    """
    a3 = next(c for c in curves if c.name == "a3")
    y7 = slide_matrix(SlideSpec(7), ctx)
    y1 = slide_matrix(SlideSpec(1), ctx)
    thetas = []
    for cinv in theta_candidates(ctx):
        m = perm_matrix(cinv, ctx) @ y1
        if is_involution_matrix(m):
            thetas.append((cinv, m))
    for eta in eta_candidates(ctx):
        em = perm_matrix(eta, ctx) @ y7
        if not is_involution_matrix(em) or not _fixes_with_inversion(em, a3, ctx):
            continue
        base = table.with_atoms([GeneratorAtom("preset", "eta", em)])
        for theta, tm in thetas:
            trial = base.with_atoms([GeneratorAtom("preset", "theta", tm)])
            if _orbit_closes(trial, ("sigma", "tau", "eta", "theta"), curves, depth_cap):
                return eta, theta
    raise SearchFailedError(f"no (eta, theta) candidate closes the orbit of a1 at g={ctx.g} within depth {depth_cap}")


def _common_start(
    ctx: GenusContext,
    curve_overrides: Mapping[str, CurveRecord] | None,
    overrides: Mapping[str, ReflectionOverride],
) -> tuple[list[CurveRecord], GeneratorTable, list[InvolutionPreset]]:
    curves = omori_curves(ctx, curve_overrides)
    table = base_table(ctx, curves)
    g = ctx.g
    sigma = _resolve(table, "sigma", sigma_reflection(ctx), g - 1, overrides)
    tau = _resolve(table, "tau", tau_reflection(ctx), g - 1, overrides)
    return curves, table, [sigma, tau]


def _rhos(table: GeneratorTable) -> list[InvolutionPreset]:
    return [
        _register_product(table, "rho1", ["sigma", twist_atom("a1")]),
        _register_product(table, "rho2", ["sigma", twist_atom("b")]),
        _register_product(table, "rho3", ["tau", twist_atom("e")]),
    ]


def six_involutions(
    ctx: GenusContext,
    curve_overrides: Mapping[str, CurveRecord] | None = None,
    overrides: Mapping[str, ReflectionOverride] | None = None,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    enforce_bound: bool = True,
) -> PresetSet:
    """sigma, tau, upsilon, rho1 = sigma t_a1, rho2 = sigma t_b, rho3 = tau t_e.

    ``enforce_bound=False`` builds the same patterns outside the theorem's
    range (used by the mod-2 oracle at small genus); the search still has to
    succeed.
    """
    if enforce_bound and not supports_six(ctx.g):
        raise UnsupportedGenusError(f"g={ctx.g}: {SIX_BOUND_MESSAGE}")
    overrides = dict(overrides or {})
    curves, table, presets = _common_start(ctx, curve_overrides, overrides)
    if "upsilon" in overrides:
        ov = overrides["upsilon"]
        j = ov.y_correction if ov.y_correction is not None else _default_correction_rule(
            perm_matrix(ov.cinv, ctx), 9 if ctx.g % 2 else ctx.g - 1)
        ups = _register_reflection(table, "upsilon", ov.cinv, j or None)
    else:
        cinv, spec = search_upsilon(ctx, table, curves, depth_cap)
        ups = _register_reflection(table, "upsilon", cinv, spec.j if spec else None)
    presets.append(ups)
    presets += _rhos(table)
    return PresetSet("six", ctx, curves, presets, table)


def eight_involutions(
    ctx: GenusContext,
    curve_overrides: Mapping[str, CurveRecord] | None = None,
    overrides: Mapping[str, ReflectionOverride] | None = None,
    depth_cap: int = DEFAULT_DEPTH_CAP,
    enforce_bound: bool = True,
) -> PresetSet:
    """sigma, tau, rho1..rho3 as in the six-set, plus eta = eta' Y7, theta = theta' Y1, rho4 = eta t_a3."""
    if enforce_bound and not supports_eight(ctx.g):
        raise UnsupportedGenusError(f"g={ctx.g}: {EIGHT_BOUND_MESSAGE}")
    overrides = dict(overrides or {})
    curves, table, presets = _common_start(ctx, curve_overrides, overrides)
    presets += _rhos(table)
    if "eta" in overrides and "theta" in overrides:
        eta, theta = overrides["eta"].cinv, overrides["theta"].cinv
    else:
        eta, theta = search_eta_theta(ctx, table, curves, depth_cap)
        eta = overrides["eta"].cinv if "eta" in overrides else eta
        theta = overrides["theta"].cinv if "theta" in overrides else theta

    def corr(name: str, default: int) -> int | None:
        ov = overrides.get(name)
        if ov is not None and ov.y_correction is not None:
            return ov.y_correction or None
        return default

    presets.append(_register_reflection(table, "eta", eta, corr("eta", 7)))
    presets.append(_register_reflection(table, "theta", theta, corr("theta", 1)))
    presets.append(_register_product(table, "rho4", ["eta", twist_atom("a3")]))
    return PresetSet("eight", ctx, curves, presets, table)
