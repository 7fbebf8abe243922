"""twistlab command line: verify, eval, orbit, curves.

Exit codes: 0 pass, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Any, Sequence

from .config import ConfigError, load_config
from .homlat import GenusContext, InvalidInputError, InvariantError, is_involution_matrix
from .orbit import DEFAULT_DEPTH_CAP, orbit_bfs
from .presets import (
    PresetSet,
    SearchFailedError,
    base_table,
    omori_curves,
    standard_curve,
    supports_eight,
    supports_six,
)
from .verify import CAVEAT, VerificationReport, build_presets, full_report
from .wordalg import evaluate, parse_word

EXIT_PASS, EXIT_FAIL, EXIT_INVALID = 0, 1, 2
_INT64 = 2**63


def _jsonable(obj: Any) -> Any:
    # integers outside the signed 64-bit range go out as decimal strings
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return obj if -_INT64 <= obj < _INT64 else str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(_jsonable(obj), indent=2, ensure_ascii=True) + "\n"


class _Style:
    def __init__(self, stream):
        self.on = not os.environ.get("TWISTLAB_NO_COLOR") and hasattr(stream, "isatty") and stream.isatty()

    def mark(self, ok: bool) -> str:
        word = "PASS" if ok else "FAIL"
        if not self.on:
            return word
        return f"\033[32m{word}\033[0m" if ok else f"\033[31m{word}\033[0m"


def _depth(args, default: int) -> int:
    d = getattr(args, "depth", None)
    return default if d is None else d


def _genus(args) -> GenusContext:
    if args.genus is None:
        raise InvalidInputError("--genus is required")
    return GenusContext(args.genus)


def _presets(args) -> PresetSet | None:
    """Presets from --config, --preset, or the default kind for the genus."""
    if getattr(args, "config", None):
        return load_config(args.config, args.genus, getattr(args, "preset", None)).presets
    ctx = _genus(args)
    kind = getattr(args, "preset", None)
    if kind is None:
        kind = "six" if supports_six(ctx.g) else "eight" if supports_eight(ctx.g) else None
    if kind is None:
        return None
    return build_presets(ctx, kind, depth_cap=_depth(args, DEFAULT_DEPTH_CAP))


def _plain_curves(ctx: GenusContext):
    if ctx.g >= 4:
        return omori_curves(ctx)
    return [standard_curve(f"a{i}", ctx) for i in range(1, ctx.g)]


def _report_text(report: VerificationReport, style: _Style) -> str:
    lines = [f"genus {report.genus}, {report.kind} involutions"]
    for p in report.presets:
        lines.append(f"  {style.mark(p.passed)} {p.name:<8} = {p.word:<22} involution={p.involution} D={p.d_value:+d}")
    o = report.orbit
    lines.append(
        f"  {style.mark(o.complete)} orbit of {o.source} under {{{', '.join(o.generators)}}}: "
        f"{len(o.witnesses)} reached, {len(o.unreached)} unreached, {o.states_explored} states"
    )
    for w in report.witnesses:
        sign = "" if w.sign == 1 else "^-1" if w.sign == -1 else "?"
        lines.append(f"  {style.mark(w.verified)} {w.target}{sign} = {w.word or '(no witness)'}")
    for c in report.checks:
        lines.append(f"  {style.mark(c.passed)} {c.name}" + (f": {c.detail}" if c.detail else ""))
    if report.mod2 is not None:
        m = report.mod2
        lines.append(f"  {style.mark(m.passed)} mod-2 consistency: {m.checked} matrices, {len(m.mismatches)} mismatches")
        lines += [f"      {x}" for x in m.mismatches]
    for n in report.notes:
        lines.append(f"  note: {n}")
    lines.append(f"  caveat: {CAVEAT}")
    lines.append(f"verdict: {style.mark(report.passed)}")
    return "\n".join(lines) + "\n"


def cmd_verify(args, out) -> int:
    if args.config:
        cfg = load_config(args.config, args.genus, args.preset)
        pset = cfg.presets
        ctx, kind, depth = pset.ctx, cfg.preset, _depth(args, cfg.depth_cap)
    else:
        ctx = _genus(args)
        kind, depth = args.preset or "six", _depth(args, DEFAULT_DEPTH_CAP)
        pset = None
    report = full_report(ctx, kind, pset=pset, depth_cap=depth)
    if args.json:
        out.write(dumps(report.to_dict()))
    else:
        out.write(_report_text(report, _Style(out)))
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_eval(args, out) -> int:
    ctx = _genus(args)
    pset = _presets(args)
    table = pset.table if pset is not None else base_table(ctx, _plain_curves(ctx))
    m = evaluate(parse_word(args.word), table, ctx)
    inv = is_involution_matrix(m)
    if args.json:
        out.write(dumps({"schema": 1, "genus": ctx.g, "word": args.word, "matrix": m.to_lists(), "d": m.det, "involution": inv}))
    else:
        width = max(len(str(x)) for row in m.entries for x in row) if m.n else 1
        for row in m.entries:
            out.write("[" + " ".join(str(x).rjust(width) for x in row) + "]\n")
        out.write(f"D = {m.det:+d}\ninvolution: {'yes' if inv else 'no'}\n")
    return EXIT_PASS


def cmd_orbit(args, out) -> int:
    ctx = _genus(args)
    pset = _presets(args)
    curves = pset.curves if pset is not None else _plain_curves(ctx)
    table = pset.table if pset is not None else base_table(ctx, curves)
    gens = [n for n in (args.gens or "").split(",") if n]
    by_name = {c.name: c for c in curves}
    if args.source not in by_name:
        raise InvalidInputError(f"unknown curve {args.source!r}")
    targets = [c for c in curves if c.name.startswith("a")]
    depth = _depth(args, DEFAULT_DEPTH_CAP)
    res = orbit_bfs(ctx, [(n, table.matrix(n)) for n in gens], by_name[args.source], targets, depth)
    rows = [
        {"target": t.name, "word": str(res.witnesses[t.name]), "sign": res.signs[t.name]}
        for t in targets if t.name in res.witnesses
    ]
    if args.json:
        out.write(dumps({
            "schema": 1, "genus": ctx.g, "source": args.source, "generators": gens, "depth_cap": depth,
            "witnesses": rows, "unreached": res.unreached, "states_explored": res.states_explored,
        }))
    else:
        for r in rows:
            sign = "" if r["sign"] == 1 else " (inverse twist)"
            out.write(f"{r['target']:<5} <- {r['word'] or '(empty word)'}{sign}\n")
        if res.unreached:
            out.write(f"unreached within depth {depth}: {', '.join(res.unreached)}\n")
    return EXIT_PASS if res.complete else EXIT_FAIL


def cmd_curves(args, out) -> int:
    ctx = _genus(args)
    if args.config:
        curves = load_config(args.config, args.genus, None).presets.curves
    else:
        curves = _plain_curves(ctx)
    rows = [{"name": c.name, "class": list(c.cls.raw), "canon": list(c.cls.canon), "covector": list(c.fnl.entries)} for c in curves]
    if args.json:
        out.write(dumps({"schema": 1, "genus": ctx.g, "curves": rows}))
    else:
        for r in rows:
            out.write(f"{r['name']:<5} class={r['class']} canon={r['canon']} covector={r['covector']}\n")
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="twistlab", description="Homology-level checks of involution generators of twist subgroups.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, preset=True):
        p.add_argument("--genus", "-g", type=int)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--json", action="store_true", help="machine-readable output")
        if preset:
            p.add_argument("--preset", choices=("six", "eight"))
            p.add_argument("--depth", type=int, help=f"orbit search depth cap (default {DEFAULT_DEPTH_CAP})")

    p = sub.add_parser("verify", help="run every check for one genus")
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("eval", help="evaluate a word to its matrix")
    common(p)
    p.add_argument("word")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("orbit", help="witness words carrying a curve to each a_i")
    common(p)
    p.add_argument("--from", dest="source", default="a1")
    p.add_argument("--gens", default="", help="comma-separated atom names")
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("curves", help="list the curve records")
    common(p, preset=False)
    p.set_defaults(func=cmd_curves)
    return ap


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_PASS
    if getattr(args, "depth", None) is not None and args.depth < 0:
        print("error: --depth must be non-negative", file=sys.stderr)
        return EXIT_INVALID
    try:
        return args.func(args, out)
    except (ConfigError, InvalidInputError, InvariantError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except SearchFailedError as exc:
        print(f"search failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    raise SystemExit(main())
