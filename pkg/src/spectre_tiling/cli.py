"""Command-line front end: census, inflate, analyze, render, verify, export-trimap."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from collections import Counter

from . import analysis, census, inflation
from .inflation import CapExceeded, dumps
from .lattice import EdgeParams
from .render import LAYERS, RenderOptions, render_svg

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

FORMATS = {
    "census": ("json", "csv"),
    "inflate": ("json",),
    "analyze": ("json",),
    "render": ("svg",),
    "verify": ("text", "json"),
    "export-trimap": ("json", "csv"),
}
DEFAULT_STEPS = {"census": 6, "inflate": 1, "analyze": 2, "render": 1, "verify": 2, "export-trimap": 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _seed(text: str) -> str:
    if text not in census.SEEDS:
        raise argparse.ArgumentTypeError(f"seed must be one of {', '.join(census.SEEDS)}")
    return text


def _steps(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError("steps must be an integer") from None
    if n < 0:
        raise argparse.ArgumentTypeError("steps must be >= 0")
    return n


def _params(text: str) -> EdgeParams:
    try:
        return EdgeParams.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spectre", description="Spectre tilings by metatile substitution.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in FORMATS:
        s = sub.add_parser(name)
        s.add_argument("--seed", type=_seed, default="O1")
        s.add_argument("--steps", type=_steps, default=None)
        s.add_argument("--out", default=None, help="output file (default stdout)")
        s.add_argument("--format", default=FORMATS[name][0])
        s.add_argument("--cap", type=int, default=None, help="monotile cap (SPECTRE_CAP overrides)")
        if name in ("inflate", "analyze", "render", "export-trimap"):
            s.add_argument("--input", default=None, help="patch JSON to read instead of generating")
        if name == "census":
            s.add_argument("--geometric", action="store_true", help="label counts of generated patches")
            s.add_argument("--spectral", action="store_true", help="include exact limit data")
        if name == "render":
            s.add_argument("--layers", default="fills,parity_edges")
            s.add_argument("--params", type=_params, default=EdgeParams(1.0, 1.0))
            s.add_argument("--mirror", action="store_true")
        if name == "export-trimap":
            s.add_argument("--undetermined-border", action="store_true")
    return p


# ---------------------------------------------------------------------------
# commands


def _patch(args) -> inflation.Patch:
    if getattr(args, "input", None):
        with open(args.input) as f:
            return inflation.loads(f.read())
    return inflation.generate(args.seed, args.steps, cap=args.cap)


def cmd_census(args) -> bytes:
    rows = census.census_table(args.seed, args.steps, geometric=args.geometric)
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["step", "n_gamma", "n_omega", "n_monotiles"] + [f"M{k}" for k in range(1, 13)] + list(census.SEEDS))
        for r in rows:
            w.writerow([r["step"], r["n_gamma"], r["n_omega"], r["n_monotiles"]] + r["orientations"] + r["metatiles"])
        return buf.getvalue().encode()
    doc = {"seed": args.seed, "rule": "geometric" if args.geometric else "matrix", "rows": rows}
    if args.spectral:
        doc["spectral"] = census.spectral().to_json()
    return dumps(doc).encode()


def cmd_inflate(args) -> bytes:
    if args.input:
        patch = _patch(args)
        if args.steps:
            patch = inflation.inflate(patch, args.steps, cap=args.cap)
    else:
        patch = _patch(args)
    return patch.dumps().encode()


def cmd_analyze(args) -> bytes:
    return dumps(analysis.report(_patch(args))).encode()


def cmd_render(args) -> bytes:
    opts = RenderOptions.parse_layers(args.layers, mirror=args.mirror, params=args.params)
    return render_svg(_patch(args), opts)


def cmd_export_trimap(args) -> bytes:
    patch = _patch(args)
    tm = inflation.tri_map(patch, undetermined_border=args.undetermined_border)
    nodes = sorted(tm.labels.items())
    if args.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "q", "label", "border"])
        for (p, q), lab in nodes:
            w.writerow([p, q, lab, int((p, q) in tm.border)])
        return buf.getvalue().encode()
    doc = {
        "seed": patch.seed,
        "step": patch.step,
        "nodes": [{"node": [p, q], "label": lab, "border": (p, q) in tm.border} for (p, q), lab in nodes],
    }
    return dumps(doc).encode()


# ---------------------------------------------------------------------------
# invariant suite


def _check(results, name, fn):
    try:
        ok, detail = fn()
    except Exception as e:  # a raised law violation is a failure of that check
        ok, detail = False, f"{type(e).__name__}: {e}"
    results.append({"name": name, "ok": bool(ok), "detail": detail})


def invariant_suite(seed: str, step: int, cap: int | None = None) -> list[dict]:
    """Pass/fail records for every structural law on a generated patch."""
    from .shape import find_overlaps

    res: list[dict] = []
    patch = inflation.generate(seed, step, cap=cap)
    ix = analysis.TileIndex(patch)

    def counts():
        want = inflation.expected_label_counts(seed, step)
        got = patch.label_counts()
        return got == want, f"labels {got}"

    def aggregate():
        row = census.census_table(seed, step)[-1]
        got = census.aggregate(patch.label_counts())
        want = (row["n_gamma"], row["n_omega"])
        ok = got == want and len(patch.monotiles) == row["n_monotiles"]
        return ok, f"gamma/omega {got}, monotiles {len(patch.monotiles)}"

    def overlaps():
        bad = find_overlaps(patch.monotiles)
        return not bad, f"{len(bad)} overlapping pairs"

    def translation():
        sizes = Counter(len(g) for g in analysis.duplicate_groups(ix))
        return set(sizes) <= {2, 3}, f"group sizes {dict(sorted(sizes.items()))}"

    def corona():
        cs = analysis.coronas(ix)
        bad = [t for t, nb in cs if len(nb) != 6 or any(n.is_odd for n in nb)]
        return not bad, f"{len(cs)} interior odd tiles, {len(bad)} bad"

    def glue():
        gp = analysis.glue_points_by_core(ix)
        bad = [k for k, v in gp.items() if len(v) != 3 or not all(g.on_border for g in v)]
        real = {analysis.glue_point(x, y) for v in analysis.core_pairs(ix).values() for x, y in v}
        stray = real - {g.position for v in gp.values() for g in v}
        return not bad and not stray, f"{len(gp)} cores, {len(bad)} without 3 border glue points"

    def junction():
        js = analysis.junctions(ix)
        c = Counter(j.kind for j in js)
        return True, f"{dict(sorted(c.items()))}"

    def trimap():
        tm = inflation.tri_map(patch)
        return len(tm.nodes) == len(patch.metatiles), f"{len(tm.nodes)} nodes"

    def chirality():
        got = inflation.pattern_chirality(step, seed)
        return got == inflation.expected_chirality(step), got

    def spectral():
        census.spectral()
        return True, "Perron root 4+sqrt15"

    for name, fn in (
        ("label_counts", counts),
        ("census_aggregate", aggregate),
        ("no_overlaps", overlaps),
        ("translation_law", translation),
        ("corona_law", corona),
        ("glue_points", glue),
        ("junction_taxonomy", junction),
        ("trimap", trimap),
        ("chirality", chirality),
        ("spectral", spectral),
    ):
        _check(res, name, fn)
    return res


def cmd_verify(args):
    res = invariant_suite(args.seed, args.steps, cap=args.cap)
    ok = all(r["ok"] for r in res)
    if args.format == "json":
        return dumps({"seed": args.seed, "step": args.steps, "ok": ok, "checks": res}).encode(), ok
    report = "".join(f"{'PASS' if r['ok'] else 'FAIL'} {r['name']}: {r['detail']}\n" for r in res)
    return report.encode(), ok


# ---------------------------------------------------------------------------


def _error(kind: str, message: str, code: int) -> int:
    sys.stderr.write(json.dumps({"error": kind, "message": message}, sort_keys=True) + "\n")
    return code


def _emit(data: bytes, out: str | None) -> None:
    if out:
        with open(out, "wb") as f:
            f.write(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.format not in FORMATS[args.command]:
            raise UsageError(f"--format for {args.command} must be one of {', '.join(FORMATS[args.command])}")
        if args.steps is None:
            # a patch read from a file is re-emitted as it is unless asked to grow
            reading = args.command == "inflate" and args.input
            args.steps = 0 if reading else DEFAULT_STEPS[args.command]
        if args.command == "render":
            bad = sorted({s.strip() for s in args.layers.split(",") if s.strip()} - set(LAYERS) - {"all"})
            if bad:
                raise UsageError(f"unknown layer(s): {', '.join(bad)}")
    except UsageError as e:
        return _error("usage", str(e), EXIT_USAGE)
    try:
        if args.command == "verify":
            data, ok = cmd_verify(args)
            _emit(data, args.out)
            return EXIT_OK if ok else EXIT_INVALID
        handler = {
            "census": cmd_census,
            "inflate": cmd_inflate,
            "analyze": cmd_analyze,
            "render": cmd_render,
            "export-trimap": cmd_export_trimap,
        }[args.command]
        _emit(handler(args), args.out)
    except CapExceeded as e:
        return _error("cap", str(e), EXIT_CAP)
    except (ValueError, KeyError, OSError) as e:
        return _error(type(e).__name__, str(e), EXIT_INVALID)
    return EXIT_OK


def main() -> None:
    sys.exit(run())
