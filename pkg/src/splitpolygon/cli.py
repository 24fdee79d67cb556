"""Command-line front end.

Every verb reads JSON (a path, or ``-`` for stdin) and prints canonical
JSON.  Exit status: 0 for success or a positive verdict, 1 for a negative
verdict or a failed verification, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import catalog
from .combinat import SizeMismatch, compute_combinatorics, ordered_equiv, pattern_scan, unordered_equiv
from .plinth import DEDUP_MODES, enumerate_plinths, plinth_counts, rigidity_certificate, table_shape
from .render import render_real
from .serialize import (FormatError, arrangement_from_json, arrangement_to_json, base_from_json,
                        certificate_to_json, dumps, multi_certificate_to_json, plinth_from_json,
                        poly_to_json, verify_certificate)
from .splitpoly import chain, multi_split, scan_splittings, split


class InputError(Exception):
    pass


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as ex:
        raise InputError(f"cannot read {path}: {ex.strerror}") from ex
    except json.JSONDecodeError as ex:
        raise InputError(f"{path} is not valid JSON: {ex}") from ex


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-")
    with os.fdopen(fd, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _load_arrangement(path):
    data = _read_json(path)
    return arrangement_from_json(data), data


def _plinth_spec(arg, data):
    """Plinth JSON from a file, stdin, or a preset stored with the arrangement."""
    if arg is None:
        raise InputError("--plinth is required")
    presets = data.get("presets", {}) if isinstance(data, dict) else {}
    name = arg[:-len("-preset")] if arg.endswith("-preset") else arg
    if name in presets:
        return presets[name]
    if os.path.exists(arg) or arg == "-":
        return _read_json(arg)
    raise InputError(f"no plinth file or preset named {arg!r}")


def _resolve(a, data, arg, base_arg=None):
    c = compute_combinatorics(a)
    spec = _plinth_spec(arg, data)
    p = plinth_from_json(c, spec)
    base = spec.get("base")
    if base_arg is not None:
        try:
            base = json.loads(base_arg)
        except json.JSONDecodeError as ex:
            raise InputError(f"--base is not valid JSON: {ex}") from ex
    return c, p, base_from_json(a.tower, base)


def cmd_catalog(args):
    if args.list:
        _write(dumps(list(catalog.NAMES)), args.output)
        return 0
    if args.name is None:
        raise InputError("catalog needs a NAME (or --list)")
    e = catalog.build(args.name, *args.params)
    out = arrangement_to_json(e.arrangement, e.presets)
    out["name"] = e.title
    out["profile"] = {str(k): v for k, v in sorted(e.profile.items())}
    _write(dumps(out), args.output)
    return 0


def cmd_combinatorics(args):
    a, _ = _load_arrangement(args.file)
    c = compute_combinatorics(a)
    out = {"lines": list(c.line_labels),
           "points": [c.label_point(k) for k in range(len(c.points))],
           "profile": {str(k): v for k, v in sorted(c.multiplicity_profile().items())}}
    _write(dumps(out), args.output)
    return 0


def cmd_equiv(args):
    a, _ = _load_arrangement(args.first)
    b, _ = _load_arrangement(args.second)
    ca, cb = compute_combinatorics(a), compute_combinatorics(b)
    if args.ordered:
        try:
            eq = ordered_equiv(ca, cb)
        except SizeMismatch:
            eq = False
        out = {"equivalent": eq, "ordered": True}
    else:
        phi = unordered_equiv(ca, cb)
        eq = phi is not None
        out = {"equivalent": eq, "ordered": False,
               "witness": {ca.line_labels[i]: cb.line_labels[j] for i, j in enumerate(phi)} if eq else None}
    _write(dumps(out), args.output)
    return 0 if eq else 1


def cmd_plinths(args):
    a, _ = _load_arrangement(args.file)
    c = compute_combinatorics(a)
    pred = table_shape if args.table_shape else None
    out = {"r": args.r, "dedup": args.dedup,
           "counts": plinth_counts(c, args.r, min_multiplicity=args.min_multiplicity, predicate=pred)}
    out["plinths"] = [p.to_json(c) for p in enumerate_plinths(
        c, args.r, min_multiplicity=args.min_multiplicity, dedup=args.dedup, predicate=pred)]
    if args.splitting:
        scan = scan_splittings(a, args.r, min_multiplicity=args.min_multiplicity,
                               predicate=pred, lattice=c)
        out["splitting_counts"] = scan.counts
        out["splitting_plinths"] = [p.to_json(c) for p in scan.representatives]
    _write(dumps(out), args.output)
    return 0


def cmd_pattern(args):
    a, _ = _load_arrangement(args.file)
    c = compute_combinatorics(a)
    pats = pattern_scan(c, args.r)
    _write(dumps({"r": args.r, "patterns": [p.describe(c) for p in pats]}), args.output)
    return 0 if pats else 1


def cmd_rigidity(args):
    a, data = _load_arrangement(args.file)
    c, p = compute_combinatorics(a), None
    if args.plinth is not None:
        c, p, _ = _resolve(a, data, args.plinth)
    rc = rigidity_certificate(a, p, c)
    _write(dumps(rc.to_json()), args.output)
    return 0 if rc.rigid else 1


def cmd_chain(args):
    a, data = _load_arrangement(args.file)
    c, p, base = _resolve(a, data, args.plinth, args.base)
    cr = chain(a, p, base, lattice=c)
    out = {"edges": [[poly_to_json(q) for q in e.coeffs] for e in cr.edges],
           "delta": poly_to_json(cr.delta), "delta_raw": poly_to_json(cr.delta_raw),
           "param_base": [[x.to_json() for x in v] for v in cr.param_base],
           "plinth": p.to_json(c)}
    _write(dumps(out), args.output)
    return 0


def cmd_split(args):
    a, data = _load_arrangement(args.file)
    c, p, base = _resolve(a, data, args.plinth, args.base)
    ct = split(a, p, base, lattice=c)
    _write(dumps(certificate_to_json(ct)), args.output)
    return 0 if ct.split else 1


def cmd_multi_split(args):
    reps = []
    for f in args.files:
        a, data = _load_arrangement(f)
        c, p, base = _resolve(a, data, args.plinth, args.base)
        reps.append((a, p, base))
    mc = multi_split(reps)
    _write(dumps(multi_certificate_to_json(mc)), args.output)
    return 0 if mc.verdict == "Split" else 1


def cmd_render(args):
    a, _ = _load_arrangement(args.file)
    polygon = tuple(args.polygon.split(",")) if args.polygon else ()
    inf = args.infinity
    if inf not in a.labels:
        raise InputError(f"unknown line {inf!r}")
    d = render_real(a, inf, polygon=polygon)
    _write(d.to_svg(), args.output)
    return 0


def cmd_verify_cert(args):
    data = _read_json(args.file)
    problems = verify_certificate(data)
    _write(dumps({"ok": not problems, "mismatches": problems}), args.output)
    return 0 if not problems else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="splitpolygon",
                                 description="Exact splitting-polygon constructions for line arrangements.")
    sub = ap.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(fn=fn)
        sp.add_argument("-o", "--output", help="output path (default stdout)")
        return sp

    sp = verb("catalog", cmd_catalog, "build a named arrangement")
    sp.add_argument("name", nargs="?")
    sp.add_argument("params", nargs="*", type=int)
    sp.add_argument("--list", action="store_true", help="list catalog names")

    sp = verb("combinatorics", cmd_combinatorics, "print the intersection lattice")
    sp.add_argument("file", nargs="?", default="-")

    sp = verb("equiv", cmd_equiv, "compare two lattices")
    sp.add_argument("first")
    sp.add_argument("second")
    sp.add_argument("--ordered", action="store_true")

    sp = verb("plinths", cmd_plinths, "enumerate plinths")
    sp.add_argument("file", nargs="?", default="-")
    sp.add_argument("-r", type=int, default=3)
    sp.add_argument("--dedup", choices=DEDUP_MODES, default="cyclic")
    sp.add_argument("--min-multiplicity", type=int, default=2)
    sp.add_argument("--table-shape", action="store_true",
                    help="non-concurrent support, S_(i-1) through P_i, non-collinear pivots")
    sp.add_argument("--splitting", action="store_true", help="also count plinths that split")

    sp = verb("pattern", cmd_pattern, "list splitting-polygon patterns")
    sp.add_argument("file", nargs="?", default="-")
    sp.add_argument("-r", type=int, default=3)

    sp = verb("rigidity", cmd_rigidity, "constructive rigidity certificate")
    sp.add_argument("file", nargs="?", default="-")
    sp.add_argument("--plinth")

    for name, fn, h in (("chain", cmd_chain, "symbolic chain and closure polynomial"),
                        ("split", cmd_split, "split certificate")):
        sp = verb(name, fn, h)
        sp.add_argument("file", nargs="?", default="-")
        sp.add_argument("--plinth", required=True, help="plinth JSON file or preset name")
        sp.add_argument("--base", help="parameter base as JSON [[x,y,z],[x,y,z]]")

    sp = verb("multi-split", cmd_multi_split, "split several representatives")
    sp.add_argument("files", nargs="+")
    sp.add_argument("--plinth", required=True)
    sp.add_argument("--base")

    sp = verb("render", cmd_render, "SVG picture of a real arrangement")
    sp.add_argument("file", nargs="?", default="-")
    sp.add_argument("--infinity", required=True, help="label of the line sent to infinity")
    sp.add_argument("--polygon", help="comma-separated labels drawn as polygon edges")

    sp = verb("verify-cert", cmd_verify_cert, "replay a certificate")
    sp.add_argument("file", nargs="?", default="-")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return int(ex.code or 0)
    try:
        return args.fn(args)
    except (InputError, FormatError, catalog.UnknownName, catalog.BadParams, ValueError, KeyError) as ex:
        msg = ex.args[0] if ex.args else str(ex)
        sys.stderr.write(json.dumps({"error": type(ex).__name__, "message": str(msg)}) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
