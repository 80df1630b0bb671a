"""``ddc`` command line tool.

Exit codes: 0 on success or a PASS verdict, 1 on a FAIL verdict, 2 on a
usage or parameter error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

from . import __version__
from .configuration import (Configuration, DDCClass, PeriodicArray, Shape, density,
                            difference_collision, dumps, from_record, is_ddc_class,
                            point_set_diameter, to_record)
from .grid import GridKind, Metric, xi_inverse

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ints(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _emit(rec: dict, out: str | None = None):
    rec = dict(rec, version=__version__)
    text = dumps(rec)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}")


def periodic_record(a: PeriodicArray) -> dict:
    return {"type": "periodic", "grid": a.kind.value, "period": list(a.period),
            "dots": [list(p) for p in a.fundamental], "density": str(density(a)),
            "meta": a.meta}


def load_configuration(rec: dict):
    """Configuration, metric and radius from a configuration record, a
    periodic record (its fundamental domain) or a report embedding one."""
    if not isinstance(rec, dict):
        raise UsageError("expected a JSON object")
    if "configuration" in rec and "dots" not in rec:
        rec = rec["configuration"]
    rec = dict(rec)
    if "grid" in rec and "dots" in rec:
        kind = rec["grid"]
        rec.setdefault("metric", "manhattan" if kind == "square" else "hex")
        rec.setdefault("r", -1)
    try:
        c, metric, r = from_record(rec)
    except ValueError as exc:
        raise UsageError(str(exc))
    if r < 0:
        r = point_set_diameter(c.dots, metric, c.kind) if c.dots else 0
        if metric is Metric.EUCLIDEAN:
            r = math.isqrt(r - 1) + 1 if r else 0
    return c, metric, r


# ---------------------------------------------------------------------------
# construct

def cmd_construct(args):
    from . import constructions as K
    from .extraction import PIPELINES

    kind = args.construction
    if kind == "welch":
        _emit(periodic_record(K.periodic_welch(args.p, args.alpha)), args.out)
    elif kind == "golomb":
        _emit(periodic_record(K.periodic_golomb(args.q, args.alpha, args.beta)), args.out)
    elif kind == "folded":
        c = K.folded_ruler(args.ruler, args.ell, args.k)
        _emit(to_record(c, construction="folded", ell=args.ell, k=args.k), args.out)
    elif kind in ("dpf", "crt"):
        build = K.doubly_periodic_folding if kind == "dpf" else K.crt_construction
        _emit(periodic_record(build(args.set, args.ell, args.k, args.n)), args.out)
    elif kind == "leedd":
        c = K.leedd(args.r, args.ruler)
        _emit(to_record(c, Metric.MANHATTAN, args.r, construction="leedd"), args.out)
    elif kind == "dpleedd":
        _emit(periodic_record(K.doubly_periodic_leedd(args.R, args.set, args.n)), args.out)
    elif kind == "pipeline":
        rep = PIPELINES[args.name](args.r)
        _emit(rep.to_json(), args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

def _resolve_class(c: Configuration, metric: Metric, name: str | None) -> DDCClass:
    if name is None:
        try:
            return DDCClass.for_grid(c.kind, metric)
        except ValueError as exc:
            raise UsageError(str(exc))
    cls = DDCClass(name)
    if cls.kind is not c.kind:
        raise UsageError(f"class {cls.value} lives on the {cls.kind.value} grid, "
                         f"but the configuration is on the {c.kind.value} grid")
    return cls


def cmd_verify(args):
    c, metric, r = load_configuration(_read_json(args.file))
    cls = _resolve_class(c, metric, args.cls)
    r = r if args.r is None else args.r
    ok = is_ddc_class(c, cls, r)
    diam = point_set_diameter(c.dots, cls.metric, c.kind) if c.dots else 0
    rec = {"verdict": "PASS" if ok else "FAIL", "class": cls.value, "r": r, "m": c.m,
           "diameter": diam, "limit": cls.limit(r)}
    hit = difference_collision(c)
    if hit is not None:
        rec["collision"] = [[list(p) for p in pair] for pair in hit]
    elif not ok:
        rec["reason"] = "diameter exceeds r"
    _emit(rec)
    return EXIT_OK if ok else EXIT_FAIL


# ---------------------------------------------------------------------------
# bounds / search / extract

def _scan_range(text):
    m = re.fullmatch(r"\s*(\d+)\s*:\s*(\d+)\s*", text)
    if not m or int(m.group(1)) > int(m.group(2)):
        raise argparse.ArgumentTypeError(f"expected LO:HI, got {text!r}")
    return int(m.group(1)), int(m.group(2))


def cmd_bounds(args):
    from . import bounds as B

    if args.table:
        _emit({"table": {cls.value: list(v) for cls, v in B.table1_constants().items()}})
        return EXIT_OK
    if args.honeycomb:
        if args.scan:
            lo, hi = args.scan
            lo = max(lo, 2)
            bad = [m for m in range(lo, hi + 1) if not B.honeycomb_ruled_out(m)[0]]
            _emit({"honeycomb_scan": [lo, hi], "all_ruled_out": not bad,
                   "not_ruled_out": bad[:50], "threshold": B.honeycomb_threshold(hi, 2)})
            return EXIT_OK if not bad else EXIT_FAIL
        if args.m is None:
            raise UsageError("--honeycomb needs --m or --scan")
        out, ell = B.honeycomb_ruled_out(args.m)
        rec = {"m": args.m, "ruled_out": out, "ell": ell}
        if ell is not None:
            rec["witness"] = B.honeycomb_witness(args.m, ell)
        _emit(rec)
        return EXIT_OK
    if args.cls is None:
        raise UsageError("--class is required")
    cls = DDCClass(args.cls)
    if args.shape:
        c, _, _ = load_configuration(_read_json(args.shape))
        if c.kind is not cls.kind:
            raise UsageError("shape grid does not match the class")
        _emit({"class": cls.value, "shape_size": c.m,
               "m_max": B.generic_shape_upper(Shape(c.kind, c.dots), cls.metric)})
        return EXIT_OK
    if args.r is None:
        raise UsageError("--r is required")
    _emit(B.erdos_turan_upper(args.r, cls).to_json())
    return EXIT_OK


def cmd_search(args):
    from .search import max_ddc

    res = max_ddc(DDCClass(args.cls), args.r, budget=args.budget, symmetry=not args.no_symmetry,
                  threads=args.threads, checkpoint=args.checkpoint)
    _emit(res.to_json(), args.out)
    return EXIT_OK


def cmd_extract(args):
    from .extraction import PIPELINES

    kw = {}
    if args.theta is not None:
        kw["theta"] = args.theta
    if args.a is not None:
        kw["a"] = args.a
    try:
        rep = PIPELINES[args.pipeline](args.r, **kw)
    except TypeError:
        raise UsageError(f"pipeline {args.pipeline} does not take those parameters")
    _emit(rep.to_json(), args.out)
    return EXIT_OK if rep.check() else EXIT_FAIL


# ---------------------------------------------------------------------------
# render

SVG_SCALE = 20


def render_ascii(c: Configuration) -> str:
    if c.kind is not GridKind.SQUARE:
        raise UsageError("ascii rendering is only defined for the square grid")
    if not c.dots:
        return ""
    dots = set(c.dots)
    i0 = min(i for i, _ in dots)
    i1 = max(i for i, _ in dots)
    j0 = min(j for _, j in dots)
    j1 = max(j for _, j in dots)
    rows = ["".join("#" if (i, j) in dots else "." for i in range(i0, i1 + 1))
            for j in range(j1, j0 - 1, -1)]
    return "\n".join(rows) + "\n"


def _polygon(points):
    pts = " ".join(f"{x:.3f},{y:.3f}" for x, y in points)
    return f'<polygon points="{pts}" fill="black" stroke="gray" stroke-width="0.5"/>'


def render_svg(c: Configuration) -> str:
    s = SVG_SCALE
    polys = []
    if c.kind is GridKind.SQUARE:
        for i, j in c.dots:
            x, y = i, -j
            polys.append([(x - .5, y - .5), (x + .5, y - .5), (x + .5, y + .5), (x - .5, y + .5)])
    else:
        rad = 1 / math.sqrt(3)
        corners = [(rad * math.cos(math.pi / 2 + k * math.pi / 3),
                    rad * math.sin(math.pi / 2 + k * math.pi / 3)) for k in range(6)]
        for i, j in c.dots:
            x, y = xi_inverse(i, j)
            polys.append([(x + dx, -y + dy) for dx, dy in corners])
    if polys:
        xs = [x for p in polys for x, _ in p]
        ys = [y for p in polys for _, y in p]
        x0, y0 = min(xs) - .5, min(ys) - .5
        w, h = max(xs) - x0 + .5, max(ys) - y0 + .5
    else:
        x0 = y0 = 0.0
        w = h = 1.0
    body = [_polygon([((x - x0) * s, (y - y0) * s) for x, y in p]) for p in polys]
    return ('<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{w * s:.3f}" height="{h * s:.3f}">\n'
            f'<!-- ddc {__version__} {c.kind.value} m={c.m} -->\n'
            + "".join(line + "\n" for line in body) + "</svg>\n")


def cmd_render(args):
    c, _, _ = load_configuration(_read_json(args.file))
    text = render_ascii(c) if args.format == "ascii" else render_svg(c)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# catalog

INDEX = "index.json"


def _catalog_index(root):
    path = os.path.join(root, INDEX)
    if not os.path.exists(path):
        return {"version": __version__, "entries": {}}
    return _read_json(path)


def _write_index(root, index):
    with open(os.path.join(root, INDEX), "w") as fh:
        fh.write(json.dumps(index, sort_keys=True, indent=1) + "\n")


def catalog_entry(c: Configuration, cls: DDCClass, r: int, entry_id: str, construction=None):
    return {"id": entry_id, "class": cls.value, "r": r, "m": c.m,
            "construction": construction or {}, "configuration": to_record(c, cls.metric, r),
            "created_with": {"tool": "ddc", "version": __version__}}


def cmd_catalog(args):
    root = args.dir
    if args.action == "add":
        rec = _read_json(args.file)
        c, metric, r = load_configuration(rec)
        cls = _resolve_class(c, metric, args.cls)
        if not is_ddc_class(c, cls, r):
            raise UsageError(f"{args.file} is not a {cls.value} configuration at r={r}")
        os.makedirs(root, exist_ok=True)
        index = _catalog_index(root)
        entry_id = args.id or f"{cls.value}-r{r}-m{c.m}-{len(index['entries']):04d}"
        if not re.fullmatch(r"[A-Za-z0-9_.-]+", entry_id):
            raise UsageError(f"invalid catalog id {entry_id!r}")
        construction = rec.get("meta") or rec.get("construction")
        if isinstance(construction, str):
            construction = {"name": construction}
        entry = catalog_entry(c, cls, r, entry_id, construction)
        with open(os.path.join(root, f"{entry_id}.json"), "w") as fh:
            fh.write(dumps(entry) + "\n")
        index["entries"][entry_id] = {"class": cls.value, "r": r, "m": c.m}
        _write_index(root, index)
        _emit({"added": entry_id})
        return EXIT_OK
    index = _catalog_index(root)
    if args.action == "list":
        _emit({"entries": index["entries"]})
        return EXIT_OK
    if args.action == "show":
        if args.id not in index["entries"]:
            raise UsageError(f"no catalog entry {args.id!r}")
        _emit(_read_json(os.path.join(root, f"{args.id}.json")))
        return EXIT_OK
    # verify every stored entry
    bad = []
    for entry_id in sorted(index["entries"]):
        entry = _read_json(os.path.join(root, f"{entry_id}.json"))
        c, _, _ = load_configuration(entry["configuration"])
        if not is_ddc_class(c, DDCClass(entry["class"]), entry["r"]) or c.m != entry["m"]:
            bad.append(entry_id)
    _emit({"checked": len(index["entries"]), "failed": bad})
    return EXIT_OK if not bad else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ddc", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"ddc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)
    classes = [c.value for c in DDCClass]

    c = sub.add_parser("construct", help="build a construction and print its JSON")
    csub = c.add_subparsers(dest="construction", required=True)
    w = csub.add_parser("welch")
    w.add_argument("--p", type=int, required=True)
    w.add_argument("--alpha", type=int)
    g = csub.add_parser("golomb")
    g.add_argument("--q", type=int, required=True)
    g.add_argument("--alpha", type=int)
    g.add_argument("--beta", type=int)
    f = csub.add_parser("folded")
    f.add_argument("--ruler", type=_ints, required=True)
    f.add_argument("--ell", type=int, required=True)
    f.add_argument("--k", type=int, required=True)
    for name in ("dpf", "crt"):
        d = csub.add_parser(name)
        d.add_argument("--set", type=_ints, required=True, help="Sidon set modulo n")
        d.add_argument("--n", type=int)
        d.add_argument("--ell", type=int, required=True)
        d.add_argument("--k", type=int, required=True)
    lee = csub.add_parser("leedd")
    lee.add_argument("--r", type=int, required=True)
    lee.add_argument("--ruler", type=_ints, required=True)
    dpl = csub.add_parser("dpleedd")
    dpl.add_argument("--R", type=int, required=True)
    dpl.add_argument("--set", type=_ints, required=True)
    dpl.add_argument("--n", type=int, required=True)
    pl = csub.add_parser("pipeline")
    pl.add_argument("--name", required=True,
                    choices=["dd_euclid_square", "ddbar_lee", "ddbarstar_hex", "dd_euclid_hex"])
    pl.add_argument("--r", type=int, required=True)
    for sp in csub.choices.values():
        sp.add_argument("--out", help="write JSON here instead of stdout")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check a configuration file")
    v.add_argument("file")
    v.add_argument("--class", dest="cls", choices=classes)
    v.add_argument("--r", type=int)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="upper bounds on the number of dots")
    b.add_argument("--class", dest="cls", choices=classes)
    b.add_argument("--r", type=int)
    b.add_argument("--shape", help="bound for DDCs inside the cells of this file")
    b.add_argument("--table", action="store_true", help="asymptotic coefficients")
    b.add_argument("--honeycomb", action="store_true")
    b.add_argument("--m", type=int)
    b.add_argument("--scan", type=_scan_range)
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("search", help="exhaustive search for the largest DDC")
    s.add_argument("--class", dest="cls", choices=classes, required=True)
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--budget", type=int, default=10**9)
    s.add_argument("--threads", type=int, default=1)
    s.add_argument("--no-symmetry", action="store_true")
    s.add_argument("--checkpoint", help="progress file; an existing one is resumed")
    s.add_argument("--out")
    s.set_defaults(func=cmd_search)

    e = sub.add_parser("extract", help="run an extraction pipeline")
    e.add_argument("--pipeline", required=True,
                   choices=["dd_euclid_square", "ddbar_lee", "ddbarstar_hex", "dd_euclid_hex"])
    e.add_argument("--r", type=int, required=True)
    e.add_argument("--theta", type=float)
    e.add_argument("--a", type=float)
    e.add_argument("--out")
    e.set_defaults(func=cmd_extract)

    rnd = sub.add_parser("render", help="draw a configuration")
    rnd.add_argument("file")
    rnd.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    rnd.add_argument("--out")
    rnd.set_defaults(func=cmd_render)

    cat = sub.add_parser("catalog", help="a directory of verified configurations")
    cat.add_argument("--dir", default="catalog")
    catsub = cat.add_subparsers(dest="action", required=True)
    add = catsub.add_parser("add")
    add.add_argument("file")
    add.add_argument("--id")
    add.add_argument("--class", dest="cls", choices=classes)
    catsub.add_parser("list")
    show = catsub.add_parser("show")
    show.add_argument("id")
    catsub.add_parser("verify")
    cat.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:
        print(f"ddc: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
