"""Command-line front end: pair classification, mesh scanning, fuzzing
and benchmarking with a stable machine-readable JSON output schema.

Exit codes: 0 success, 1 usage error, 2 degenerate/unparseable input,
3 scan timeout (partial report emitted), 4 fuzz mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys

from gmpy2 import mpq

from . import mesh as meshmod
from .fuzz import BACKENDS, GeneratorSpec, bench, bench_table
from .fuzz import fuzz as run_fuzz
from .classify import classify
from .errors import DegenerateTriangle, ParseError, TriTriError, UnsupportedFormat
from .geometry import SCHEMA_VERSION

SUPPORTED_SCHEMA_VERSIONS = ("1",)


def _parse_scalar(text, backend):
    if backend == "rational" and "/" in text:
        num, den = text.split("/", 1)
        return mpq(int(num), int(den))
    value = float(text)
    return mpq(value) if backend == "rational" else value


def _parse_vertex(text, backend):
    parts = text.split(",")
    if len(parts) != 3:
        raise ValueError(f"vertex {text!r} is not x,y,z")
    return tuple(_parse_scalar(p, backend) for p in parts)


def _read_pair_file(path, backend):
    with open(path) as fh:
        tokens = fh.read().split()
    if len(tokens) != 18:
        raise ValueError(f"pair file must hold 18 numbers, got {len(tokens)}")
    vals = [_parse_scalar(t, backend) for t in tokens]
    verts = [tuple(vals[k : k + 3]) for k in range(0, 18, 3)]
    return tuple(verts[:3]), tuple(verts[3:])


def cmd_pair(args):
    backend = args.backend
    if args.file:
        t0, t1 = _read_pair_file(args.file, backend)
    else:
        if len(args.vertices) != 6:
            print("pair needs six x,y,z vertices (three per triangle)", file=sys.stderr)
            return 1
        verts = [_parse_vertex(v, backend) for v in args.vertices]
        t0, t1 = tuple(verts[:3]), tuple(verts[3:])
    try:
        result = classify(t0, t1)
    except DegenerateTriangle as exc:
        print(f"degenerate input triangle: {exc}", file=sys.stderr)
        return 2
    record = result.to_dict()
    record["metadata"]["backend"] = backend
    print(json.dumps(record))
    return 0


def cmd_scan(args):
    try:
        mesh = meshmod.load_mesh(args.path, fmt=args.format, triangulate=args.triangulate)
    except (ParseError, UnsupportedFormat) as exc:
        print(f"cannot load mesh: {exc}", file=sys.stderr)
        return 2
    options = meshmod.ScanOptions(
        ignore_shared_simplices=args.ignore_shared_simplices,
        workers=args.workers,
        timeout=args.timeout,
        backend=args.backend,
    )
    report, results = meshmod.scan(mesh, options)
    if args.output:
        with open(args.output, "w") as fh:
            for line in meshmod.result_lines(results):
                fh.write(line + "\n")
    print(json.dumps(report.to_dict()))
    return 3 if report.partial else 0


def cmd_fuzz(args):
    try:
        spec = GeneratorSpec(
            family=args.family, seed=args.seed, count=args.count,
            ulp_scale=args.ulp_scale,
        )
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    backends = args.backends.split(",") if args.backends else BACKENDS
    for b in backends:
        if b not in BACKENDS:
            print(f"unknown backend {b!r}", file=sys.stderr)
            return 1
    failure = run_fuzz(spec, backends=backends)
    if failure is None:
        print(json.dumps({"schema_version": SCHEMA_VERSION, "verdict": "pass",
                          "family": args.family, "seed": args.seed,
                          "count": args.count}))
        return 0
    print(json.dumps({"schema_version": SCHEMA_VERSION, "verdict": "fail",
                      "failure": failure.to_dict()}))
    return 4


def cmd_bench(args):
    try:
        with open(args.specs) as fh:
            raw = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read spec file: {exc}", file=sys.stderr)
        return 1
    specs = []
    for k, entry in enumerate(raw):
        try:
            specs.append(
                GeneratorSpec(
                    family=entry["family"],
                    seed=int(entry.get("seed", 0)),
                    count=int(entry.get("count", 100)),
                    ulp_scale=float(entry.get("ulpScale", 1.0)),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            print(f"bad spec entry {k}: {exc}", file=sys.stderr)
            return 1
    rows = bench(specs, repetitions=args.repetitions)
    report = {"schema_version": SCHEMA_VERSION, "rows": [r.to_dict() for r in rows]}
    print(json.dumps(report))
    if args.table:
        print(bench_table(rows), file=sys.stderr)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="tritri",
        description="Exact triangle-triangle intersection detection and classification",
    )
    parser.add_argument(
        "--schema-version",
        default=SCHEMA_VERSION,
        help="output schema version to emit (only '1' is defined)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pair", help="classify a single triangle pair")
    p.add_argument("vertices", nargs="*",
                   help="six x,y,z vertices: three of T0 then three of T1")
    p.add_argument("--file", help="file holding 18 whitespace-separated numbers")
    p.add_argument("--backend", choices=BACKENDS, default="float")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("scan", help="scan a mesh for self-intersections")
    p.add_argument("path")
    p.add_argument("--format", choices=("off", "obj", "stl"))
    p.add_argument("--backend", choices=BACKENDS, default="float")
    p.add_argument("--triangulate", action="store_true",
                   help="fan-triangulate polygonal faces instead of erroring")
    p.add_argument("--ignore-shared-simplices", type=_bool_flag, default=True,
                   metavar="{true,false}",
                   help="drop pure mesh-adjacency contacts from the counts (default true)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timeout", type=float, default=None,
                   help="abort after SECONDS with a partial report (exit 3)")
    p.add_argument("--output", help="write per-pair results as JSON lines here")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("fuzz", help="differential fuzzing against the rational oracle")
    p.add_argument("--family", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--ulp-scale", type=float, default=1.0)
    p.add_argument("--backends", help="comma-separated subset of float,rational,implicit")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("bench", help="timing + predicate-counter report")
    p.add_argument("--specs", required=True, help="JSON list of generator specs")
    p.add_argument("--repetitions", type=int, default=5)
    p.add_argument("--table", action="store_true", help="also print an aligned table to stderr")
    p.set_defaults(func=cmd_bench)
    return parser


def _bool_flag(text):
    low = text.lower()
    if low in ("true", "1", "yes"):
        return True
    if low in ("false", "0", "no"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; the documented contract is 1
        return 1 if exc.code else 0
    if args.schema_version not in SUPPORTED_SCHEMA_VERSIONS:
        print(f"unsupported schema version {args.schema_version!r}", file=sys.stderr)
        return 1
    try:
        return args.func(args)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except TriTriError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
