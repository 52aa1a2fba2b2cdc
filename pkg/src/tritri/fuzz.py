"""Differential fuzzing across numeric backends and the timing harness.

Triangle-pair generators draw coordinates on a bounded dyadic grid (so
every value is exactly representable and exactly convertible to a
rational) and optionally perturb them by signed multiples of 2**-52 to
manufacture near-degenerate configurations that stress the filter /
exact-fallback boundary.  The same (family, seed, count) always
reproduces the same pair sequence bit-exactly.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np
from gmpy2 import mpq

from . import numeric
from .classify import classify
from .errors import DegenerateTriangle
from .geometry import validate_triangle
from .oracle import canonicalize, compare, oracle_classify

FAMILIES = (
    "generalPosition",
    "coplanarRandom",
    "sharedVertex",
    "sharedEdge",
    "identical",
    "nearDegenerate",
    "gridSnapped",
)

BACKENDS = ("float", "rational", "implicit")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    seed: int = 0
    count: int = 100
    ulp_scale: float = 1.0  # nearDegenerate only

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")


@dataclass
class FailureCase:
    index: int
    t0: tuple
    t1: tuple
    backend: str
    classifier_points: list
    classifier_segments: list
    detail: str

    def to_dict(self):
        return {
            "index": self.index,
            "t0": [list(v) for v in self.t0],
            "t1": [list(v) for v in self.t1],
            "backend": self.backend,
            "points": [list(p.as_tuple()) for p in self.classifier_points],
            "segments": [[s.p0, s.p1] for s in self.classifier_segments],
            "detail": self.detail,
        }


@dataclass
class BenchRow:
    case_name: str
    pair_count: int
    intersection_point_total: int
    narrow_phase_seconds: float
    predicate_calls: dict = field(default_factory=dict)

    def to_dict(self):
        return {
            "caseName": self.case_name,
            "pairCount": self.pair_count,
            "intersectionPointTotal": self.intersection_point_total,
            "narrowPhaseSeconds": self.narrow_phase_seconds,
            "predicateCallCounts": self.predicate_calls,
        }


# ---------------------------------------------------------------------------
# generators


def _valid(verts):
    try:
        validate_triangle(verts)
        return True
    except DegenerateTriangle:
        return False


def _dyadic_triangle(rng):
    while True:
        t = tuple(
            tuple(float(x) for x in rng.integers(-64, 65, 3) / 8.0) for _ in range(3)
        )
        if _valid(t):
            return t


def _planar_triangle(rng, origin, a, b):
    while True:
        uv = rng.integers(-6, 7, (3, 2))
        t = tuple(
            tuple(
                float(origin[k] + u * a[k] + v * b[k]) for k in range(3)
            )
            for u, v in uv
        )
        if _valid(t):
            return t


def generate_pairs(spec: GeneratorSpec):
    """Deterministic sequence of (t0, t1) float-tuple triangle pairs."""
    rng = np.random.default_rng(spec.seed)
    fam = spec.family
    out = []
    for _ in range(spec.count):
        if fam == "generalPosition":
            out.append((_dyadic_triangle(rng), _dyadic_triangle(rng)))
        elif fam == "coplanarRandom":
            while True:
                origin = rng.integers(-8, 9, 3)
                a = rng.integers(-4, 5, 3)
                b = rng.integers(-4, 5, 3)
                if np.any(np.cross(a, b)):
                    break
            out.append(
                (_planar_triangle(rng, origin, a, b), _planar_triangle(rng, origin, a, b))
            )
        elif fam == "sharedVertex":
            t0 = _dyadic_triangle(rng)
            shared = t0[int(rng.integers(0, 3))]
            while True:
                rest = _dyadic_triangle(rng)
                k = int(rng.integers(0, 3))
                t1 = tuple(
                    shared if m == k else rest[m] for m in range(3)
                )
                if _valid(t1):
                    break
            out.append((t0, t1))
        elif fam == "sharedEdge":
            t0 = _dyadic_triangle(rng)
            e = int(rng.integers(0, 3))
            va, vb = t0[e], t0[(e + 1) % 3]
            if rng.integers(0, 2):
                va, vb = vb, va
            while True:
                apex = tuple(float(x) for x in rng.integers(-64, 65, 3) / 8.0)
                t1 = (va, vb, apex)
                if _valid(t1):
                    break
            out.append((t0, t1))
        elif fam == "identical":
            t0 = _dyadic_triangle(rng)
            perm = rng.permutation(3)
            out.append((t0, tuple(t0[int(k)] for k in perm)))
        elif fam == "nearDegenerate":
            out.append(
                (_near_degenerate_triangle(rng, spec.ulp_scale),
                 _near_degenerate_triangle(rng, spec.ulp_scale))
            )
        elif fam == "gridSnapped":
            def snapped():
                while True:
                    t = tuple(
                        tuple(float(x) for x in rng.integers(-3, 4, 3))
                        for _ in range(3)
                    )
                    if _valid(t):
                        return t

            out.append((snapped(), snapped()))
    return out


def _near_degenerate_triangle(rng, ulp_scale):
    # x, y on a dyadic grid in [1, 2); z = 1 + k * 2^-52 * scale so that
    # triangle pairs are within a few ulps of coplanarity
    while True:
        t = []
        for _ in range(3):
            x = 1.0 + int(rng.integers(0, 64)) / 64.0
            y = 1.0 + int(rng.integers(0, 64)) / 64.0
            z = 1.0 + int(rng.integers(-2, 3)) * (2.0 ** -52) * ulp_scale
            t.append((x, y, z))
        t = tuple(t)
        if _valid(t):
            return t


# ---------------------------------------------------------------------------
# backend views


def as_backend(verts, backend):
    """Render a float-tuple triangle in the requested coordinate
    representation."""
    if backend == "float":
        return verts
    if backend == "rational":
        return tuple(tuple(mpq(x) for x in v) for v in verts)
    if backend == "implicit":
        # explicit members of the implicit representation: same float
        # coordinates, routed through the generic point-handle dispatch
        return tuple(tuple(v) for v in verts)
    raise ValueError(f"unknown backend {backend!r}")


def classify_backend(t0, t1, backend):
    return classify(as_backend(t0, backend), as_backend(t1, backend))


# ---------------------------------------------------------------------------
# fuzz


def fuzz(spec: GeneratorSpec, backends=BACKENDS):
    """Classify every generated pair under each backend, canonicalize,
    and compare against the oracle.  Returns None on pass or the first
    FailureCase."""
    pairs = generate_pairs(spec)
    for idx, (t0, t1) in enumerate(pairs):
        expected = oracle_classify(t0, t1)
        reference = None
        for backend in backends:
            res = classify_backend(t0, t1, backend)
            desc = [p.as_tuple() for p in res.points]
            if reference is None:
                reference = desc
            elif desc != reference:
                return FailureCase(
                    idx, t0, t1, backend, res.points, res.segments,
                    f"backend divergence: {desc} != {reference}",
                )
            got = canonicalize(res, t0, t1)
            cmpres = compare(got, expected)
            if not cmpres or got.coplanar != expected.coplanar:
                return FailureCase(
                    idx, t0, t1, backend, res.points, res.segments,
                    f"oracle mismatch: {cmpres}",
                )
    return None


# ---------------------------------------------------------------------------
# bench


def bench(specs, repetitions=5):
    """Median-of-repetitions classifier timings plus predicate-call
    counters per generator spec."""
    rows = []
    for spec in specs:
        pairs = generate_pairs(spec)
        numeric.reset_call_counts()
        point_total = 0
        for t0, t1 in pairs:
            point_total += len(classify(t0, t1).points)
        counters = numeric.get_call_counts()
        times = []
        for _ in range(repetitions):
            t = time.perf_counter()
            for t0, t1 in pairs:
                classify(t0, t1)
            times.append(time.perf_counter() - t)
        times.sort()
        median = times[len(times) // 2] if times else 0.0
        calls = {
            kind: {
                "filtered": counters[(kind, "filtered")],
                "exactFallback": counters[(kind, "exact")],
                "total": counters[(kind, "filtered")] + counters[(kind, "exact")],
            }
            for kind in ("orient2d", "orient3d")
        }
        rows.append(
            BenchRow(
                case_name=f"{spec.family}(seed={spec.seed},count={spec.count})",
                pair_count=len(pairs),
                intersection_point_total=point_total,
                narrow_phase_seconds=median,
                predicate_calls=calls,
            )
        )
    return rows


def bench_table(rows):
    """Aligned text rendering of a bench report."""
    headers = ["case", "pairs", "points", "seconds", "o3d calls", "o3d exact", "o2d calls", "o2d exact"]
    data = [
        [
            r.case_name,
            str(r.pair_count),
            str(r.intersection_point_total),
            f"{r.narrow_phase_seconds:.4f}",
            str(r.predicate_calls["orient3d"]["total"]),
            str(r.predicate_calls["orient3d"]["exactFallback"]),
            str(r.predicate_calls["orient2d"]["total"]),
            str(r.predicate_calls["orient2d"]["exactFallback"]),
        ]
        for r in rows
    ]
    widths = [max(len(h), *(len(d[k]) for d in data)) if data else len(h) for k, h in enumerate(headers)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    for d in data:
        lines.append("  ".join(c.ljust(w) for c, w in zip(d, widths)))
    return "\n".join(lines)
