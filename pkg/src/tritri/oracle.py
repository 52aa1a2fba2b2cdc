"""Brute-force rational verifier for triangle-triangle intersections.

Computes the exact intersection point set of two triangles by direct
construction: all nine vertex pairs, all nine edge pairs (rational
segment-segment intersection, closed), all six edge-face pairs (rational
segment-triangle intersection, closed), plus vertex-in-closed-triangle
membership.  Coplanar overlap boundaries come from clipping each
triangle's edges against the other triangle.

Everything here is plain constructive rational arithmetic -- deliberately
no sign-predicate branch logic -- so the oracle and the classifier share
no failure modes.  Speed is a non-goal.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .errors import DegenerateTriangle, MalformedDescriptor
from .geometry import IntersectionKind, decode_simplex, EDGE, VERTEX, NO_SIMPLEX
from .numeric import LPIPoint, SSIPoint, exact_coordinates

_ZERO3 = (mpq(0), mpq(0), mpq(0))


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _add_scaled(a, t, d):
    return (a[0] + t * d[0], a[1] + t * d[1], a[2] + t * d[2])


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _is_zero(v):
    return v[0] == 0 and v[1] == 0 and v[2] == 0


@dataclass
class OracleReport:
    """Exact rational point set + unordered-pair segment set + coplanarity."""

    points: set = field(default_factory=set)
    segments: set = field(default_factory=set)
    coplanar: bool = False


@dataclass
class ComparisonResult:
    match: bool
    missing_points: set = field(default_factory=set)
    extra_points: set = field(default_factory=set)
    missing_segments: set = field(default_factory=set)
    extra_segments: set = field(default_factory=set)

    def __bool__(self):
        return self.match


def _rational_triangle(t):
    verts = tuple(exact_coordinates(v) for v in (t.verts if hasattr(t, "verts") else t))
    if len(verts) != 3:
        raise DegenerateTriangle("a triangle needs exactly three vertices")
    if verts[0] == verts[1] or verts[1] == verts[2] or verts[0] == verts[2]:
        raise DegenerateTriangle("repeated vertex")
    if _is_zero(_cross(_sub(verts[1], verts[0]), _sub(verts[2], verts[0]))):
        raise DegenerateTriangle("collinear")
    return verts


def _drop_axis_for(n):
    ax, best = 0, abs(n[0])
    for k in (1, 2):
        if abs(n[k]) > best:
            ax, best = k, abs(n[k])
    return [k for k in (0, 1, 2) if k != ax]


def _inside_closed(x, tri, normal):
    """Is x (known to be on tri's plane) inside the closed triangle?"""
    i, j = _drop_axis_for(normal)
    x2 = (x[i], x[j])
    t2 = [(v[i], v[j]) for v in tri]
    ref = _cross2(_sub2(t2[1], t2[0]), _sub2(t2[2], t2[0]))
    for k in range(3):
        a, b = t2[k], t2[(k + 1) % 3]
        s = _cross2(_sub2(b, a), _sub2(x2, a))
        if s * ref < 0:
            return False
    return True


def _sub2(a, b):
    return (a[0] - b[0], a[1] - b[1])


def _cross2(a, b):
    return a[0] * b[1] - a[1] * b[0]


def _segment_segment_points(p0, p1, q0, q1):
    """Closed intersection of two 3D segments: [], [point], or the two
    endpoints of a collinear overlap."""
    u = _sub(p1, p0)
    v = _sub(q1, q0)
    w = _sub(q0, p0)
    if _dot(w, _cross(u, v)) != 0:
        return []  # skew lines
    c = _cross(u, v)
    if not _is_zero(c):
        # coplanar, non-parallel: unique line crossing
        ax = 0 if c[0] != 0 else (1 if c[1] != 0 else 2)
        i, j = [k for k in (0, 1, 2) if k != ax]
        denom = u[i] * v[j] - u[j] * v[i]
        t = (w[i] * v[j] - w[j] * v[i]) / denom
        s = (w[i] * u[j] - w[j] * u[i]) / denom
        if 0 <= t <= 1 and 0 <= s <= 1:
            return [_add_scaled(p0, t, u)]
        return []
    # parallel: collinear overlap or nothing
    if not _is_zero(_cross(u, w)):
        return []
    uu = _dot(u, u)
    t0 = _dot(w, u) / uu
    t1 = _dot(_sub(q1, p0), u) / uu
    lo = max(mpq(0), min(t0, t1))
    hi = min(mpq(1), max(t0, t1))
    if lo > hi:
        return []
    if lo == hi:
        return [_add_scaled(p0, lo, u)]
    return [_add_scaled(p0, lo, u), _add_scaled(p0, hi, u)]


def _segment_triangle_points(p, q, tri, normal):
    """Closed intersection of segment pq with a triangle: [], [point], or
    the endpoints of the in-plane clipped sub-segment."""
    dp = _dot(normal, _sub(p, tri[0]))
    dq = _dot(normal, _sub(q, tri[0]))
    if dp == 0 and dq == 0:
        seg = _clip_segment_to_triangle(p, q, tri, normal)
        if seg is None:
            return []
        a, b = seg
        return [a] if a == b else [a, b]
    if (dp > 0 and dq > 0) or (dp < 0 and dq < 0):
        return []
    t = dp / (dp - dq)
    x = _add_scaled(p, t, _sub(q, p))
    return [x] if _inside_closed(x, tri, normal) else []


def _clip_segment_to_triangle(p, q, tri, normal):
    """Clip an in-plane segment against the closed triangle; returns the
    surviving (a, b) parameter-ordered endpoints or None."""
    i, j = _drop_axis_for(normal)
    p2, q2 = (p[i], p[j]), (q[i], q[j])
    t2 = [(v[i], v[j]) for v in tri]
    ref = _cross2(_sub2(t2[1], t2[0]), _sub2(t2[2], t2[0]))
    lo, hi = mpq(0), mpq(1)
    d2 = _sub2(q2, p2)
    for k in range(3):
        a, b = t2[k], t2[(k + 1) % 3]
        e = _sub2(b, a)
        # signed distance of the moving point from edge line, linear in t
        f0 = _cross2(e, _sub2(p2, a)) * ref
        f1 = _cross2(e, _sub2(q2, a)) * ref
        # inside half-plane: f >= 0 (after multiplying by ref's sign)
        if f0 < 0 and f1 < 0:
            return None
        if f0 < 0:
            lo = max(lo, f0 / (f0 - f1))
        elif f1 < 0:
            hi = min(hi, f0 / (f0 - f1))
    if lo > hi:
        return None
    d = _sub(q, p)
    return _add_scaled(p, lo, d), _add_scaled(p, hi, d)


def oracle_classify(t0, t1) -> OracleReport:
    """Exhaustive exact intersection of two triangles."""
    v0 = _rational_triangle(t0)
    v1 = _rational_triangle(t1)
    n0 = _cross(_sub(v0[1], v0[0]), _sub(v0[2], v0[0]))
    n1 = _cross(_sub(v1[1], v1[0]), _sub(v1[2], v1[0]))
    coplanar = all(_dot(n1, _sub(p, v1[0])) == 0 for p in v0) and all(
        _dot(n0, _sub(q, v0[0])) == 0 for q in v1
    )

    points = set()
    # vertex pairs
    for p in v0:
        for q in v1:
            if p == q:
                points.add(p)
    # vertices inside the other closed triangle
    for p in v0:
        if _dot(n1, _sub(p, v1[0])) == 0 and _inside_closed(p, v1, n1):
            points.add(p)
    for q in v1:
        if _dot(n0, _sub(q, v0[0])) == 0 and _inside_closed(q, v0, n0):
            points.add(q)
    # edge pairs
    e0 = [(v0[k], v0[(k + 1) % 3]) for k in range(3)]
    e1 = [(v1[k], v1[(k + 1) % 3]) for k in range(3)]
    for p0, p1 in e0:
        for q0, q1 in e1:
            for x in _segment_segment_points(p0, p1, q0, q1):
                points.add(x)
    # edges against the other face
    for p0, p1 in e0:
        for x in _segment_triangle_points(p0, p1, v1, n1):
            points.add(x)
    for q0, q1 in e1:
        for x in _segment_triangle_points(q0, q1, v0, n0):
            points.add(x)

    segments = set()
    if coplanar:
        for a, b in e0:
            seg = _clip_segment_to_triangle(a, b, v1, n1)
            if seg is not None and seg[0] != seg[1]:
                segments.add(_norm_segment(*seg))
        for a, b in e1:
            seg = _clip_segment_to_triangle(a, b, v0, n0)
            if seg is not None and seg[0] != seg[1]:
                segments.add(_norm_segment(*seg))
        for a, b in segments:
            points.add(a)
            points.add(b)
    else:
        if len(points) >= 2:
            # all intersection points lie on the planes' common line;
            # the segment runs between the parameter extremes
            pts = list(points)
            d = None
            for x in pts[1:]:
                if x != pts[0]:
                    d = _sub(x, pts[0])
                    break
            if d is not None:
                ax = 0 if d[0] != 0 else (1 if d[1] != 0 else 2)
                pts.sort(key=lambda x: x[ax] if d[ax] > 0 else -x[ax])
                if pts[0] != pts[-1]:
                    segments.add(_norm_segment(pts[0], pts[-1]))

    return OracleReport(points=points, segments=segments, coplanar=coplanar)


def _norm_segment(a, b):
    return (a, b) if a <= b else (b, a)


def canonicalize(result, t0, t1) -> OracleReport:
    """Map a classifier result to exact coordinates for set comparison.

    VV/VE/VF resolve to the named vertex; EE via the exact
    segment-segment construction; EF via the exact line-plane
    construction.  Malformed descriptors raise
    :class:`MalformedDescriptor`.
    """
    v0 = tuple(t0.verts if hasattr(t0, "verts") else t0)
    v1 = tuple(t1.verts if hasattr(t1, "verts") else t1)
    coords = []
    for pt in result.points:
        coords.append(_descriptor_coordinates(pt, v0, v1))
    points = set(coords)
    segments = set()
    for seg in result.segments:
        if not (0 <= seg.p0 < len(coords) and 0 <= seg.p1 < len(coords)):
            raise MalformedDescriptor(f"segment index out of range: {seg}")
        if seg.p0 == seg.p1:
            raise MalformedDescriptor(f"degenerate segment {seg}")
        segments.add(_norm_segment(coords[seg.p0], coords[seg.p1]))
    return OracleReport(points=points, segments=segments, coplanar=result.coplanar)


def _descriptor_coordinates(pt, v0, v1):
    kind = pt.kind
    if kind == IntersectionKind.VV:
        if not (0 <= pt.id0 <= 2 and 3 <= pt.id1 <= 5):
            raise MalformedDescriptor(f"bad VV ids: {pt}")
        a = exact_coordinates(v0[pt.id0])
        b = exact_coordinates(v1[pt.id1 - 3])
        if a != b:
            raise MalformedDescriptor(f"VV vertices differ: {pt}")
        return a
    if kind == IntersectionKind.VE:
        tri, dim, local = decode_simplex(pt.id0)
        otri, odim, _ = decode_simplex(pt.id1)
        if dim != VERTEX or odim != EDGE or tri == otri:
            raise MalformedDescriptor(f"bad VE ids: {pt}")
        return exact_coordinates((v0, v1)[tri][local])
    if kind == IntersectionKind.VF:
        tri, dim, local = decode_simplex(pt.id0)
        if dim != VERTEX or pt.id1 != NO_SIMPLEX:
            raise MalformedDescriptor(f"bad VF ids: {pt}")
        return exact_coordinates((v0, v1)[tri][local])
    if kind == IntersectionKind.EE:
        tri, dim, i = decode_simplex(pt.id0)
        otri, odim, j = decode_simplex(pt.id1)
        if dim != EDGE or odim != EDGE or tri != 0 or otri != 1:
            raise MalformedDescriptor(f"bad EE ids: {pt}")
        ssi = SSIPoint(v0[i], v0[(i + 1) % 3], v1[j], v1[(j + 1) % 3])
        return exact_coordinates(ssi)
    if kind == IntersectionKind.EF:
        tri, dim, k = decode_simplex(pt.id0)
        if dim != EDGE or pt.id1 != NO_SIMPLEX:
            raise MalformedDescriptor(f"bad EF ids: {pt}")
        if tri == 0:
            lpi = LPIPoint(v0[k], v0[(k + 1) % 3], *v1)
        else:
            lpi = LPIPoint(v1[k], v1[(k + 1) % 3], *v0)
        return exact_coordinates(lpi)
    raise MalformedDescriptor(f"unknown kind: {pt}")


def compare(a: OracleReport, b: OracleReport) -> ComparisonResult:
    """Exact set comparison of two reports."""
    mp = a.points - b.points
    ep = b.points - a.points
    ms = a.segments - b.segments
    es = b.segments - a.segments
    return ComparisonResult(
        match=not (mp or ep or ms or es),
        missing_points=mp,
        extra_points=ep,
        missing_segments=ms,
        extra_segments=es,
    )
