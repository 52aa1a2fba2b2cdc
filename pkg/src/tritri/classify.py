"""Detection and classification of all intersections between two triangles.

The pipeline mirrors the natural decomposition into sub-simplexes:

1. six orient3d calls populate the orientation cache (each vertex of one
   triangle against the plane of the other) and decide coplanarity;
2. early exit when one triangle lies strictly on one side of the other's
   plane;
3. coincident-vertex scan (VV), then on-plane vertices located against
   the other triangle (VE on an open edge interior, VF strictly inside);
4. edge-edge crossings (EE), restricted to strict interior-interior
   crossings so endpoint contacts stay with their lower-dimensional taxa;
5. for non-coplanar inputs, edges piercing the other triangle's open
   interior (EF);
6. segment assembly: the two-point segment in the non-coplanar case,
   along-edge chaining of exactly ordered points in the coplanar case.

Point ordering is the deterministic scan order above; segments are sorted
by their normalized (p0, p1) index pairs.  Every decision routes through
the exact predicates, so the output is identical for the float, rational
and implicit coordinate representations of the same input.
"""

from __future__ import annotations

from . import numeric
from .errors import InternalInvariantViolation
from .geometry import (
    EDGE,
    FACE,
    NO_SIMPLEX,
    VERTEX,
    IntersectionKind,
    IntersectionPoint,
    IntersectionResult,
    IntersectionSegment,
    encode_simplex,
    validate_triangle,
    _as_verts,
)
from .numeric import Sign, SSIPoint, orient2d, orient3d

_ZERO = Sign.ZERO


def _projection_axis(verts):
    """Drop-axis for 2D work in the triangle's plane: the axis of the
    largest-magnitude exact normal component, ties preferring X, Y, Z."""
    n = numeric.plane_normal_exact(*verts)
    return numeric.dominant_axis(n)


def _locate_in_triangle(v, tri, axis):
    """Locate an on-plane point against a triangle in its projection.

    Returns ('face', None) strictly inside, ('edge', k) on the open
    interior of edge k, ('vertex', k) on vertex k, or (None, None).
    """
    s = orient2d(tri[0], tri[1], tri[2], axis)
    zeros = []
    for k in range(3):
        e = orient2d(tri[k], tri[(k + 1) % 3], v, axis)
        if e == _ZERO:
            zeros.append(k)
        elif e != s:
            return (None, None)
    if not zeros:
        return ("face", None)
    if len(zeros) == 1:
        return ("edge", zeros[0])
    # on two edge lines at once: the shared vertex of those edges
    k0, k1 = zeros
    return ("vertex", k1 if (k0, k1) == (0, 1) else (0 if (k0, k1) == (0, 2) else k1))


def _collinear3(a, b, c):
    for axis in (0, 1, 2):
        if orient2d(a, b, c, axis) != _ZERO:
            return False
    return True


def _edge_edge_cross_coplanar(p0, p1, q0, q1, axis):
    s1 = orient2d(p0, p1, q0, axis)
    s2 = orient2d(p0, p1, q1, axis)
    if s1 * s2 >= 0:
        return False
    s3 = orient2d(q0, q1, p0, axis)
    s4 = orient2d(q0, q1, p1, axis)
    return s3 * s4 < 0


def _edge_edge_cross_3d(p0, p1, q0, q1, spare0, spare1):
    """Strict interior-interior crossing of two segments of non-coplanar
    triangles, decided purely by orient3d signs.

    spare0/spare1 are the triangles' vertices opposite the two edges; at
    least one is off the segments' common plane (otherwise the triangles
    would be coplanar) and serves as the out-of-plane witness.
    """
    if orient3d(p0, p1, q0, q1) != _ZERO:
        return False  # skew
    if not _collinear3(p0, p1, q0):
        base = q0
    elif not _collinear3(p0, p1, q1):
        base = q1
    else:
        return False  # collinear overlap: endpoints are vertex events
    witness = None
    for cand in (spare0, spare1):
        if orient3d(p0, p1, base, cand) != _ZERO:
            witness = cand
            break
    if witness is None:
        raise InternalInvariantViolation("no out-of-plane witness for edge pair")
    s1 = orient3d(p0, p1, witness, q0)
    s2 = orient3d(p0, p1, witness, q1)
    if s1 * s2 >= 0:
        return False
    s3 = orient3d(q0, q1, witness, p0)
    s4 = orient3d(q0, q1, witness, p1)
    return s3 * s4 < 0


def _edge_pierces_face(e0, e1, tri):
    """Does segment e0-e1 (whose endpoints strictly straddle the plane of
    tri) pass strictly inside tri?  Three same-sign side tests."""
    s0 = orient3d(e0, e1, tri[0], tri[1])
    if s0 == _ZERO:
        return False
    s1 = orient3d(e0, e1, tri[1], tri[2])
    if s1 != s0:
        return False
    s2 = orient3d(e0, e1, tri[2], tri[0])
    return s2 == s0


def _point_coordinates(pt, v0, v1):
    """Exact rational coordinates of a descriptor (for segment assembly)."""
    kind = pt.kind
    if kind in (IntersectionKind.VV, IntersectionKind.VE, IntersectionKind.VF):
        tri, _, local = _decode_vertex(pt.id0)
        return numeric.exact_coordinates((v0, v1)[tri][local])
    if kind == IntersectionKind.EE:
        i = pt.id0 - 6
        j = pt.id1 - 9
        ssi = SSIPoint(
            v0[i], v0[(i + 1) % 3], v1[j], v1[(j + 1) % 3]
        )
        return numeric.exact_coordinates(ssi)
    raise InternalInvariantViolation(f"no coplanar coordinates for kind {kind}")


def _decode_vertex(sid):
    if sid < 3:
        return 0, VERTEX, sid
    return 1, VERTEX, sid - 3


def classify(t0, t1, validate=True) -> IntersectionResult:
    """Classify every intersection between two triangles.

    ``t0``/``t1`` are Triangles or sequences of three points in any one
    coordinate representation (float tuples, rational tuples, or handles
    admitting exact coordinates).  Set ``validate=False`` only when the
    caller has already run :func:`validate_triangle` on both inputs.
    """
    if validate:
        v0 = validate_triangle(t0)
        v1 = validate_triangle(t1)
    else:
        v0 = _as_verts(t0)
        v1 = _as_verts(t1)

    # orientation cache: six orient3d calls before any branching
    o01 = (
        orient3d(v1[0], v1[1], v1[2], v0[0]),
        orient3d(v1[0], v1[1], v1[2], v0[1]),
        orient3d(v1[0], v1[1], v1[2], v0[2]),
    )
    o10 = (
        orient3d(v0[0], v0[1], v0[2], v1[0]),
        orient3d(v0[0], v0[1], v0[2], v1[1]),
        orient3d(v0[0], v0[1], v0[2], v1[2]),
    )
    coplanar = (
        o01[0] == _ZERO
        and o01[1] == _ZERO
        and o01[2] == _ZERO
        and o10[0] == _ZERO
        and o10[1] == _ZERO
        and o10[2] == _ZERO
    )

    if early_reject(o01, o10):
        return IntersectionResult(coplanar=False, metadata={"coplanar": "false"})

    points: list[IntersectionPoint] = []
    claimed0 = [False, False, False]
    claimed1 = [False, False, False]

    # --- coincident vertices (VV) ---
    for i in range(3):
        for j in range(3):
            if not claimed1[j] and numeric.points_equal(v0[i], v1[j]):
                points.append(IntersectionPoint(IntersectionKind.VV, i, 3 + j))
                claimed0[i] = True
                claimed1[j] = True
                break

    # --- on-plane vertices in the other triangle (VE / VF) ---
    axis0 = axis1 = None
    for i in range(3):
        if claimed0[i] or o01[i] != _ZERO:
            continue
        if axis1 is None:
            axis1 = _projection_axis(v1)
        where, k = _locate_in_triangle(v0[i], v1, axis1)
        if where == "face":
            points.append(IntersectionPoint(IntersectionKind.VF, i, NO_SIMPLEX))
            claimed0[i] = True
        elif where == "edge":
            points.append(IntersectionPoint(IntersectionKind.VE, i, 9 + k))
            claimed0[i] = True
        elif where == "vertex":
            raise InternalInvariantViolation(
                "vertex coincidence escaped the exact equality scan"
            )
    for j in range(3):
        if claimed1[j] or o10[j] != _ZERO:
            continue
        if axis0 is None:
            axis0 = _projection_axis(v0)
        where, k = _locate_in_triangle(v1[j], v0, axis0)
        if where == "face":
            points.append(IntersectionPoint(IntersectionKind.VF, 3 + j, NO_SIMPLEX))
            claimed1[j] = True
        elif where == "edge":
            points.append(IntersectionPoint(IntersectionKind.VE, 3 + j, 6 + k))
            claimed1[j] = True
        elif where == "vertex":
            raise InternalInvariantViolation(
                "vertex coincidence escaped the exact equality scan"
            )

    # --- edge-edge crossings (EE), lexicographic (i, j) ---
    if coplanar:
        if axis0 is None:
            axis0 = _projection_axis(v0)
        for i in range(3):
            p0, p1 = v0[i], v0[(i + 1) % 3]
            for j in range(3):
                if _edge_edge_cross_coplanar(
                    p0, p1, v1[j], v1[(j + 1) % 3], axis0
                ):
                    points.append(
                        IntersectionPoint(IntersectionKind.EE, 6 + i, 9 + j)
                    )
    else:
        for i in range(3):
            p0, p1 = v0[i], v0[(i + 1) % 3]
            spare0 = v0[(i + 2) % 3]
            for j in range(3):
                if _edge_edge_cross_3d(
                    p0, p1, v1[j], v1[(j + 1) % 3], spare0, v1[(j + 2) % 3]
                ):
                    points.append(
                        IntersectionPoint(IntersectionKind.EE, 6 + i, 9 + j)
                    )

    # --- edges through the other triangle's interior (EF), non-coplanar only ---
    if not coplanar:
        for i in range(3):
            sa, sb = o01[i], o01[(i + 1) % 3]
            if sa * sb < 0 and _edge_pierces_face(v0[i], v0[(i + 1) % 3], v1):
                points.append(IntersectionPoint(IntersectionKind.EF, 6 + i, NO_SIMPLEX))
        for j in range(3):
            sa, sb = o10[j], o10[(j + 1) % 3]
            if sa * sb < 0 and _edge_pierces_face(v1[j], v1[(j + 1) % 3], v0):
                points.append(IntersectionPoint(IntersectionKind.EF, 9 + j, NO_SIMPLEX))

    # --- segment assembly ---
    if coplanar:
        segments = _assemble_segments_coplanar(points, v0, v1)
    else:
        segments = _assemble_segments_noncoplanar(points, v0, v1)

    return IntersectionResult(
        points=points,
        segments=segments,
        coplanar=coplanar,
        metadata={"coplanar": "true" if coplanar else "false"},
    )


def early_reject(o01, o10) -> bool:
    """True iff one triangle lies strictly on one side of the other's
    plane, so the pair cannot intersect."""
    if o01[0] != _ZERO and o01[0] == o01[1] == o01[2]:
        return True
    return o10[0] != _ZERO and o10[0] == o10[1] == o10[2]


def _assemble_segments_noncoplanar(points, v0, v1):
    n = len(points)
    if n > 2:
        raise InternalInvariantViolation(
            f"{n} intersection points for a non-coplanar pair"
        )
    if n < 2:
        return []
    a = _canonical_point(points[0], v0, v1)
    b = _canonical_point(points[1], v0, v1)
    if a == b:
        raise InternalInvariantViolation("duplicate intersection point descriptors")
    return [IntersectionSegment(0, 1)]


def _canonical_point(pt, v0, v1):
    kind = pt.kind
    if kind in (IntersectionKind.VV, IntersectionKind.VE, IntersectionKind.VF):
        tri, _, local = _decode_vertex(pt.id0)
        return numeric.exact_coordinates((v0, v1)[tri][local])
    if kind == IntersectionKind.EE:
        return _point_coordinates(pt, v0, v1)
    # EF: line-plane construction against the other triangle's face
    if pt.id0 < 9:
        i = pt.id0 - 6
        lpi = numeric.LPIPoint(v0[i], v0[(i + 1) % 3], *v1)
    else:
        j = pt.id0 - 9
        lpi = numeric.LPIPoint(v1[j], v1[(j + 1) % 3], *v0)
    return numeric.exact_coordinates(lpi)


def _assemble_segments_coplanar(points, v0, v1):
    """Chain coplanar intersection points along each input edge.

    For every edge of either triangle: gather the result points lying on
    it (exact collinearity + parameter range test), order them by exact
    rational parameter, and connect consecutive distinct pairs.
    """
    if not points:
        return []
    coords = [_point_coordinates(p, v0, v1) for p in points]
    edges = []
    for tri in (v0, v1):
        for k in range(3):
            edges.append((tri[k], tri[(k + 1) % 3]))
    seen = set()
    for a, b in edges:
        ar = numeric.exact_coordinates(a)
        br = numeric.exact_coordinates(b)
        d = numeric._sub(br, ar)
        ax = numeric.dominant_axis(d)
        on_edge = []
        for idx, x in enumerate(coords):
            if numeric._cross(numeric._sub(x, ar), d) != (0, 0, 0):
                continue
            t = (x[ax] - ar[ax]) / d[ax]
            if 0 <= t <= 1:
                on_edge.append((t, idx))
        on_edge.sort(key=lambda ti: ti[0])
        for (ta, ia), (tb, ib) in zip(on_edge, on_edge[1:]):
            if coords[ia] != coords[ib]:
                seen.add((min(ia, ib), max(ia, ib)))
    return [IntersectionSegment(p0, p1) for p0, p1 in sorted(seen)]
