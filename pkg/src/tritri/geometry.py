"""Shared vocabulary: triangles, sub-simplex ids, intersection descriptors.

Sub-simplex id encoding (flat, with -1 as the "unused slot" sentinel):

====  =========================
id    simplex
====  =========================
0-2   vertices of T0
3-5   vertices of T1
6-8   edges of T0 (edge k = (v_k, v_{k+1 mod 3}))
9-11  edges of T1 (same rule)
12    face of T0
13    face of T1
-1    unused slot
====  =========================

Intersection kinds and their id layout:

* VV (coincident points):        id0 = vertex of T0, id1 = vertex of T1
* VE (point in segment):         id0 = a vertex, id1 = an edge of the other triangle
* VF (point in triangle):        id0 = a vertex, id1 = -1 (the face is the other triangle)
* EE (segment crossing segment): id0 = edge of T0, id1 = edge of T1
* EF (segment crossing triangle): id0 = an edge, id1 = -1
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from . import numeric
from .errors import DegenerateTriangle, OutOfRange

NO_SIMPLEX = -1

VERTEX, EDGE, FACE = 0, 1, 2

SCHEMA_VERSION = "1"


class IntersectionKind(str, Enum):
    VV = "VV"
    VE = "VE"
    VF = "VF"
    EE = "EE"
    EF = "EF"


def encode_simplex(tri: int, dim: int, local: int) -> int:
    """Inverse of :func:`decode_simplex`."""
    if tri not in (0, 1):
        raise OutOfRange(f"triangle tag {tri}")
    if dim == VERTEX:
        if local not in (0, 1, 2):
            raise OutOfRange(f"vertex index {local}")
        return tri * 3 + local
    if dim == EDGE:
        if local not in (0, 1, 2):
            raise OutOfRange(f"edge index {local}")
        return 6 + tri * 3 + local
    if dim == FACE:
        if local != 0:
            raise OutOfRange(f"face index {local}")
        return 12 + tri
    raise OutOfRange(f"dimension {dim}")


def decode_simplex(sid: int) -> tuple[int, int, int]:
    """Decode a simplex id to (triangle tag, dimension, local index)."""
    if not isinstance(sid, int) or isinstance(sid, bool) or not 0 <= sid <= 13:
        raise OutOfRange(f"simplex id {sid!r}")
    if sid < 6:
        return sid // 3, VERTEX, sid % 3
    if sid < 12:
        return (sid - 6) // 3, EDGE, (sid - 6) % 3
    return sid - 12, FACE, 0


@dataclass(frozen=True)
class IntersectionPoint:
    kind: IntersectionKind
    id0: int
    id1: int

    def as_tuple(self):
        return (self.kind.value, self.id0, self.id1)


@dataclass(frozen=True)
class IntersectionSegment:
    p0: int
    p1: int


@dataclass
class IntersectionResult:
    """Complete output for one triangle pair: descriptor-form points,
    index-pair segments, coplanarity flag and free-form string metadata."""

    points: list[IntersectionPoint] = field(default_factory=list)
    segments: list[IntersectionSegment] = field(default_factory=list)
    coplanar: bool = False
    metadata: dict[str, str] = field(default_factory=dict)

    @property
    def intersecting(self) -> bool:
        return bool(self.points)

    def to_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "coplanar": self.coplanar,
            "points": [
                {"kind": p.kind.value, "id0": p.id0, "id1": p.id1} for p in self.points
            ],
            "segments": [[s.p0, s.p1] for s in self.segments],
            "metadata": dict(self.metadata),
        }


@dataclass(frozen=True)
class Triangle:
    """Three point handles plus the which-triangle tag (0 or 1)."""

    verts: tuple
    label: int = 0


def _as_verts(t):
    if isinstance(t, Triangle):
        return tuple(t.verts)
    v = tuple(t)
    if len(v) != 3:
        raise DegenerateTriangle("a triangle needs exactly three vertices")
    return v


def validate_triangle(t):
    """Raise :class:`DegenerateTriangle` unless the three vertices are
    pairwise distinct and not collinear (decided exactly)."""
    v = _as_verts(t)
    if (
        numeric.points_equal(v[0], v[1])
        or numeric.points_equal(v[1], v[2])
        or numeric.points_equal(v[0], v[2])
    ):
        raise DegenerateTriangle("repeated vertex")
    # collinear in 3D iff all three axis-aligned projections are collinear
    for axis in (0, 1, 2):
        if numeric.orient2d(v[0], v[1], v[2], axis) != numeric.Sign.ZERO:
            return v
    raise DegenerateTriangle("collinear")
