"""Exact-sign orientation predicates over explicit and implicit 3D points.

Points come in three flavours:

* explicit float points: plain 3-tuples (or 2-tuples for planar work) of
  Python floats -- the fast path, evaluated with a statically filtered
  floating-point determinant that falls back to exact rational arithmetic
  whenever the filter cannot certify the sign;
* explicit rational points: tuples of ``gmpy2.mpq`` (or int/Fraction)
  values, always evaluated exactly;
* implicit points: :class:`LPIPoint` (line-plane intersection) and
  :class:`SSIPoint` (segment-segment intersection), stored by their
  defining input points.  Predicates over implicit operands substitute the
  exact rational coordinates of the construction into the rational
  determinant, so no rounding ever happens.

Sign convention, used everywhere in the library:

``orient3d(a, b, c, d)`` is the sign of ``det[b-a; c-a; d-a]``.  It is
POSITIVE when d lies on the side of plane abc from which the loop
(a, b, c) appears counter-clockwise, e.g. orient3d((0,0,0), (1,0,0),
(0,1,0), (0,0,1)) is POSITIVE.

``orient2d(a, b, c, drop_axis)`` projects the points onto the coordinate
plane obtained by dropping ``drop_axis`` (remaining axes kept in
ascending order) and returns the sign of ``det[b-a; c-a]``: POSITIVE iff
c is strictly to the left of the directed line a->b in that projection.

Counters in :data:`call_counts` record how many predicate evaluations
were resolved by the float filter versus the exact fallback; they exist
for benchmarking and never influence results.
"""

from __future__ import annotations

import math
import os
from contextlib import contextmanager
from enum import IntEnum

from gmpy2 import mpq

from .errors import DegenerateConstruction, InvalidCoordinate


class Sign(IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1


def sign_of(x) -> Sign:
    """Three-valued sign of any comparable number."""
    if x > 0:
        return Sign.POSITIVE
    if x < 0:
        return Sign.NEGATIVE
    return Sign.ZERO


# Static forward-error filter constants (machine epsilon 2^-53).  The
# bounds have the classical (k + c*eps)*eps shape and certify the sign of
# the float determinant whenever |det| exceeds bound * permanent.
_EPS = 2.0 ** -53
CCW_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS
O3D_ERRBOUND = (7.0 + 56.0 * _EPS) * _EPS

# dropped axis -> (kept axis u, kept axis v), ascending order
_AXES_2D = {0: (1, 2), 1: (0, 2), 2: (0, 1)}

X, Y, Z = 0, 1, 2

_force_exact = os.environ.get("TRITRI_FORCE_EXACT") == "1"

call_counts = {
    ("orient2d", "filtered"): 0,
    ("orient2d", "exact"): 0,
    ("orient3d", "filtered"): 0,
    ("orient3d", "exact"): 0,
}


def reset_call_counts():
    for k in call_counts:
        call_counts[k] = 0


def get_call_counts():
    return dict(call_counts)


def set_force_exact(enabled: bool):
    """Route every predicate through the exact fallback (filter-soundness
    testing; mirrors the TRITRI_FORCE_EXACT=1 environment variable)."""
    global _force_exact
    _force_exact = bool(enabled)


def force_exact_enabled() -> bool:
    return _force_exact


@contextmanager
def forced_exact(enabled=True):
    prev = _force_exact
    set_force_exact(enabled)
    try:
        yield
    finally:
        set_force_exact(prev)


class LPIPoint:
    """Implicit line-plane intersection point.

    Stores the two segment endpoints p, q and the three plane-defining
    corners a, b, c instead of computed coordinates.  The represented
    point is the unique intersection of line pq with plane abc; its exact
    rational coordinates are recoverable on demand.
    """

    __slots__ = ("p", "q", "a", "b", "c")

    def __init__(self, p, q, a, b, c):
        self.p = p
        self.q = q
        self.a = a
        self.b = b
        self.c = c

    def __repr__(self):
        return f"LPIPoint(p={self.p}, q={self.q}, a={self.a}, b={self.b}, c={self.c})"


class SSIPoint:
    """Implicit intersection of two coplanar, non-parallel segments.

    ``drop_axis`` records the axis dropped for the 2D solve; when None it
    is chosen automatically from the segments' common plane.
    """

    __slots__ = ("p0", "p1", "q0", "q1", "drop_axis")

    def __init__(self, p0, p1, q0, q1, drop_axis=None):
        self.p0 = p0
        self.p1 = p1
        self.q0 = q0
        self.q1 = q1
        self.drop_axis = drop_axis

    def __repr__(self):
        return f"SSIPoint(p0={self.p0}, p1={self.p1}, q0={self.q0}, q1={self.q1})"


def _rat(x):
    if type(x) is float:
        if not math.isfinite(x):
            raise InvalidCoordinate(f"non-finite coordinate {x!r}")
        return mpq(x)
    return mpq(x)


def _rat_point(p):
    return tuple(_rat(x) for x in p)


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def exact_coordinates(p):
    """Exact rational (x, y, z) of any point handle.

    Explicit points are embedded exactly (each float maps to the rational
    it represents).  Implicit points are resolved by direct rational
    construction; a violated construction invariant raises
    :class:`DegenerateConstruction`.
    """
    t = type(p)
    if t is LPIPoint:
        return _lpi_coordinates(p)
    if t is SSIPoint:
        return _ssi_coordinates(p)
    return _rat_point(p)


def _lpi_coordinates(lp):
    p = _rat_point(lp.p)
    q = _rat_point(lp.q)
    a = _rat_point(lp.a)
    b = _rat_point(lp.b)
    c = _rat_point(lp.c)
    n = _cross(_sub(b, a), _sub(c, a))
    denom = _dot(n, _sub(q, p))
    if denom == 0:
        raise DegenerateConstruction("segment parallel to plane (or plane degenerate)")
    t = _dot(n, _sub(a, p)) / denom
    d = _sub(q, p)
    return (p[0] + t * d[0], p[1] + t * d[1], p[2] + t * d[2])


def _ssi_coordinates(sp):
    p0 = _rat_point(sp.p0)
    p1 = _rat_point(sp.p1)
    q0 = _rat_point(sp.q0)
    q1 = _rat_point(sp.q1)
    u = _sub(p1, p0)
    v = _sub(q1, q0)
    w = _sub(q0, p0)
    c = _cross(u, v)
    axis = None
    if sp.drop_axis is not None and c[sp.drop_axis] != 0:
        axis = sp.drop_axis
    else:
        for k in (0, 1, 2):
            if c[k] != 0:
                axis = k
                break
    if axis is None:
        raise DegenerateConstruction("parallel segments")
    i, j = _AXES_2D[axis]
    denom = u[i] * v[j] - u[j] * v[i]
    t = (w[i] * v[j] - w[j] * v[i]) / denom
    x = (p0[0] + t * u[0], p0[1] + t * u[1], p0[2] + t * u[2])
    # the solve used a 2D projection; skew segments would leave x off the
    # second line, which violates the construction invariant
    dx = _sub(x, q0)
    if _cross(dx, v) != (0, 0, 0):
        raise DegenerateConstruction("skew segments")
    return x


def _is_float_pt(p, u, v):
    return type(p) is tuple and type(p[u]) is float and type(p[v]) is float


def orient2d(a, b, c, drop_axis=Z) -> Sign:
    """Sign of det[b-a; c-a] in the projection dropping ``drop_axis``.

    Accepts 3-tuples (projected per drop_axis), bare 2-tuples, or
    implicit points.  Exact for every input.
    """
    if len(a) == 2 if type(a) is tuple else False:
        u, v = 0, 1
    else:
        u, v = _AXES_2D[drop_axis]
    if (
        not _force_exact
        and _is_float_pt(a, u, v)
        and _is_float_pt(b, u, v)
        and _is_float_pt(c, u, v)
    ):
        detl = (b[u] - a[u]) * (c[v] - a[v])
        detr = (b[v] - a[v]) * (c[u] - a[u])
        det = detl - detr
        bound = CCW_ERRBOUND * (abs(detl) + abs(detr))
        if det > bound:
            call_counts[("orient2d", "filtered")] += 1
            return Sign.POSITIVE
        if -det > bound:
            call_counts[("orient2d", "filtered")] += 1
            return Sign.NEGATIVE
    return exact_orient2d(a, b, c, drop_axis)


def exact_orient2d(a, b, c, drop_axis=Z) -> Sign:
    """Exact fallback: rational evaluation of the orient2d determinant."""
    call_counts[("orient2d", "exact")] += 1
    if type(a) is tuple and len(a) == 2:
        u, v = 0, 1
        A = tuple(_rat(x) for x in a)
        B = tuple(_rat(x) for x in b)
        C = tuple(_rat(x) for x in c)
    else:
        u, v = _AXES_2D[drop_axis]
        A = exact_coordinates(a)
        B = exact_coordinates(b)
        C = exact_coordinates(c)
    det = (B[u] - A[u]) * (C[v] - A[v]) - (B[v] - A[v]) * (C[u] - A[u])
    return sign_of(det)


def orient3d(a, b, c, d) -> Sign:
    """Sign of det[b-a; c-a; d-a]; ZERO iff d lies exactly on plane abc.

    Mixtures of explicit and implicit operands are allowed; the result is
    exact for every input.
    """
    if (
        not _force_exact
        and type(a) is tuple
        and type(b) is tuple
        and type(c) is tuple
        and type(d) is tuple
        and type(a[0]) is float
        and type(b[0]) is float
        and type(c[0]) is float
        and type(d[0]) is float
    ):
        bax = b[0] - a[0]
        bay = b[1] - a[1]
        baz = b[2] - a[2]
        cax = c[0] - a[0]
        cay = c[1] - a[1]
        caz = c[2] - a[2]
        dax = d[0] - a[0]
        day = d[1] - a[1]
        daz = d[2] - a[2]
        p1 = cay * daz
        p2 = caz * day
        p3 = caz * dax
        p4 = cax * daz
        p5 = cax * day
        p6 = cay * dax
        det = bax * (p1 - p2) + bay * (p3 - p4) + baz * (p5 - p6)
        permanent = (
            (abs(p1) + abs(p2)) * abs(bax)
            + (abs(p3) + abs(p4)) * abs(bay)
            + (abs(p5) + abs(p6)) * abs(baz)
        )
        bound = O3D_ERRBOUND * permanent
        if det > bound:
            call_counts[("orient3d", "filtered")] += 1
            return Sign.POSITIVE
        if -det > bound:
            call_counts[("orient3d", "filtered")] += 1
            return Sign.NEGATIVE
    return exact_orient3d(a, b, c, d)


def exact_orient3d(a, b, c, d) -> Sign:
    """Exact fallback: rational evaluation of the orient3d determinant."""
    call_counts[("orient3d", "exact")] += 1
    A = exact_coordinates(a)
    B = exact_coordinates(b)
    C = exact_coordinates(c)
    D = exact_coordinates(d)
    ba = _sub(B, A)
    ca = _sub(C, A)
    da = _sub(D, A)
    det = _dot(ba, _cross(ca, da))
    return sign_of(det)


def points_equal(p, q) -> bool:
    """Exact geometric equality of two point handles."""
    if type(p) is tuple and type(q) is tuple and type(p[0]) is float and type(q[0]) is float:
        return p == q
    return exact_coordinates(p) == exact_coordinates(q)


def dominant_axis(v) -> int:
    """Index of the largest-magnitude component; ties prefer X, then Y, then Z."""
    ax, best = 0, abs(v[0])
    for k in (1, 2):
        m = abs(v[k])
        if m > best:
            ax, best = k, m
    return ax


def plane_normal_exact(a, b, c):
    """Exact rational normal of the plane through three point handles."""
    A = exact_coordinates(a)
    B = exact_coordinates(b)
    C = exact_coordinates(c)
    return _cross(_sub(B, A), _sub(C, A))
