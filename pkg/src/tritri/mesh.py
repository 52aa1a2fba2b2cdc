"""Mesh loading, broad-phase candidate generation and whole-mesh scans.

Loads OFF / OBJ / STL (ascii or binary) into float vertex + face-index
arrays, finds candidate face pairs with a uniform grid over face AABBs
(sized for roughly two faces per cell), and runs the exact classifier
over every candidate pair.  Candidate generation is a strict superset of
the truly intersecting pairs: AABB overlap (closed intervals) is
necessary for intersection.

A cheap vectorized pre-filter discards pairs whose mutual plane-side
tests are certified by the float filter to be strictly one-sided; it uses
the same error bound as the scalar kernel, so it can only drop pairs the
classifier would reject anyway and the result stream is unchanged.
"""

from __future__ import annotations

import json
import struct
import time
from dataclasses import dataclass, field

import numpy as np

from .classify import classify
from .errors import DegenerateTriangle, ParseError, UnsupportedFormat
from .geometry import SCHEMA_VERSION, IntersectionKind, validate_triangle
from .numeric import O3D_ERRBOUND


@dataclass
class Mesh:
    vertices: np.ndarray  # (n, 3) float64
    faces: np.ndarray  # (m, 3) int64
    name: str = ""
    degenerate_faces_skipped: int = 0

    @property
    def face_count(self):
        return len(self.faces)

    def face_vertices(self, f):
        i, j, k = self.faces[f]
        v = self.vertices
        return (
            (float(v[i, 0]), float(v[i, 1]), float(v[i, 2])),
            (float(v[j, 0]), float(v[j, 1]), float(v[j, 2])),
            (float(v[k, 0]), float(v[k, 1]), float(v[k, 2])),
        )


@dataclass
class ScanReport:
    mesh_name: str
    face_count: int
    candidate_pairs: int
    intersecting_pairs: int
    intersection_point_total: int
    intersection_segment_total: int
    coplanar_pair_count: int
    degenerate_faces_skipped: int
    broad_phase_seconds: float
    narrow_phase_seconds: float
    partial: bool = False

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "meshName": self.mesh_name,
            "faceCount": self.face_count,
            "candidatePairs": self.candidate_pairs,
            "intersectingPairs": self.intersecting_pairs,
            "intersectionPointTotal": self.intersection_point_total,
            "intersectionSegmentTotal": self.intersection_segment_total,
            "coplanarPairCount": self.coplanar_pair_count,
            "degenerateFacesSkipped": self.degenerate_faces_skipped,
            "elapsed": {
                "broad": self.broad_phase_seconds,
                "narrow": self.narrow_phase_seconds,
            },
            "partial": self.partial,
        }


# ---------------------------------------------------------------------------
# loaders


def load_mesh(path, fmt=None, triangulate=False, name=None) -> Mesh:
    """Load a triangle mesh; ``fmt`` in {"off", "obj", "stl"} or inferred
    from the file extension.  Polygonal faces are an error unless
    ``triangulate`` fan-triangulates them.  STL vertices are merged by
    exact coordinate equality."""
    spath = str(path)
    if fmt is None:
        low = spath.lower()
        for ext in ("off", "obj", "stl"):
            if low.endswith("." + ext):
                fmt = ext
                break
        else:
            raise UnsupportedFormat(f"cannot infer format of {spath!r}")
    fmt = fmt.lower()
    if name is None:
        name = spath.rsplit("/", 1)[-1]
    if fmt == "off":
        mesh = _load_off(spath, triangulate)
    elif fmt == "obj":
        mesh = _load_obj(spath, triangulate)
    elif fmt == "stl":
        mesh = _load_stl(spath)
    else:
        raise UnsupportedFormat(fmt)
    mesh.name = name
    return _drop_degenerate_faces(mesh)


def _drop_degenerate_faces(mesh: Mesh) -> Mesh:
    keep = []
    skipped = 0
    for f in range(len(mesh.faces)):
        try:
            validate_triangle(mesh.face_vertices(f))
            keep.append(f)
        except DegenerateTriangle:
            skipped += 1
    if skipped:
        mesh.faces = mesh.faces[keep]
    mesh.degenerate_faces_skipped = skipped
    return mesh


def _fan(idx, triangulate, lineno):
    if len(idx) < 3:
        raise ParseError(f"face with {len(idx)} vertices", lineno)
    if len(idx) == 3:
        return [idx]
    if not triangulate:
        raise ParseError(
            f"non-triangular face ({len(idx)} vertices); pass triangulate=True",
            lineno,
        )
    return [[idx[0], idx[k], idx[k + 1]] for k in range(1, len(idx) - 1)]


def _load_off(path, triangulate):
    with open(path, "r") as fh:
        lines = fh.read().splitlines()
    tokens = []
    for ln, raw in enumerate(lines, 1):
        body = raw.split("#", 1)[0].strip()
        if body:
            tokens.append((ln, body.split()))
    if not tokens or tokens[0][1][0] != "OFF":
        raise ParseError("missing OFF header", tokens[0][0] if tokens else 1)
    pos = 1
    if len(tokens[0][1]) > 1:
        counts = tokens[0][1][1:]
    else:
        counts = tokens[1][1]
        pos = 2
    try:
        nv, nf = int(counts[0]), int(counts[1])
    except (ValueError, IndexError):
        raise ParseError("bad OFF counts line", tokens[min(pos, len(tokens)) - 1][0])
    verts, faces = [], []
    for k in range(nv):
        ln, tok = tokens[pos + k]
        try:
            verts.append([float(tok[0]), float(tok[1]), float(tok[2])])
        except (ValueError, IndexError):
            raise ParseError("bad vertex line", ln)
    for k in range(nf):
        ln, tok = tokens[pos + nv + k]
        try:
            cnt = int(tok[0])
            idx = [int(x) for x in tok[1 : 1 + cnt]]
        except (ValueError, IndexError):
            raise ParseError("bad face line", ln)
        if any(not 0 <= i < nv for i in idx):
            raise ParseError("face index out of range", ln)
        faces.extend(_fan(idx, triangulate, ln))
    return Mesh(np.asarray(verts, float), np.asarray(faces, np.int64).reshape(-1, 3))


def _load_obj(path, triangulate):
    verts, faces = [], []
    with open(path, "r") as fh:
        for ln, raw in enumerate(fh, 1):
            body = raw.split("#", 1)[0].strip()
            if not body:
                continue
            tok = body.split()
            if tok[0] == "v":
                try:
                    verts.append([float(tok[1]), float(tok[2]), float(tok[3])])
                except (ValueError, IndexError):
                    raise ParseError("bad vertex line", ln)
            elif tok[0] == "f":
                try:
                    idx = [int(t.split("/")[0]) for t in tok[1:]]
                except ValueError:
                    raise ParseError("bad face line", ln)
                idx = [i - 1 if i > 0 else len(verts) + i for i in idx]
                if any(not 0 <= i < len(verts) for i in idx):
                    raise ParseError("face index out of range", ln)
                faces.extend(_fan(idx, triangulate, ln))
    return Mesh(np.asarray(verts, float), np.asarray(faces, np.int64).reshape(-1, 3))


def _load_stl(path):
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) >= 84:
        (ntri,) = struct.unpack_from("<I", data, 80)
        if len(data) == 84 + 50 * ntri and not data.lstrip()[:5] == b"solid":
            return _stl_from_triangles(_parse_stl_binary(data, ntri))
        if len(data) == 84 + 50 * ntri and data.lstrip()[:5] == b"solid":
            # size matches binary layout; trust the byte count
            return _stl_from_triangles(_parse_stl_binary(data, ntri))
    if data.lstrip()[:5] == b"solid":
        return _stl_from_triangles(_parse_stl_ascii(data))
    raise ParseError("unrecognized STL layout")


def _parse_stl_binary(data, ntri):
    tris = []
    off = 84
    for _ in range(ntri):
        vals = struct.unpack_from("<12f", data, off)
        tris.append(
            [
                (float(vals[3]), float(vals[4]), float(vals[5])),
                (float(vals[6]), float(vals[7]), float(vals[8])),
                (float(vals[9]), float(vals[10]), float(vals[11])),
            ]
        )
        off += 50
    return tris


def _parse_stl_ascii(data):
    tris = []
    cur = []
    for ln, raw in enumerate(data.decode("ascii", "replace").splitlines(), 1):
        tok = raw.split()
        if not tok:
            continue
        if tok[0] == "vertex":
            try:
                cur.append((float(tok[1]), float(tok[2]), float(tok[3])))
            except (ValueError, IndexError):
                raise ParseError("bad vertex line", ln)
        elif tok[0] == "endfacet":
            if len(cur) != 3:
                raise ParseError("facet without three vertices", ln)
            tris.append(cur)
            cur = []
    return tris


def _stl_from_triangles(tris):
    # merge duplicate vertices by exact bitwise coordinate equality
    index = {}
    verts = []
    faces = []
    for tri in tris:
        face = []
        for p in tri:
            k = index.get(p)
            if k is None:
                k = len(verts)
                index[p] = k
                verts.append(p)
            face.append(k)
        faces.append(face)
    return Mesh(np.asarray(verts, float), np.asarray(faces, np.int64).reshape(-1, 3))


# ---------------------------------------------------------------------------
# broad phase


def face_aabbs(mesh: Mesh):
    tv = mesh.vertices[mesh.faces]  # (m, 3, 3)
    return tv.min(axis=1), tv.max(axis=1)


def candidate_pairs(mesh: Mesh):
    """All face pairs (f0 < f1) with overlapping closed AABBs, via a
    uniform grid sized for about two faces per cell.  Returns a sorted
    (k, 2) int array."""
    m = mesh.face_count
    if m < 2:
        return np.empty((0, 2), np.int64)
    lo, hi = face_aabbs(mesh)
    glo = lo.min(axis=0)
    ghi = hi.max(axis=0)
    extent = np.maximum(ghi - glo, 0.0)
    target_cells = max(1, m // 2)
    volume = float(np.prod(np.where(extent > 0, extent, 1.0)))
    cell = (volume / target_cells) ** (1.0 / 3.0)
    if cell <= 0 or not np.isfinite(cell):
        cell = 1.0
    res = np.maximum(1, np.minimum(256, np.ceil(extent / cell).astype(int)))
    inv = np.where(extent > 0, res / np.where(extent > 0, extent, 1.0), 0.0)

    ilo = np.clip(((lo - glo) * inv).astype(np.int64), 0, res - 1)
    ihi = np.clip(((hi - glo) * inv).astype(np.int64), 0, res - 1)
    strides = np.array([1, res[0], res[0] * res[1]], np.int64)

    cells: dict[int, list[int]] = {}
    for f in range(m):
        x0, y0, z0 = ilo[f]
        x1, y1, z1 = ihi[f]
        for z in range(z0, z1 + 1):
            zb = z * strides[2]
            for y in range(y0, y1 + 1):
                yb = zb + y * strides[1]
                for x in range(x0, x1 + 1):
                    cells.setdefault(yb + x, []).append(f)

    pairs = set()
    for members in cells.values():
        if len(members) < 2:
            continue
        for a in range(len(members) - 1):
            fa = members[a]
            for b in range(a + 1, len(members)):
                fb = members[b]
                pairs.add((fa, fb) if fa < fb else (fb, fa))
    if not pairs:
        return np.empty((0, 2), np.int64)
    arr = np.array(sorted(pairs), np.int64)
    a, b = arr[:, 0], arr[:, 1]
    ok = np.all((lo[a] <= hi[b]) & (lo[b] <= hi[a]), axis=1)
    return arr[ok]


def shared_vertex_counts(mesh: Mesh, pairs):
    faces = mesh.faces
    out = np.zeros(len(pairs), np.int64)
    for k, (a, b) in enumerate(pairs):
        fa = faces[a]
        fb = faces[b]
        out[k] = len(set(fa.tolist()) & set(fb.tolist()))
    return out


# ---------------------------------------------------------------------------
# narrow phase


def _certified_side_signs(tri_pts, query_pts):
    """Vectorized filtered orient3d: +1/-1 when the float filter certifies
    the sign, 0 when uncertain (or exactly zero).  Same determinant layout
    and error bound as the scalar kernel."""
    a = tri_pts[:, 0]
    ba = tri_pts[:, 1] - a
    ca = tri_pts[:, 2] - a
    da = query_pts - a
    p1 = ca[:, 1] * da[:, 2]
    p2 = ca[:, 2] * da[:, 1]
    p3 = ca[:, 2] * da[:, 0]
    p4 = ca[:, 0] * da[:, 2]
    p5 = ca[:, 0] * da[:, 1]
    p6 = ca[:, 1] * da[:, 0]
    det = ba[:, 0] * (p1 - p2) + ba[:, 1] * (p3 - p4) + ba[:, 2] * (p5 - p6)
    permanent = (
        (np.abs(p1) + np.abs(p2)) * np.abs(ba[:, 0])
        + (np.abs(p3) + np.abs(p4)) * np.abs(ba[:, 1])
        + (np.abs(p5) + np.abs(p6)) * np.abs(ba[:, 2])
    )
    bound = O3D_ERRBOUND * permanent
    return np.where(det > bound, 1, np.where(-det > bound, -1, 0))


def _prefilter_reject(mesh: Mesh, pairs):
    """Boolean mask of candidate pairs certified non-intersecting by the
    mutual strict-one-side test."""
    if len(pairs) == 0:
        return np.zeros(0, bool)
    tv = mesh.vertices[mesh.faces]
    t0 = tv[pairs[:, 0]]
    t1 = tv[pairs[:, 1]]
    rej = np.zeros(len(pairs), bool)
    for t_plane, t_query in ((t1, t0), (t0, t1)):
        signs = np.stack(
            [_certified_side_signs(t_plane, t_query[:, k]) for k in range(3)], axis=1
        )
        rej |= (signs == 1).all(axis=1) | (signs == -1).all(axis=1)
    return rej


def _adjacency_only(result, shared_idx0, shared_idx1):
    """True iff every point is a VV pairing shared mesh vertices (and
    segments only connect such points) -- i.e. pure mesh-adjacency contact."""
    for p in result.points:
        if p.kind != IntersectionKind.VV:
            return False
        va = shared_idx0.get(p.id0)
        vb = shared_idx1.get(p.id1 - 3)
        if va is None or va != vb:
            return False
    return True


@dataclass
class ScanOptions:
    ignore_shared_simplices: bool = True
    workers: int = 1
    timeout: float | None = None
    backend: str = "float"  # coordinate representation handed to classify


def scan(mesh: Mesh, options: ScanOptions | None = None):
    """Run the classifier over every candidate pair.

    Returns (ScanReport, results) where results is a list of
    (f0, f1, IntersectionResult) in ascending (f0, f1) order for every
    pair that intersects (after the adjacency filter, when enabled).
    """
    options = options or ScanOptions()
    deadline = time.monotonic() + options.timeout if options.timeout else None

    tb = time.perf_counter()
    pairs = candidate_pairs(mesh)
    rejected = _prefilter_reject(mesh, pairs)
    survivors = pairs[~rejected]
    broad_seconds = time.perf_counter() - tb

    tn = time.perf_counter()
    chunks = _chunk(survivors, options.workers)
    partial = False
    results = []
    if options.workers > 1 and len(survivors) > 1:
        import multiprocessing as mp

        ctx = mp.get_context("fork")
        with ctx.Pool(options.workers) as pool:
            outs = []
            for chunk in chunks:
                outs.append(
                    pool.apply_async(_scan_chunk, (mesh, chunk, options.backend))
                )
            for out in outs:
                if deadline is not None and time.monotonic() > deadline:
                    partial = True
                    break
                results.extend(out.get())
    else:
        for chunk in chunks:
            if deadline is not None and time.monotonic() > deadline:
                partial = True
                break
            results.extend(_scan_chunk(mesh, chunk, options.backend))
    results.sort(key=lambda r: (r[0], r[1]))

    intersecting = 0
    pt_total = 0
    seg_total = 0
    coplanar_pairs = 0
    emitted = []
    if options.ignore_shared_simplices:
        faces = mesh.faces
    for f0, f1, res in results:
        if options.ignore_shared_simplices:
            fa = faces[f0].tolist()
            fb = faces[f1].tolist()
            shared = set(fa) & set(fb)
            # three shared vertices = duplicated face, a genuine overlap
            if 0 < len(shared) < 3 and _adjacency_only(
                res,
                {k: v for k, v in enumerate(fa) if v in shared},
                {k: v for k, v in enumerate(fb) if v in shared},
            ):
                continue
        intersecting += 1
        pt_total += len(res.points)
        seg_total += len(res.segments)
        if res.coplanar:
            coplanar_pairs += 1
        emitted.append((f0, f1, res))
    narrow_seconds = time.perf_counter() - tn

    report = ScanReport(
        mesh_name=mesh.name,
        face_count=mesh.face_count,
        candidate_pairs=len(pairs),
        intersecting_pairs=intersecting,
        intersection_point_total=pt_total,
        intersection_segment_total=seg_total,
        coplanar_pair_count=coplanar_pairs,
        degenerate_faces_skipped=mesh.degenerate_faces_skipped,
        broad_phase_seconds=broad_seconds,
        narrow_phase_seconds=narrow_seconds,
        partial=partial,
    )
    return report, emitted


def _chunk(pairs, workers):
    if len(pairs) == 0:
        return []
    n = max(1, min(len(pairs), workers * 4 if workers > 1 else 64))
    size = (len(pairs) + n - 1) // n
    return [pairs[k : k + size] for k in range(0, len(pairs), size)]


def _scan_chunk(mesh, chunk, backend="float"):
    convert = None
    if backend == "rational":
        from gmpy2 import mpq

        convert = lambda t: tuple(tuple(mpq(x) for x in v) for v in t)
    out = []
    for f0, f1 in chunk:
        t0 = mesh.face_vertices(f0)
        t1 = mesh.face_vertices(f1)
        if convert is not None:
            t0, t1 = convert(t0), convert(t1)
        res = classify(t0, t1, validate=False)
        if res.points:
            out.append((int(f0), int(f1), res))
    return out


def result_lines(results):
    """Per-pair results as JSON-lines strings."""
    for f0, f1, res in results:
        yield json.dumps(
            {"f0": f0, "f1": f1, "result": res.to_dict()}, separators=(",", ":")
        )
