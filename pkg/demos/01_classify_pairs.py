"""Walk through the five intersection kinds on hand-picked triangle pairs.

Every intersection between two triangles is one of five kinds, named by
the pair of sub-simplexes that meet:

  VV  two coincident vertices
  VE  a vertex in the open interior of an edge
  VF  a vertex strictly inside a face
  EE  two edges crossing at an interior point
  EF  an edge piercing the interior of a face

Run:  python3 demos/01_classify_pairs.py
"""

from tritri import classify

CASES = [
    ("shared vertex (VV)",
     ((0.0, 0.0, 0.0), (2.0, 0.0, 0.0), (0.0, 2.0, 0.0)),
     ((0.0, 0.0, 0.0), (-2.0, 0.0, -1.0), (0.0, -2.0, 1.0))),
    ("vertex on an edge (VE)",
     ((0.0, 0.0, 0.0), (2.0, 0.0, 0.0), (0.0, 2.0, 0.0)),
     ((1.0, 0.0, 0.0), (1.0, -1.0, 1.0), (1.0, -1.0, -1.0))),
    ("vertex in a face (VF)",
     ((0.0, 0.0, 0.0), (4.0, 0.0, 0.0), (0.0, 4.0, 0.0)),
     ((1.0, 1.0, 0.0), (1.0, 0.0, 2.0), (3.0, 3.0, 2.0))),
    ("edges crossing (EE)",
     ((0.0, 0.0, 0.0), (2.0, 0.0, 0.0), (0.0, 2.0, 0.0)),
     ((1.0, -1.0, -1.0), (1.0, 1.0, 1.0), (1.0, 0.0, 2.0))),
    ("edge piercing a face twice (EF)",
     ((0.0, 0.0, 0.0), (4.0, 0.0, 0.0), (0.0, 4.0, 0.0)),
     ((1.0, 1.0, -1.0), (1.0, 1.0, 2.0), (3.0, 3.0, 2.0))),
    ("coplanar hexagram: six EE points",
     ((0.0, 0.0, 0.0), (4.0, 0.0, 0.0), (2.0, 3.0, 0.0)),
     ((0.0, 2.0, 0.0), (4.0, 2.0, 0.0), (2.0, -1.0, 0.0))),
]

for title, t0, t1 in CASES:
    res = classify(t0, t1)
    print(f"== {title}")
    print(f"   coplanar: {res.coplanar}")
    for p in res.points:
        print(f"   point  {p.kind.value}  id0={p.id0:2d}  id1={p.id1:2d}")
    for s in res.segments:
        print(f"   segment connects points {s.p0} and {s.p1}")
    print()
