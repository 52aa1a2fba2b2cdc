"""Exact triangle-triangle intersection detection and classification.

The library classifies every intersection between two 3D triangles into
the five kinds VV (coincident points), VE (point in segment), VF (point
in triangle), EE (segment crossing segment) and EF (segment crossing
triangle), reports them as (kind, id0, id1) simplex-pair descriptors plus
assembled intersection segments, and does so exactly for float, rational
and implicit point representations.
"""

from .classify import classify, early_reject
from .errors import (
    DegenerateConstruction,
    DegenerateTriangle,
    InternalInvariantViolation,
    InvalidCoordinate,
    MalformedDescriptor,
    OutOfRange,
    ParseError,
    TriTriError,
    UnsupportedFormat,
)
from .geometry import (
    NO_SIMPLEX,
    SCHEMA_VERSION,
    IntersectionKind,
    IntersectionPoint,
    IntersectionResult,
    IntersectionSegment,
    Triangle,
    decode_simplex,
    encode_simplex,
    validate_triangle,
)
from .mesh import Mesh, ScanOptions, ScanReport, candidate_pairs, load_mesh, scan
from .numeric import (
    LPIPoint,
    Sign,
    SSIPoint,
    exact_coordinates,
    exact_orient2d,
    exact_orient3d,
    forced_exact,
    get_call_counts,
    orient2d,
    orient3d,
    reset_call_counts,
    set_force_exact,
)
from .oracle import OracleReport, canonicalize, compare, oracle_classify
from .fuzz import BACKENDS, FAMILIES, GeneratorSpec, bench, fuzz, generate_pairs

__version__ = "0.1.0"

__all__ = [
    "classify",
    "early_reject",
    "orient2d",
    "orient3d",
    "exact_orient2d",
    "exact_orient3d",
    "exact_coordinates",
    "Sign",
    "LPIPoint",
    "SSIPoint",
    "Triangle",
    "IntersectionKind",
    "IntersectionPoint",
    "IntersectionSegment",
    "IntersectionResult",
    "encode_simplex",
    "decode_simplex",
    "validate_triangle",
    "NO_SIMPLEX",
    "SCHEMA_VERSION",
    "oracle_classify",
    "canonicalize",
    "compare",
    "OracleReport",
    "Mesh",
    "load_mesh",
    "candidate_pairs",
    "scan",
    "ScanOptions",
    "ScanReport",
    "GeneratorSpec",
    "generate_pairs",
    "fuzz",
    "bench",
    "FAMILIES",
    "BACKENDS",
    "set_force_exact",
    "forced_exact",
    "get_call_counts",
    "reset_call_counts",
    "TriTriError",
    "InvalidCoordinate",
    "DegenerateConstruction",
    "DegenerateTriangle",
    "OutOfRange",
    "MalformedDescriptor",
    "InternalInvariantViolation",
    "ParseError",
    "UnsupportedFormat",
]
