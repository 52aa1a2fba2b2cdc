from gmpy2 import mpq
import pytest

from tritri.classify import classify
from tritri.errors import DegenerateTriangle, MalformedDescriptor
from tritri.geometry import (
    IntersectionKind,
    IntersectionPoint,
    IntersectionResult,
    IntersectionSegment,
)
from tritri.oracle import OracleReport, canonicalize, compare, oracle_classify

T0_PIERCE = ((0.0, 0.0, 0.0), (4.0, 0.0, 0.0), (0.0, 4.0, 0.0))
T1_PIERCE = ((1.0, 1.0, -1.0), (1.0, 1.0, 2.0), (3.0, 3.0, 2.0))


class TestOracleClassify:
    def test_piercing_pair_exact_points(self):
        rep = oracle_classify(T0_PIERCE, T1_PIERCE)
        assert not rep.coplanar
        assert rep.points == {
            (mpq(1), mpq(1), mpq(0)),
            (mpq(5, 3), mpq(5, 3), mpq(0)),
        }
        assert rep.segments == {
            ((mpq(1), mpq(1), mpq(0)), (mpq(5, 3), mpq(5, 3), mpq(0)))
        }

    def test_disjoint(self):
        t1 = ((9.0, 9.0, 9.0), (10.0, 9.0, 9.0), (9.0, 10.0, 9.0))
        rep = oracle_classify(T0_PIERCE, t1)
        assert rep.points == set() and rep.segments == set()

    def test_identical_triangles(self):
        rep = oracle_classify(T0_PIERCE, T0_PIERCE)
        assert rep.coplanar
        assert len(rep.points) == 3
        assert len(rep.segments) == 3

    def test_vertex_in_face(self):
        t1 = ((1.0, 1.0, 0.0), (1.0, 0.0, 2.0), (3.0, 3.0, 2.0))
        rep = oracle_classify(T0_PIERCE, t1)
        assert rep.points == {(mpq(1), mpq(1), mpq(0))}
        assert rep.segments == set()

    def test_symmetry(self):
        a = oracle_classify(T0_PIERCE, T1_PIERCE)
        b = oracle_classify(T1_PIERCE, T0_PIERCE)
        assert a.points == b.points
        assert a.segments == b.segments
        assert a.coplanar == b.coplanar

    def test_degenerate_rejected(self):
        bad = ((0.0, 0.0, 0.0), (1.0, 1.0, 1.0), (2.0, 2.0, 2.0))
        with pytest.raises(DegenerateTriangle):
            oracle_classify(bad, T0_PIERCE)

    def test_star_of_david_hexagon(self):
        t0 = ((0.0, 0.0, 0.0), (4.0, 0.0, 0.0), (2.0, 3.0, 0.0))
        t1 = ((0.0, 2.0, 0.0), (4.0, 2.0, 0.0), (2.0, -1.0, 0.0))
        rep = oracle_classify(t0, t1)
        assert rep.coplanar
        assert len(rep.points) == 6
        assert len(rep.segments) == 6


class TestCanonicalize:
    def test_matches_oracle_on_classifier_output(self):
        res = classify(T0_PIERCE, T1_PIERCE)
        got = canonicalize(res, T0_PIERCE, T1_PIERCE)
        assert compare(got, oracle_classify(T0_PIERCE, T1_PIERCE))

    def test_bad_vv_vertices_differ(self):
        res = IntersectionResult(points=[IntersectionPoint(IntersectionKind.VV, 0, 3)])
        with pytest.raises(MalformedDescriptor):
            canonicalize(res, T0_PIERCE, T1_PIERCE)

    def test_bad_kind_id_combination(self):
        # VF must carry id1 == -1
        res = IntersectionResult(points=[IntersectionPoint(IntersectionKind.VF, 0, 6)])
        with pytest.raises(MalformedDescriptor):
            canonicalize(res, T0_PIERCE, T1_PIERCE)

    def test_bad_ee_id_spaces(self):
        res = IntersectionResult(points=[IntersectionPoint(IntersectionKind.EE, 9, 6)])
        with pytest.raises(MalformedDescriptor):
            canonicalize(res, T0_PIERCE, T1_PIERCE)

    def test_segment_index_out_of_range(self):
        res = IntersectionResult(
            points=[IntersectionPoint(IntersectionKind.EF, 9, -1)],
            segments=[IntersectionSegment(0, 1)],
        )
        with pytest.raises(MalformedDescriptor):
            canonicalize(res, T0_PIERCE, T1_PIERCE)


class TestCompare:
    def test_mismatch_reported_by_side(self):
        p = (mpq(1), mpq(1), mpq(0))
        q = (mpq(2), mpq(2), mpq(0))
        a = OracleReport(points={p})
        b = OracleReport(points={q})
        cmpres = compare(a, b)
        assert not cmpres
        assert cmpres.missing_points == {p}
        assert cmpres.extra_points == {q}

    def test_match_is_truthy(self):
        a = OracleReport(points={(mpq(0), mpq(0), mpq(0))})
        assert compare(a, a)
