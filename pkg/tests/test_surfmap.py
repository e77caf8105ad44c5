import json

import pytest

from commlen.fpword import INF, GroupCtx, at_power, are_conjugate, parse
from commlen.stripdiag import base
from commlen.surfmap import ClosedMap, MapBuilder, MapStructureError, VertexRec, is_valid_diagram


def segment():
    return ClosedMap({0: VertexRec("a", (0,), (1,)), 1: VertexRec("t", (1,), (1,))}, {0: 1, 1: 0})


def theta():
    # planar theta graph: rotations reversed at the second vertex
    return ClosedMap({0: VertexRec("a", (0, 2, 4), (1, 1, 1)), 1: VertexRec("t", (5, 3, 1), (1, 1, 1))},
                     {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4})


def test_single_edge():
    m = segment()
    assert m.num_faces() == 1 and m.genus() == 0


def test_theta_is_planar():
    m = theta()
    assert m.num_faces() == 3 and m.genus() == 0


def test_every_dart_in_one_face():
    m = base("D3,3").close()
    darts = [d for f in m.faces() for d in f]
    assert sorted(darts) == m.darts


def test_malformed_involution():
    with pytest.raises(MapStructureError):
        ClosedMap({0: VertexRec("a", (0,), (1,))}, {0: 0})
    with pytest.raises(MapStructureError):
        ClosedMap({0: VertexRec("a", (0, 1), (1, 1))}, {0: 1})


def test_bad_vertex_kind():
    with pytest.raises(MapStructureError):
        VertexRec("x", (0,), (1,))


def test_vertex_label_reads_clockwise():
    m = ClosedMap({0: VertexRec("a", (0, 1), (1, -1)), 1: VertexRec("t", (2,), (1,)),
                   2: VertexRec("t", (3,), (1,))}, {0: 2, 2: 0, 1: 3, 3: 1})
    assert m.vertex_label(0).is_identity()
    ctx = GroupCtx(4, INF)
    deg4 = ClosedMap({0: VertexRec("a", (0, 1, 2, 3), (1, 1, 1, 1))}, {0: 1, 1: 0, 2: 3, 3: 2}, ctx)
    assert deg4.vertex_label(0).is_identity()


def test_face_label_start_independence():
    m = base("D3,3").close()
    (face,) = m.faces()
    labels = [m.face_label(face, d) for d in face]
    assert all(are_conjugate(lab, labels[0]) for lab in labels)
    with pytest.raises(ValueError):
        segment().face_label([0, 1], start=7)


def test_degenerate_d11_label():
    m = base("D1,1").close()
    (face,) = m.faces()
    assert m.genus() == 0
    assert are_conjugate(m.face_label(face), at_power(1))


def test_validity_report():
    ctx = GroupCtx(3, 3)
    m = ClosedMap({0: VertexRec("a", (0, 1, 2), (1, 1, 1)), 1: VertexRec("t", (3, 4, 5), (1, 1, 1))},
                  {0: 3, 3: 0, 1: 4, 4: 1, 2: 5, 5: 2}, ctx)
    assert is_valid_diagram(m).ok
    # with ord(a) = 4 the a-vertex reads a^3, which is no longer trivial
    report = is_valid_diagram(m.relabeled(GroupCtx(4, 4)))
    assert not report.ok and not report.checks["interior_labels"]


def test_d32_interior_only_mod_two():
    m = base("D3,2").close()
    assert is_valid_diagram(m.relabeled(GroupCtx(2, INF))).ok


def test_builder_roundtrip_json():
    b = MapBuilder(GroupCtx(3, INF))
    b.vertex(0, "a")
    b.vertex(1, "t")
    d, e = b.edge()
    b.place(0, [d], [1])
    b.place(1, [e], [-1])
    m = b.build()
    text = m.dumps()
    assert ClosedMap.from_json(json.loads(text)).dumps() == text


def test_path_label_errors():
    m = segment()
    with pytest.raises(ValueError):
        m.path_corners([(0, 1), (0, 1)])


def test_euler_identity():
    m = base("D2,2").close()
    assert m.num_vertices() - m.num_edges() + m.num_faces() == 2 - 2 * m.genus()
