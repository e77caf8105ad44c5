import pytest

from commlen.fpword import INF, GroupCtx, are_conjugate, at_power
from commlen.stripdiag import (IntermediateStripError, StripError, base, compose_arc3, compose_swap,
                               compose_vv, face_powers, invert, juxtapose, strip_from_json,
                               strip_to_json)
from commlen.surfmap import interior_ok


def ctx(N):
    return GroupCtx(N, INF)


def test_d33_closes_to_torus():
    m = base("D3,3", ctx=ctx(3)).close()
    assert (m.genus(), m.num_faces()) == (1, 1)
    assert face_powers(m) == [3]
    assert all(interior_ok(m, v) for v in m.vertices)


def test_degenerate_d11():
    sd = base("D1,1")
    assert sd.k == 0 and sd.top_crossings() == []
    m = sd.close()
    assert m.genus() == 0 and face_powers(m) == [1]


def test_d22():
    m = base("D2,2", ctx=ctx(2)).close()
    assert (m.genus(), face_powers(m)) == (1, [2])


def test_d32_interior_only_when_a_squared_is_trivial():
    sd = base("D3,2", ctx=ctx(2))
    m = sd.close()
    assert (m.genus(), face_powers(m)) == (1, [3])
    assert all(interior_ok(m, v) for v in m.vertices)
    m3 = base("D3,2", ctx=ctx(3)).close()
    assert not all(interior_ok(m3, v) for v in m3.vertices)


def test_dplus2_two_faces_labelled_at():
    m = base("D+2").close()
    assert m.genus() == 1 and face_powers(m) == [1, 1]


@pytest.mark.parametrize("N", [3, 5, 7, 9, 11])
def test_dplus_n(N):
    m = base("D+N+1,N", N, ctx=ctx(N)).close()
    assert sorted(face_powers(m)) == [(N + 1) // 2] * 2
    assert all(interior_ok(m, v) for v in m.vertices)
    tv = [v for v, rec in m.vertices.items() if rec.kind == "t" and rec.degree == 4]
    assert tv and sorted(m.vertices[tv[0]].corners) == [-1, -1, 1, 1]


def test_dplus_n_parameter_checks():
    with pytest.raises(StripError):
        base("D+N+1,N", 4)
    with pytest.raises(StripError):
        base("D9,9")


def test_borders_of_d33():
    sd = base("D3,3")
    left, right = sd.left_border(), sd.right_border()
    assert left.side == "left" and right.side == "right"
    assert sd.pm.head(left.darts[-1]) == sd.top_crossings()[0]
    assert sd.pm.head(right.darts[-1]) == sd.bottom_crossings()[-1]


def test_special_borders_of_inverted_d11():
    sd = base("D1,1-")
    left = sd.left_border()
    assert left.vertices[0] in sd.aplus and left.vertices[-1] in sd.aminus


def test_borders_undefined_at_genus_zero():
    with pytest.raises(StripError):
        base("D1,1").left_border()


def test_crossings_pair_swapped():
    sd = base("D3,3")
    assert len(sd.top_crossings()) == 2 * sd.k == len(sd.bottom_crossings())
    top = [e for _, e, _ in sd.edge_labels("top")]
    bottom = [e for _, e, _ in sd.edge_labels("bottom")]
    assert sorted(top) == sorted(bottom)


def test_juxtapose_is_intermediate():
    j = juxtapose(base("D3,3"), base("D3,3"))
    assert j.intermediate and len(j.top_crossings()) == 4
    with pytest.raises(IntermediateStripError):
        j.close()


def test_d55_by_vertex_gluing():
    d = base("D3,3", ctx=ctx(5))
    sd = compose_vv(d, d)
    m = sd.close()
    assert not sd.intermediate
    assert (m.genus(), face_powers(m)) == (2, [5])
    assert sorted(len(m.vertices[v].rotation) for v in sd.aplus) == [5]


def test_invert_is_an_involution():
    sd = base("D3,3")
    twice = invert(invert(sd))
    assert strip_to_json(twice) == strip_to_json(sd)
    m, mi = sd.close(), invert(sd).close()
    (f,), (fi,) = m.faces(), mi.faces()
    assert are_conjugate(mi.face_label(fi), ~m.face_label(f)) or are_conjugate(
        mi.face_label(fi), m.face_label(f))
    assert invert(sd).aplus == sd.aminus


def test_d15_3_ternary():
    c = ctx(3)
    d93 = compose_arc3(base("D3,3", ctx=c), base("D1,1-", ctx=c), base("D3,3", ctx=c))
    d15 = compose_arc3(d93, base("D1,1-", ctx=c), base("D3,3", ctx=c))
    assert face_powers(d93.close()) == [9] and d93.k == 2
    assert face_powers(d15.close()) == [15] and d15.k == 3


def test_d75_swap():
    c = ctx(5)
    d55 = compose_vv(base("D3,3", ctx=c), base("D3,3", ctx=c))
    # the border edge of D5,5 carries the mirrored corner pattern, so the mirrored D+2 fits
    with pytest.raises(StripError):
        compose_swap(d55, base("D+2", ctx=c))
    d75 = compose_swap(d55, invert(base("D+2", ctx=c)))
    m = d75.close()
    assert (m.genus(), face_powers(m)) == (3, [7])


def test_swap_of_two_plus2_keeps_two_faces():
    d = compose_swap(base("D+2"), base("D+2"))
    m = d.close()
    assert m.genus() == 2 and face_powers(m) == [2, 2]


def test_json_roundtrip():
    for name in ["D1,1", "D1,1-", "D3,3", "D2,2", "D3,2", "D+2"]:
        sd = base(name)
        data = strip_to_json(sd)
        assert strip_to_json(strip_from_json(data)) == data


def test_compositions_do_not_mutate_operands():
    d = base("D3,3", ctx=ctx(5))
    before = strip_to_json(d)
    compose_vv(d, d)
    assert strip_to_json(d) == before
