import json

import pytest

from commlen.builder import build_diagram
from commlen.decomp import (Decomposition, ExtractionError, SearchBounds, boundary_word, culler_cube,
                            decompose, extract_commutators, n2_closed_form, odd_power_free,
                            search_diagrams, swap_sum, z3_cube)
from commlen.figures import equivalent, fig1
from commlen.fpword import FREE, INF, GroupCtx, Word, are_conjugate, at_power, parse
from commlen.stripdiag import base
from commlen.surfmap import ClosedMap, VertexRec


def test_boundary_word_of_d33():
    m = base("D3,3", ctx=GroupCtx(3, INF)).close()
    q = boundary_word(m)
    assert len(q.symbols()) == 12 and q.is_quadratic()
    assert q.eliminate() == m.face_label(m.faces()[0])


def test_boundary_word_of_segment():
    m = ClosedMap({0: VertexRec("a", (0,), (1,)), 1: VertexRec("t", (1,), (1,))}, {0: 1, 1: 0})
    q = boundary_word(m)
    assert [str(x) for x in q.items] == ["a", "e0", "t", "e0^-1"]


def test_boundary_word_needs_one_face():
    m = ClosedMap({0: VertexRec("a", (0, 2, 4), (1, 1, 1)), 1: VertexRec("t", (5, 3, 1), (1, 1, 1))},
                  {0: 1, 1: 0, 2: 3, 3: 2, 4: 5, 5: 4})
    with pytest.raises(ExtractionError):
        boundary_word(m)


def test_fig1_boundary_has_six_occurrences():
    q = boundary_word(fig1().map)
    assert len(q.symbols()) == 6


def test_extract_d33():
    m = base("D3,3", ctx=GroupCtx(3, INF)).close()
    dec = extract_commutators(m, at_power(3, m.ctx))
    assert dec.count == 1 and dec.holds()


def test_extract_fig1():
    f = fig1()
    dec = extract_commutators(f.map, f.face_label)
    assert dec.count == 1 and dec.product() == parse("(ab)^3", f.map.ctx)


def test_extract_without_target_reproduces_face_label():
    m = build_diagram(15, 5).close()
    dec = extract_commutators(m)
    assert dec.count == 5 and dec.product() == m.face_label(m.faces()[0])


def test_extract_transcript_conserves_every_step():
    m = build_diagram(21, 7).close()
    dec = extract_commutators(m, at_power(21, m.ctx))
    handles = [s for s in dec.transcript if s["step"] == "handle"]
    assert len(handles) == m.genus() and all(s["conserved"] for s in handles)


def test_extract_rejects_non_interior():
    m = base("D3,2", ctx=GroupCtx(3, INF)).close()
    with pytest.raises(ExtractionError, match="nontrivial label"):
        extract_commutators(m)


def test_extract_rejects_factor_label():
    m = ClosedMap({0: VertexRec("a", (0,), (1,)), 1: VertexRec("t", (1,), (1,))}, {0: 1, 1: 0},
                  GroupCtx(2, 2))
    with pytest.raises(ExtractionError):
        extract_commutators(m)


def test_extract_rejects_wrong_target():
    m = base("D3,3", ctx=GroupCtx(3, INF)).close()
    with pytest.raises(ExtractionError):
        extract_commutators(m, at_power(2, m.ctx))


def test_identity_goldens():
    assert culler_cube().product() == parse("[a,b]^3")
    assert z3_cube(GroupCtx(3, INF)).pairs == [(parse("b^-1 a b a", GroupCtx(3, INF)),
                                                parse("a b^-1 a b", GroupCtx(3, INF)))]
    with pytest.raises(ValueError):
        z3_cube(FREE)


def test_n2_closed_form_example():
    dec = n2_closed_form(4, GroupCtx(2, INF))
    assert dec.pairs == [(parse("a", GroupCtx(2, INF)), parse("t^-1 a t a t^-1 a t", GroupCtx(2, INF)))]


@pytest.mark.parametrize("n,N,count", [(3, 3, 1), (4, 2, 1), (9, 3, 2), (8, 4, 3), (5, 9, 3), (10, 5, 4),
                                       (12, 5, 5), (6, INF, 4), (40, 3, 8)])
def test_decompose_examples(n, N, count):
    dec = decompose(n, N)
    assert dec.count == count and dec.optimal and dec.holds()


def test_decompose_in_finite_t_order():
    for M in (7, 14):
        dec = decompose(14, 7, M)
        assert dec.ctx == GroupCtx(7, M) and dec.holds()


def test_decompose_assembly_methods():
    assert decompose(10, 5).method == "assembly"
    assert decompose(11, 5).method == "diagram-extraction"
    assert decompose(6, 9).method == "assembly"


def test_decompose_rejects_nonpositive():
    with pytest.raises(ValueError):
        decompose(0, 3)


def test_decomposition_json_roundtrip():
    dec = decompose(9, 4)
    data = dec.to_json()
    assert set(data) == {"target", "ctx", "pairs", "count", "k_hat", "optimal", "method", "transcript"}
    back = Decomposition.from_json(json.loads(json.dumps(data)))
    assert back.to_json() == data and back.holds()


@pytest.mark.parametrize("s", [0, 1, 2, 3])
def test_odd_power_free(s):
    dec = odd_power_free(s)
    assert dec.count == s + 1 and dec.ctx == FREE and dec.holds() and dec.optimal


def test_odd_power_free_projects_everywhere():
    dec = odd_power_free(2)
    for ctx in (GroupCtx(2, 2), GroupCtx(3, 5), GroupCtx(7, INF)):
        assert dec.holds(ctx)


def test_swap_sum_adds_powers():
    from commlen.decomp import odd_power_map

    m = odd_power_map(2)
    assert m.num_faces() == 1 and m.genus() == 3
    assert are_conjugate(m.face_label(m.faces()[0]), at_power(5))


def test_search_rediscovers_fig1():
    f = fig1()
    r = search_diagrams(f.face_label, 1, f.map.ctx)
    assert r.status == "found" and any(equivalent(m, f.map) for m in r.maps)


def test_search_empty_cases():
    assert search_diagrams(at_power(3), 1, FREE, SearchBounds(max_edges=10)).status == "completed-empty"
    for ctx in (FREE, GroupCtx(2, INF), GroupCtx(4, 6)):
        assert search_diagrams(at_power(1, ctx), 0, ctx).status == "completed-empty"


def test_search_finds_only_valid_maps():
    r = search_diagrams(at_power(3), 2, FREE)
    assert r.maps
    for m in r.maps:
        assert m.num_faces() == 1 and m.genus() == 2
        assert are_conjugate(m.face_label(m.faces()[0]), at_power(3))


def test_search_edge_bound_reported():
    r = search_diagrams(at_power(3), 2, FREE, SearchBounds(max_edges=5))
    assert r.status == "completed-empty" and "edges" in r.reason


def test_search_budget_exhaustion_is_distinct():
    r = search_diagrams(at_power(5), 2, FREE, SearchBounds(max_edges=10, time_budget=1e-9))
    assert r.status == "budget-exhausted" and not r.complete


def test_search_bounds_validation():
    with pytest.raises(ValueError):
        SearchBounds(max_edges=0)
    with pytest.raises(ValueError):
        SearchBounds(time_budget=-1)


def test_search_rejects_factor_target():
    with pytest.raises(ValueError):
        search_diagrams(parse("a^2"), 0, FREE)


def test_search_larger_bounds_keep_results():
    small = search_diagrams(at_power(3), 2, FREE, SearchBounds(max_edges=6))
    large = search_diagrams(at_power(3), 2, FREE, SearchBounds(max_edges=10, max_vertex_degree=None))
    assert [m.dumps() for m in small.maps] == [m.dumps() for m in large.maps]


def test_search_degree_bound_prunes():
    r = search_diagrams(at_power(3), 2, FREE, SearchBounds(max_vertex_degree=2))
    assert r.status == "completed-empty"
