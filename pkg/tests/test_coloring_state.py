import pytest
from hypothesis import given
from hypothesis import strategies as st

from multicolor.coloring import EdgeColoring, emit_coloring, kempe_switch, parse_coloring, verify, vizing_color_multi
from multicolor.core import EdgeInstance, build
from multicolor.exceptions import ColoringStructureError

from .strategies import multigraphs


def test_missing_and_present(triangle):
    coloring = EdgeColoring(triangle, 3)
    coloring.assign(0, 1)
    u, v = coloring.endpoints(0)
    assert coloring.missing(u) == {2, 3}
    assert coloring.present(v) == {1}
    assert coloring.edge_at(u, 1) == 0
    assert coloring.common_missing(u, v) == 2
    assert coloring.colored_degree(u) == 1


def test_assign_conflict_raises(triangle):
    coloring = EdgeColoring(triangle, 3)
    coloring.assign(0, 1)
    with pytest.raises(ColoringStructureError):
        coloring.assign(1, 1)


def test_assign_outside_palette(triangle):
    coloring = EdgeColoring(triangle, 2)
    with pytest.raises(ColoringStructureError):
        coloring.assign(0, 3)


def test_unassign_frees_colour(triangle):
    coloring = EdgeColoring(triangle, 3)
    coloring.assign(0, 1)
    coloring.unassign(0)
    assert coloring.uncolored() == [0, 1, 2]
    assert coloring.is_missing(0, 1)


def test_from_assignment_unknown_instance(triangle):
    with pytest.raises(ColoringStructureError):
        EdgeColoring.from_assignment(triangle, 3, {EdgeInstance(0, 1, 1): 1})


def test_verify_reports_conflicts(triangle):
    coloring = EdgeColoring.from_assignment(triangle, 3, [1, 1, 2], strict=False)
    report = verify(triangle, coloring)
    assert not report.valid
    assert report.violations
    assert all(len(v.instances) == 2 for v in report.violations)


def test_verify_reports_uncoloured(triangle):
    coloring = EdgeColoring.from_assignment(triangle, 3, [1, 2, 0])
    report = verify(triangle, coloring)
    assert not report.valid
    assert report.uncolored == (triangle.instances[2],)


def test_verify_rejects_other_graph(triangle, k4):
    with pytest.raises(ColoringStructureError):
        verify(k4, EdgeColoring(triangle, 3))


def test_kempe_switch_on_path():
    path = build(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    coloring = EdgeColoring.from_assignment(path, 2, [1, 2, 1])
    switched = kempe_switch(coloring, 0, 1, 2)
    assert switched.colors == [2, 1, 2]
    assert coloring.colors == [1, 2, 1]
    assert verify(path, switched).valid


def test_kempe_switch_needs_distinct_colours(triangle):
    coloring = EdgeColoring.from_assignment(triangle, 3, [1, 2, 3])
    with pytest.raises(ColoringStructureError):
        coloring.kempe_switch(0, 1, 1)


@given(multigraphs(min_n=2), st.data())
def test_kempe_switch_is_an_involution(graph, data):
    coloring = vizing_color_multi(graph)
    if coloring.k < 2 or graph.n == 0:
        return
    v = data.draw(st.integers(0, graph.n - 1))
    alpha = data.draw(st.integers(1, coloring.k))
    beta = data.draw(st.integers(1, coloring.k).filter(lambda b: b != alpha))
    once = kempe_switch(coloring, v, alpha, beta)
    assert verify(graph, once).valid
    twice = kempe_switch(once, v, alpha, beta)
    assert twice.colors == coloring.colors


def test_compressed_relabels(triangle):
    coloring = EdgeColoring.from_assignment(triangle, 6, [2, 4, 6])
    packed = coloring.compressed()
    assert packed.k == 3
    assert packed.colors == [1, 2, 3]


@given(multigraphs())
def test_document_round_trip(graph):
    coloring = vizing_color_multi(graph)
    text = emit_coloring(graph, coloring, strategy="vizing_multi", first_class=False)
    parsed = parse_coloring(graph, text)
    assert parsed.colors == coloring.colors
    assert verify(graph, parsed).valid


def test_parse_coloring_keeps_conflicts(triangle):
    text = "n=3 m=3 k=3\n0 1 0 1\n0 2 0 1\n1 2 0 2\n"
    report = verify(triangle, parse_coloring(triangle, text))
    assert not report.valid


@pytest.mark.parametrize(
    "text",
    ["", "n=3 m=2 k=3\n", "n=3 m=3\n0 1 0 1\n", "n=3 m=3 k=3\n0 1 0\n", "n=3 m=3 k=3\n0 1 0 1\n0 1 0 2\n"],
)
def test_parse_coloring_malformed(triangle, text):
    with pytest.raises(ColoringStructureError):
        parse_coloring(triangle, text)


@given(multigraphs(min_n=2), st.data())
def test_free_sets_track_the_holder_table(graph, data):
    coloring = vizing_color_multi(graph)
    if coloring.k >= 2 and graph.n:
        v = data.draw(st.integers(0, graph.n - 1))
        coloring.kempe_switch(v, 1, 2)
    if graph.m:
        for idx in data.draw(st.lists(st.integers(0, graph.m - 1), max_size=3)):
            coloring.unassign(idx)
    clone = coloring.copy()
    for col in (coloring, clone):
        for w in range(graph.n):
            free = {c for c in range(1, col.k + 1) if col.is_missing(w, c)}
            assert col.missing(w) == free
            assert col.colored_degree(w) == col.k - len(free)
