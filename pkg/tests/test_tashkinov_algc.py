import numpy as np
import pytest
from hypothesis import given

from multicolor.coloring import (
    EdgeColoring,
    alg_c,
    algc_order,
    augment_tashkinov,
    bounded_offenders,
    greedy_color,
    grow_tashkinov,
    is_elementary,
    legal_tuple_problems,
    tree_problems,
    verify,
)
from multicolor.coloring.algc import BUDGET_EXHAUSTED, COLORED, ELEMENTARY_TREE, color_with_augmentation
from multicolor.coloring.tashkinov import augment
from multicolor.core import build
from multicolor.exceptions import (
    ColoringStructureError,
    IllegalTupleError,
    NotBoundedError,
    NotElementaryError,
)

from .strategies import bounded_multigraphs, multigraphs


def _path_coloring(k):
    """Path 0-1-2-3 with 1-2 coloured 1, 2-3 coloured 2 and 0-1 uncoloured."""

    path = build(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
    return EdgeColoring.from_assignment(path, k, [0, 1, 2])


def _overfull_triangle():
    # (6, 2)-bounded with vertex 0 of degree 6, but 7 pairwise adjacent edges
    return build(3, [(0, 1, 3), (0, 2, 3), (1, 2, 1)])


class TestElementary:
    def test_witness_is_smallest(self):
        coloring = _path_coloring(3)
        check = is_elementary(coloring, [0, 1, 2, 3])
        assert not check
        assert check.witness == (1, 0, 3)

    def test_single_vertex_is_elementary(self):
        assert is_elementary(_path_coloring(3), [2])


class TestGrow:
    def test_path_tree(self):
        coloring = _path_coloring(3)
        tree = grow_tashkinov(coloring, 0)
        assert tree.vertices == (0, 1, 2, 3)
        assert tree.edges == (0, 1, 2)
        assert tree_problems(coloring, tree) == []

    def test_root_must_be_uncoloured(self):
        coloring = EdgeColoring.from_assignment(_path_coloring(3).graph, 3, [1, 2, 1])
        with pytest.raises(ColoringStructureError):
            grow_tashkinov(coloring, 0)

    @given(multigraphs(min_n=2))
    def test_grown_trees_are_maximal_tashkinov_trees(self, graph):
        if graph.m == 0:
            return
        coloring, stuck = greedy_color(graph, max(graph.max_degree, 1))
        if stuck is None:
            return
        tree = grow_tashkinov(coloring, graph.instance_index[stuck])
        assert tree_problems(coloring, tree) == []
        assert len(set(tree.vertices)) == len(tree.vertices)


class TestLegalTuple:
    def test_path_is_legal_with_three_colours(self):
        assert legal_tuple_problems(_path_coloring(3), 0) == []

    def test_path_endpoints_too_heavy_for_two(self):
        problems = legal_tuple_problems(_path_coloring(2), 0)
        assert any("2k-2" in p for p in problems)


class TestAugment:
    def test_colours_root_on_a_copy(self):
        coloring = _path_coloring(3)
        tree = grow_tashkinov(coloring, 0)
        check = is_elementary(coloring, tree.vertices)
        result = augment_tashkinov(coloring, tree, check.witness)
        assert result.is_total
        assert verify(coloring.graph, result).valid
        assert coloring.uncolored() == [0]

    def test_illegal_tuple(self):
        coloring = _path_coloring(2)
        tree = grow_tashkinov(coloring, 0)
        with pytest.raises(IllegalTupleError):
            augment_tashkinov(coloring, tree, (1, 0, 3))

    def test_witness_must_show_non_elementary(self):
        coloring = _path_coloring(3)
        tree = grow_tashkinov(coloring, 0)
        with pytest.raises(NotElementaryError):
            augment_tashkinov(coloring, tree, (1, 0, 1))

    def test_budget_and_elementary_stops(self, triangle):
        coloring = EdgeColoring.from_assignment(triangle, 2, [1, 2, 0])
        rng = np.random.Generator(np.random.Philox(0))
        outcome = augment(coloring.copy(), 2, 0, rng, stop_on_elementary=True)
        assert outcome.status == ELEMENTARY_TREE
        assert outcome.tree.vertices == (1, 2, 0)
        outcome = augment(coloring.copy(), 2, 0, rng, stop_on_elementary=False)
        assert outcome.status == BUDGET_EXHAUSTED


class TestAlgC:
    def test_bounded_offenders(self, triangle):
        assert bounded_offenders(triangle, 2, 2) == [0, 1, 2]
        assert bounded_offenders(triangle, 4, 2) == []
        assert bounded_offenders(build(3, [(0, 1, 3)]), 2, 1) == [0, 1]

    def test_rejects_unbounded(self, triangle):
        with pytest.raises(NotBoundedError) as info:
            alg_c(triangle, 2)
        assert info.value.offending == (0, 1, 2)

    def test_rejects_non_positive_k(self, triangle):
        with pytest.raises(ValueError):
            alg_c(triangle, 0)

    def test_order_puts_heavy_vertex_last(self):
        graph = _overfull_triangle()
        order = algc_order(graph, 6)
        first = graph.instances[order[0]]
        assert first.pair == (1, 2)
        assert all(0 in graph.instances[i].pair for i in order[1:])

    def test_returns_elementary_tree_when_overfull(self):
        graph = _overfull_triangle()
        result = alg_c(graph, 6)
        assert result.status == ELEMENTARY_TREE
        assert not result.colored
        assert 0 in result.root.pair
        assert len(result.tree.vertices) == 3
        assert is_elementary(result.coloring, result.tree.vertices)
        assert tree_problems(result.coloring, result.tree) == []
        assert len(result.subgraph) == graph.m
        assert any("odd" in note for note in result.notes)

    def test_budget_status_without_elementary_stop(self):
        graph = _overfull_triangle()
        result = color_with_augmentation(graph, 6, budget_factor=1, stop_on_elementary=False)
        assert result.status == BUDGET_EXHAUSTED

    def test_colours_a_bounded_star(self, star4):
        result = alg_c(star4, 4)
        assert result.status == COLORED
        assert verify(star4, result.coloring).valid

    @given(bounded_multigraphs())
    def test_bounded_multigraphs_are_k_colourable(self, case):
        graph, k = case
        result = alg_c(graph, k)
        assert result.status == COLORED
        assert result.coloring.k == k
        assert verify(graph, result.coloring).valid
