import pytest
from hypothesis import given

from multicolor.coloring import color_optimal, exact_chromatic_index, matching_removal_color, verify
from multicolor.core import build, complete_multigraph, lower_bound, shannon_multigraph
from multicolor.exceptions import PreconditionUnmet

from .conftest import petersen_edges
from .strategies import complete_plus_star, multigraphs


class TestMatchingRemoval:
    def test_single_doubled_edge(self):
        graph = build(4, [(0, 1, 1), (1, 2, 2), (2, 3, 1)])
        coloring = matching_removal_color(graph)
        assert verify(graph, coloring).valid
        assert coloring.colors_used == 3

    def test_lonely_max_degree_vertices(self, star4):
        coloring = matching_removal_color(star4)
        assert verify(star4, coloring).valid
        assert coloring.colors_used == 4

    def test_rejects_high_multiplicity(self):
        with pytest.raises(PreconditionUnmet):
            matching_removal_color(build(2, [(0, 1, 3)]))

    def test_rejects_touching_doubled_edges(self):
        with pytest.raises(PreconditionUnmet):
            matching_removal_color(build(3, [(0, 1, 2), (1, 2, 2)]))

    def test_rejects_close_doubled_edges(self):
        with pytest.raises(PreconditionUnmet):
            matching_removal_color(build(4, [(0, 1, 2), (1, 2, 1), (2, 3, 2)]))


class TestColorOptimal:
    def test_empty(self):
        outcome = color_optimal(build(3, []))
        assert outcome.colors_used == 0
        assert outcome.first_class

    def test_triangle(self, triangle):
        outcome = color_optimal(triangle)
        assert outcome.colors_used == 3
        assert outcome.first_class

    def test_petersen_is_second_class(self, petersen):
        outcome = color_optimal(petersen)
        assert outcome.colors_used == 4
        assert not outcome.first_class
        assert outcome.lower_bound == 3

    @pytest.mark.parametrize("delta", [2, 4, 6, 8])
    def test_shannon_family_is_first_class(self, delta):
        graph = shannon_multigraph(delta)
        outcome = color_optimal(graph)
        assert verify(graph, outcome.coloring).valid
        assert outcome.colors_used == 3 * delta // 2
        assert outcome.first_class

    @pytest.mark.parametrize("n,c", [(4, 1), (4, 3), (6, 2)])
    def test_uniform_complete_even(self, n, c):
        outcome = color_optimal(complete_multigraph(n, c))
        assert outcome.colors_used == c * (n - 1)

    def test_same_seed_same_colouring(self):
        graph = build(5, [(0, 1, 2), (1, 2, 1), (2, 3, 3), (3, 4, 1), (0, 4, 2), (1, 3, 1)])
        assert color_optimal(graph, seed=5).coloring.colors == color_optimal(graph, seed=5).coloring.colors

    @given(multigraphs())
    def test_proper_and_bounded(self, graph):
        outcome = color_optimal(graph)
        assert outcome.coloring.is_total
        assert verify(graph, outcome.coloring).valid
        assert outcome.lower_bound == lower_bound(graph).k
        assert outcome.lower_bound <= outcome.colors_used <= graph.max_degree + graph.max_multiplicity
        assert outcome.first_class == (outcome.colors_used == outcome.lower_bound)

    @given(multigraphs(max_n=5, max_m=10))
    def test_never_worse_than_exact_allows(self, graph):
        assert color_optimal(graph).colors_used >= exact_chromatic_index(graph)

    @given(complete_plus_star(max_m=16))
    def test_complete_plus_gap_uses_delta_colours(self, graph):
        outcome = color_optimal(graph)
        assert verify(graph, outcome.coloring).valid
        assert outcome.colors_used == graph.max_degree

    def test_second_class_diagnostics_on_odd_n(self):
        # deleting a vertex from the Petersen graph leaves it second class
        graph = build(9, [(u, v, k) for u, v, k in petersen_edges() if 9 not in (u, v)])
        outcome = color_optimal(graph)
        assert verify(graph, outcome.coloring).valid
        assert outcome.colors_used == 4
        assert not outcome.first_class
        assert "second_class_conditions" in outcome.diagnostics
