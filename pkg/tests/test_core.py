import math
from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given

from multicolor.core import (
    EdgeInstance,
    build,
    check_second_class_conditions,
    complete_multigraph,
    decompose_complete,
    degree_stats,
    emit_multigraph,
    induced_subgraph,
    is_forest,
    lower_bound,
    one_factorization,
    parse_multigraph,
    remove_instances,
    rho_exact,
    rho_fast,
    rho_of_subset,
    shannon_multigraph,
    union,
)
from multicolor.exceptions import ExhaustiveLimitError, InvalidGraphError, PreconditionUnmet
from multicolor.sampling import SampleConfig, sample_mnm

from .strategies import multigraphs


def _brute_rho(graph):
    best = Fraction(0)
    for size in range(2, graph.n + 1):
        for subset in combinations(range(graph.n), size):
            best = max(best, rho_of_subset(graph, subset))
    return best


class TestBuild:
    def test_triangle(self, triangle):
        assert triangle.m == 3
        assert triangle.degrees == (2, 2, 2)

    def test_loop_rejected(self):
        with pytest.raises(InvalidGraphError):
            build(2, [(0, 0, 1)])

    def test_out_of_range_rejected(self):
        with pytest.raises(InvalidGraphError):
            build(2, [(0, 2, 1)])

    def test_negative_multiplicity_rejected(self):
        with pytest.raises(InvalidGraphError):
            build(3, [(0, 1, -1)])

    def test_duplicates_accumulate(self):
        graph = build(4, [(0, 1, 2), (1, 0, 1)])
        assert graph.mult(0, 1) == 3
        assert graph.m == 3

    def test_zero_multiplicity_dropped(self):
        graph = build(3, [(0, 1, 0)])
        assert graph.pairs == ()
        assert graph.m == 0

    @given(multigraphs())
    def test_degree_sum_is_twice_m(self, graph):
        assert sum(graph.degrees) == 2 * graph.m
        assert len(graph.instances) == graph.m
        assert all(inst.copy < graph.mult(inst.u, inst.v) for inst in graph.instances)


class TestDegreeStats:
    def test_triangle(self, triangle):
        stats = degree_stats(triangle)
        assert stats.degrees == (2, 2, 2)
        assert (stats.mu_max, stats.mu_min) == (1, 1)

    def test_path_has_zero_mu_min(self):
        stats = degree_stats(build(3, [(0, 1, 1), (1, 2, 1)]))
        assert stats.degrees == (2, 1, 1)
        assert stats.mu_min == 0

    def test_shannon_triple(self):
        stats = degree_stats(build(3, [(0, 1, 2), (1, 2, 2), (0, 2, 2)]))
        assert stats.delta == 4
        assert stats.mu_max == stats.mu_min == 2

    def test_single_vertex(self):
        stats = degree_stats(build(1, []))
        assert (stats.delta, stats.d2, stats.mu_min) == (0, 0, 0)


class TestRho:
    def test_subset_values(self, triangle, k4):
        assert rho_of_subset(triangle, [0, 1, 2]) == 3
        assert rho_of_subset(build(2, [(0, 1, 1)]), [0, 1]) == 1
        assert rho_of_subset(k4, range(4)) == 3

    def test_subset_too_small(self, triangle):
        with pytest.raises(InvalidGraphError):
            rho_of_subset(triangle, [0])

    def test_exact_triangle(self, triangle):
        witness = rho_exact(triangle)
        assert witness.vertices == (0, 1, 2)
        assert witness.value == 3

    def test_exact_k4_prefers_odd_subset(self, k4):
        witness = rho_exact(k4)
        assert witness.value == 3
        assert witness.vertices == (0, 1, 2)

    def test_exact_petersen(self, petersen):
        assert rho_exact(petersen).value == 3

    def test_exact_empty(self):
        witness = rho_exact(build(4, []))
        assert witness.value == 0
        assert witness.vertices == ()

    def test_exact_limit(self, petersen):
        with pytest.raises(ExhaustiveLimitError, match="rho_fast"):
            rho_exact(petersen, max_n=8)

    @given(multigraphs(max_n=6))
    def test_exact_matches_brute_force(self, graph):
        witness = rho_exact(graph)
        assert witness.value == _brute_rho(graph)
        if witness.vertices:
            assert rho_of_subset(graph, witness.vertices) == witness.value
            assert witness.edges_inside == sum(
                k for u, v, k in graph.pairs if u in witness.vertices and v in witness.vertices
            )

    @given(multigraphs(max_n=7))
    def test_fast_is_a_lower_bound(self, graph):
        fast = rho_fast(graph)
        assert fast.value <= rho_exact(graph).value
        if fast.vertices:
            assert rho_of_subset(graph, fast.vertices) == fast.value

    @given(multigraphs(max_n=7))
    def test_exact_prefers_an_odd_witness(self, graph):
        witness = rho_exact(graph)
        odd_best = max(
            (rho_of_subset(graph, s) for size in range(3, graph.n + 1, 2) for s in combinations(range(graph.n), size)),
            default=Fraction(0),
        )
        if witness.vertices and odd_best == witness.value:
            assert len(witness.vertices) % 2 == 1

    def test_fast_matches_exact_in_the_dense_regime(self):
        agree = 0
        for s in range(200):
            n = (5, 7, 9)[s % 3]
            m = math.ceil(n * n * math.log(n))
            graph = sample_mnm(SampleConfig(n=n, m=m, seed=s))
            agree += rho_fast(graph).value == rho_exact(graph).value
        assert agree >= 190

    def test_fast_dense_odd(self):
        graph = complete_multigraph(7, 3)
        witness = rho_fast(graph)
        assert witness.vertices == tuple(range(7))
        assert witness.value == Fraction(graph.m, 3)

    def test_fast_small_examples(self, triangle, k4):
        assert rho_fast(triangle).value == 3
        assert rho_fast(k4).value == 3


class TestLowerBound:
    def test_triangle_density(self, triangle):
        bound = lower_bound(triangle)
        assert bound.k == 3
        assert bound.active == "density"

    def test_star_degree(self, star4):
        bound = lower_bound(star4)
        assert bound.k == 4
        assert bound.active == "degree"

    def test_petersen_not_tight(self, petersen):
        assert lower_bound(petersen).k == 3

    def test_fast_path_above_limit(self, petersen):
        bound = lower_bound(petersen, max_n=5)
        assert not bound.exact
        assert bound.k >= 3


class TestDecomposition:
    def test_uniform_complete(self):
        c, rest = decompose_complete(complete_multigraph(4, 2))
        assert c == 2
        assert rest.m == 0

    def test_triangle(self, triangle):
        c, rest = decompose_complete(triangle)
        assert c == 1 and rest.m == 0

    def test_path_untouched(self):
        path = build(3, [(0, 1, 1), (1, 2, 1)])
        assert decompose_complete(path) == (0, path)

    @given(multigraphs(min_n=2, max_n=6))
    def test_reassembles(self, graph):
        c, rest = decompose_complete(graph)
        assert union(complete_multigraph(graph.n, c), rest) == graph
        assert rest.max_multiplicity == graph.max_multiplicity - c


class TestOneFactorization:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 10])
    def test_partition(self, n):
        rounds = one_factorization(n)
        assert len(rounds) == (n - 1 if n % 2 == 0 else n)
        seen = [pair for matching in rounds for pair in matching]
        assert sorted(seen) == [(u, v) for u in range(n) for v in range(u + 1, n)]
        for matching in rounds:
            vertices = [w for pair in matching for w in pair]
            assert len(vertices) == len(set(vertices))
            assert len(matching) == n // 2

    def test_rejects_tiny(self):
        with pytest.raises(InvalidGraphError):
            one_factorization(1)


class TestSecondClassConditions:
    def test_triangle(self, triangle):
        assert check_second_class_conditions(triangle, 2) == {"b", "d"}
        assert check_second_class_conditions(triangle, 3) == {"b"}

    def test_k5(self):
        held = check_second_class_conditions(complete_multigraph(5, 1), 4)
        assert "b" in held
        assert "a" not in held

    def test_even_rejected(self, k4):
        with pytest.raises(PreconditionUnmet):
            check_second_class_conditions(k4, 3)


class TestHelpers:
    @pytest.mark.parametrize("delta", [2, 3, 4, 5, 6, 8])
    def test_shannon(self, delta):
        graph = shannon_multigraph(delta)
        assert graph.max_degree == delta
        assert graph.m == 3 * delta // 2

    def test_is_forest(self, triangle):
        assert is_forest(build(4, [(0, 1, 1), (1, 2, 1), (1, 3, 1)]))
        assert not is_forest(triangle)
        assert not is_forest(build(2, [(0, 1, 2)]))

    def test_induced_and_remove(self, k4):
        assert induced_subgraph(k4, [0, 1, 2]).m == 3
        smaller = remove_instances(k4, [EdgeInstance(0, 1, 0)])
        assert smaller.m == 5 and smaller.mult(0, 1) == 0
        with pytest.raises(InvalidGraphError):
            remove_instances(smaller, [EdgeInstance(0, 1, 0)])

    @given(multigraphs())
    def test_document_round_trip(self, graph):
        assert parse_multigraph(emit_multigraph(graph)) == graph

    @pytest.mark.parametrize(
        "text",
        [
            "",
            "3 1\n0 0 1\n",
            "3 1\n1 0 1\n",
            "3 1\n0 3 1\n",
            "3 1\n0 1 0\n",
            "3 2\n0 1 1\n0 1 1\n",
            "3 2\n1 2 1\n0 1 1\n",
            "3 2\n0 1 1\n",
            "x y\n",
        ],
    )
    def test_malformed_documents(self, text):
        with pytest.raises(InvalidGraphError):
            parse_multigraph(text)

    def test_comments_skipped(self):
        graph = parse_multigraph("# sample\n3 1\n0 2 4\n")
        assert graph.mult(0, 2) == 4
