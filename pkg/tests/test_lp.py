import random
from fractions import Fraction

from hskernel.core import Hypergraph, is_independent, normalize
from hskernel.lp import (
    build_crown_lp,
    extract_crown_candidates,
    format_lp,
    solve_exact,
    ExactLPSolution,
)

from helpers import polytope_min_objective

SHOWCASE_EDGES = [["v1", "v2", "v4"], ["v1", "v2", "v5"], ["v2", "v3", "v4"], ["v2", "v3", "v5"]]


def showcase_hypergraph():
    return normalize(SHOWCASE_EDGES, 3, 1).hypergraph


def random_hypergraph(rng, max_n=6, max_m=6):
    n = rng.randint(2, max_n)
    m = rng.randint(0, max_m)
    edges = []
    for _ in range(m):
        size = rng.randint(1, min(3, n))
        edges.append(tuple(sorted(rng.sample(range(n), size))))
    return Hypergraph(n, tuple(edges), 3)


class TestBuildCrownLP:
    def test_showcase_model_shape(self):
        prob = build_crown_lp(showcase_hypergraph())
        assert prob.var_count == 5
        assert len(prob.constraints) == 4
        assert all(rhs == 2 for _, rhs in prob.constraints)

    def test_single_pair_edge(self):
        prob = build_crown_lp(Hypergraph(2, ((0, 1),), 3))
        assert prob.constraints == (((0, 1), 1),)

    def test_edge_free(self):
        prob = build_crown_lp(Hypergraph(3, (), 3))
        assert prob.var_count == 3 and prob.constraints == ()

    def test_one_constraint_per_edge(self):
        rng = random.Random(0)
        for _ in range(30):
            h = random_hypergraph(rng)
            prob = build_crown_lp(h)
            assert tuple(vs for vs, _ in prob.constraints) == h.edges
            assert all(rhs == len(vs) - 1 for vs, rhs in prob.constraints)


class TestSolveExact:
    def test_showcase_objective_is_three(self):
        prob = build_crown_lp(showcase_hypergraph())
        sol = solve_exact(prob)
        assert sol.objective == 3
        assert sol.objective == polytope_min_objective(prob)

    def test_single_pair_edge_objective_one(self):
        sol = solve_exact(build_crown_lp(Hypergraph(2, ((0, 1),), 3)))
        assert sol.objective == 1

    def test_no_constraints_all_zero(self):
        sol = solve_exact(build_crown_lp(Hypergraph(3, (), 3)))
        assert sol.values == (Fraction(0), Fraction(0), Fraction(0))
        assert sol.objective == 0

    def test_unit_edge_constraint_is_vacuous(self):
        sol = solve_exact(build_crown_lp(Hypergraph(2, ((0,), (0, 1)), 3)))
        assert sol.objective == 1

    def test_matches_polytope_minimum_on_small_instances(self):
        rng = random.Random(11)
        for _ in range(40):
            h = random_hypergraph(rng, max_n=5, max_m=5)
            prob = build_crown_lp(h)
            assert solve_exact(prob).objective == polytope_min_objective(prob)

    def test_matches_polytope_minimum_six_by_six(self):
        rng = random.Random(12)
        for _ in range(3):
            h = random_hypergraph(rng, max_n=6, max_m=6)
            prob = build_crown_lp(h)
            assert solve_exact(prob).objective == polytope_min_objective(prob)

    def test_exact_feasibility_and_deficit(self):
        rng = random.Random(13)
        for _ in range(50):
            h = random_hypergraph(rng, max_n=8, max_m=10)
            sol = solve_exact(build_crown_lp(h))
            for e in h.edges:
                total = sum((sol.values[v] for v in e), Fraction(0))
                assert total >= len(e) - 1
                assert sum((1 - sol.values[v] for v in e), Fraction(0)) <= 1

    def test_objective_below_random_integral_assignments(self):
        rng = random.Random(14)
        h = random_hypergraph(rng, max_n=8, max_m=10)
        sol = solve_exact(build_crown_lp(h))
        for _ in range(200):
            x = [Fraction(rng.randint(0, 1)) for _ in range(h.n)]
            for e in h.edges:  # repair to feasibility, cheapest-first
                while sum(x[v] for v in e) < len(e) - 1:
                    x[next(v for v in e if x[v] == 0)] = Fraction(1)
            assert sum(x, Fraction(0)) >= sol.objective

    def test_deterministic(self):
        prob = build_crown_lp(showcase_hypergraph())
        assert solve_exact(prob) == solve_exact(prob)

    def test_basis_certificate_present(self):
        sol = solve_exact(build_crown_lp(showcase_hypergraph()))
        assert len(sol.basis) == 4  # one entry per tableau row, no box rows needed


class TestExtractCrownCandidates:
    def test_all_ones_solution(self):
        h = showcase_hypergraph()
        sol = ExactLPSolution(
            values=(Fraction(1),) * 5, objective=Fraction(5), basis=()
        )
        cand = extract_crown_candidates(h, sol)
        assert cand.zeros == frozenset()
        assert cand.ones == frozenset(range(5))
        assert cand.subedges == frozenset()

    def test_three_petals_one_pair(self):
        # ids: x1=0 u=1 v=2 x2=3 x3=4
        inst = normalize([["x1", "u", "v"], ["x2", "u", "v"], ["x3", "u", "v"]], 3, 1)
        h = inst.hypergraph
        sol = solve_exact(build_crown_lp(h))
        assert sol.objective == 2
        cand = extract_crown_candidates(h, sol)
        assert cand.zeros == frozenset({0, 3, 4})
        assert cand.ones == frozenset({1, 2})
        assert cand.subedges == frozenset({(1, 2)})

    def test_fractional_vertex_in_neither_set(self):
        # Disjoint 4-cliques of triples settle at two-thirds everywhere.
        from helpers import blob_instance

        h = blob_instance(0, 1).hypergraph
        sol = solve_exact(build_crown_lp(h))
        cand = extract_crown_candidates(h, sol)
        assert cand.zeros == frozenset()
        assert cand.ones == frozenset()
        assert all(v == Fraction(2, 3) for v in sol.values)

    def test_zero_set_always_independent(self):
        rng = random.Random(15)
        for _ in range(40):
            h = random_hypergraph(rng, max_n=8, max_m=10)
            cand = extract_crown_candidates(h, solve_exact(build_crown_lp(h)))
            assert is_independent(h, cand.zeros)


class TestFormatLP:
    def test_listing_shape(self):
        text = format_lp(build_crown_lp(Hypergraph(2, ((0, 1),), 3)))
        lines = text.splitlines()
        assert lines[0].startswith("minimize")
        assert "x[0] + x[1] >= 1" in lines[1]
