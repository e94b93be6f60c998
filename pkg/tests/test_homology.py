import random

import pytest

from graphbraid import (
    SparseIntMatrix,
    build_complex,
    cycle_homology_class,
    euler_characteristic,
    f_vector,
    homology,
    path_graph,
    rotation_loop,
    edgepath_chain,
    smith_normal_form,
    component_count,
)
from graphbraid.homology import _diagonalize_sparse, _divisibility_chain
from oracles import naive_invariant_factors, rank_over_rationals, sample_connected_graphs


def snf_factors(rows):
    return smith_normal_form(SparseIntMatrix.from_dense(rows)).factors


class TestSmithNormalForm:
    def test_identity(self):
        assert snf_factors([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == (1, 1, 1)

    def test_diagonal_2_3(self):
        assert snf_factors([[2, 0], [0, 3]]) == (1, 6)

    def test_zero_matrix(self):
        assert snf_factors([[0, 0], [0, 0]]) == ()
        assert smith_normal_form(SparseIntMatrix(0, 5)).factors == ()

    def test_textbook_example(self):
        assert snf_factors([[2, 4, 4], [-6, 6, 12], [10, 4, 16]]) == (2, 2, 156)

    def test_divisibility_chain_property(self):
        rng = random.Random(42)
        for _ in range(60):
            m = rng.randrange(1, 6)
            n = rng.randrange(1, 6)
            rows = [
                [rng.randrange(-9, 10) for _ in range(n)] for _ in range(m)
            ]
            factors = snf_factors(rows)
            assert all(d > 0 for d in factors)
            for a, b in zip(factors, factors[1:]):
                assert b % a == 0

    def test_matches_naive_oracle(self):
        rng = random.Random(43)
        for _ in range(80):
            m = rng.randrange(1, 7)
            n = rng.randrange(1, 7)
            rows = [
                [rng.randrange(-12, 13) for _ in range(n)] for _ in range(m)
            ]
            assert list(snf_factors(rows)) == naive_invariant_factors(rows)

    def test_sparse_path_matches_dense(self):
        rng = random.Random(44)
        for _ in range(40):
            m = rng.randrange(1, 8)
            n = rng.randrange(1, 8)
            rows = [
                [rng.randrange(-9, 10) if rng.random() < 0.4 else 0 for _ in range(n)]
                for _ in range(m)
            ]
            M = SparseIntMatrix.from_dense(rows)
            sparse = tuple(_divisibility_chain(_diagonalize_sparse(M)))
            assert sparse == smith_normal_form(M).factors

    def test_invariant_under_shuffling(self):
        rng = random.Random(45)
        rows = [[rng.randrange(-6, 7) for _ in range(5)] for _ in range(4)]
        base = snf_factors(rows)
        for _ in range(10):
            perm_r = list(range(4))
            perm_c = list(range(5))
            rng.shuffle(perm_r)
            rng.shuffle(perm_c)
            shuffled = [[rows[i][j] for j in perm_c] for i in perm_r]
            assert snf_factors(shuffled) == base

    def test_rank_matches_rational_elimination(self):
        rng = random.Random(46)
        for _ in range(40):
            m = rng.randrange(1, 7)
            n = rng.randrange(1, 7)
            rows = [
                [rng.randrange(-8, 9) for _ in range(n)] for _ in range(m)
            ]
            assert len(snf_factors(rows)) == rank_over_rationals(rows)


class TestHomology:
    def test_p_graph_free_of_rank_3(self, P):
        summary = homology(build_complex(P, 3, "unordered"))
        assert summary.betti == (1, 3, 0, 0)
        assert all(t == () for t in summary.torsion)

    def test_y_graph_free_of_rank_3(self, Y):
        summary = homology(build_complex(Y, 3, "unordered"))
        assert summary.betti == (1, 3, 0, 0)
        assert all(t == () for t in summary.torsion)

    def test_k5_genus_six_surface(self, K5):
        summary = homology(build_complex(K5, 2, "ordered"))
        assert summary.betti == (1, 12, 1)
        assert all(t == () for t in summary.torsion)

    def test_k33_genus_four_surface(self, K33):
        summary = homology(build_complex(K33, 2, "ordered"))
        assert summary.betti == (1, 8, 1)

    def test_unordered_k5_torsion(self, K5):
        K = build_complex(K5, 2, "unordered")
        assert euler_characteristic(K) == -5
        summary = homology(K)
        assert summary.betti == (1, 6, 0)
        assert summary.torsion[1] == (2,)

    def test_empty_complex(self):
        summary = homology(build_complex(path_graph(2), 3, "unordered"))
        assert summary.betti == () and summary.torsion == ()

    def test_euler_identity_random_suite(self):
        for G in sample_connected_graphs(5, 15, seed=30):
            for n in (2, 3):
                for labeling in ("ordered", "unordered"):
                    K = build_complex(G, n, labeling)
                    summary = homology(K)
                    chi = sum((-1) ** k * b for k, b in enumerate(summary.betti))
                    assert chi == euler_characteristic(K)

    def test_b0_equals_component_count(self):
        for G in sample_connected_graphs(5, 10, seed=31):
            for labeling in ("ordered", "unordered"):
                K = build_complex(G, 2, labeling)
                summary = homology(K)
                b0 = summary.betti[0] if summary.betti else 0
                assert b0 == component_count(K)

    def test_ordered_component_lift_on_paths(self):
        # token order on a path graph is invariant: each unordered
        # component lifts to n! ordered ones
        K = build_complex(path_graph(4), 2, "ordered")
        assert homology(K).betti[0] == 2

    def test_example_graphs_ordered_are_connected(self, P, Y):
        # a swap at the degree-3 vertex connects all orderings, so the
        # ordered space has a single component (not n! of them)
        for G in (P, Y):
            K = build_complex(G, 3, "ordered")
            assert homology(K).betti[0] == 1
            assert component_count(K) == 1


class TestCycleClass:
    def test_zero_chain(self, P):
        K = build_complex(P, 3, "unordered")
        verdict = cycle_homology_class(K, {})
        assert verdict.is_cycle and verdict.is_boundary

    def test_single_two_cell_boundary(self, P):
        K = build_complex(P, 3, "unordered")
        d2 = K.boundary(2)
        chain = {row: v for (row, col), v in d2.entries.items() if col == 0}
        verdict = cycle_homology_class(K, chain)
        assert verdict.is_cycle and verdict.is_boundary

    def test_not_a_cycle(self, P):
        K = build_complex(P, 3, "unordered")
        verdict = cycle_homology_class(K, {0: 1})
        assert not verdict.is_cycle and not verdict.is_boundary

    def test_rotation_loop_on_square_is_essential(self, C4):
        K = build_complex(C4, 2, "unordered")
        loop = rotation_loop(C4, [0, 1, 2, 3], 2, "full")
        chain = edgepath_chain(K, loop)
        verdict = cycle_homology_class(K, chain)
        assert verdict.is_cycle and not verdict.is_boundary

    def test_index_out_of_range(self, P):
        K = build_complex(P, 3, "unordered")
        with pytest.raises(IndexError):
            cycle_homology_class(K, {10**6: 1})

    def test_sequence_input(self, C4):
        K = build_complex(C4, 2, "unordered")
        n1 = f_vector(K)[1]
        verdict = cycle_homology_class(K, [0] * n1)
        assert verdict.is_cycle and verdict.is_boundary
