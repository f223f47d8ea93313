import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semforge.errors import NotSem
from semforge.families import (
    build_two_lk11_lk1n,
    loop_graph,
    star_with_loop,
)
from semforge.graphs import (
    AdjacencyMatrix,
    Digraph,
    Graph,
    adjacency_matrix,
    disjoint_union,
    indegree_one_orientation,
)
from semforge.labelings import (
    FullLabeling,
    VertexLabeling,
    complement,
    complete_to_edge_magic,
    counterdiagonal_profile,
    identity_labeling,
    induced_sums,
    is_sem,
    labeling_from_json,
    labeling_json,
    rotate_pi,
    verify_edge_magic,
)

from conftest import all_possible_edges


@st.composite
def graph_and_labeling(draw, max_order=6):
    """A random loop-allowed graph together with a random bijection."""
    p = draw(st.integers(min_value=1, max_value=max_order))
    pool = all_possible_edges(p)
    edges = draw(st.sets(st.sampled_from(pool), max_size=len(pool)))
    labels = draw(st.permutations(list(range(1, p + 1))))
    return Graph(p, frozenset(edges)), VertexLabeling(tuple(labels))


@st.composite
def digraph_and_labeling(draw, max_order=10):
    p = draw(st.integers(min_value=1, max_value=max_order))
    pool = [(a, b) for a in range(1, p + 1) for b in range(1, p + 1)]
    arcs = draw(st.sets(st.sampled_from(pool), max_size=len(pool)))
    labels = draw(st.permutations(list(range(1, p + 1))))
    return Digraph(p, frozenset(arcs)), VertexLabeling(tuple(labels))


class TestVertexLabeling:
    def test_rejects_non_bijection(self):
        with pytest.raises(ValueError):
            VertexLabeling((1, 1, 2))
        with pytest.raises(ValueError):
            VertexLabeling((1, 3))

    def test_identity(self):
        assert identity_labeling(3).labels == (1, 2, 3)


class TestInducedSums:
    def test_star_with_two_leaves(self):
        g = star_with_loop(2)
        assert induced_sums(g, identity_labeling(3)) == [(2, 1), (3, 1), (4, 1)]

    def test_two_loops(self):
        g = disjoint_union([loop_graph(), loop_graph()])
        assert induced_sums(g, identity_labeling(2)) == [(2, 1), (4, 1)]

    def test_single_edge(self):
        assert induced_sums(Graph(2, [(1, 2)]), identity_labeling(2)) == [(3, 1)]


class TestIsSem:
    def test_star_with_loop_any_bijection(self):
        import itertools

        g = star_with_loop(2)
        for perm in itertools.permutations((1, 2, 3)):
            ok, window = is_sem(g, VertexLabeling(perm))
            assert ok and window.width == 3

    def test_two_loops_not_consecutive(self):
        g = disjoint_union([loop_graph(), loop_graph()])
        ok, window = is_sem(g, identity_labeling(2))
        assert not ok and window is None

    def test_three_star_instance_window(self):
        cert = build_two_lk11_lk1n(1)
        ok, window = is_sem(cert.graph, cert.labeling)
        assert ok and window.as_pair() == [5, 10]

    def test_repeated_sum_fails(self):
        # 4-cycle under the identity: sums 3, 5, 7, 5 repeat the 5
        g = Graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        ok, _ = is_sem(g, identity_labeling(4))
        assert not ok


class TestComplement:
    def test_pointwise_formula(self):
        lab = VertexLabeling((3, 6, 5, 2, 4, 1))
        assert complement(lab).of(1) == 4

    def test_fig_instance(self):
        cert = build_two_lk11_lk1n(1)
        comp = complement(cert.labeling)
        assert comp.labels == (4, 1, 2, 5, 3, 6)
        ok, _ = is_sem(cert.graph, comp)
        assert ok

    @given(graph_and_labeling())
    def test_involution(self, gl):
        _, lab = gl
        assert complement(complement(lab)) == lab

    @given(graph_and_labeling())
    @settings(max_examples=200)
    def test_sem_invariant_under_complement(self, gl):
        g, lab = gl
        assert is_sem(g, lab)[0] == is_sem(g, complement(lab))[0]


class TestCompletion:
    def test_star_with_two_leaves(self):
        g = star_with_loop(2)
        full = complete_to_edge_magic(g, identity_labeling(3))
        assert full.magic_sum == 8
        assert full.edge_label_map == {(1, 1): 6, (1, 2): 5, (1, 3): 4}

    def test_single_loop(self):
        full = complete_to_edge_magic(loop_graph(), identity_labeling(1))
        assert full.magic_sum == 4
        assert full.edge_label_map == {(1, 1): 2}

    def test_fig_instance_magic_sum(self):
        cert = build_two_lk11_lk1n(1)
        full = complete_to_edge_magic(cert.graph, cert.labeling)
        assert full.magic_sum == 17

    def test_rejects_non_sem(self):
        g = disjoint_union([loop_graph(), loop_graph()])
        with pytest.raises(NotSem):
            complete_to_edge_magic(g, identity_labeling(2))

    def test_completion_verifies_super(self):
        cert = build_two_lk11_lk1n(3)
        g = cert.graph
        full = complete_to_edge_magic(g, cert.labeling)
        assert verify_edge_magic(g, full, require_super=True)
        edge_labels = sorted(lab for _, lab in full.edge_labels)
        assert edge_labels == list(range(g.order + 1, g.order + g.size + 1))


class TestVerifyEdgeMagic:
    def test_perturbed_edge_label_fails(self):
        g = star_with_loop(2)
        full = complete_to_edge_magic(g, identity_labeling(3))
        broken = FullLabeling(
            full.vertex_labels,
            tuple(((u, v), lab + (1 if (u, v) == (1, 1) else 0))
                  for (u, v), lab in full.edge_labels),
            full.magic_sum,
        )
        assert not verify_edge_magic(g, broken)

    def test_super_condition(self):
        # edge-magic labeling of the loop with a vertex label above p
        g = loop_graph()
        full = FullLabeling((2,), (((1, 1), 1),), 5)
        assert verify_edge_magic(g, full, require_super=False)
        assert not verify_edge_magic(g, full, require_super=True)

    def test_wrong_magic_sum_fails(self):
        g = loop_graph()
        full = FullLabeling((1,), (((1, 1), 2),), 5)
        assert not verify_edge_magic(g, full)


class TestCounterdiagonalProfile:
    def test_sem_star_is_compliant(self):
        g = star_with_loop(2)
        d = indegree_one_orientation(g)
        prof = counterdiagonal_profile(adjacency_matrix(d, identity_labeling(3)))
        assert prof.compliant
        assert all(c <= 1 for c in prof.counts)

    def test_identity_matrix_gap(self):
        prof = counterdiagonal_profile(AdjacencyMatrix(((1, 0), (0, 1))))
        assert prof.count_for(2) == 1
        assert prof.count_for(3) == 0
        assert prof.count_for(4) == 1
        assert not prof.compliant

    def test_zero_matrix_vacuous(self):
        prof = counterdiagonal_profile(AdjacencyMatrix(((0, 0), (0, 0))))
        assert prof.compliant and prof.support == []

    def test_doubled_diagonal_not_compliant(self):
        prof = counterdiagonal_profile(AdjacencyMatrix(((0, 1), (1, 0))))
        assert not prof.compliant


class TestRotatePi:
    def test_corner_moves(self):
        assert rotate_pi(AdjacencyMatrix(((1, 0), (0, 0)))).rows == ((0, 0), (0, 1))

    @given(digraph_and_labeling())
    def test_involution(self, dl):
        d, lab = dl
        m = adjacency_matrix(d, lab)
        assert rotate_pi(rotate_pi(m)) == m

    @given(digraph_and_labeling())
    @settings(max_examples=150)
    def test_rotation_is_complement_relabeling(self, dl):
        d, lab = dl
        assert rotate_pi(adjacency_matrix(d, lab)) == adjacency_matrix(d, complement(lab))

    def test_oriented_star_all_sem_labelings(self):
        g = star_with_loop(3)
        d = indegree_one_orientation(g)
        import itertools

        for perm in itertools.permutations(range(1, 5)):
            lab = VertexLabeling(perm)
            ok, _ = is_sem(g, lab)
            assert ok  # every bijection works on a loop-star
            assert rotate_pi(adjacency_matrix(d, lab)) == adjacency_matrix(d, complement(lab))


class TestLabelingJson:
    def test_round_trip(self):
        cert = build_two_lk11_lk1n(1)
        data = labeling_json(cert.graph, cert.labeling)
        assert data == {
            "p": 6,
            "labels": [3, 6, 5, 2, 4, 1],
            "sem": True,
            "window": [5, 10],
            "magic_sum": 17,
        }
        assert labeling_from_json(json.loads(json.dumps(data))) == cert.labeling

    def test_non_sem_fields_null(self):
        g = disjoint_union([loop_graph(), loop_graph()])
        data = labeling_json(g, identity_labeling(2))
        assert data["sem"] is False
        assert data["window"] is None and data["magic_sum"] is None

    def test_from_json_validates(self):
        with pytest.raises(ValueError):
            labeling_from_json({"p": 2, "labels": [1, 1]})
        with pytest.raises(ValueError):
            labeling_from_json({"p": 3, "labels": [1, 2]})
