import random

import pytest

from semforge.errors import BadParam
from semforge.families import (
    DeerSpec,
    build_deer,
    build_mixed_loop_stars,
    build_odd_copies_lk1n,
    build_primitive,
    build_two_lk11_lk1n,
    build_two_lk1m_lk1n,
    caterpillar_graph,
    construct_family,
    cycle_graph,
    loop_graph,
    odd_cycle_labeling,
    star_with_loop,
)
from semforge.labelings import VertexLabeling, complement, is_sem


def assert_certified(cert):
    """Contract of every constructor: verified SEM, equal order and size."""
    ok, window = is_sem(cert.graph, cert.labeling)
    assert ok and window == cert.window
    assert cert.graph.order == cert.graph.size
    assert sorted(cert.labeling.labels) == list(range(1, cert.graph.order + 1))


class TestTwoLk11Lk1n:
    def test_fig_instance(self):
        cert = build_two_lk11_lk1n(1)
        assert cert.labeling.labels == (3, 6, 5, 2, 4, 1)
        assert cert.window.as_pair() == [5, 10]

    def test_big_star_leaves_take_remaining_labels(self):
        cert = build_two_lk11_lk1n(2)
        leaf_labels = {cert.labeling.of(6), cert.labeling.of(7)}
        assert leaf_labels == {1, 7}
        assert_certified(cert)

    def test_counts(self):
        cert = build_two_lk11_lk1n(4)
        assert (cert.graph.order, cert.graph.size) == (9, 9)

    def test_bad_param(self):
        with pytest.raises(BadParam):
            build_two_lk11_lk1n(0)

    @pytest.mark.parametrize("n", [1, 2, 3, 7, 30])
    def test_grid(self, n):
        assert_certified(build_two_lk11_lk1n(n))


class TestTwoLk1mLk1n:
    @pytest.mark.parametrize("n", [1, 2, 5])
    def test_m1_reduces_to_base(self, n):
        a = build_two_lk1m_lk1n(1, n)
        b = build_two_lk11_lk1n(n)
        assert a.graph == b.graph
        assert a.labeling == b.labeling

    def test_fig_instance(self):
        cert = build_two_lk1m_lk1n(3, 4)
        assert cert.graph.order == 13
        assert_certified(cert)

    def test_small_instance_order(self):
        # order is 2m+n+3: two (m+1)-vertex components plus an (n+1)-vertex one
        cert = build_two_lk1m_lk1n(2, 1)
        assert cert.graph.order == 8
        assert_certified(cert)

    @pytest.mark.parametrize("m,n", [(2, 2), (4, 1), (3, 6), (5, 5)])
    def test_grid(self, m, n):
        cert = build_two_lk1m_lk1n(m, n)
        assert cert.graph.order == 2 * m + n + 3
        assert_certified(cert)

    def test_bad_param(self):
        with pytest.raises(BadParam):
            build_two_lk1m_lk1n(0, 1)


class TestOddCopies:
    def test_formula_values(self):
        cert = build_odd_copies_lk1n(3, 3)
        assert cert.labeling.of(1) == 4      # first center
        assert cert.labeling.of(18) == 1     # first leaf of copy 5
        assert cert.labeling.of(2) == 11     # first leaf of copy 1

    def test_single_copy_is_identity(self):
        cert = build_odd_copies_lk1n(0, 2)
        assert cert.labeling.labels == (1, 2, 3)
        assert_certified(cert)

    def test_three_copies(self):
        cert = build_odd_copies_lk1n(1, 1)
        assert cert.graph.order == 6
        assert_certified(cert)

    def test_injected_permutation(self, rng):
        for _ in range(25):
            n = rng.randint(1, 6)
            labels = list(range(1, n + 2))
            rng.shuffle(labels)
            cert = build_odd_copies_lk1n(0, n, VertexLabeling(tuple(labels)))
            assert_certified(cert)

    def test_injection_only_for_single_copy(self):
        with pytest.raises(BadParam):
            build_odd_copies_lk1n(1, 1, VertexLabeling((1, 2, 3, 4, 5, 6)))

    @pytest.mark.parametrize("s,n", [(0, 1), (1, 2), (2, 3), (4, 1), (3, 5)])
    def test_grid(self, s, n):
        cert = build_odd_copies_lk1n(s, n)
        assert cert.graph.order == (2 * s + 1) * (n + 1)
        assert_certified(cert)


class TestMixedLoopStars:
    def test_smallest(self):
        cert = build_mixed_loop_stars(1, 1, 1)
        assert cert.graph.order == 10
        assert_certified(cert)

    def test_bigger(self):
        cert = build_mixed_loop_stars(3, 2, 2)
        assert cert.graph.order == 18
        assert_certified(cert)

    @pytest.mark.parametrize("m,n,s", [(1, 2, 1), (2, 1, 2), (4, 4, 3), (2, 3, 1)])
    def test_grid_and_range_identity(self, m, n, s):
        cert = build_mixed_loop_stars(m, n, s)
        assert cert.graph.order == 4 * s + m + 2 * n + 3
        # the scheme's label range has exactly order-many values
        assert (4 * s + m + 5) - (-2 * n + 3) + 1 == cert.graph.order
        assert_certified(cert)

    def test_bad_param(self):
        with pytest.raises(BadParam):
            build_mixed_loop_stars(1, 1, 0)


class TestDeer:
    def test_smallest_deer_is_loop(self):
        cert = build_deer([0])
        assert cert.graph == loop_graph()
        assert cert.labeling.labels == (1,)

    def test_five_spine(self):
        cert = build_deer([1, 0, 2, 0, 1])
        assert cert.graph.order == 9
        assert_certified(cert)

    def test_seven_spine(self):
        cert = build_deer([1, 0, 2, 1, 2, 0, 1])
        assert cert.graph.order == 14
        assert_certified(cert)

    def test_invalid_specs(self):
        with pytest.raises(ValueError):
            DeerSpec((1, 0))  # even spine
        with pytest.raises(ValueError):
            DeerSpec((1, 0, 2))  # not palindromic
        with pytest.raises(ValueError):
            DeerSpec((-1,))

    def test_random_specs(self, rng):
        for _ in range(40):
            spine = rng.choice([1, 3, 5, 7])
            half = [rng.randint(0, 3) for _ in range(spine // 2)]
            counts = half + [rng.randint(0, 3)] + half[::-1]
            assert_certified(build_deer(counts))


class TestComplementOfOutputs:
    @pytest.mark.parametrize(
        "cert_fn",
        [
            lambda: build_two_lk11_lk1n(3),
            lambda: build_two_lk1m_lk1n(2, 3),
            lambda: build_odd_copies_lk1n(1, 2),
            lambda: build_mixed_loop_stars(2, 2, 1),
            lambda: build_deer([2, 1, 2]),
        ],
    )
    def test_complement_still_sem(self, cert_fn):
        cert = cert_fn()
        ok, _ = is_sem(cert.graph, complement(cert.labeling))
        assert ok


class TestPrimitives:
    def test_star_counts(self):
        g = star_with_loop(3)
        assert (g.order, g.size) == (4, 4)

    def test_cycle_counts(self):
        g = cycle_graph(5)
        assert (g.order, g.size) == (5, 5)

    def test_loop_counts(self):
        g = loop_graph()
        assert (g.order, g.size) == (1, 1)

    def test_caterpillar(self):
        g = caterpillar_graph([1, 0, 1])
        assert (g.order, g.size) == (5, 4)

    def test_dispatch(self):
        assert build_primitive("l") == loop_graph()
        assert build_primitive("lk1n", {"n": 3}) == star_with_loop(3)
        assert build_primitive("cycle", {"k": 4}) == cycle_graph(4)
        with pytest.raises(BadParam):
            build_primitive("nope")

    @pytest.mark.parametrize("k", [3, 5, 7, 9])
    def test_odd_cycle_labeling(self, k):
        lab = odd_cycle_labeling(k)
        ok, window = is_sem(cycle_graph(k), lab)
        assert ok and window.width == k

    def test_odd_cycle_rejects_even(self):
        with pytest.raises(BadParam):
            odd_cycle_labeling(4)


class TestConstructFamilyDispatch:
    def test_certified(self):
        cert = construct_family("2lk11-lk1n", {"n": 1})
        assert cert.labeling.labels == (3, 6, 5, 2, 4, 1)

    def test_deer_via_spec(self):
        cert = construct_family("deer", spec=[1, 0, 1])
        assert cert.graph.order == 5

    def test_primitive(self):
        assert construct_family("cycle", {"k": 3}) == cycle_graph(3)

    def test_missing_params(self):
        with pytest.raises(BadParam):
            construct_family("2lk1m-lk1n", {"m": 2})

    def test_unknown(self):
        with pytest.raises(BadParam):
            construct_family("wat")
