import itertools
import random

import pytest

from packtriple.core import Graph, are_isomorphic, build_triple, degrees, is_packing, max_degrees
from packtriple.generators import (
    be_bad_pair,
    be_bad_pair_triple,
    bipartite_packing_encoding,
    coloring_from_packing,
    complete,
    complete_bipartite,
    cycle,
    family_triple,
    fig2d_packs,
    fixed_point_free_encoding,
    from_list_coloring,
    independent,
    kk_exception,
    matching,
    sharpness_family,
    star,
)
from packtriple.solver import backtrack_pack, brute_force_pack

SIZES = {1: 4, 2: 5, 3: 6, 4: 6, 5: 7, 6: 8, 7: 9}


def test_building_blocks():
    assert complete(4).num_edges == 6
    assert independent(3).num_edges == 0
    assert matching(3).degrees() == (1,) * 6
    assert star(3).degrees() == (3, 1, 1, 1)
    assert cycle(5).degrees() == (2,) * 5
    assert complete_bipartite(2, 3).num_edges == 6


@pytest.mark.parametrize("i", range(1, 8))
def test_bad_pairs_shape(i):
    g1, g2 = be_bad_pair(i)
    n = SIZES[i]
    assert g1.n == g2.n == n
    assert g1.num_edges + g2.num_edges == 2 * n - 3
    assert g1.max_degree <= n - 2 and g2.max_degree <= n - 2


def test_bad_pair_examples():
    g1, g2 = be_bad_pair(1)
    assert (g1.num_edges, g2.num_edges) == (2, 3)
    assert are_isomorphic(g2, Graph.from_edges(4, [(1, 2), (1, 3), (2, 3)]))
    g1, g2 = be_bad_pair(3)
    assert (g1.n, g1.num_edges, g2.num_edges) == (6, 3, 6)
    g1, g2 = be_bad_pair(7)
    assert (g1.n, g1.num_edges, g2.num_edges) == (9, 6, 9)


@pytest.mark.parametrize("i", [0, 8, -1])
def test_bad_pair_range(i):
    with pytest.raises(ValueError):
        be_bad_pair(i)


@pytest.mark.parametrize("i", range(1, 8))
def test_bad_pairs_do_not_pack(i):
    t = be_bad_pair_triple(i)
    assert t.e3 == 0
    assert brute_force_pack(t) is None


def test_fig2a():
    t = sharpness_family("FIG2A", 3)
    assert t.e3 == 3 and degrees(t).d3[0][0] == 3


def test_fig2c_edge_sum():
    t = sharpness_family("FIG2C", 4)
    assert (t.e1, t.e2, t.e3) == (1, 1, 4)


def test_fig2d_example_edge_sum():
    t = sharpness_family("FIG2D", 5, m=3, mp=2)
    assert (t.e1, t.e2, t.e3) == (2, 1, 5)


@pytest.mark.parametrize("tag, n, kw", [
    ("FIG2B", n, {}) for n in range(4, 8)
] + [
    ("FIG2C", n, {}) for n in range(4, 8)
] + [
    ("FIG2E", n, dict(k=k)) for n in range(4, 8) for k in range(3, n)
])
def test_sharpness_families_do_not_pack(tag, n, kw):
    t = sharpness_family(tag, n, **kw)
    d1, d2, d3 = max_degrees(t)
    assert t.edge_sum == 2 * n - 2
    assert d1 <= n - 2 and d2 <= n - 2 and d3 <= n - 1
    assert brute_force_pack(t) is None


@pytest.mark.parametrize("n", range(4, 8))
def test_fig2d_packing_characterisation(n):
    for m, mp in itertools.product(range(1, n), repeat=2):
        t = sharpness_family("FIG2D", n, m=m, mp=mp)
        assert t.edge_sum == 2 * n - 2
        assert (brute_force_pack(t) is not None) == fig2d_packs(n, m, mp), (n, m, mp)


def test_fig2b_needs_common_missed_vertex():
    # the variant where x1 and x2 miss different vertices packs
    n = 5
    t = build_triple(n, yellow=[(0, w) for w in range(n) if w != 3] + [(1, w) for w in range(n) if w != 4])
    assert brute_force_pack(t) is not None


@pytest.mark.parametrize("tag, n, kw", [
    ("FIG2A", 0, {}), ("FIG2B", 1, {}), ("FIG2C", 3, {}),
    ("FIG2D", 5, dict(m=5, mp=2)), ("FIG2D", 5, dict(m=0, mp=2)), ("FIG2D", 5, dict(m=2)),
    ("FIG2E", 5, dict(k=2)), ("FIG2E", 5, dict(k=5)), ("FIG2E", 5, {}), ("FIG9", 5, {}),
])
def test_sharpness_invalid_params(tag, n, kw):
    with pytest.raises(ValueError):
        sharpness_family(tag, n, **kw)


def test_kk_examples():
    t = kk_exception("bipartite", 6)
    d1, d2, d3 = max_degrees(t)
    assert d1 * d2 + d3 == 3
    assert are_isomorphic(t.g2, complete_bipartite(3, 3))
    t = kk_exception("clique", 6)
    assert are_isomorphic(t.g2, Graph.from_edges(6, itertools.combinations(range(4), 2)))
    with pytest.raises(ValueError):
        kk_exception("bipartite", 4)
    with pytest.raises(ValueError):
        kk_exception("clique", 5)
    with pytest.raises(ValueError):
        kk_exception("cycle", 6)


def test_list_coloring_examples():
    k2 = complete(2)
    t = from_list_coloring(k2, 2, [[], []])
    f = brute_force_pack(t)
    assert f is not None
    c = coloring_from_packing(f, k2, 2)
    assert c[0] != c[1]
    assert brute_force_pack(from_list_coloring(complete(3), 2, [[], [], []])) is None
    assert brute_force_pack(from_list_coloring(complete(1), 1, [[0]])) is None


def test_list_coloring_bad_input():
    with pytest.raises(ValueError):
        from_list_coloring(complete(2), 2, [[]])
    with pytest.raises(ValueError):
        from_list_coloring(complete(2), 2, [[2], []])
    with pytest.raises(ValueError):
        from_list_coloring(complete(4), 2, [[]] * 4, block=1)


def _colorable(g, k, lists):
    for colours in itertools.product(range(k), repeat=g.n):
        if any(colours[v] in lists[v] for v in range(g.n)):
            continue
        if all(colours[u] != colours[v] for u, v in g.edges()):
            return True
    return False


def test_list_coloring_round_trip_small():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(1, 4)
        k = rng.randint(1, 3)
        pairs = list(itertools.combinations(range(n), 2))
        g = Graph.from_edges(n, [p for p in pairs if rng.random() < 0.5])
        lists = [{c for c in range(k) if rng.random() < 0.3} for _ in range(n)]
        t = from_list_coloring(g, k, lists)
        f = backtrack_pack(t)
        assert (f is not None) == _colorable(g, k, lists)
        if f is not None:
            col = coloring_from_packing(f, g, k)
            assert all(col[v] not in lists[v] for v in range(n))
            assert all(col[u] != col[v] for u, v in g.edges())


def test_bipartite_encoding_examples():
    t = bipartite_packing_encoding(independent(2), [0], independent(2), [0])
    f = brute_force_pack(t)
    assert f is not None and f.perm == (0, 1)
    t = bipartite_packing_encoding(independent(3), [0, 1], independent(3), [0])
    assert brute_force_pack(t) is None
    e = Graph.from_edges(2, [(0, 1)])
    assert brute_force_pack(bipartite_packing_encoding(e, [0], e, [0])) is None
    with pytest.raises(ValueError):
        bipartite_packing_encoding(independent(2), [0], independent(3), [0])


def test_bipartite_encoding_packings_respect_sides():
    g1 = Graph.from_edges(5, [(0, 3), (1, 4)])
    g2 = Graph.from_edges(5, [(0, 2)])
    t = bipartite_packing_encoding(g1, [0, 1], g2, [0, 1])
    for perm in itertools.permutations(range(5)):
        if is_packing(t, perm):
            assert all((perm[u] < 2) == (u < 2) for u in range(5))


def test_fixed_point_free_examples():
    assert brute_force_pack(fixed_point_free_encoding(independent(2))).perm == (1, 0)
    assert brute_force_pack(fixed_point_free_encoding(complete(2))) is None
    f = brute_force_pack(fixed_point_free_encoding(independent(3)))
    assert f is not None and all(f[v] != v for v in range(3))


def test_family_dispatch():
    assert family_triple("be3") == be_bad_pair_triple(3)
    assert family_triple("KK_CLIQUE", n=8) == kk_exception("clique", 8)
    with pytest.raises(ValueError):
        family_triple("BE3", n=5)
    with pytest.raises(ValueError):
        family_triple("FIG2C")
