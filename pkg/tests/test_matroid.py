import math
import random
from itertools import combinations

import pytest

from gfmatroids import (
    GFMatrix,
    NoCircuitError,
    RepMatroid,
    TooLargeError,
    bases,
    circuit_of_dependent,
    clique,
    cosimple_certificate,
    dual,
    field_from_order,
    girth,
    graphic,
    has_minor,
    is_circuit,
    is_cosimple,
    is_isomorphic,
    matroid_from_gfm,
    matroid_to_gfm,
    minor,
    named_graph,
    projective_geometry,
    rank_table,
    random_matroid,
    simplify,
    subset_rank,
    uniform,
)
from gfmatroids.generators import Graph

from oracles import graph_girth_oracle, edge_connectivity_oracle

F2 = field_from_order(2)
F3 = field_from_order(3)
F5 = field_from_order(5)


def test_subset_rank_examples():
    mk4 = clique(4, F2)
    assert subset_rank(mk4, []) == 0
    assert subset_rank(mk4, mk4.labels) == 3  # spanning tree of K_4
    m = RepMatroid(F3, GFMatrix(F3, [[2], [0]]), ["a"])
    assert subset_rank(m, ["a"]) == 1


def test_subset_rank_unknown_label():
    mk4 = clique(4, F2)
    with pytest.raises(ValueError):
        subset_rank(mk4, ["nope"])


def test_girth_golden_values():
    assert girth(uniform(2, 4, F5)) == 3
    free = RepMatroid(F2, GFMatrix.identity(F2, 4), list("abcd"))
    assert girth(free) == math.inf
    pet = graphic(named_graph("petersen"), F2)
    g = named_graph("petersen")
    assert girth(pet) == graph_girth_oracle(g.n, g.edges) == 5


def test_girth_cutoff_and_guard():
    pet = graphic(named_graph("petersen"), F2)
    assert girth(pet, cutoff=4) is None
    assert girth(pet, cutoff=5) == 5
    wide = RepMatroid(F2, GFMatrix.zeros(F2, 1, 30), [f"z{i}" for i in range(30)])
    with pytest.raises(TooLargeError):
        girth(wide)
    assert girth(wide, cutoff=2) == 1


def test_dual_is_involution_on_rank_function():
    for i in range(12):
        m = random_matroid(min(2 + i % 4, 5), 6 + i % 5, field_from_order((2, 3, 4)[i % 3]), seed=300 + i)
        dd = dual(dual(m))
        assert dd.labels == m.labels
        assert rank_table(dd) == rank_table(m)


def test_dual_rank_complement():
    for i in range(10):
        m = random_matroid(2 + i % 3, 6 + i % 4, F3, seed=400 + i)
        assert m.rank + dual(m).rank == m.size


def test_dual_clique_girth_is_min_edge_cut():
    g = named_graph("k4")
    assert girth(dual(clique(4, F2))) == edge_connectivity_oracle(g.n, g.edges) == 3


def test_dual_u24_selfdual():
    u = uniform(2, 4, F5)
    assert is_isomorphic(dual(u), u)


def test_minor_contract_basis_element():
    mk4 = clique(4, F2)
    m = minor(mk4, contract=["0-1"])
    assert m.rank == 2
    assert m.size == 5


def test_minor_delete_keeps_rank():
    mk4 = clique(4, F2)
    m = minor(mk4, delete=["0-1"])
    assert m.rank == 3


def test_minor_contract_creates_parallel_pair():
    # contracting edge 0-1 of K_4 makes 0-2 parallel to 1-2 and 0-3 to 1-3
    mk4 = clique(4, F2)
    m = minor(mk4, contract=["0-1"])
    assert subset_rank(m, ["0-2", "1-2"]) == 1
    assert subset_rank(m, ["0-3", "1-3"]) == 1
    assert simplify(m).size == 3


def test_minor_dependent_contract_splits():
    # contracting a full triangle only contracts an independent part (2 edges)
    mk4 = clique(4, F2)
    m = minor(mk4, contract=["0-1", "0-2", "1-2"])
    assert m.rank == 1
    assert m.size == 3
    assert set(m.labels) == {"0-3", "1-3", "2-3"}


def test_minor_commutes_on_rank_functions():
    rng = random.Random(17)
    for i in range(10):
        m = random_matroid(3, 8, field_from_order((2, 3, 4, 5)[i % 4]), seed=500 + i)
        labels = list(m.labels)
        rng.shuffle(labels)
        dels, cons = set(labels[:2]), set(labels[2:4])
        a = minor(minor(m, delete=dels), contract=cons)
        b = minor(minor(m, contract=cons), delete=dels)
        assert a.labels == b.labels
        assert rank_table(a) == rank_table(b)


def test_minor_rejects_overlap():
    mk4 = clique(4, F2)
    with pytest.raises(ValueError):
        minor(mk4, delete=["0-1"], contract=["0-1"])


def test_simplify_examples():
    free = RepMatroid(F2, GFMatrix.identity(F2, 3), list("abc"))
    assert simplify(free).labels == free.labels
    m = RepMatroid(F3, GFMatrix(F3, [[1, 2], [0, 0]]), ["a", "b"])
    assert simplify(m).labels == ("a",)  # (2,0) = 2*(1,0)
    # all 7 nonzero GF(2)^3 vectors, with duplicates -> the 7 projective points
    vecs = [(x, y, z) for x in range(2) for y in range(2) for z in range(2) if (x, y, z) != (0, 0, 0)]
    cols = vecs + vecs[:3]
    m = RepMatroid(F2, GFMatrix.from_cols(F2, cols, 3), [f"v{i}" for i in range(len(cols))])
    s = simplify(m)
    assert s.size == 7
    assert is_isomorphic(s, projective_geometry(3, F2))


def test_simplify_idempotent_and_rank_preserving():
    for i in range(10):
        m = random_matroid(3, 9, field_from_order((2, 3, 5)[i % 3]), seed=600 + i)
        s = simplify(m)
        assert simplify(s).labels == s.labels
        assert s.rank == m.rank


def test_cosimple_examples():
    assert is_cosimple(clique(4, F2))
    path = graphic(Graph(4, ((0, 1), (1, 2), (2, 3))), F2)
    cert = cosimple_certificate(path)
    assert cert is not None and cert[0] == "coloop"
    assert is_cosimple(uniform(2, 4, F5))


def test_circuit_of_dependent_examples():
    u23 = uniform(2, 3, F3)
    assert circuit_of_dependent(u23, u23.labels) == frozenset(u23.labels)
    # a circuit plus a coloop-like extra: triangle + pendant edge
    g = Graph(4, ((0, 1), (1, 2), (0, 2), (2, 3)))
    m = graphic(g, F2)
    assert circuit_of_dependent(m, m.labels) == frozenset({"0-1", "1-2", "0-2"})
    mk4 = clique(4, F2)
    four_cycle = {"0-2", "0-3", "1-2", "1-3"}
    assert circuit_of_dependent(mk4, four_cycle) == frozenset(four_cycle)
    assert is_circuit(mk4, four_cycle)


def test_circuit_of_dependent_rejects_independent():
    mk4 = clique(4, F2)
    with pytest.raises(NoCircuitError):
        circuit_of_dependent(mk4, ["0-1", "0-2"])


def test_isomorphism_examples():
    assert is_isomorphic(clique(3, F2), uniform(2, 3, F3))
    assert not is_isomorphic(uniform(2, 4, F5), uniform(3, 4, F5))
    # M(K_4) has 3-circuits, U_{3,6} has none
    assert not is_isomorphic(clique(4, F2), uniform(3, 6, F5))


def test_isomorphism_guard():
    big = uniform(1, 13, F2)
    with pytest.raises(TooLargeError):
        is_isomorphic(big, big)


def test_has_minor_self_is_trivial_witness():
    for m in (clique(4, F2), uniform(2, 4, F5)):
        assert has_minor(m, m) == (frozenset(), frozenset())


def test_has_minor_goldens_small():
    assert has_minor(clique(4, F2), clique(3, F2)) is not None
    pg = projective_geometry(3, F2)
    assert has_minor(pg, clique(4, F2)) is not None
    assert has_minor(pg, uniform(2, 4, F5)) is None  # binary: no 4-point line


def test_has_minor_witness_is_sound():
    m = clique(4, F2)
    target = clique(3, F2)
    dels, cons = has_minor(m, target)
    assert is_isomorphic(minor(m, delete=dels, contract=cons), target)


def _minor_oracle(m, target):
    # independent route: contract by the rank formula r_{M/C}(S) = r_M(S+C) - r_M(C),
    # test isomorphism by brute-force permutation of rank functions
    from itertools import permutations

    tl = target.labels
    t_subsets = [S for size in range(len(tl) + 1) for S in combinations(tl, size)]
    t_ranks = {S: subset_rank(target, S) for S in t_subsets}
    for csize in range(m.size - target.size + 1):
        for cset in combinations(m.labels, csize):
            r_c = subset_rank(m, cset)
            rest_pool = [l for l in m.labels if l not in cset]
            dsize = m.size - target.size - csize
            if dsize < 0:
                continue
            for dset in combinations(rest_pool, dsize):
                rest = [l for l in rest_pool if l not in dset]
                for perm in permutations(rest):
                    mapping = dict(zip(tl, perm))
                    if all(
                        subset_rank(m, {mapping[x] for x in S} | set(cset)) - r_c == t_ranks[S]
                        for S in t_subsets
                    ):
                        return True
    return False


def test_has_minor_agrees_with_rank_formula_oracle():
    rng = random.Random(0)
    for trial in range(8):
        q = (2, 3)[trial % 2]
        f = field_from_order(q)
        m = random_matroid(rng.randint(2, 3), 6, f, seed=7000 + trial)
        t = random_matroid(rng.randint(1, 2), 3, f, seed=7100 + trial)
        assert (has_minor(m, t) is not None) == _minor_oracle(m, t)
        dels = set(rng.sample(m.labels, 2))
        cons = set(rng.sample([l for l in m.labels if l not in dels], 1))
        assert has_minor(m, minor(m, delete=dels, contract=cons)) is not None
    # a guaranteed absent case on the same oracle
    mk4_gf3 = clique(4, F3)
    u24 = uniform(2, 4, F5)
    assert has_minor(mk4_gf3, u24) is None
    assert not _minor_oracle(mk4_gf3, u24)


def test_girth_of_dual_equals_min_cocircuit_size():
    # cocircuit oracle: smallest S with rank(E \ S) < rank(M)
    for i in range(8):
        m = random_matroid(3, 7, field_from_order((2, 3)[i % 2]), seed=700 + i)
        d_girth = girth(dual(m))
        labels = list(m.labels)
        r = m.rank
        oracle = math.inf
        for s in range(1, len(labels) + 1):
            if any(subset_rank(m, set(labels) - set(c)) < r for c in combinations(labels, s)):
                oracle = s
                break
        assert d_girth == oracle


def test_bases_are_maximal_independent_sets():
    m = clique(4, F2)
    bs = bases(m)
    assert len(bs) == 16  # spanning trees of K_4
    for b in bs:
        assert subset_rank(m, b) == 3


def test_girth_matches_brute_force_min_dependent_size():
    from oracles import brute_independent

    for i in range(9):
        q = (2, 3, 4)[i % 3]
        f = field_from_order(q)
        m = random_matroid(3, 7, f, seed=6000 + i)
        cols = m.matrix.col_tuples()
        expected = math.inf
        for s in range(1, 8):
            if any(
                not brute_independent(q, f.add, f.mul, [cols[j] for j in c])
                for c in combinations(range(7), s)
            ):
                expected = s
                break
        assert girth(m) == expected


def test_dual_bases_are_complements():
    # independent characterization: bases of M* = complements of bases of M
    for i in range(12):
        q = (2, 3, 4, 8, 9)[i % 5]
        m = random_matroid(3, 7, field_from_order(q), seed=5000 + i)
        d = dual(m)
        mb = {frozenset(b) for b in bases(m)}
        db = {frozenset(b) for b in bases(d)}
        assert db == {frozenset(set(m.labels) - b) for b in mb}


def test_extension_field_ranks_match_brute_force():
    from oracles import brute_independent

    for q in (4, 8, 9):
        f = field_from_order(q)
        m = random_matroid(3, 6, f, seed=60 + q)
        cols = m.matrix.col_tuples()
        for size in range(1, 5):
            for combo in combinations(range(6), size):
                sel = [cols[j] for j in combo]
                expected = brute_independent(q, f.add, f.mul, sel)
                got = subset_rank(m, [m.labels[j] for j in combo]) == size
                assert expected == got


def test_gfm_roundtrip():
    m = uniform(2, 4, F5)
    text = matroid_to_gfm(m)
    back = matroid_from_gfm(text)
    assert back.labels == m.labels
    assert back.matrix == m.matrix


def test_rank_table_matches_subset_rank():
    m = random_matroid(3, 8, F3, seed=123)
    table = rank_table(m)
    labels = m.labels
    for mask in range(1 << m.size):
        subset = [labels[j] for j in range(m.size) if mask >> j & 1]
        assert table[mask] == subset_rank(m, subset)
