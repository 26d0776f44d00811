import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverforge.algebra import SemisimpleSpec, matrix_algebra, split_semisimple
from quiverforge.exactla import ExactMatrix
from quiverforge.modulation import (ALG_CLOSED_CHAR0, ConcreteBimodule, GroupData, GroupPair, GroupSpeciesSpec,
                                    PseudoModulation, SymbolicBimodule, bimodule_ranks, classify,
                                    concrete_modulation, coprime_split_check, cyclic_group_blocks, direct_sum,
                                    euler_phi, from_group_species, hom_dual_dims, is_free_bimodule,
                                    modulation_iso, multiplicity_table, pseudo_valued_quiver_of,
                                    regular_bimodule, standard_bimodule)

block_lists = st.lists(st.integers(1, 3), min_size=1, max_size=2)


@st.composite
def bimodule_data(draw):
    a, b = draw(block_lists), draw(block_lists)
    mult = [[draw(st.integers(0, 2)) for _ in b] for _ in a]
    return a, b, mult


def test_simple_m2_m3_bimodule_ranks():
    r = bimodule_ranks(standard_bimodule(matrix_algebra(2), matrix_algebra(3), [[1]]))
    # 2x3 matrices: two copies of the simple right M3-module, three of the simple left M2-module
    assert (r.d_ij, r.d_ji, r.t) == (1, 2, 1)
    assert not r.free


def test_m2_over_q_freeness():
    m2, q = matrix_algebra(2), matrix_algebra(1)
    assert not is_free_bimodule(standard_bimodule(m2, q, [[1]]))
    r = bimodule_ranks(standard_bimodule(m2, q, [[2]]))
    assert (r.d_ij, r.d_ji, r.free) == (4, 1, True)


def test_regular_bimodule_of_product():
    c2 = split_semisimple([1, 1])
    r = bimodule_ranks(regular_bimodule(c2, c2))
    assert (r.d_ij, r.d_ji, r.t, r.free) == (2, 2, 1, True)


@given(bimodule_data())
def test_multiplicities_recovered(data):
    a, b, mult = data
    A, B = split_semisimple(a), split_semisimple(b)
    m = standard_bimodule(A, B, mult)
    assert [list(r) for r in multiplicity_table(m)] == mult
    assert m.dim == sum(mult[i][j] * a[i] * b[j] for i in range(len(a)) for j in range(len(b)))


@given(bimodule_data(), st.data())
def test_ranks_under_direct_sums(data, more):
    a, b, mult = data
    A, B = split_semisimple(a), split_semisimple(b)
    other = [[more.draw(st.integers(0, 2)) for _ in b] for _ in a]
    x, y = standard_bimodule(A, B, mult), standard_bimodule(A, B, other)
    parts = [p for p in (x, y) if p.dim]
    if not parts:
        return
    s = bimodule_ranks(direct_sum(parts))
    total = [[mult[i][j] + other[i][j] for j in range(len(b))] for i in range(len(a))]
    assert [list(r) for r in s.multiplicities] == total
    rx, ry = bimodule_ranks(x), bimodule_ranks(y)
    # ranks are subadditive, and exactly additive on free summands
    assert s.d_ij <= rx.d_ij + ry.d_ij and s.d_ji <= rx.d_ji + ry.d_ji
    if rx.free and ry.free and x.dim and y.dim:
        assert s.free and s.t == rx.t + ry.t


small_blocks = st.lists(st.integers(1, 2), min_size=1, max_size=2)


@given(st.integers(1, 2), small_blocks, small_blocks)
def test_free_iff_multiple_of_regular(t, a, b):
    A, B = split_semisimple(a), split_semisimple(b)
    r = bimodule_ranks(regular_bimodule(A, B, t))
    assert r.free and r.t == t
    assert r.d_ij == t * A.dim and r.d_ji == t * B.dim


@settings(max_examples=15)
@given(bimodule_data())
def test_hom_duality_over_split_semisimple(data):
    a, b, mult = data
    h = hom_dual_dims(standard_bimodule(split_semisimple(a), split_semisimple(b), mult))
    assert h.iso and h.dim_hom_left == h.dim_hom_right


def test_hom_duality_known_dims():
    h = hom_dual_dims(standard_bimodule(split_semisimple([2]), split_semisimple([1, 3]), [[1, 2]]))
    assert (h.dim_hom_left, h.dim_hom_right, h.iso) == (14, 14, True)


def test_bimodule_axioms_checked():
    q = matrix_algebra(1)
    bad = ExactMatrix([[2]])
    with pytest.raises(ValueError):
        ConcreteBimodule(q, q, 1, [bad], [ExactMatrix([[1]])])


def test_symbolic_bimodule_validation():
    with pytest.raises(ValueError):
        SymbolicBimodule(1, 0)
    assert SymbolicBimodule(0, 0).is_zero()


def test_classify_concrete():
    a2 = concrete_modulation({1: [1], 2: [1]}, {(1, 2): [[1]]})
    c = classify(a2)
    assert c.flags() == {"pseudo": True, "pre": True, "generalized": True, "regular": True, "normal": True,
                         "seminormal": True, "valued-graph": True, "classical": True}
    assert c.one_sided_pairs == ((1, 2),)
    m23 = concrete_modulation({1: [2], 2: [3]}, {(1, 2): [[1]]})
    c = classify(m23)
    assert not c.pre and c.generalized and not c.regular and c.normal and not c.classical
    assert pseudo_valued_quiver_of(m23).edge_map() == {(1, 2): (1, 2)}
    semi = concrete_modulation({1: [1, 1], 2: [1]}, {(1, 2): [[1], [1]]})
    assert not classify(semi).normal and classify(semi).seminormal


def test_classify_symbolic_regimes():
    algs = {1: SemisimpleSpec(((1, 2),)), 2: SemisimpleSpec(((1, 1),))}
    plain = PseudoModulation((1, 2), algs, {(1, 2): SymbolicBimodule(2, 1, True)})
    c = classify(plain)
    assert not c.generalized and c.generalized_source == "undetermined" and c.notes
    ruled = PseudoModulation((1, 2), algs, {(1, 2): SymbolicBimodule(2, 1, True)}, regime=ALG_CLOSED_CHAR0)
    assert classify(ruled).generalized and classify(ruled).generalized_source == "rule"
    declared = PseudoModulation((1, 2), algs, {(1, 2): SymbolicBimodule(2, 1, True, dual=True)})
    c = classify(declared)
    assert c.generalized_source == "declared" and c.classical and c.valued_graph


def test_euler_phi_and_cyclic_blocks():
    assert [euler_phi(n) for n in range(1, 11)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4]
    assert cyclic_group_blocks(4) == ((1, 1), (1, 1), (1, 2))
    for n in range(1, 13):
        assert sum(e for _, e in cyclic_group_blocks(n)) == n
    assert GroupData.cyclic(3).blocks == ((1, 1), (1, 2))
    assert not GroupData.cyclic(3).split
    with pytest.raises(ValueError):
        GroupData(5, ((1, 1),))


def test_group_species_ingestion():
    spec = GroupSpeciesSpec((1, 2), {1: GroupData.cyclic(2), 2: GroupData.cyclic(3)},
                            {(1, 2): GroupPair("regular", t=1)})
    m = from_group_species(spec)
    assert m.ranks(1, 2) == (2, 3)
    assert classify(m).valued_graph
    with pytest.raises(ValueError, match="split"):
        from_group_species(GroupSpeciesSpec((1, 2), {1: GroupData.cyclic(2), 2: GroupData.cyclic(3)},
                                            {(1, 2): GroupPair("multiplicities", multiplicities=((1, 0),))}))
    split = from_group_species(GroupSpeciesSpec((1, 2), {1: GroupData.cyclic(2), 2: GroupData.cyclic(2)},
                                                {(1, 2): GroupPair("multiplicities",
                                                                   multiplicities=((1, 0), (0, 1)))}))
    assert split.ranks(1, 2) == (1, 1)


def test_coprime_split_predicate():
    assert coprime_split_check(SemisimpleSpec(((1, 4), (1, 9))))
    assert not coprime_split_check(SemisimpleSpec(((1, 4), (1, 16))))
    assert not coprime_split_check(SemisimpleSpec(((1, 2),)))


def _random_modulation(rng, n):
    blocks = {v: [rng.randint(1, 2) for _ in range(rng.randint(1, 2))] for v in range(1, n + 1)}
    mults = {}
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if rng.random() < 0.6:
                mults[(i, j)] = [[rng.randint(0, 2) for _ in blocks[j]] for _ in blocks[i]]
    return blocks, mults


@given(st.integers(0, 10**6))
def test_modulation_iso_finds_relabelings(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 3)
    blocks, mults = _random_modulation(rng, n)
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    p = {v: perm[v - 1] for v in blocks}
    # relabel vertices and also reverse the block order at every vertex
    b2 = {p[v]: list(reversed(b)) for v, b in blocks.items()}
    m2 = {(p[i], p[j]): [list(reversed(r)) for r in reversed(m)] for (i, j), m in mults.items()}
    m_a = concrete_modulation(blocks, mults)
    m_b = concrete_modulation(dict(sorted(b2.items())), m2)
    theta = modulation_iso(m_a, m_b)
    assert theta is not None


def test_modulation_iso_detects_difference():
    a = concrete_modulation({1: [1, 1], 2: [1]}, {(1, 2): [[1], [0]]})
    b = concrete_modulation({1: [1, 1], 2: [1]}, {(1, 2): [[1], [1]]})
    assert modulation_iso(a, b) is None
    a2 = concrete_modulation({1: [2], 2: [3]}, {(1, 2): [[1]]})
    assert modulation_iso(a2, a2) == {1: 1, 2: 2}
