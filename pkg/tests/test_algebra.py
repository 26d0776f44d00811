import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quiverforge.algebra import (BoundQuiverPresentation, NotAdmissibleError, StructureConstAlgebra, blow_up,
                                 check_algebra_map, check_trace_lemma, matrix_algebra, radical_filtration,
                                 radical_traceform, realize_bound_quiver, regular_trace, split_semisimple,
                                 truncated_path_algebra, verify_admissible)
from quiverforge.exactla import span_basis, span_dim
from quiverforge.quiver import Arrow, Quiver
from conftest import ALGEBRA_KINDS, corpus_algebra, corpus_entries

# paths of length < s modulo the relations, counted by hand
EXPECTED_DIMS = {
    "a2": 3, "a3": 6, "a3_rel": 5, "kronecker": 4, "one_loop": 2, "two_loop": 3,
    "loop_arrow": 5, "commutative_square": 9,
}


def _random_element(alg, rng):
    return tuple(Fraction(rng.randint(-3, 3)) for _ in range(alg.dim))


@pytest.mark.parametrize("name", sorted(EXPECTED_DIMS))
def test_bound_quiver_dimensions(name):
    assert corpus_algebra(name).dim == EXPECTED_DIMS[name]


@pytest.mark.parametrize("name", corpus_entries(*ALGEBRA_KINDS))
def test_corpus_algebras_satisfy_axioms(name):
    corpus_algebra(name).carrier.check_axioms()


def _blowup_dim_oracle(base, mult):
    # sum over vertex pairs of n_i n_j dim(e_i A e_j), measured through multiplication
    c = base.carrier
    verts = base.presentation.quiver.vertices
    idem = {v: b.primitive_idempotent for v, b in zip(verts, base.blocks)}
    total = 0
    for i in verts:
        for j in verts:
            cut = [c.mul(c.mul(idem[i], c.basis_vector(k)), idem[j]) for k in range(c.dim)]
            total += mult[i] * mult[j] * span_dim(cut, c.dim)
    return total


@given(st.sampled_from(["a2", "kronecker", "a3_rel", "loop_arrow", "one_loop"]), st.data())
def test_blowup_dimension_formula(name, data):
    base = corpus_algebra(name)
    verts = base.presentation.quiver.vertices
    mult = {v: data.draw(st.integers(1, 3)) for v in verts}
    b = blow_up(base, mult)
    assert b.dim == _blowup_dim_oracle(base, mult)
    b.carrier.check_axioms()


@given(st.sampled_from(["a3", "commutative_square", "blowup_a2_2_3", "blowup_kronecker_1_2", "loop_arrow"]),
       st.integers(0, 10**6))
def test_associativity_and_trace_symmetry(name, seed):
    a = corpus_algebra(name).carrier
    rng = random.Random(seed)
    x, y, z = (_random_element(a, rng) for _ in range(3))
    assert a.mul(a.mul(x, y), z) == a.mul(x, a.mul(y, z))
    assert regular_trace(a, a.mul(x, y)) == regular_trace(a, a.mul(y, x))


@pytest.mark.parametrize("name", sorted(EXPECTED_DIMS))
def test_traceform_radical_is_arrow_ideal(name):
    a = corpus_algebra(name)
    assert span_basis(radical_traceform(a.carrier), a.dim) == span_basis(a.radical, a.dim)


def test_nilpotency_and_radical_square():
    f = radical_filtration(corpus_algebra("a3"))
    assert f.nilpotency == 3
    assert len(f.radical) == 3 and len(f.radical_square) == 1
    assert radical_filtration(corpus_algebra("a3_rel")).nilpotency == 2
    assert radical_filtration(matrix_algebra(2)).nilpotency == 1


def test_loop_without_relations_is_refused():
    q = Quiver((1,), (Arrow("x", 1, 1),))
    with pytest.raises(NotAdmissibleError, match="not admissible"):
        realize_bound_quiver(BoundQuiverPresentation(q, (), 3))
    rep = verify_admissible(BoundQuiverPresentation(q, (), 3))
    assert not rep.ok and rep.unreduced_paths == ["x*x*x"]


def test_relation_outside_j2_is_reported():
    q = Quiver((1, 2), (Arrow("a", 1, 2), Arrow("b", 1, 2)))
    p = BoundQuiverPresentation(q, (((1, ("a",)), (-1, ("b",))),), 2)
    assert not verify_admissible(p).relations_in_j2


def test_relation_must_be_parallel():
    q = Quiver((1, 2, 3), (Arrow("a", 1, 2), Arrow("b", 2, 3)))
    with pytest.raises(ValueError, match="non-parallel"):
        BoundQuiverPresentation(q, (((1, ("a",)), (1, ("b",))),), 2)


def test_commutativity_relation_identifies_paths():
    a = corpus_algebra("commutative_square")
    labels = a.carrier.labels
    assert ("a*b" in labels) != ("c*d" in labels)


def test_truncated_path_algebra_of_loop():
    q = Quiver((1,), (Arrow("x", 1, 1), Arrow("y", 1, 1)))
    assert truncated_path_algebra(q, 2).dim == 7


def test_matrix_algebra_and_maps():
    m = matrix_algebra(2)
    assert m.dim == 4 and m.blocks == (2,)
    m.check_axioms()
    e11 = m.basis_vector(m.matrix_units[0][0][0])
    assert regular_trace(m, e11) == 2
    assert len(m.center()) == 1
    assert len(split_semisimple([1, 1]).center()) == 2
    # the swap of the two factors of Q x Q is an algebra automorphism
    qq = split_semisimple([1, 1])
    assert check_algebra_map(qq, qq, [qq.basis_vector(1), qq.basis_vector(0)])
    assert not check_algebra_map(qq, qq, [qq.basis_vector(0), qq.basis_vector(0)])


def test_bad_table_rejected():
    table = [[((0, 1),), ()], [(), ((0, 1),)]]
    with pytest.raises(ValueError):
        StructureConstAlgebra(["a", "b"], table, (1, 0))


@pytest.mark.parametrize("n", [2, 3])
def test_trace_lemma(n):
    rep = check_trace_lemma(n, 50, seed=n)
    assert rep.ok and rep.passed == 50
    assert rep.trace_of_e11 == n
