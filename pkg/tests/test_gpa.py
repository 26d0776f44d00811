import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quiverforge.algebra import check_algebra_map, matrix_algebra, split_semisimple
from quiverforge.exactla import ExactMatrix
from quiverforge.gpa import (GPAlgebra, differential_check, dimension_match_check, gpa_build,
                             gpa_from_premodulation, gpa_iso_check, gpa_structure_algebra, induced_valued_quiver,
                             is_normal, loop_eliminate, loop_elimination_iso_check, premodulation_of,
                             tensor_algebra_of_modulation)
from quiverforge.modulation import classify, concrete_modulation, modulation_iso, pseudo_valued_quiver_of
from quiverforge.quiver import Arrow, Quiver
from strategies import acyclic_quivers

A2 = Quiver((1, 2), (Arrow("a", 1, 2),))
KRONECKER = Quiver((1, 2), (Arrow("a", 1, 2), Arrow("b", 1, 2)))


@st.composite
def gpas(draw, max_vertices=3, max_arrows=3):
    q = draw(acyclic_quivers(max_vertices, max_arrows))
    algs = {v: split_semisimple(draw(st.lists(st.integers(1, 2), min_size=1, max_size=2))) for v in q.vertices}
    return gpa_build(q, algs)


def _graded_oracle(g):
    # 1^T D (C D)^n 1 with C the arrow counts and D the vertex algebra dims
    c = g.quiver.count_matrix()
    d = [g.algebras[v].dim for v in g.quiver.vertices]
    n = len(d)
    row = list(d)
    out = [sum(row)]
    for _ in range(g.degree_bound):
        row = [sum(row[i] * c[i][j] for i in range(n)) * d[j] for j in range(n)]
        out.append(sum(row))
    return out


def _random_element(g, rng):
    return g.element({k: Fraction(rng.randint(-2, 2)) for k in range(g.dim) if rng.random() < 0.5})


def test_path_algebra_of_a2():
    g = gpa_build(A2)
    assert g.dim == 3
    e1, e2, a = g.vertex_element(1), g.vertex_element(2), g.arrow_element("a")
    assert e1 * a == a and a * e2 == a
    assert (a * e1).is_zero() and (e2 * a).is_zero()
    assert e1 + e2 == g.one()


def test_m2_at_source():
    g = gpa_build(A2, {1: matrix_algebra(2)})
    assert g.graded_dims() == [5, 4]
    assert induced_valued_quiver(g).quiver.edge_map() == {(1, 2): (4, 1)}
    x = g.parse("(E12) a (2)")
    assert g.parse("(E11)") * x == x
    assert (g.parse("(E22)") * x).is_zero()
    assert g.parse("(E21)") * x == g.parse("(E22) a")


def test_cyclic_quiver_needs_bound():
    loop = Quiver((1,), (Arrow("x", 1, 1),))
    with pytest.raises(ValueError, match="cyclic quiver needs a truncation degree"):
        gpa_build(loop)
    g = gpa_build(loop, degree_bound=2)
    x = g.arrow_element("x")
    assert not (x * x).truncated and (x * x * x).is_zero() and (x * x * x).truncated


def test_weight_bound_truncates():
    g = gpa_build(Quiver((1,), (Arrow("x", 1, 1),)), degree_bound=5, weight_bound=2)
    assert g.graded_dims() == [1, 1, 1, 0, 0, 0]


def test_parse_errors_carry_columns():
    g = gpa_build(A2, {1: matrix_algebra(2)})
    with pytest.raises(ValueError, match="unknown arrow 'z' at column 1"):
        g.parse("z")
    with pytest.raises(ValueError, match="column"):
        g.parse("(E12) a ) (")
    with pytest.raises(ValueError, match="unknown basis element"):
        g.parse("(E33)")


@given(gpas())
def test_graded_dimension_formula(g):
    assert g.graded_dims() == _graded_oracle(g)


@given(gpas(), st.integers(0, 10**6))
def test_multiplication_is_associative_and_unital(g, seed):
    rng = random.Random(seed)
    x, y, z = (_random_element(g, rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert g.one() * x == x and x * g.one() == x


@given(gpas(), st.integers(0, 10**6))
def test_literal_round_trip(g, seed):
    x = _random_element(g, random.Random(seed))
    assert g.parse(str(x)) == x


@given(gpas())
def test_induced_valuation_identity(g):
    vq = induced_valued_quiver(g)
    for e in vq.edges:
        assert e.d_st * g.algebras[e.target].dim == e.d_ts * g.algebras[e.source].dim


@settings(max_examples=15)
@given(gpas(max_vertices=3, max_arrows=2))
def test_tensor_algebra_matches_gpa(g):
    t = tensor_algebra_of_modulation(premodulation_of(g), g.degree_bound)
    assert t.graded_dims() == g.graded_dims()


def test_tensor_algebra_dims():
    m = concrete_modulation({1: [2], 2: [1]}, {(1, 2): [[2]]})
    assert tensor_algebra_of_modulation(m, 1).graded_dims() == [5, 4]
    a3 = concrete_modulation({1: [1], 2: [1], 3: [1]}, {(1, 2): [[1]], (2, 3): [[2]]})
    assert tensor_algebra_of_modulation(a3, 2).graded_dims() == [3, 3, 2]


@settings(max_examples=15)
@given(gpas(max_vertices=3, max_arrows=2))
def test_premodulation_round_trip(g):
    m = premodulation_of(g)
    assert classify(m).pre
    g2 = gpa_from_premodulation(m)
    assert g2.dim == g.dim
    assert modulation_iso(m, premodulation_of(g2)) is not None


def test_counterexample_pair():
    one = gpa_build(Quiver((1,)), {1: split_semisimple([1, 1])}, name="Q x Q")
    two = gpa_build(Quiver((1, 2)))
    assert one.dim == two.dim == 2
    s1, s2 = gpa_structure_algebra(one), gpa_structure_algebra(two)
    assert check_algebra_map(s1, s2, [s2.basis_vector(0), s2.basis_vector(1)])
    assert modulation_iso(premodulation_of(one), premodulation_of(two)) is None
    assert not is_normal(one) and is_normal(two)
    with pytest.raises(ValueError, match="theorem hypotheses not met; refusing"):
        gpa_iso_check(one, two)


def test_iso_check_refuses_cycles():
    loop = gpa_build(Quiver((1,), (Arrow("x", 1, 1),)), degree_bound=2)
    with pytest.raises(ValueError, match="theorem hypotheses not met; refusing"):
        gpa_iso_check(loop, loop)


def test_iso_check_on_normal_pair():
    g1 = gpa_build(KRONECKER, {1: matrix_algebra(2)})
    g2 = gpa_build(Quiver(("x", "y"), (Arrow("p", "x", "y"), Arrow("q", "x", "y"))), {"x": matrix_algebra(2)})
    assert gpa_iso_check(g1, g2) == {1: "x", 2: "y"}
    g3 = gpa_build(KRONECKER, {2: matrix_algebra(2)})
    assert gpa_iso_check(g1, g3) is None


@pytest.mark.parametrize("arrows", [
    (("x", 1, 1),),
    (("x", 1, 1), ("y", 1, 1)),
    (("x", 1, 1), ("a", 1, 2)),
])
@pytest.mark.parametrize("L", [1, 2, 3, 4])
def test_loop_elimination(arrows, L):
    verts = tuple(sorted({v for _, s, t in arrows for v in (s, t)}))
    q = Quiver(verts, tuple(Arrow(*a) for a in arrows))
    assert dimension_match_check(q, L)
    assert loop_elimination_iso_check(q, L)


def test_loop_elimination_flags_zero_valuation():
    q = Quiver((1, 2), (Arrow("x", 1, 1), Arrow("a", 1, 2)))
    le = loop_eliminate(q, 3)
    assert le.loop_count_valuation[(1, 2)] == (1, 0)
    assert le.rank_valuation[(1, 2)] == (4, 1)
    assert len(le.anomalies) == 1 and "zero entry" in le.anomalies[0]
    assert [a.name for a in le.quiver.arrows] == ["a"]


def _unit_index(g, v):
    return next(iter(g.vertex_element(v).terms))


def _a2_differential(g):
    # d(e1) = a, d(e2) = -a, d(a) = 0
    return {_unit_index(g, 1): g.parse("a"), _unit_index(g, 2): g.parse("-1 * a")}


def test_differential_checks():
    g = gpa_build(A2)
    assert differential_check(g, {}).ok
    assert differential_check(g, ExactMatrix.zeros(g.dim, g.dim)).ok
    delta = _a2_differential(g)
    rep = differential_check(g, delta)
    assert rep.ok and rep.checked_pairs > 0
    e1 = _unit_index(g, 1)
    bad = dict(delta)
    bad[e1] = g.parse("a") + g.vertex_element(1)
    rep = differential_check(g, bad)
    assert not rep.grading.ok
    assert "(1)" in rep.grading.first_violation and "degree 0" in rep.grading.first_violation


def test_differential_leibniz_violation_is_located():
    g = gpa_build(A2)
    e1 = _unit_index(g, 1)
    rep = differential_check(g, {e1: g.parse("a")})
    assert rep.grading.ok and not rep.leibniz.ok
    assert rep.leibniz.first_violation.startswith("a = ")


def test_gpa_requires_all_vertex_algebras():
    with pytest.raises(ValueError, match="no vertex algebra"):
        GPAlgebra(A2, {1: matrix_algebra(1)})


def test_premodulation_pseudo_valued_quiver_matches_induced():
    g = gpa_build(KRONECKER, {1: matrix_algebra(2), 2: matrix_algebra(3)})
    assert pseudo_valued_quiver_of(premodulation_of(g)).edge_map() == induced_valued_quiver(g).quiver.edge_map()
