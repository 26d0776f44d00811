from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from quiverforge.exactla import (Coordinates, EchelonSpan, ExactMatrix, extend_basis, format_scalar,
                                 matrix_power_count, nullspace, rank, rref, scalar, solve, span_basis,
                                 span_dim)

small = st.integers(-4, 4)


@st.composite
def matrices(draw, max_side=5):
    r = draw(st.integers(1, max_side))
    c = draw(st.integers(1, max_side))
    rows = draw(st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))
    return ExactMatrix(rows)


def test_scalar_parsing():
    assert scalar("3/6") == Fraction(1, 2)
    assert scalar(2) == 2
    assert format_scalar(Fraction(-3, 4)) == "-3/4"
    assert format_scalar(Fraction(5)) == "5"
    with pytest.raises((TypeError, ValueError)):
        scalar(0.5)


def test_matrix_is_immutable_and_shapes_checked():
    m = ExactMatrix([[1, 2], [3, 4]])
    with pytest.raises(AttributeError):
        m.rows = ()
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3]])
    assert (m @ ExactMatrix.identity(2)) == m
    assert m.T.rows == ((1, 3), (2, 4))


def test_rref_known_case():
    r, rk, piv = rref(ExactMatrix([[1, 2, 3], [2, 4, 6], [1, 0, 1]]))
    assert rk == 2 and piv == [0, 1]
    assert r.rows[0] == (1, 0, 1) and r.rows[1] == (0, 1, 1)


def test_solve_and_inconsistent():
    m = ExactMatrix([[1, 1], [1, -1]])
    assert solve(m, (2, 0)) == (1, 1)
    assert solve(ExactMatrix([[1, 1], [1, 1]]), (1, 2)) is None


@given(matrices())
def test_rref_matches_sympy(m):
    ours, rk, piv = rref(m)
    theirs, spiv = sympy.Matrix(m.rows).rref()
    assert rk == len(spiv)
    assert tuple(piv) == tuple(spiv)
    assert [list(r) for r in ours.rows] == [[Fraction(int(x.p), int(x.q)) for x in theirs.row(i)]
                                            for i in range(theirs.rows)]


@given(matrices())
def test_rank_nullity_against_sympy(m):
    assert rank(m) == sympy.Matrix(m.rows).rank()
    ns = nullspace(m)
    assert len(ns) == m.ncols - rank(m)
    for v in ns:
        assert all(x == 0 for x in (m @ ExactMatrix([[x] for x in v])).column(0))


@given(st.lists(st.lists(small, min_size=4, max_size=4), max_size=6))
def test_span_tools_agree(vectors):
    basis = span_basis(vectors, 4)
    assert len(basis) == span_dim(vectors, 4)
    es = EchelonSpan(4)
    for v in vectors:
        es.add(v)
    assert len(es) == len(basis)
    for v in vectors:
        assert es.contains(v)
    if basis:
        co = Coordinates(basis, 4)
        for v in vectors:
            c = co.coords(v)
            back = [sum(c[k] * basis[k][i] for k in range(len(basis))) for i in range(4)]
            assert back == [Fraction(x) for x in v]


def test_extend_basis_fills_ambient():
    e = [tuple(Fraction(int(i == j)) for j in range(3)) for i in range(3)]
    ext = extend_basis([(1, 1, 0)], e, 3)
    assert span_dim([(1, 1, 0)] + ext, 3) == 3


def test_matrix_power_count():
    adj = [[0, 2], [0, 0]]
    assert matrix_power_count(adj, 1) == [[0, 2], [0, 0]]
    assert matrix_power_count(adj, 2) == [[0, 0], [0, 0]]
