"""Finite-dimensional modules given by action matrices, and intertwiner spaces.

A module is a vector space ``Q^dim`` together with one matrix per generator
of the acting algebra.  Matrices act on column vectors.  For a right module
``v -> v.x`` is stored as the matrix of that map, so products compose in
reverse: ``R[xy] = R[y] @ R[x]``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Sequence

from .exactla import (ZERO, Coordinates, EchelonSpan, ExactMatrix, nullspace,
                      span_basis)


def intertwiners(src_actions: Sequence[ExactMatrix], dst_actions: Sequence[ExactMatrix],
                 src_dim: int, dst_dim: int) -> list[ExactMatrix]:
    """Basis of ``{F : F S_a = D_a F for every generator a}`` (F is dst x src)."""
    if len(src_actions) != len(dst_actions):
        raise ValueError("action lists have different lengths")
    n_unknowns = dst_dim * src_dim
    if n_unknowns == 0:
        return []
    rows = []
    for s, d in zip(src_actions, dst_actions):
        srows, drows = s.rows, d.rows
        for p in range(dst_dim):
            for q in range(src_dim):
                eq = [ZERO] * n_unknowns
                # (F S)[p][q] = sum_k F[p][k] S[k][q]
                for k in range(src_dim):
                    c = srows[k][q]
                    if c:
                        eq[p * src_dim + k] += c
                # (D F)[p][q] = sum_k D[p][k] F[k][q]
                drow = drows[p]
                for k in range(dst_dim):
                    c = drow[k]
                    if c:
                        eq[k * src_dim + q] -= c
                if any(eq):
                    rows.append(eq)
    if not rows:
        basis = [tuple(Fraction(int(i == j)) for j in range(n_unknowns)) for i in range(n_unknowns)]
    else:
        basis = nullspace(ExactMatrix(rows))
    return [ExactMatrix((v[p * src_dim:(p + 1) * src_dim] for p in range(dst_dim)), ncols=src_dim)
            for v in basis]


class Subquotient:
    """The space ``X / Y`` for subspaces ``Y <= X`` of ``Q^dim``.

    ``X`` and ``Y`` are given by spanning vectors; ``Y <= X`` is assumed.
    Projecting a vector outside ``X`` raises ``ValueError``.
    """

    def __init__(self, x_span: Sequence[Sequence], y_span: Sequence[Sequence], dim: int):
        self.ambient_dim = dim
        y_basis = span_basis(y_span, dim)
        span = EchelonSpan(dim)
        for v in y_basis:
            span.add(v)
        complement = [tuple(v) for v in x_span if span.add(v)]
        self.sub_basis = y_basis
        self.complement = complement
        self._coords = Coordinates(y_basis + complement, dim)
        self._k = len(y_basis)

    @property
    def dim(self) -> int:
        return len(self.complement)

    def project(self, v: Sequence) -> tuple:
        """Coordinates in ``X / Y`` of a vector of ``X``."""
        return self._coords.coords(v)[self._k:]

    def lift(self, coords: Sequence) -> tuple:
        out = [ZERO] * self.ambient_dim
        for c, b in zip(coords, self.complement):
            if c:
                for i, x in enumerate(b):
                    if x:
                        out[i] += c * x
        return tuple(out)

    def matrix_of(self, op: Callable[[tuple], Sequence]) -> ExactMatrix:
        """Matrix of the induced map for a linear ``op`` with ``op(X) <= X``, ``op(Y) <= Y``."""
        cols = [self.project(op(b)) for b in self.complement]
        return ExactMatrix.from_columns(cols, self.dim)


class LinearModule:
    """Vector space with generator actions (matrices on column vectors)."""

    def __init__(self, dim: int, actions: Sequence[ExactMatrix]):
        self.dim = dim
        self.actions = tuple(actions)
        for a in self.actions:
            if a.shape != (dim, dim):
                raise ValueError(f"action of shape {a.shape} on a module of dim {dim}")

    def hom_dim(self, other: "LinearModule") -> int:
        return len(intertwiners(self.actions, other.actions, self.dim, other.dim))

    def hom_basis(self, other: "LinearModule") -> list[ExactMatrix]:
        return intertwiners(self.actions, other.actions, self.dim, other.dim)


def subquotient_module(x_span, y_span, dim: int, ops: Sequence[Callable]) -> tuple[Subquotient, LinearModule]:
    sq = Subquotient(x_span, y_span, dim)
    return sq, LinearModule(sq.dim, [sq.matrix_of(op) for op in ops])
