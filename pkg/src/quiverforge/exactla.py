"""Exact dense linear algebra over the rationals.

Everything here works on :class:`fractions.Fraction` entries.  Matrices are
immutable row-major tuples; the elimination routines copy into scratch lists.
Vectors are plain tuples of Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def scalar(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_scalar(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class ExactMatrix:
    """Dense matrix of Fractions with value semantics."""

    __slots__ = ("rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(scalar(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise ValueError("ragged matrix rows")
        else:
            width = 0 if ncols is None else ncols
        if ncols is not None and data and ncols != width:
            raise ValueError("declared column count does not match data")
        object.__setattr__(self, "rows", data)
        object.__setattr__(self, "nrows", len(data))
        object.__setattr__(self, "ncols", width)

    def __setattr__(self, name, value):
        raise AttributeError("ExactMatrix is immutable")

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "ExactMatrix":
        return cls(((ZERO,) * ncols for _ in range(nrows)), ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "ExactMatrix":
        if not columns:
            return cls.zeros(nrows, 0)
        return cls(zip(*columns), ncols=len(columns)) if nrows else cls.zeros(0, len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(x) for x in r) for r in self.rows)
        return f"ExactMatrix({self.nrows}x{self.ncols}: [{body}])"

    def transpose(self) -> "ExactMatrix":
        if self.nrows == 0:
            return ExactMatrix.zeros(self.ncols, 0)
        return ExactMatrix(zip(*self.rows), ncols=self.nrows)

    T = property(transpose)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    def __matmul__(self, other):
        if isinstance(other, ExactMatrix):
            if self.ncols != other.nrows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            cols = other.columns()
            return ExactMatrix(
                (tuple(_dot(r, c) for c in cols) for r in self.rows), ncols=other.ncols
            )
        vec = tuple(other)
        if len(vec) != self.ncols:
            raise ValueError(f"shape mismatch {self.shape} @ vector[{len(vec)}]")
        return tuple(_dot(r, vec) for r in self.rows)

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return ExactMatrix(
            (tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)),
            ncols=self.ncols,
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self + other.scale(-1)

    def scale(self, c) -> "ExactMatrix":
        c = scalar(c)
        return ExactMatrix((tuple(c * x for x in r) for r in self.rows), ncols=self.ncols)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.rows for x in r)


def _dot(u, v) -> Fraction:
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def as_matrix(m) -> ExactMatrix:
    return m if isinstance(m, ExactMatrix) else ExactMatrix(m)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> list[int]:
    """In-place Gauss-Jordan on a list of row lists; returns pivot columns."""
    pivots = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        prow = rows[r]
        inv = 1 / prow[c]
        if inv != 1:
            prow[:] = [x * inv for x in prow]
        nz = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i != r:
                f = rows[i][c]
                if f:
                    row = rows[i]
                    for k in nz:
                        row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return pivots


def rref(m) -> tuple[ExactMatrix, int, list[int]]:
    """Reduced row-echelon form, rank and pivot columns."""
    m = as_matrix(m)
    rows = [list(r) for r in m.rows]
    pivots = _rref_rows(rows, m.ncols)
    return ExactMatrix(rows, ncols=m.ncols), len(pivots), pivots


def rank(m) -> int:
    return rref(m)[1]


def nullspace(m) -> list[Vector]:
    """Basis of ``{x : m x = 0}``, one vector per free column."""
    m = as_matrix(m)
    red, _, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(m.ncols):
        if free in pivset:
            continue
        x = [ZERO] * m.ncols
        x[free] = ONE
        for row_idx, pc in enumerate(pivots):
            x[pc] = -red.rows[row_idx][free]
        basis.append(tuple(x))
    return basis


def solve(m, rhs) -> Vector | None:
    """Some ``x`` with ``m x = rhs``, or ``None`` when the system is inconsistent.

    Free variables are set to zero.  A right-hand side of the wrong length
    raises ``ValueError``.
    """
    m = as_matrix(m)
    rhs = tuple(scalar(b) for b in rhs)
    if len(rhs) != m.nrows:
        raise ValueError(f"rhs has length {len(rhs)}, expected {m.nrows}")
    rows = [list(r) + [b] for r, b in zip(m.rows, rhs)]
    pivots = _rref_rows(rows, m.ncols + 1)
    if pivots and pivots[-1] == m.ncols:
        return None
    x = [ZERO] * m.ncols
    for row_idx, pc in enumerate(pivots):
        x[pc] = rows[row_idx][m.ncols]
    return tuple(x)


# -- subspace helpers -------------------------------------------------------


def span_basis(vectors: Iterable[Sequence], dim: int) -> list[Vector]:
    """Reduced echelon basis of the span of ``vectors`` in ``Q^dim``."""
    rows = [list(map(scalar, v)) for v in vectors]
    rows = [r for r in rows if any(r)]
    if not rows:
        return []
    pivots = _rref_rows(rows, dim)
    return [tuple(rows[i]) for i in range(len(pivots))]


def span_dim(vectors: Iterable[Sequence], dim: int) -> int:
    return len(span_basis(vectors, dim))


class Coordinates:
    """Coordinates with respect to a fixed linearly independent family.

    ``coords(v)`` returns the coefficient tuple of ``v`` in the basis, or raises
    ``ValueError`` if ``v`` is outside the span.
    """

    def __init__(self, basis: Sequence[Sequence], dim: int):
        self.basis = [tuple(map(scalar, b)) for b in basis]
        self.dim = dim
        k = len(self.basis)
        # rref of the augmented system [B^T | I] picks a pivot row set and
        # gives a left inverse of the basis matrix restricted to those rows.
        rows = [list(b) + [ONE if i == j else ZERO for j in range(k)]
                for i, b in enumerate(self.basis)]
        pivots = _rref_rows(rows, dim)
        if len(pivots) != k:
            raise ValueError("basis vectors are linearly dependent")
        self._pivots = pivots
        self._inv = [row[dim:] for row in rows[:k]]

    def __len__(self):
        return len(self.basis)

    def coords(self, v: Sequence, check: bool = True) -> Vector:
        k = len(self.basis)
        if k == 0:
            if check and any(v):
                raise ValueError("vector not in span")
            return ()
        vp = [scalar(v[p]) for p in self._pivots]
        coeffs = self._solve_transposed(vp)
        if check:
            recon = [ZERO] * self.dim
            for a, b in zip(coeffs, self.basis):
                if a:
                    for i, x in enumerate(b):
                        if x:
                            recon[i] += a * x
            if any(recon[i] != scalar(v[i]) for i in range(self.dim)):
                raise ValueError("vector not in span")
        return tuple(coeffs)

    def _solve_transposed(self, vp):
        # Rows of the reduced augmented matrix satisfy R = E [B | I]; with R's
        # pivot block the identity we have E B[:, pivots] = I, so E = B_p^{-1}
        # acting on the left of B.  Coefficients c solve c B = v, i.e.
        # c B_p = v_p, hence c = v_p E.
        k = len(self.basis)
        out = [ZERO] * k
        for t in range(k):
            if vp[t]:
                row = self._inv[t]
                for r in range(k):
                    if row[r]:
                        out[r] += vp[t] * row[r]
        return out

    def contains(self, v: Sequence) -> bool:
        try:
            self.coords(v)
        except ValueError:
            return False
        return True


class EchelonSpan:
    """Incrementally grown subspace kept as pivot-normalised rows.

    ``add(v)`` returns True when ``v`` enlarges the span.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: list[tuple[int, list[Fraction]]] = []

    def __len__(self):
        return len(self._rows)

    def reduce(self, v: Sequence) -> list[Fraction]:
        w = [scalar(x) for x in v]
        for piv, row in self._rows:
            f = w[piv]
            if f:
                for k, x in enumerate(row):
                    if x:
                        w[k] -= f * x
        return w

    def add(self, v: Sequence) -> bool:
        w = self.reduce(v)
        piv = next((k for k, x in enumerate(w) if x), None)
        if piv is None:
            return False
        inv = 1 / w[piv]
        w = [x * inv for x in w]
        self._rows.append((piv, w))
        return True

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))


def extend_basis(sub: Sequence[Sequence], ambient: Sequence[Sequence], dim: int) -> list[Vector]:
    """Vectors from ``ambient`` that complete ``sub`` to a basis of span(sub + ambient)."""
    span = EchelonSpan(dim)
    for v in sub:
        span.add(v)
    return [tuple(map(scalar, v)) for v in ambient if span.add(v)]


def matrix_power_count(adj: Sequence[Sequence[int]], power: int) -> list[list[int]]:
    """Integer matrix power, used for path-count identities."""
    n = len(adj)
    result = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    for _ in range(power):
        result = [[sum(result[i][k] * adj[k][j] for k in range(n)) for j in range(n)]
                  for i in range(n)]
    return result
