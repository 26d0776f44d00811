"""Finite-dimensional algebras by structure constants.

Three ways in: bound quiver presentations ``kQ/I`` (:func:`realize_bound_quiver`),
matrix blow-ups of those (:func:`blow_up`), and raw tables.  Elements are
coefficient tuples over the chosen basis.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .exactla import (ONE, ZERO, EchelonSpan, ExactMatrix, nullspace, scalar,
                      span_basis)
from .quiver import Path, Quiver, enumerate_paths


class StructureConstAlgebra:
    """Associative unital algebra with basis ``0..dim-1``.

    ``table[a][b]`` is a tuple of ``(c, coef)`` pairs giving ``b_a * b_b``.
    Associativity and the unit law are checked exhaustively on construction
    unless ``check=False``.  ``blocks`` is set for split semisimple algebras
    built by :func:`split_semisimple`; ``matrix_units[k][r][c]`` is then the
    basis index of the matrix unit ``E_rc`` in block ``k``.
    """

    def __init__(self, labels: Sequence[str], table, unit: Sequence, *, check: bool = True,
                 blocks: tuple | None = None, matrix_units=None, weights=None):
        self.labels = tuple(labels)
        self.dim = len(self.labels)
        self.table = tuple(
            tuple(tuple((c, scalar(v)) for c, v in (entry.items() if isinstance(entry, dict) else entry) if v)
                  for entry in row)
            for row in table
        )
        if len(self.table) != self.dim or any(len(r) != self.dim for r in self.table):
            raise ValueError("structure table must be dim x dim")
        self.unit = tuple(scalar(x) for x in unit)
        self.blocks = blocks
        self.matrix_units = matrix_units
        self.weights = tuple(weights) if weights is not None else (0,) * self.dim
        self._trace_vec = None
        if check:
            self.check_axioms()

    def __repr__(self):
        return f"StructureConstAlgebra(dim={self.dim})"

    def basis_vector(self, a: int) -> tuple:
        return tuple(ONE if i == a else ZERO for i in range(self.dim))

    def zero(self) -> tuple:
        return (ZERO,) * self.dim

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        out = [ZERO] * self.dim
        ynz = [(b, yb) for b, yb in enumerate(y) if yb]
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = self.table[a]
            for b, yb in ynz:
                f = xa * yb
                for c, v in row[b]:
                    out[c] += f * v
        return tuple(out)

    def basis_mul(self, a: int, b: int) -> dict:
        return dict(self.table[a][b])

    def left_matrix(self, x: Sequence) -> ExactMatrix:
        """Matrix of ``y -> x y``."""
        cols = [self.mul(x, self.basis_vector(b)) for b in range(self.dim)]
        return ExactMatrix.from_columns(cols, self.dim)

    def right_matrix(self, x: Sequence) -> ExactMatrix:
        """Matrix of ``y -> y x`` (the right regular representation)."""
        cols = [self.mul(self.basis_vector(b), x) for b in range(self.dim)]
        return ExactMatrix.from_columns(cols, self.dim)

    def check_axioms(self) -> None:
        d = self.dim
        for a in range(d):
            ea = self.basis_vector(a)
            if self.mul(self.unit, ea) != ea or self.mul(ea, self.unit) != ea:
                raise ValueError(f"unit law fails on basis element {self.labels[a]}")
        for a, b in itertools.product(range(d), repeat=2):
            ab = self.table[a][b]
            for c in range(d):
                left = [ZERO] * d
                for m, v in ab:
                    for n, w in self.table[m][c]:
                        left[n] += v * w
                right = [ZERO] * d
                for m, v in self.table[b][c]:
                    for n, w in self.table[a][m]:
                        right[n] += v * w
                if left != right:
                    raise ValueError(
                        f"associativity fails on ({self.labels[a]}, {self.labels[b]}, {self.labels[c]})"
                    )

    # -- traces ------------------------------------------------------------

    def trace_vector(self) -> tuple:
        """``tau[b] = tr(rho_b)`` for each basis element."""
        if self._trace_vec is None:
            tau = [ZERO] * self.dim
            for k in range(self.dim):
                for b in range(self.dim):
                    for c, v in self.table[k][b]:
                        if c == k:
                            tau[b] += v
            self._trace_vec = tuple(tau)
        return self._trace_vec

    def center(self) -> list[tuple]:
        d = self.dim
        rows = []
        for b in range(d):
            for k in range(d):
                # sum_a x_a (b_a b_b - b_b b_a) = 0, coordinate k
                rows.append([dict(self.table[a][b]).get(k, ZERO) - dict(self.table[b][a]).get(k, ZERO)
                             for a in range(d)])
        return nullspace(ExactMatrix(rows)) if rows else []


def check_algebra_map(src: StructureConstAlgebra, dst: StructureConstAlgebra,
                      images: Sequence[Sequence]) -> bool:
    """True iff ``b_a -> images[a]`` is a unital algebra isomorphism."""
    if len(images) != src.dim or src.dim != dst.dim:
        return False
    images = [tuple(map(scalar, v)) for v in images]
    if len(span_basis(images, dst.dim)) != dst.dim:
        return False

    def f(x):
        out = [ZERO] * dst.dim
        for a, xa in enumerate(x):
            if xa:
                for i, v in enumerate(images[a]):
                    out[i] += xa * v
        return tuple(out)

    if f(src.unit) != dst.unit:
        return False
    for a, b in itertools.product(range(src.dim), repeat=2):
        if f(src.mul(src.basis_vector(a), src.basis_vector(b))) != dst.mul(images[a], images[b]):
            return False
    return True


# -- split semisimple algebras ---------------------------------------------


def split_semisimple(blocks: Sequence[int]) -> StructureConstAlgebra:
    """``M_{n_1}(Q) x ... x M_{n_s}(Q)`` with the matrix-unit basis."""
    blocks = tuple(int(n) for n in blocks)
    if not blocks or any(n < 1 for n in blocks):
        raise ValueError("blocks must be a non-empty list of positive sizes")
    index = {}
    labels = []
    units = []
    for k, n in enumerate(blocks):
        grid = []
        for r in range(n):
            row = []
            for c in range(n):
                index[(k, r, c)] = len(labels)
                row.append(len(labels))
                prefix = f"B{k + 1}." if len(blocks) > 1 else ""
                labels.append(f"{prefix}E{r + 1}{c + 1}" if max(blocks) > 1 else f"{prefix}1")
            grid.append(row)
        units.append(grid)
    d = len(labels)
    table = [[() for _ in range(d)] for _ in range(d)]
    for (k, r, c), a in index.items():
        for (k2, r2, c2), b in index.items():
            if k == k2 and c == r2:
                table[a][b] = ((index[(k, r, c2)], ONE),)
    unit = [ZERO] * d
    for k, n in enumerate(blocks):
        for r in range(n):
            unit[index[(k, r, r)]] = ONE
    return StructureConstAlgebra(labels, table, unit, check=False, blocks=blocks,
                                 matrix_units=units)


def matrix_algebra(n: int) -> StructureConstAlgebra:
    return split_semisimple([n])


def block_unit(alg: StructureConstAlgebra, k: int) -> tuple:
    """The central idempotent of block ``k`` of a split semisimple algebra."""
    v = [ZERO] * alg.dim
    for r in range(alg.blocks[k]):
        v[alg.matrix_units[k][r][r]] = ONE
    return tuple(v)


@dataclass(frozen=True)
class SemisimpleSpec:
    """Symbolic semisimple algebra: blocks ``M_{n_i}(D_i)`` with ``dim_k D_i = eps_i``."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple((int(n), int(e)) for n, e in self.blocks)
        if not blocks or any(n < 1 or e < 1 for n, e in blocks):
            raise ValueError("each block needs n >= 1 and eps >= 1")
        object.__setattr__(self, "blocks", blocks)

    @property
    def dim(self) -> int:
        return sum(n * n * e for n, e in self.blocks)

    @property
    def is_simple(self) -> bool:
        return len(self.blocks) == 1

    @property
    def is_division(self) -> bool:
        return self.blocks == ((1, self.blocks[0][1]),) if self.is_simple else False


# -- bound quiver algebras --------------------------------------------------


@dataclass(frozen=True)
class BoundQuiverPresentation:
    """``kQ/I`` with ``I`` generated by ``relations`` and containing ``J^bound``.

    Each relation is a tuple of ``(coef, arrow-name tuple)`` terms; paths are
    in traversal order.
    """

    quiver: Quiver
    relations: tuple = ()
    bound: int = 2

    def __post_init__(self):
        rels = []
        for rel in self.relations:
            terms = tuple((scalar(c), tuple(p)) for c, p in rel)
            ends = set()
            for _, p in terms:
                if not p:
                    raise ValueError("relations may not contain trivial paths")
                for a, b in zip(p, p[1:]):
                    if self.quiver.arrow(a).target != self.quiver.arrow(b).source:
                        raise ValueError(f"path {p} is not composable")
                ends.add((self.quiver.arrow(p[0]).source, self.quiver.arrow(p[-1]).target))
            if len(ends) > 1:
                raise ValueError("relation mixes non-parallel paths")
            rels.append(terms)
        object.__setattr__(self, "relations", tuple(rels))
        if self.bound < 1:
            raise ValueError("nilpotency bound must be >= 1")


class NotAdmissibleError(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    """One simple block of ``A/r``: its size ``n``, ``eps = dim_k D`` and lifted matrix units."""

    index: int
    n: int
    eps: int
    units: tuple  # units[r][c] is an element vector of the carrier

    @property
    def primitive_idempotent(self) -> tuple:
        return self.units[0][0]

    def central_idempotent(self) -> tuple:
        out = [ZERO] * len(self.units[0][0])
        for r in range(self.n):
            for i, x in enumerate(self.units[r][r]):
                out[i] += x
        return tuple(out)


@dataclass
class RealizedAlgebra:
    carrier: StructureConstAlgebra
    provenance: str  # "bound-quiver" | "blow-up" | "raw"
    radical: list
    blocks: list = field(default_factory=list)
    paths: list | None = None  # bound-quiver: basis index -> Path
    presentation: BoundQuiverPresentation | None = None
    base: "RealizedAlgebra | None" = None
    multiplicities: dict | None = None
    triples: list | None = None  # blow-up: basis index -> (base index, r, c)
    name: str = ""

    @property
    def dim(self) -> int:
        return self.carrier.dim

    def vertex_idempotent(self, v) -> tuple:
        k = self.paths.index(Path(v, v, ()))
        return self.carrier.basis_vector(k)


def _concat(p: Path, q: Path) -> Path | None:
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


def _path_sort_key(p: Path, order: dict):
    # longest first so that relation pivots land on the longest paths
    return (-p.length, order[p.source], tuple(p.arrows))


def _ideal_span(p: BoundQuiverPresentation, max_len: int):
    """Paths up to ``max_len`` and the span of ``u * rel * v`` truncated there."""
    q = p.quiver
    order = {v: i for i, v in enumerate(q.vertices)}
    paths = sorted(enumerate_paths(q, max_len), key=lambda x: _path_sort_key(x, order))
    index = {x: i for i, x in enumerate(paths)}
    by_target: dict = {}
    by_source: dict = {}
    for x in paths:
        by_target.setdefault(x.target, []).append(x)
        by_source.setdefault(x.source, []).append(x)
    span = EchelonSpan(len(paths))
    for rel in p.relations:
        arrows0 = rel[0][1]
        src = q.arrow(arrows0[0]).source
        tgt = q.arrow(arrows0[-1]).target
        min_len = min(len(t) for _, t in rel)
        for u in by_target.get(src, []):
            for v in by_source.get(tgt, []):
                if u.length + v.length + min_len > max_len:
                    continue
                vec = [ZERO] * len(paths)
                for c, t in rel:
                    w = Path(u.source, v.target, u.arrows + t + v.arrows)
                    if w.length <= max_len:
                        vec[index[w]] += c
                span.add(vec)
    return paths, index, span


def admissibility_gap(p: BoundQuiverPresentation) -> list[Path]:
    """Paths of length ``bound`` not reducible modulo the relations and ``J^(bound+1)``."""
    paths, index, span = _ideal_span(p, p.bound)
    bad = []
    for x in paths:
        if x.length == p.bound:
            vec = [ZERO] * len(paths)
            vec[index[x]] = ONE
            if not span.contains(vec):
                bad.append(x)
    return bad


def realize_bound_quiver(p: BoundQuiverPresentation, *, strict: bool = True,
                         name: str = "") -> RealizedAlgebra:
    """Structure constants for ``kQ/I`` on a basis of paths of length ``< bound``.

    ``strict`` raises :class:`NotAdmissibleError` when some path of length
    ``bound`` does not reduce to shorter paths, i.e. when the declared bound
    does not certify ``J^bound <= I``.
    """
    if strict:
        gap = admissibility_gap(p)
        if gap:
            raise NotAdmissibleError(
                f"not admissible / not finite-dimensional at bound {p.bound}: "
                f"{', '.join(x.label() for x in gap[:5])} do not reduce"
            )
    s = p.bound
    paths, index, span = _ideal_span(p, s - 1)
    n = len(paths)
    # fully reduce the relation rows so pivot columns can be eliminated from any vector
    rows = [(piv, row) for piv, row in span._rows]
    for i in range(len(rows)):
        piv_i, row_i = rows[i]
        for j in range(len(rows)):
            if i != j:
                piv_j, row_j = rows[j]
                f = row_j[piv_i]
                if f:
                    rows[j] = (piv_j, [a - f * b for a, b in zip(row_j, row_i)])
    pivots = {piv for piv, _ in rows}
    basis_paths = [x for i, x in enumerate(paths) if i not in pivots]
    basis_pos = {index[x]: k for k, x in enumerate(basis_paths)}

    def normal_form(vec: list) -> list:
        for piv, row in rows:
            f = vec[piv]
            if f:
                for k, x in enumerate(row):
                    if x:
                        vec[k] -= f * x
        out = [ZERO] * len(basis_paths)
        for i, x in enumerate(vec):
            if x:
                out[basis_pos[i]] = x
        return out

    d = len(basis_paths)
    table = []
    for x in basis_paths:
        row = []
        for y in basis_paths:
            xy = _concat(x, y)
            if xy is None or xy.length >= s:
                row.append(())
                continue
            vec = [ZERO] * n
            vec[index[xy]] = ONE
            nf = normal_form(vec)
            row.append(tuple((k, c) for k, c in enumerate(nf) if c))
        table.append(row)
    unit = [ZERO] * d
    for k, x in enumerate(basis_paths):
        if x.length == 0:
            unit[k] = ONE
    # present the basis shortest-first for readability
    order = sorted(range(d), key=lambda k: (basis_paths[k].length,
                                            p.quiver.vertices.index(basis_paths[k].source),
                                            basis_paths[k].arrows))
    carrier = _reindex(
        [basis_paths[k].label() for k in range(d)], table, unit, order,
        weights=[basis_paths[k].length for k in range(d)],
    )
    ordered_paths = [basis_paths[k] for k in order]
    radical = [carrier.basis_vector(k) for k, x in enumerate(ordered_paths) if x.length >= 1]
    blocks = []
    for i, v in enumerate(p.quiver.vertices):
        e = carrier.basis_vector(ordered_paths.index(Path(v, v, ())))
        blocks.append(Block(i, 1, 1, ((e,),)))
    return RealizedAlgebra(carrier, "bound-quiver", radical, blocks, paths=ordered_paths,
                           presentation=p, name=name)


def _reindex(labels, table, unit, order, weights=None, **kw) -> StructureConstAlgebra:
    pos = {old: new for new, old in enumerate(order)}
    new_table = [[tuple((pos[c], v) for c, v in table[a][b]) for b in order] for a in order]
    new_unit = [unit[a] for a in order]
    w = [weights[a] for a in order] if weights is not None else None
    return StructureConstAlgebra([labels[a] for a in order], new_table, new_unit, weights=w, **kw)


@dataclass
class AdmissibilityReport:
    relations_in_j2: bool
    power_vanishes: bool
    offending_relations: list = field(default_factory=list)
    unreduced_paths: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.relations_in_j2 and self.power_vanishes


def verify_admissible(p: BoundQuiverPresentation, realized: RealizedAlgebra | None = None) -> AdmissibilityReport:
    """Check ``J^s <= I <= J^2`` for the presentation (and ``r^s = 0`` in a realization)."""
    offending = [k for k, rel in enumerate(p.relations) if any(len(t) < 2 for _, t in rel)]
    gap = admissibility_gap(p)
    vanishes = not gap
    if realized is not None and vanishes:
        vanishes = radical_filtration(realized).nilpotency <= p.bound
    return AdmissibilityReport(not offending, vanishes, offending, [x.label() for x in gap])


# -- blow-ups ---------------------------------------------------------------


def blow_up(base: RealizedAlgebra, multiplicities: Mapping, name: str = "") -> RealizedAlgebra:
    """Replace vertex ``i`` of a bound quiver algebra by ``n_i x n_i`` matrices.

    Basis triples ``(p, r, c)`` with ``p`` a base basis path ``i -> j``,
    ``1 <= r <= n_i`` and ``1 <= c <= n_j``; ``(p,r,c)(q,r',c') = [c == r'] (pq, r, c')``.
    """
    if base.provenance != "bound-quiver":
        raise ValueError("blow_up needs a bound-quiver base")
    verts = base.presentation.quiver.vertices
    mult = {v: int(multiplicities.get(v, 1)) for v in verts}
    bad = [v for v, n in mult.items() if n <= 0]
    if bad:
        raise ValueError(f"multiplicity must be positive at {bad}")
    if set(multiplicities) - set(verts):
        raise ValueError("multiplicities name unknown vertices")
    triples = []
    for k, x in enumerate(base.paths):
        for r in range(mult[x.source]):
            for c in range(mult[x.target]):
                triples.append((k, r, c))
    index = {t: i for i, t in enumerate(triples)}
    bt = base.carrier.table
    table = []
    for (k, r, c) in triples:
        row = []
        for (k2, r2, c2) in triples:
            if c != r2:
                row.append(())
                continue
            row.append(tuple((index[(m, r, c2)], v) for m, v in bt[k][k2]))
        table.append(row)
    d = len(triples)
    unit = [ZERO] * d
    for i, (k, r, c) in enumerate(triples):
        if base.paths[k].length == 0 and r == c:
            unit[i] = ONE
    labels = [f"({base.paths[k].label()},{r + 1},{c + 1})" for k, r, c in triples]
    weights = [base.paths[k].length for k, _, _ in triples]
    carrier = StructureConstAlgebra(labels, table, unit, weights=weights)
    radical = [carrier.basis_vector(i) for i, (k, _, _) in enumerate(triples)
               if base.paths[k].length >= 1]
    blocks = []
    for bi, v in enumerate(verts):
        k = base.paths.index(Path(v, v, ()))
        n = mult[v]
        units = tuple(tuple(carrier.basis_vector(index[(k, r, c)]) for c in range(n)) for r in range(n))
        blocks.append(Block(bi, n, 1, units))
    return RealizedAlgebra(carrier, "blow-up", radical, blocks, base=base, multiplicities=mult,
                           triples=triples, name=name)


def raw_algebra(carrier: StructureConstAlgebra, radical=None, blocks=None, name: str = "") -> RealizedAlgebra:
    """Wrap a raw table; the radical defaults to the trace-form radical."""
    rad = radical_traceform(carrier) if radical is None else [tuple(map(scalar, v)) for v in radical]
    return RealizedAlgebra(carrier, "raw", rad, list(blocks or []), name=name)


# -- radicals and traces ----------------------------------------------------


def regular_trace(a: StructureConstAlgebra, x: Sequence) -> Fraction:
    """``tr`` of right multiplication by ``x``."""
    tau = a.trace_vector()
    return sum((scalar(c) * t for c, t in zip(x, tau) if c), ZERO)


def radical_traceform(a: StructureConstAlgebra) -> list[tuple]:
    """Radical of the trace form ``(x, y) -> tr(rho_{xy})``; the Jacobson radical in char 0."""
    tau = a.trace_vector()
    gram = [[sum((v * tau[c] for c, v in a.table[x][y]), ZERO) for x in range(a.dim)]
            for y in range(a.dim)]
    return nullspace(ExactMatrix(gram)) if a.dim else []


@dataclass
class TraceLemmaReport:
    n: int
    trials: int
    passed: int
    trace_of_e11: Fraction
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.passed == self.trials and self.trace_of_e11 == self.n


def check_trace_lemma(n: int, trials: int, seed: int = 0, entry_range: int = 3) -> TraceLemmaReport:
    """For random nonzero ``a`` in ``M_n(Q)`` find a basis ``y`` with ``t(a y) != 0``."""
    alg = matrix_algebra(n)
    rng = random.Random(seed)
    passed = 0
    failures = []
    for trial in range(trials):
        while True:
            a = tuple(Fraction(rng.randint(-entry_range, entry_range)) for _ in range(alg.dim))
            if any(a):
                break
        if any(regular_trace(alg, alg.mul(a, alg.basis_vector(y))) != 0 for y in range(alg.dim)):
            passed += 1
        else:
            failures.append(a)
    e11 = alg.basis_vector(alg.matrix_units[0][0][0])
    return TraceLemmaReport(n, trials, passed, regular_trace(alg, e11), failures)


@dataclass
class RadicalFiltration:
    radical: list
    radical_square: list
    nilpotency: int


def products_span(a: StructureConstAlgebra, xs: Sequence, ys: Sequence) -> list[tuple]:
    return span_basis((a.mul(x, y) for x in xs for y in ys), a.dim)


def radical_filtration(alg) -> RadicalFiltration:
    """Bases of ``r`` and ``r^2`` plus the least ``s`` with ``r^s = 0``."""
    if isinstance(alg, RealizedAlgebra):
        carrier, rad = alg.carrier, span_basis(alg.radical, alg.dim)
    else:
        carrier, rad = alg, span_basis(radical_traceform(alg), alg.dim)
    if not rad:
        return RadicalFiltration([], [], 1)
    r2 = products_span(carrier, rad, rad)
    power, s = rad, 1
    while power:
        power = products_span(carrier, power, rad)
        s += 1
        if s > carrier.dim + 1:
            raise ValueError("radical basis is not nilpotent")
    return RadicalFiltration(rad, r2, s)


def is_semisimple(a: StructureConstAlgebra) -> bool:
    return a.blocks is not None or not radical_traceform(a)


def is_simple(a: StructureConstAlgebra) -> bool:
    if a.blocks is not None:
        return len(a.blocks) == 1
    return is_semisimple(a) and len(a.center()) == 1


def truncated_path_algebra(q: Quiver, length: int, name: str = "") -> RealizedAlgebra:
    """``kQ / J^(length+1)``: all paths with at most ``length`` arrows."""
    return realize_bound_quiver(BoundQuiverPresentation(q, (), length + 1), strict=False, name=name)


def gcd_all(xs) -> int:
    return math.gcd(*xs) if xs else 0
