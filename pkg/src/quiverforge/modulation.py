"""Pseudo-modulations: vertex algebras plus bimodules on ordered vertex pairs.

Concrete data lives over split semisimple algebras (products of ``M_n(Q)``)
and is checked with exact linear algebra.  Symbolic data carries block sizes
``(n, eps)`` and declared ranks only.

Multiplicities over a split block ``M_n`` are read off the rank of the matrix
unit ``E_11``: it acts with rank one on the simple module, so its rank on any
module counts simple summands.  The same holds for ``E^b_11 (x) E^c_11`` on
bimodules.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .algebra import SemisimpleSpec, StructureConstAlgebra, split_semisimple
from .exactla import ONE, ZERO, ExactMatrix, rank, span_dim
from .modules import intertwiners
from .quiver import (DEFAULT_MAX_ISO_VERTICES, PseudoValuedQuiver, ValuedEdge, iter_isos,
                     valuation_witness)


def _require_split(alg: StructureConstAlgebra) -> None:
    if getattr(alg, "blocks", None) is None:
        raise ValueError("rank computation requires semisimple blocks")


def _combine(mats: Sequence[ExactMatrix], coeffs: Sequence, dim: int) -> ExactMatrix:
    rows = [[ZERO] * dim for _ in range(dim)]
    for c, m in zip(coeffs, mats):
        if c:
            for i, r in enumerate(m.rows):
                row = rows[i]
                for j, x in enumerate(r):
                    if x:
                        row[j] += c * x
    return ExactMatrix(rows, ncols=dim)


def _e11(alg: StructureConstAlgebra, k: int) -> tuple:
    return alg.basis_vector(alg.matrix_units[k][0][0])


class ConcreteBimodule:
    """An ``A``-``B``-bimodule on ``Q^dim``.

    ``left_actions[a]`` is the matrix of ``v -> b_a . v`` for the ``a``-th
    basis element of ``A``; ``right_actions[b]`` is ``v -> v . b_b``.  Unit,
    associativity and commutation of the two actions are checked exactly.
    """

    def __init__(self, left: StructureConstAlgebra, right: StructureConstAlgebra, dim: int,
                 left_actions: Sequence[ExactMatrix], right_actions: Sequence[ExactMatrix],
                 check: bool = True):
        self.left = left
        self.right = right
        self.dim = dim
        self.left_actions = tuple(left_actions)
        self.right_actions = tuple(right_actions)
        if len(self.left_actions) != left.dim or len(self.right_actions) != right.dim:
            raise ValueError("need one action matrix per basis element on each side")
        for m in self.left_actions + self.right_actions:
            if m.shape != (dim, dim):
                raise ValueError(f"action matrix of shape {m.shape} on a bimodule of dim {dim}")
        if check:
            self.validate()

    def __repr__(self):
        return f"ConcreteBimodule(dim={self.dim})"

    def act_left(self, x: Sequence) -> ExactMatrix:
        return _combine(self.left_actions, x, self.dim)

    def act_right(self, y: Sequence) -> ExactMatrix:
        return _combine(self.right_actions, y, self.dim)

    def validate(self) -> None:
        ident = ExactMatrix.identity(self.dim)
        if self.act_left(self.left.unit) != ident:
            raise ValueError("left action is not unital")
        if self.act_right(self.right.unit) != ident:
            raise ValueError("right action is not unital")
        for a, b in itertools.product(range(self.left.dim), repeat=2):
            ab = self.left.mul(self.left.basis_vector(a), self.left.basis_vector(b))
            if self.act_left(ab) != self.left_actions[a] @ self.left_actions[b]:
                raise ValueError(f"left action is not associative at ({a}, {b})")
        for a, b in itertools.product(range(self.right.dim), repeat=2):
            ab = self.right.mul(self.right.basis_vector(a), self.right.basis_vector(b))
            if self.act_right(ab) != self.right_actions[b] @ self.right_actions[a]:
                raise ValueError(f"right action is not associative at ({a}, {b})")
        for la in self.left_actions:
            for rb in self.right_actions:
                if la @ rb != rb @ la:
                    raise ValueError("left and right actions do not commute")

    def is_zero(self) -> bool:
        return self.dim == 0


def _simple_bimodule_actions(A, B, b, c):
    """Actions on ``n_b x n_c`` matrices (row-major) for the simple block pair ``(b, c)``."""
    p, q = A.blocks[b], B.blocks[c]
    dim = p * q

    def idx(r, s):
        return r * q + s

    left = []
    for k in range(A.dim):
        rows = [[ZERO] * dim for _ in range(dim)]
        for (blk, r, s) in _unit_position(A, k):
            if blk == b:
                # E_rs X : row s of X moves to row r
                for col in range(q):
                    rows[idx(r, col)][idx(s, col)] = ONE
        left.append(ExactMatrix(rows, ncols=dim))
    right = []
    for k in range(B.dim):
        rows = [[ZERO] * dim for _ in range(dim)]
        for (blk, r, s) in _unit_position(B, k):
            if blk == c:
                # X E_rs : column r of X moves to column s
                for row in range(p):
                    rows[idx(row, s)][idx(row, r)] = ONE
        right.append(ExactMatrix(rows, ncols=dim))
    return dim, left, right


def _unit_position(alg, k):
    for blk, grid in enumerate(alg.matrix_units):
        for r, row in enumerate(grid):
            for s, idx in enumerate(row):
                if idx == k:
                    return [(blk, r, s)]
    return []


def direct_sum(parts: Sequence[ConcreteBimodule]) -> ConcreteBimodule:
    if not parts:
        raise ValueError("empty direct sum")
    A, B = parts[0].left, parts[0].right
    dim = sum(p.dim for p in parts)

    def blockdiag(mats):
        rows = [[ZERO] * dim for _ in range(dim)]
        off = 0
        for m in mats:
            for i, r in enumerate(m.rows):
                for j, x in enumerate(r):
                    if x:
                        rows[off + i][off + j] = x
            off += m.nrows
        return ExactMatrix(rows, ncols=dim)

    left = [blockdiag([p.left_actions[a] for p in parts]) for a in range(A.dim)]
    right = [blockdiag([p.right_actions[b] for p in parts]) for b in range(B.dim)]
    return ConcreteBimodule(A, B, dim, left, right, check=False)


def standard_bimodule(A: StructureConstAlgebra, B: StructureConstAlgebra,
                      mult: Sequence[Sequence[int]]) -> ConcreteBimodule:
    """Direct sum of ``mult[b][c]`` copies of the simple bimodule ``S_b (x) S_c^*``."""
    _require_split(A)
    _require_split(B)
    parts = []
    for b, row in enumerate(mult):
        for c, m in enumerate(row):
            if m < 0:
                raise ValueError("multiplicities must be non-negative")
            if m:
                dim, left, right = _simple_bimodule_actions(A, B, b, c)
                parts.extend([ConcreteBimodule(A, B, dim, left, right, check=False)] * m)
    if not parts:
        zero = ExactMatrix.zeros(0, 0)
        return ConcreteBimodule(A, B, 0, [zero] * A.dim, [zero] * B.dim, check=False)
    return direct_sum(parts)


def regular_bimodule(A: StructureConstAlgebra, B: StructureConstAlgebra, t: int = 1) -> ConcreteBimodule:
    """``(A (x) B^op)^t`` as an ``A``-``B``-bimodule."""
    mult = [[t * n * m for m in B.blocks] for n in A.blocks]
    return standard_bimodule(A, B, mult)


# -- ranks ----------------------------------------------------------------


@dataclass(frozen=True)
class BimoduleRanks:
    d_ij: int  # rank as a right module over the target algebra
    d_ji: int  # rank as a left module over the source algebra
    t: int  # rank as a bimodule
    multiplicities: tuple  # m[b][c]: copies of the simple bimodule for blocks (b, c)
    free: bool


def multiplicity_table(m: ConcreteBimodule) -> tuple:
    _require_split(m.left)
    _require_split(m.right)
    out = []
    for b in range(len(m.left.blocks)):
        lb = m.act_left(_e11(m.left, b))
        row = []
        for c in range(len(m.right.blocks)):
            rc = m.act_right(_e11(m.right, c))
            row.append(rank(lb @ rc) if m.dim else 0)
        out.append(tuple(row))
    return tuple(out)


def _ceil(a: int, b: int) -> int:
    return -(-a // b)


def ranks_from_multiplicities(mult, left_sizes, right_sizes) -> BimoduleRanks:
    """Ranks of ``(+) m[b][c] S_b (x) S_c^*`` over split blocks of the given sizes."""
    right_mult = [sum(mult[b][c] * left_sizes[b] for b in range(len(left_sizes)))
                  for c in range(len(right_sizes))]
    left_mult = [sum(mult[b][c] * right_sizes[c] for c in range(len(right_sizes)))
                 for b in range(len(left_sizes))]
    return _assemble(tuple(tuple(r) for r in mult), left_mult, right_mult, left_sizes, right_sizes)


def _assemble(mult, left_mult, right_mult, left_sizes, right_sizes) -> BimoduleRanks:
    d_ij = max((_ceil(x, n) for x, n in zip(right_mult, right_sizes)), default=0)
    d_ji = max((_ceil(x, n) for x, n in zip(left_mult, left_sizes)), default=0)
    t = max((_ceil(mult[b][c], nb * nc) for b, nb in enumerate(left_sizes)
             for c, nc in enumerate(right_sizes)), default=0)
    free = all(mult[b][c] == t * nb * nc for b, nb in enumerate(left_sizes)
               for c, nc in enumerate(right_sizes))
    return BimoduleRanks(d_ij, d_ji, t, mult, free)


def bimodule_ranks(m: ConcreteBimodule) -> BimoduleRanks:
    """Minimal generator counts as a right, left and two-sided module."""
    _require_split(m.left)
    _require_split(m.right)
    if m.dim == 0:
        z = tuple((0,) * len(m.right.blocks) for _ in m.left.blocks)
        return BimoduleRanks(0, 0, 0, z, True)
    right_mult = [rank(m.act_right(_e11(m.right, c))) for c in range(len(m.right.blocks))]
    left_mult = [rank(m.act_left(_e11(m.left, b))) for b in range(len(m.left.blocks))]
    return _assemble(multiplicity_table(m), left_mult, right_mult, m.left.blocks, m.right.blocks)


def is_free_bimodule(m: ConcreteBimodule) -> bool:
    return bimodule_ranks(m).free


# -- Hom duality --------------------------------------------------------------


@dataclass(frozen=True)
class HomDuality:
    dim_hom_left: int  # dim Hom_A(M, A)
    dim_hom_right: int  # dim Hom_B(M, B)
    iso: bool
    left_multiplicities: tuple
    right_multiplicities: tuple


def _flat(m: ExactMatrix) -> tuple:
    return tuple(x for r in m.rows for x in r)


def _bimodule_mults(basis, op_for, b_blocks, a_blocks, dim):
    """Multiplicities of a ``B``-``A``-bimodule given by ``op_for(c, b)(F)``."""
    out = []
    for c in range(b_blocks):
        row = []
        for b in range(a_blocks):
            op = op_for(c, b)
            row.append(span_dim((_flat(op(f)) for f in basis), dim))
        out.append(tuple(row))
    return tuple(out)


def hom_dual_dims(m: ConcreteBimodule) -> HomDuality:
    """Both dual spaces as ``B``-``A``-bimodules and whether they agree.

    Over split semisimple algebras a bimodule is determined by its block
    multiplicities, so comparing the two tables decides isomorphism.
    """
    A, B = m.left, m.right
    _require_split(A)
    _require_split(B)
    if m.dim == 0:
        z = tuple((0,) * len(A.blocks) for _ in B.blocks)
        return HomDuality(0, 0, True, z, z)
    # Hom_A(M, A): left-linear maps; (b.f)(v) = f(v.b), (f.a)(v) = f(v) a
    left_src = list(m.left_actions)
    left_dst = [A.left_matrix(A.basis_vector(a)) for a in range(A.dim)]
    hom_a = intertwiners(left_src, left_dst, m.dim, A.dim)

    def op_a(c, b):
        rb = A.right_matrix(_e11(A, b))
        rc = m.act_right(_e11(B, c))
        return lambda f: rb @ f @ rc

    # Hom_B(M, B): right-linear maps; (b.f)(v) = b f(v), (f.a)(v) = f(a.v)
    right_src = list(m.right_actions)
    right_dst = [B.right_matrix(B.basis_vector(b)) for b in range(B.dim)]
    hom_b = intertwiners(right_src, right_dst, m.dim, B.dim)

    def op_b(c, b):
        lc = B.left_matrix(_e11(B, c))
        la = m.act_left(_e11(A, b))
        return lambda f: lc @ f @ la

    ma = _bimodule_mults(hom_a, op_a, len(B.blocks), len(A.blocks), A.dim * m.dim)
    mb = _bimodule_mults(hom_b, op_b, len(B.blocks), len(A.blocks), B.dim * m.dim)
    return HomDuality(len(hom_a), len(hom_b), ma == mb, ma, mb)


# -- pseudo-modulations ---------------------------------------------------------


@dataclass(frozen=True)
class SymbolicBimodule:
    """Declared rank data for a bimodule that is not materialized.

    ``dual`` records a declared Hom-duality verdict; ``None`` leaves it open.
    """

    d_ij: int
    d_ji: int
    free: bool = False
    t: int | None = None
    dual: bool | None = None

    def __post_init__(self):
        if self.d_ij < 0 or self.d_ji < 0:
            raise ValueError("ranks must be non-negative")
        if (self.d_ij == 0) != (self.d_ji == 0):
            raise ValueError("a nonzero bimodule has nonzero rank on both sides")

    def is_zero(self) -> bool:
        return self.d_ij == 0


ALG_CLOSED_CHAR0 = "algebraically-closed-char-0"


class PseudoModulation:
    """Vertex algebras ``A_i`` and bimodules ``_iM_j`` keyed by ordered pairs.

    Vertex algebras are split semisimple :class:`StructureConstAlgebra` objects
    or :class:`SemisimpleSpec` block data.  ``regime`` may be set to
    ``ALG_CLOSED_CHAR0`` to declare that ground field.
    """

    def __init__(self, vertices: Sequence, algebras: Mapping, bimodules: Mapping | None = None,
                 regime: str | None = None, name: str = ""):
        self.vertices = tuple(vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        missing = [v for v in self.vertices if v not in algebras]
        if missing:
            raise ValueError(f"no vertex algebra for {missing}")
        self.algebras = {v: algebras[v] for v in self.vertices}
        for v, a in self.algebras.items():
            if isinstance(a, StructureConstAlgebra):
                _require_split(a)
            elif not isinstance(a, SemisimpleSpec):
                raise TypeError(f"vertex {v!r}: unsupported algebra {type(a).__name__}")
        self.bimodules = {}
        for (i, j), m in (bimodules or {}).items():
            if i not in self.algebras or j not in self.algebras:
                raise ValueError(f"bimodule on unknown pair ({i!r}, {j!r})")
            if isinstance(m, ConcreteBimodule):
                if m.left is not self.algebras[i] or m.right is not self.algebras[j]:
                    if not (_same_table(m.left, self.algebras[i]) and _same_table(m.right, self.algebras[j])):
                        raise ValueError(f"bimodule ({i!r}, {j!r}) is over the wrong algebras")
            elif not isinstance(m, SymbolicBimodule):
                raise TypeError(f"pair ({i!r}, {j!r}): unsupported bimodule {type(m).__name__}")
            self.bimodules[(i, j)] = m
        self.regime = regime
        self.name = name
        self._ranks: dict = {}
        self._classification = None

    @property
    def is_concrete(self) -> bool:
        return all(isinstance(a, StructureConstAlgebra) for a in self.algebras.values()) and all(
            isinstance(m, ConcreteBimodule) for m in self.bimodules.values())

    @property
    def is_symbolic(self) -> bool:
        return all(isinstance(a, SemisimpleSpec) for a in self.algebras.values()) and all(
            isinstance(m, SymbolicBimodule) for m in self.bimodules.values())

    def nonzero_pairs(self) -> list:
        return [(i, j) for (i, j), m in self.bimodules.items() if not m.is_zero()]

    def ranks(self, i, j) -> tuple[int, int]:
        m = self.bimodules.get((i, j))
        if m is None or m.is_zero():
            return 0, 0
        if isinstance(m, SymbolicBimodule):
            return m.d_ij, m.d_ji
        if (i, j) not in self._ranks:
            self._ranks[(i, j)] = bimodule_ranks(m)
        r = self._ranks[(i, j)]
        return r.d_ij, r.d_ji

    def bimodule_rank_data(self, i, j) -> BimoduleRanks | None:
        m = self.bimodules.get((i, j))
        if not isinstance(m, ConcreteBimodule):
            return None
        self.ranks(i, j)
        return self._ranks.get((i, j)) or bimodule_ranks(m)

    def classify(self) -> "Classification":
        if self._classification is None:
            self._classification = classify(self)
        return self._classification


def _same_table(a: StructureConstAlgebra, b: StructureConstAlgebra) -> bool:
    return a.dim == b.dim and a.table == b.table and a.unit == b.unit


def block_data(alg) -> tuple:
    """Sorted ``(n, eps)`` pairs; the vertex label used for isomorphism search."""
    if isinstance(alg, SemisimpleSpec):
        return tuple(sorted(alg.blocks))
    return tuple(sorted((n, 1) for n in alg.blocks))


@dataclass(frozen=True)
class Classification:
    pseudo: bool
    pre: bool
    generalized: bool
    generalized_source: str  # "verified", "rule", "declared", "mixed" or "undetermined"
    regular: bool
    normal: bool
    seminormal: bool
    valued_graph: bool
    classical: bool
    one_sided_pairs: tuple = ()
    notes: tuple = ()

    def flags(self) -> dict:
        return {
            "pseudo": self.pseudo, "pre": self.pre, "generalized": self.generalized,
            "regular": self.regular, "normal": self.normal, "seminormal": self.seminormal,
            "valued-graph": self.valued_graph, "classical": self.classical,
        }


def classify(m: PseudoModulation) -> Classification:
    pairs = m.nonzero_pairs()
    pre = True
    gen = True
    sources = set()
    notes = []
    for (i, j) in pairs:
        b = m.bimodules[(i, j)]
        if isinstance(b, ConcreteBimodule):
            pre = pre and m.bimodule_rank_data(i, j).free
            gen = gen and hom_dual_dims(b).iso
            sources.add("verified")
        else:
            pre = pre and b.free
            if b.dual is not None:
                gen = gen and b.dual
                sources.add("declared")
            elif m.regime == ALG_CLOSED_CHAR0:
                # semisimple vertex algebras over such a field always satisfy the duality
                sources.add("rule")
            else:
                gen = False
                sources.add("undetermined")
                notes.append(f"Hom duality on ({i}, {j}) not determined without a declared regime")
    if not sources:
        source = "verified"
    elif len(sources) == 1:
        source = sources.pop()
    else:
        source = "undetermined" if "undetermined" in sources else "mixed"
    simple = all(_is_simple(a) for a in m.algebras.values())
    division = all(_is_division(a) for a in m.algebras.values())
    try:
        pvq = pseudo_valued_quiver_of(m)
        valued = valuation_witness(pvq) is not None
    except ValueError as exc:
        valued = False
        notes.append(str(exc))
    one_sided = tuple(sorted(((i, j) for (i, j) in pairs if i != j and (j, i) not in pairs), key=repr))
    return Classification(
        pseudo=True, pre=pre, generalized=gen, generalized_source=source,
        regular=pre and gen, normal=simple, seminormal=True, valued_graph=valued,
        classical=division and gen, one_sided_pairs=one_sided, notes=tuple(notes),
    )


def _is_simple(a) -> bool:
    return len(a.blocks) == 1


def _is_division(a) -> bool:
    if isinstance(a, SemisimpleSpec):
        return a.is_division
    return tuple(a.blocks) == (1,)


def pseudo_valued_quiver_of(m: PseudoModulation) -> PseudoValuedQuiver:
    """One edge ``i -> j`` per nonzero ``_iM_j`` valued by its right and left ranks."""
    edges = []
    for (i, j) in m.nonzero_pairs():
        d_ij, d_ji = m.ranks(i, j)
        edges.append(ValuedEdge(i, j, d_ij, d_ji))
    return PseudoValuedQuiver(m.vertices, tuple(edges))


# -- isomorphism --------------------------------------------------------------


def _blocks(alg) -> list:
    return list(alg.blocks) if isinstance(alg, SemisimpleSpec) else [(n, 1) for n in alg.blocks]


def _block_perms(src, dst):
    """Bijections from the blocks of ``src`` to equally sized blocks of ``dst``."""
    a, b = _blocks(src), _blocks(dst)
    if len(a) != len(b):
        return
    for perm in itertools.permutations(range(len(a))):
        if all(a[k] == b[perm[k]] for k in range(len(a))):
            yield perm


def _pair_signature(m: PseudoModulation, i, j):
    b = m.bimodules.get((i, j))
    if b is None or b.is_zero():
        return None
    if isinstance(b, SymbolicBimodule):
        return ("sym", b.d_ij, b.d_ji, b.free, b.t)
    return ("mult", m.bimodule_rank_data(i, j).multiplicities)


def modulation_iso(m1: PseudoModulation, m2: PseudoModulation,
                   max_vertices: int = DEFAULT_MAX_ISO_VERTICES) -> dict | None:
    """A vertex bijection carrying one modulation to the other, or None.

    Candidates come from the labelled pseudo-valued quivers; for concrete data
    each candidate is refined by searching block permutations at every vertex
    under which all multiplicity tables agree.
    """
    if m1.is_concrete != m2.is_concrete or m1.is_symbolic != m2.is_symbolic:
        raise ValueError("modulation_iso needs two concrete or two symbolic modulations")
    q1, q2 = pseudo_valued_quiver_of(m1), pseudo_valued_quiver_of(m2)
    l1 = {v: block_data(a) for v, a in m1.algebras.items()}
    l2 = {v: block_data(a) for v, a in m2.algebras.items()}
    pairs = m1.nonzero_pairs()
    for theta in iter_isos(q1, q2, l1, l2, max_vertices):
        if _bimodules_match(m1, m2, theta, pairs):
            return theta
    return None


def _bimodules_match(m1, m2, theta, pairs) -> bool:
    sym = {p: _pair_signature(m1, *p) for p in pairs}
    if any(s[0] == "sym" for s in sym.values()):
        return all(_pair_signature(m2, theta[i], theta[j]) == sym[(i, j)] for (i, j) in pairs)
    verts = list(m1.vertices)
    perms: dict = {}

    def ok_so_far():
        for (i, j) in pairs:
            if i in perms and j in perms:
                a = sym[(i, j)][1]
                b = _pair_signature(m2, theta[i], theta[j])[1]
                pi, pj = perms[i], perms[j]
                for x in range(len(a)):
                    for y in range(len(a[0])):
                        if a[x][y] != b[pi[x]][pj[y]]:
                            return False
        return True

    def search(k):
        if k == len(verts):
            return True
        v = verts[k]
        for perm in _block_perms(m1.algebras[v], m2.algebras[theta[v]]):
            perms[v] = perm
            if ok_so_far() and search(k + 1):
                return True
            del perms[v]
        return False

    return search(0)


# -- group species --------------------------------------------------------------


def euler_phi(n: int) -> int:
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def cyclic_group_blocks(n: int) -> tuple:
    """Wedderburn blocks ``(1, phi(d))`` of ``Q C_n``, one per divisor ``d`` of ``n``."""
    if n < 1:
        raise ValueError("group order must be positive")
    return tuple((1, euler_phi(d)) for d in range(1, n + 1) if n % d == 0)


@dataclass(frozen=True)
class GroupData:
    order: int
    blocks: tuple  # (n, eps) pairs

    def __post_init__(self):
        blocks = tuple((int(n), int(e)) for n, e in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        total = sum(n * n * e for n, e in blocks)
        if total != self.order:
            raise ValueError(
                f"group blocks have total dimension {total}, group order is {self.order}")

    @classmethod
    def cyclic(cls, n: int) -> "GroupData":
        return cls(n, cyclic_group_blocks(n))

    @property
    def split(self) -> bool:
        return all(e == 1 for _, e in self.blocks)


@dataclass(frozen=True)
class GroupPair:
    """Bimodule data for one ordered pair.

    ``kind`` is ``"regular"`` (``t`` copies of the group-algebra bimodule),
    ``"multiplicities"`` (split blocks only) or ``"ranks"`` (declared).
    """

    kind: str
    t: int = 0
    multiplicities: tuple = ()
    d_ij: int = 0
    d_ji: int = 0
    free: bool = False


@dataclass(frozen=True)
class GroupSpeciesSpec:
    index: tuple
    groups: Mapping
    pairs: Mapping = field(default_factory=dict)
    regime: str | None = None


def from_group_species(g: GroupSpeciesSpec) -> PseudoModulation:
    algebras = {i: SemisimpleSpec(g.groups[i].blocks) for i in g.index}
    bimodules = {}
    for (i, j), p in g.pairs.items():
        gi, gj = g.groups[i], g.groups[j]
        if p.kind == "regular":
            bimodules[(i, j)] = SymbolicBimodule(p.t * gi.order, p.t * gj.order, True, p.t)
        elif p.kind == "multiplicities":
            if not (gi.split and gj.split):
                raise ValueError(f"pair ({i}, {j}): multiplicities need split group algebras")
            r = ranks_from_multiplicities(p.multiplicities, [n for n, _ in gi.blocks],
                                          [n for n, _ in gj.blocks])
            bimodules[(i, j)] = SymbolicBimodule(r.d_ij, r.d_ji, r.free, r.t)
        elif p.kind == "ranks":
            bimodules[(i, j)] = SymbolicBimodule(p.d_ij, p.d_ji, p.free)
        else:
            raise ValueError(f"pair ({i}, {j}): unknown bimodule kind {p.kind!r}")
    return PseudoModulation(g.index, algebras, bimodules, regime=g.regime)


def coprime_split_check(spec: SemisimpleSpec) -> bool:
    """Every ``eps_i`` is a square ``n_i^2`` and the ``n_i`` are pairwise coprime."""
    roots = []
    for _, eps in spec.blocks:
        r = math.isqrt(eps)
        if r * r != eps:
            return False
        roots.append(r)
    return all(math.gcd(a, b) == 1 for a, b in itertools.combinations(roots, 2))


def concrete_modulation(blocks: Mapping, mults: Mapping, name: str = "") -> PseudoModulation:
    """Build a concrete modulation from block sizes and bimodule multiplicity tables."""
    algebras = {v: split_semisimple(b) for v, b in blocks.items()}
    bimodules = {(i, j): standard_bimodule(algebras[i], algebras[j], m) for (i, j), m in mults.items()}
    return PseudoModulation(list(blocks), algebras, bimodules, name=name)

