"""Natural quivers and valued Ext-quivers of realized algebras.

Blocks of ``A/r`` come from the provenance of the algebra: vertices of a
bound quiver, or blown-up vertices with their lifted matrix units.  For
block ``i``, ``E_i`` is the lifted central idempotent and ``u_i`` the
primitive idempotent ``E^i_11``.

Ext dimensions are computed two ways: from ``u_i (r/r^2) u_j`` and from
Hom spaces of left modules ``P_j = A u_j``, ``rP_j`` and ``T_i = P_i/rP_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import Block, RealizedAlgebra, matrix_algebra, radical_filtration, radical_traceform
from .exactla import span_basis
from .modulation import ConcreteBimodule, bimodule_ranks
from .modules import Subquotient, subquotient_module
from .quiver import PseudoValuedQuiver, ValuedEdge, ValuedQuiver, valuation_witness
from .report import Report


def semisimple_blocks(a: RealizedAlgebra) -> list[Block]:
    if not a.blocks:
        raise ValueError("no block data: raw algebras must declare their blocks")
    return list(a.blocks)


def block_names(a: RealizedAlgebra) -> list:
    if a.provenance == "bound-quiver":
        return list(a.presentation.quiver.vertices)
    if a.provenance == "blow-up":
        return list(a.base.presentation.quiver.vertices)
    return [b.index + 1 for b in semisimple_blocks(a)]


def block_dims(a: RealizedAlgebra) -> list[int]:
    return [b.n * b.n * b.eps for b in semisimple_blocks(a)]


def _cut(a: RealizedAlgebra, left, space, right) -> list[tuple]:
    mul = a.carrier.mul
    return span_basis((mul(mul(left, v), right) for v in space), a.dim)


class _Filtration:
    def __init__(self, a: RealizedAlgebra):
        f = radical_filtration(a)
        self.r = f.radical
        self.r2 = f.radical_square
        self.nilpotency = f.nilpotency


@dataclass
class NaturalQuiver:
    vertices: list
    t: list  # t[i][j] arrows from block i to block j
    bimodules: dict  # (i, j) -> ConcreteBimodule on A_i (r/r^2) A_j
    dims: list  # dim_k of each A_i

    def arrow_count(self, i, j) -> int:
        return self.t[self.vertices.index(i)][self.vertices.index(j)]


def _block_action(a: RealizedAlgebra, blk: Block, side: str, sq: Subquotient) -> list:
    mats = []
    for r in range(blk.n):
        for c in range(blk.n):
            u = blk.units[r][c]
            if side == "left":
                mats.append(sq.matrix_of(lambda v, u=u: a.carrier.mul(u, v)))
            else:
                mats.append(sq.matrix_of(lambda v, u=u: a.carrier.mul(v, u)))
    return mats


def natural_bimodule(a: RealizedAlgebra, i: int, j: int, filt: _Filtration | None = None) -> ConcreteBimodule:
    """``E_i (r/r^2) E_j`` with its ``M_{n_i}``-``M_{n_j}`` actions."""
    blocks = semisimple_blocks(a)
    for b in blocks:
        if b.eps != 1:
            raise ValueError("concrete computations need split blocks (eps = 1)")
    filt = filt or _Filtration(a)
    bi, bj = blocks[i], blocks[j]
    ei, ej = bi.central_idempotent(), bj.central_idempotent()
    x = _cut(a, ei, filt.r, ej)
    y = _cut(a, ei, filt.r2, ej)
    sq = Subquotient(x, y, a.dim)
    left = _block_action(a, bi, "left", sq)
    right = _block_action(a, bj, "right", sq)
    return ConcreteBimodule(matrix_algebra(bi.n), matrix_algebra(bj.n), sq.dim, left, right)


def natural_quiver(a: RealizedAlgebra) -> NaturalQuiver:
    blocks = semisimple_blocks(a)
    filt = _Filtration(a)
    s = len(blocks)
    t = [[0] * s for _ in range(s)]
    mods = {}
    for i in range(s):
        for j in range(s):
            m = natural_bimodule(a, i, j, filt)
            if m.dim:
                mods[(i, j)] = m
                t[i][j] = bimodule_ranks(m).t
    return NaturalQuiver(block_names(a), t, mods, block_dims(a))


def natural_valued_quiver(a: RealizedAlgebra, nq: NaturalQuiver | None = None) -> ValuedQuiver:
    """``d_ij = t_ij dim A_i``, ``d_ji = t_ij dim A_j`` with witness ``eps_i = dim A_i``."""
    nq = nq or natural_quiver(a)
    names = nq.vertices
    edges = []
    for i, vi in enumerate(names):
        for j, vj in enumerate(names):
            t = nq.t[i][j]
            if t:
                edges.append(ValuedEdge(vi, vj, t * nq.dims[i], t * nq.dims[j]))
    return ValuedQuiver(PseudoValuedQuiver(tuple(names), tuple(edges)),
                        {v: nq.dims[k] for k, v in enumerate(names)})


def ext_dims_lemma(a: RealizedAlgebra) -> list[list[int]]:
    """``dim u_i r u_j - dim u_i r^2 u_j`` for all block pairs."""
    blocks = semisimple_blocks(a)
    filt = _Filtration(a)
    out = []
    for bi in blocks:
        row = []
        for bj in blocks:
            ui, uj = bi.primitive_idempotent, bj.primitive_idempotent
            row.append(len(_cut(a, ui, filt.r, uj)) - len(_cut(a, ui, filt.r2, uj)))
        out.append(row)
    return out


class _LeftModules:
    """``P_j``, ``rP_j`` and ``T_j`` as subquotients of the left regular module."""

    def __init__(self, a: RealizedAlgebra):
        self.a = a
        car = a.carrier
        self.ops = [lambda v, m=car.left_matrix(car.basis_vector(b)): m @ v for b in range(car.dim)]
        self.basis = [car.basis_vector(b) for b in range(car.dim)]
        self.rad = span_basis(a.radical, a.dim)
        self._cache: dict = {}

    def _get(self, kind, j):
        key = (kind, j)
        if key not in self._cache:
            car = self.a.carrier
            u = semisimple_blocks(self.a)[j].primitive_idempotent
            p = span_basis((car.mul(b, u) for b in self.basis), car.dim)
            rp = span_basis((car.mul(x, u) for x in self.rad), car.dim)
            if kind == "P":
                x, y = p, []
            elif kind == "rP":
                x, y = rp, []
            else:
                x, y = p, rp
            self._cache[key] = subquotient_module(x, y, car.dim, self.ops)[1]
        return self._cache[key]

    def P(self, j):
        return self._get("P", j)

    def rP(self, j):
        return self._get("rP", j)

    def T(self, j):
        return self._get("T", j)


def ext_dims_resolution(a: RealizedAlgebra) -> list[list[int]]:
    """``dim Ext^1(T_j, T_i)`` from Hom spaces along ``0 -> rP_j -> P_j -> T_j -> 0``."""
    mods = _LeftModules(a)
    s = len(semisimple_blocks(a))
    out = []
    for i in range(s):
        row = []
        for j in range(s):
            h = mods.rP(j).hom_dim(mods.T(i))
            if i == j:
                h = h - mods.P(j).hom_dim(mods.T(j)) + mods.T(j).hom_dim(mods.T(j))
            row.append(h)
        out.append(row)
    return out


def simple_module_data(a: RealizedAlgebra) -> list[tuple[int, int]]:
    """``(dim_k S_i, dim_k End S_i)`` for the simple tops ``T_i``."""
    mods = _LeftModules(a)
    out = []
    for i in range(len(semisimple_blocks(a))):
        t = mods.T(i)
        out.append((t.dim, t.hom_dim(t)))
    return out


@dataclass
class ValuedExtQuiver:
    quiver: PseudoValuedQuiver
    ext_dims: list  # dim_k Ext^1(T_j, T_i) at [i][j]
    eps: list

    def valuation(self, i, j):
        return self.quiver.valuation(i, j)


def valued_ext_quiver(a: RealizedAlgebra, ext: list | None = None) -> ValuedExtQuiver:
    """Edge ``i -> j`` iff ``Ext^1(T_j, T_i) != 0``, valued by dimensions over the ``D``'s."""
    ext = ext if ext is not None else ext_dims_lemma(a)
    names = block_names(a)
    eps = [b.eps for b in semisimple_blocks(a)]
    edges = []
    for i, vi in enumerate(names):
        for j, vj in enumerate(names):
            if ext[i][j]:
                edges.append(ValuedEdge(vi, vj, ext[i][j] // eps[i], ext[i][j] // eps[j]))
    return ValuedExtQuiver(PseudoValuedQuiver(tuple(names), tuple(edges)), ext, eps)


def _edge_map(q) -> dict:
    if isinstance(q, ValuedQuiver):
        q = q.quiver
    if isinstance(q, ValuedExtQuiver):
        q = q.quiver
    return q.edge_map()


def check_pair_opposite(nvq, veq) -> bool:
    """Same vertices and orientation, with ``d_ij = e_ji`` and ``d_ji = e_ij`` on every edge."""
    vd = nvq.quiver.vertices if isinstance(nvq, ValuedQuiver) else nvq.vertices
    ve = veq.quiver.vertices if isinstance(veq, (ValuedQuiver, ValuedExtQuiver)) else veq.vertices
    if set(vd) != set(ve):
        return False
    d, e = _edge_map(nvq), _edge_map(veq)
    if set(d) != set(e):
        return False
    return all(d[k] == (e[k][1], e[k][0]) for k in d)


def symbolic_basic_quivers(eps: dict, t: dict) -> tuple[PseudoValuedQuiver, PseudoValuedQuiver, dict]:
    """Natural and Ext valued quivers of a basic algebra given only by ``eps_i`` and ``t_ij``.

    ``m_ij = dim_k u_i (r/r^2) u_j = t_ij eps_i eps_j``; then ``d = (t eps_i, t eps_j)``
    and ``e_ij = m_ij / eps_i``, ``e_ji = m_ij / eps_j``.
    """
    verts = tuple(eps)
    nat, ext, m = [], [], {}
    for (i, j), tij in t.items():
        if tij <= 0:
            continue
        m[(i, j)] = tij * eps[i] * eps[j]
        nat.append(ValuedEdge(i, j, tij * eps[i], tij * eps[j]))
        ext.append(ValuedEdge(i, j, m[(i, j)] // eps[i], m[(i, j)] // eps[j]))
    return PseudoValuedQuiver(verts, tuple(nat)), PseudoValuedQuiver(verts, tuple(ext)), m


# -- verification --------------------------------------------------------------------


def _base_of(a: RealizedAlgebra) -> RealizedAlgebra:
    if a.provenance == "blow-up":
        return a.base
    if a.provenance == "bound-quiver":
        return a
    raise ValueError("formula check needs blow-up or bound-quiver provenance (missing base)")


def verify_main_formula(a: RealizedAlgebra) -> Report:
    """``d_ji = e_ij n_j^2 t_ij / m_ij`` and ``d_ij = e_ji n_i^2 t_ij / m_ij`` on every edge.

    ``d`` and ``t`` come from the natural quiver of ``a``, ``m`` from the natural
    quiver of its basic algebra, ``e`` from Ext dimensions and ``n_i`` from the
    simple modules as ``dim S_i / dim End S_i``.
    """
    base = _base_of(a)
    rep = Report("main-formula", a.name)
    nq = natural_quiver(a)
    nvq = natural_valued_quiver(a, nq).quiver.edge_map()
    mq = natural_quiver(base)
    veq = valued_ext_quiver(a)
    e = veq.quiver.edge_map()
    n = [Fraction(s, end) for s, end in simple_module_data(a)]
    names = nq.vertices
    rep.add("vertex sets agree", sorted(map(str, names)), sorted(map(str, veq.quiver.vertices)))
    rep.add("orientations agree", sorted(map(str, nvq)), sorted(map(str, e)))
    for i, vi in enumerate(names):
        for j, vj in enumerate(names):
            m = mq.t[i][j]
            if not m or (vi, vj) not in nvq:
                continue
            t = nq.t[i][j]
            d_ij, d_ji = nvq[(vi, vj)]
            e_ij, e_ji = e.get((vi, vj), (0, 0))
            rep.add(f"d_{vj}{vi} = e_{vi}{vj} n_{vj}^2 t/m", Fraction(d_ji), e_ij * n[j] ** 2 * Fraction(t, m))
            rep.add(f"d_{vi}{vj} = e_{vj}{vi} n_{vi}^2 t/m", Fraction(d_ij), e_ji * n[i] ** 2 * Fraction(t, m))
    return rep


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def verify_ceil_formula(a: RealizedAlgebra) -> Report:
    """``t_ij = ceil(m_ij / (n_i n_j))`` on all pairs and the resulting ``d`` formulas."""
    base = _base_of(a)
    if any(b.eps != 1 for b in semisimple_blocks(a)):
        raise ValueError("ceiling formula needs k-splitting blocks")
    rep = Report("ceiling-formula", a.name)
    nq = natural_quiver(a)
    nvq = natural_valued_quiver(a, nq).quiver.edge_map()
    mq = natural_quiver(base)
    e = valued_ext_quiver(a).quiver.edge_map()
    n = [Fraction(s, end) for s, end in simple_module_data(a)]
    names = nq.vertices
    for i, vi in enumerate(names):
        for j, vj in enumerate(names):
            m = mq.t[i][j]
            ceil = _ceil_frac(Fraction(m) / (n[i] * n[j]))
            rep.add(f"t_{vi}{vj} = ceil(m/(n_{vi} n_{vj}))", nq.t[i][j], ceil)
            if m and (vi, vj) in nvq:
                d_ij, d_ji = nvq[(vi, vj)]
                e_ij, e_ji = e.get((vi, vj), (0, 0))
                rep.add(f"d_{vj}{vi} = e_{vi}{vj} n_{vj}^2 ceil/m", Fraction(d_ji), e_ij * n[j] ** 2 * Fraction(ceil, m))
                rep.add(f"d_{vi}{vj} = e_{vj}{vi} n_{vi}^2 ceil/m", Fraction(d_ij), e_ji * n[i] ** 2 * Fraction(ceil, m))
    return rep


def morita_contrast(a: RealizedAlgebra) -> Report:
    """Ext-quivers of a blow-up and its base agree; natural valued quivers differ iff some ``n_i > 1``."""
    if a.provenance != "blow-up":
        raise ValueError("Morita comparison needs a blow-up")
    rep = Report("morita", a.name)
    rep.add("ext quiver of blow-up = ext quiver of base",
            sorted(valued_ext_quiver(a).quiver.edge_map().items(), key=repr),
            sorted(valued_ext_quiver(a.base).quiver.edge_map().items(), key=repr))
    differs = (natural_valued_quiver(a).quiver.edge_map() != natural_valued_quiver(a.base).quiver.edge_map())
    expected = any(n > 1 for n in a.multiplicities.values())
    rep.add("natural valued quivers differ", differs, expected)
    return rep


def verify_algebra(a: RealizedAlgebra) -> Report:
    """Every identity applicable to ``a``."""
    rep = Report("verify", a.name)
    lemma = ext_dims_lemma(a)
    rep.add("ext dims: cut route = resolution route", lemma, ext_dims_resolution(a))
    if a.provenance == "bound-quiver":
        rep.add("trace-form radical = arrow-ideal radical",
                span_basis(radical_traceform(a.carrier), a.dim), span_basis(a.radical, a.dim))
    nq = natural_quiver(a)
    nvq = natural_valued_quiver(a, nq)
    for e in nvq.edges:
        rep.add(f"d_ij eps_j = d_ji eps_i on {e.source}->{e.target}",
                e.d_st * nvq.witness[e.target], e.d_ts * nvq.witness[e.source])
    rep.add("natural valued quiver admits a witness", valuation_witness(nvq.quiver) is not None, True)
    veq = valued_ext_quiver(a, lemma)
    basic = all(b.n == 1 for b in semisimple_blocks(a))
    if basic:
        rep.add("pair-opposite (natural vs ext)", check_pair_opposite(nvq, veq), True)
    if a.provenance in ("blow-up", "bound-quiver"):
        rep.extend(verify_main_formula(a), "main: ")
        rep.extend(verify_ceil_formula(a), "ceil: ")
    if a.provenance == "blow-up":
        rep.extend(morita_contrast(a), "morita: ")
    return rep

