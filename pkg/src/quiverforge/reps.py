"""Representations of concrete pseudo-modulations and modules over their tensor algebras.

A representation gives each vertex a right ``A_i``-module ``V_i`` and each
nonzero ``_iM_j`` a map ``phi: V_i (x)_k M -> V_j`` stored on the plain
tensor product; balance over ``A_i`` and ``A_j``-linearity are checked.
The tensor index of ``v_q (x) m_k`` is ``q * dim M + k``.

``functor_F`` assembles ``V = (+) V_i`` with one action matrix per basis
element of ``A_0`` and of ``M``; ``functor_G`` cuts it back along the vertex
units.  Right actions compose in reverse: ``act[xy] = act[y] @ act[x]``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping

from .exactla import ONE, ZERO, Coordinates, ExactMatrix, nullspace, span_basis
from .gpa import GPAlgebra, GPAElement, premodulation_of
from .modulation import PseudoModulation
from .modules import intertwiners


def _kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([x * y for x in ra for y in rb])
    return ExactMatrix(rows, ncols=a.ncols * b.ncols)


def _combine(mats, coeffs, nrows, ncols) -> ExactMatrix:
    rows = [[ZERO] * ncols for _ in range(nrows)]
    for c, m in zip(coeffs, mats):
        if c:
            for i, r in enumerate(m.rows):
                for j, x in enumerate(r):
                    if x:
                        rows[i][j] += c * x
    return ExactMatrix(rows, ncols=ncols)


def _pairs(m: PseudoModulation) -> list:
    return sorted(m.nonzero_pairs(), key=lambda p: (m.vertices.index(p[0]), m.vertices.index(p[1])))


@dataclass
class VertexModule:
    """Right module over a vertex algebra: ``actions[a]`` is ``v -> v . b_a``."""

    dim: int
    actions: tuple

    def act(self, x) -> ExactMatrix:
        return _combine(self.actions, x, self.dim, self.dim)


def check_vertex_module(alg, vm: VertexModule) -> None:
    if len(vm.actions) != alg.dim:
        raise ValueError("one action matrix per algebra basis element")
    for m in vm.actions:
        if m.shape != (vm.dim, vm.dim):
            raise ValueError("action matrix has the wrong shape")
    if vm.act(alg.unit) != ExactMatrix.identity(vm.dim):
        raise ValueError("vertex module action is not unital")
    for a in range(alg.dim):
        for b in range(alg.dim):
            ab = alg.mul(alg.basis_vector(a), alg.basis_vector(b))
            if vm.act(ab) != vm.actions[b] @ vm.actions[a]:
                raise ValueError("vertex module action is not associative")


def simple_right_modules(alg, counts) -> VertexModule:
    """``(+) counts[k]`` copies of the row-vector module of block ``k``."""
    blocks = alg.blocks
    dim = sum(c * n for c, n in zip(counts, blocks))
    actions = []
    for a in range(alg.dim):
        rows = [[ZERO] * dim for _ in range(dim)]
        off = 0
        for k, (c, n) in enumerate(zip(counts, blocks)):
            for _ in range(c):
                for r in range(n):
                    for s in range(n):
                        if alg.matrix_units[k][r][s] == a:
                            # row vector times E_rs: coordinate r moves to s
                            rows[off + s][off + r] = ONE
                off += n
        actions.append(ExactMatrix(rows, ncols=dim))
    return VertexModule(dim, tuple(actions))


class ModulationRep:
    def __init__(self, modulation: PseudoModulation, spaces: Mapping, maps: Mapping | None = None,
                 check: bool = True):
        if not modulation.is_concrete:
            raise ValueError("representations need a concrete modulation")
        self.modulation = modulation
        self.spaces = {v: spaces[v] for v in modulation.vertices}
        maps = dict(maps or {})
        self.maps = {}
        for (i, j) in _pairs(modulation):
            dm = modulation.bimodules[(i, j)].dim
            shape = (self.spaces[j].dim, self.spaces[i].dim * dm)
            phi = maps.get((i, j))
            self.maps[(i, j)] = phi if phi is not None else ExactMatrix.zeros(*shape)
            if self.maps[(i, j)].shape != shape:
                raise ValueError(f"map on ({i}, {j}) has shape {self.maps[(i, j)].shape}, expected {shape}")
        extra = set(maps) - set(self.maps)
        if extra:
            raise ValueError(f"maps given for pairs without a bimodule: {sorted(extra, key=repr)}")
        if check:
            self.validate()

    def validate(self) -> None:
        m = self.modulation
        for v in m.vertices:
            check_vertex_module(m.algebras[v], self.spaces[v])
        for (i, j), phi in self.maps.items():
            bad = _map_violation(m, self.spaces[i], self.spaces[j], (i, j), phi)
            if bad:
                raise ValueError(f"map on ({i}, {j}) is not {bad}")

    def dims(self) -> dict:
        return {v: s.dim for v, s in self.spaces.items()}

    def __eq__(self, other):
        if not isinstance(other, ModulationRep):
            return NotImplemented
        return (self.modulation is other.modulation
                and all(self.spaces[v].dim == other.spaces[v].dim
                        and self.spaces[v].actions == other.spaces[v].actions for v in self.spaces)
                and self.maps == other.maps)


def _map_constraints(m: PseudoModulation, vi: VertexModule, vj: VertexModule, pair):
    """Pairs ``(S, D)`` with ``phi S = D phi`` for balance and right linearity."""
    i, j = pair
    bim = m.bimodules[pair]
    ident_v = ExactMatrix.identity(vi.dim)
    ident_m = ExactMatrix.identity(bim.dim)
    zero = ExactMatrix.zeros(vj.dim, vj.dim)
    out = []
    for a in range(m.algebras[i].dim):
        out.append((_kron(vi.actions[a], ident_m) - _kron(ident_v, bim.left_actions[a]), zero, "balanced"))
    for b in range(m.algebras[j].dim):
        out.append((_kron(ident_v, bim.right_actions[b]), vj.actions[b], "linear"))
    return out


def _map_violation(m, vi, vj, pair, phi) -> str | None:
    for s, d, what in _map_constraints(m, vi, vj, pair):
        if phi @ s != d @ phi:
            return "balanced over the source algebra" if what == "balanced" else "linear over the target algebra"
    return None


# -- modules over the tensor algebra ------------------------------------------------


class RightTModule:
    """Right module over ``T(M)`` given by ``A_0`` and degree-one actions.

    ``a0[(i, a)]`` acts by the ``a``-th basis element of ``A_i``;
    ``m1[(i, j, k)]`` by the ``k``-th basis element of ``_iM_j``.
    """

    def __init__(self, modulation: PseudoModulation, dim: int, a0: Mapping, m1: Mapping,
                 check: bool = True):
        self.modulation = modulation
        self.dim = dim
        self.a0 = dict(a0)
        self.m1 = dict(m1)
        if check:
            self.validate()

    def unit_of(self, i) -> ExactMatrix:
        alg = self.modulation.algebras[i]
        return _combine([self.a0[(i, a)] for a in range(alg.dim)], alg.unit, self.dim, self.dim)

    def act_m(self, pair, coeffs) -> ExactMatrix:
        i, j = pair
        n = self.modulation.bimodules[pair].dim
        return _combine([self.m1[(i, j, k)] for k in range(n)], coeffs, self.dim, self.dim)

    def act_path(self, pair_seq, basis_seq) -> ExactMatrix:
        """Action of ``m_1 (x) ... (x) m_n`` built up one factor at a time."""
        out = ExactMatrix.identity(self.dim)
        for (i, j), k in zip(pair_seq, basis_seq):
            out = self.m1[(i, j, k)] @ out
        return out

    def validate(self) -> None:
        m = self.modulation
        total = _combine([self.unit_of(i) for i in m.vertices], [ONE] * len(m.vertices), self.dim, self.dim)
        if total != ExactMatrix.identity(self.dim):
            raise ValueError("V . 1 != V: vertex units do not sum to the identity")
        for i in m.vertices:
            alg = m.algebras[i]
            for a in range(alg.dim):
                for b in range(alg.dim):
                    ab = alg.mul(alg.basis_vector(a), alg.basis_vector(b))
                    lhs = _combine([self.a0[(i, c)] for c in range(alg.dim)], ab, self.dim, self.dim)
                    if lhs != self.a0[(i, b)] @ self.a0[(i, a)]:
                        raise ValueError(f"A_{i} action is not associative")
            for i2 in m.vertices:
                if i2 != i:
                    for a in range(alg.dim):
                        for b in range(m.algebras[i2].dim):
                            if not (self.a0[(i2, b)] @ self.a0[(i, a)]).is_zero():
                                raise ValueError("distinct vertex algebras must act orthogonally")
        for (i, j) in _pairs(m):
            bim = m.bimodules[(i, j)]
            ui, uj = self.unit_of(i), self.unit_of(j)
            for k in range(bim.dim):
                x = self.m1[(i, j, k)]
                if x @ ui != x or uj @ x != x:
                    raise ValueError(f"generator {k} of ({i}, {j}) does not map V_{i} into V_{j}")
                for a in range(m.algebras[i].dim):
                    if self.act_m((i, j), bim.left_actions[a].column(k)) != x @ self.a0[(i, a)]:
                        raise ValueError(f"({i}, {j}) action is not balanced on the left")
                for b in range(m.algebras[j].dim):
                    if self.act_m((i, j), bim.right_actions[b].column(k)) != self.a0[(j, b)] @ x:
                        raise ValueError(f"({i}, {j}) action is not balanced on the right")

    def __eq__(self, other):
        if not isinstance(other, RightTModule):
            return NotImplemented
        return (self.modulation is other.modulation and self.dim == other.dim
                and self.a0 == other.a0 and self.m1 == other.m1)


def _offsets(rep: ModulationRep) -> dict:
    off, out = 0, {}
    for v in rep.modulation.vertices:
        out[v] = off
        off += rep.spaces[v].dim
    return out


def functor_F(rep: ModulationRep) -> RightTModule:
    m = rep.modulation
    off = _offsets(rep)
    dim = sum(s.dim for s in rep.spaces.values())
    a0 = {}
    for i in m.vertices:
        s = rep.spaces[i]
        for a in range(m.algebras[i].dim):
            rows = [[ZERO] * dim for _ in range(dim)]
            for p, r in enumerate(s.actions[a].rows):
                for q, x in enumerate(r):
                    if x:
                        rows[off[i] + p][off[i] + q] = x
            a0[(i, a)] = ExactMatrix(rows, ncols=dim)
    m1 = {}
    for (i, j), phi in rep.maps.items():
        dm = m.bimodules[(i, j)].dim
        for k in range(dm):
            rows = [[ZERO] * dim for _ in range(dim)]
            for p in range(rep.spaces[j].dim):
                for q in range(rep.spaces[i].dim):
                    x = phi.rows[p][q * dm + k]
                    if x:
                        rows[off[j] + p][off[i] + q] = x
            m1[(i, j, k)] = ExactMatrix(rows, ncols=dim)
    return RightTModule(m, dim, a0, m1, check=False)


def functor_F_morphism(rep: ModulationRep, target: ModulationRep, alpha: Mapping) -> ExactMatrix:
    so, to = _offsets(rep), _offsets(target)
    n = sum(s.dim for s in rep.spaces.values())
    t = sum(s.dim for s in target.spaces.values())
    rows = [[ZERO] * n for _ in range(t)]
    for v, a in alpha.items():
        for p, r in enumerate(a.rows):
            for q, x in enumerate(r):
                if x:
                    rows[to[v] + p][so[v] + q] = x
    return ExactMatrix(rows, ncols=n)


@dataclass
class VertexCut:
    basis: list
    coords: Coordinates = field(repr=False)


def _vertex_cuts(mod: RightTModule) -> dict:
    cuts = {}
    for i in mod.modulation.vertices:
        basis = span_basis(mod.unit_of(i).columns(), mod.dim)
        cuts[i] = VertexCut(basis, Coordinates(basis, mod.dim))
    if sum(len(c.basis) for c in cuts.values()) != mod.dim:
        raise ValueError("malformed module: V is not the sum of the V A_i")
    return cuts


def functor_G(mod: RightTModule) -> ModulationRep:
    m = mod.modulation
    cuts = _vertex_cuts(mod)
    spaces = {}
    for i in m.vertices:
        c = cuts[i]
        acts = []
        for a in range(m.algebras[i].dim):
            cols = [c.coords.coords(mod.a0[(i, a)] @ b) for b in c.basis]
            acts.append(ExactMatrix.from_columns(cols, len(c.basis)))
        spaces[i] = VertexModule(len(c.basis), tuple(acts))
    maps = {}
    for (i, j) in _pairs(m):
        dm = m.bimodules[(i, j)].dim
        ci, cj = cuts[i], cuts[j]
        cols = []
        for b in ci.basis:
            for k in range(dm):
                img = mod.m1[(i, j, k)] @ b
                try:
                    cols.append(cj.coords.coords(img))
                except ValueError:
                    raise ValueError(f"malformed module: V_{i} . M_{i}{j} is not inside V_{j}") from None
        maps[(i, j)] = ExactMatrix.from_columns(cols, len(cj.basis))
    return ModulationRep(m, spaces, maps)


def functor_G_morphism(src: RightTModule, dst: RightTModule, f: ExactMatrix) -> dict:
    cs, cd = _vertex_cuts(src), _vertex_cuts(dst)
    out = {}
    for i in src.modulation.vertices:
        cols = [cd[i].coords.coords(f @ b) for b in cs[i].basis]
        out[i] = ExactMatrix.from_columns(cols, len(cd[i].basis))
    return out


def check_rep_morphism(alpha: Mapping, src: ModulationRep, dst: ModulationRep) -> bool:
    """Each ``alpha_i`` is ``A_i``-linear and every square ``alpha_j phi = psi (alpha_i (x) 1)`` commutes."""
    m = src.modulation
    for v in m.vertices:
        a = alpha[v]
        if a.shape != (dst.spaces[v].dim, src.spaces[v].dim):
            return False
        for x, y in zip(src.spaces[v].actions, dst.spaces[v].actions):
            if a @ x != y @ a:
                return False
    for (i, j) in _pairs(m):
        ident = ExactMatrix.identity(m.bimodules[(i, j)].dim)
        if alpha[j] @ src.maps[(i, j)] != dst.maps[(i, j)] @ _kron(alpha[i], ident):
            return False
    return True


def roundtrip_check(rep: ModulationRep) -> bool:
    """``G(F(rep)) == rep`` and ``F(G(F(rep))) == F(rep)`` exactly."""
    mod = functor_F(rep)
    mod.validate()
    back = functor_G(mod)
    return back == rep and functor_F(back) == mod


# -- sampling -----------------------------------------------------------------------


def _random_combo(basis, rng: random.Random, span: int = 3):
    if not basis:
        return None
    coeffs = [rng.randint(-span, span) for _ in basis]
    n = len(basis[0])
    return tuple(sum((c * v[k] for c, v in zip(coeffs, basis) if c), ZERO) for k in range(n))


def random_rep(m: PseudoModulation, seed: int, max_dim: int = 3,
               counts: Mapping | None = None) -> ModulationRep:
    """Random representation: vertex modules from simple summands, maps from the solution space."""
    rng = random.Random(seed)
    spaces = {}
    for v in m.vertices:
        alg = m.algebras[v]
        if counts is not None:
            c = list(counts[v])
        else:
            c = [0] * len(alg.blocks)
            budget = rng.randint(1, max_dim)
            order = rng.sample(range(len(alg.blocks)), len(alg.blocks))
            for k in order:
                most = budget // alg.blocks[k]
                # the last block takes whatever budget is left
                c[k] = most if k == order[-1] else rng.randint(0, most)
                budget -= c[k] * alg.blocks[k]
        spaces[v] = simple_right_modules(alg, c)
    maps = {}
    for pair in _pairs(m):
        i, j = pair
        cons = _map_constraints(m, spaces[i], spaces[j], pair)
        rows, cols = spaces[j].dim, spaces[i].dim * m.bimodules[pair].dim
        basis = intertwiners([s for s, _, _ in cons], [d for _, d, _ in cons], cols, rows)
        flat = [tuple(x for r in b.rows for x in r) for b in basis]
        vec = _random_combo(flat, rng)
        if vec is None:
            maps[pair] = ExactMatrix.zeros(rows, cols)
        else:
            maps[pair] = ExactMatrix((vec[p * cols:(p + 1) * cols] for p in range(rows)), ncols=cols)
    return ModulationRep(m, spaces, maps)


def rep_morphism_space(src: ModulationRep, dst: ModulationRep) -> list[dict]:
    """Basis of all families ``(alpha_i)`` satisfying the morphism equations."""
    m = src.modulation
    layout, off = {}, 0
    for v in m.vertices:
        r, c = dst.spaces[v].dim, src.spaces[v].dim
        layout[v] = (off, r, c)
        off += r * c
    n = off
    eqs = []

    def var(v, p, q):
        o, _, c = layout[v]
        return o + p * c + q

    for v in m.vertices:
        _, r, c = layout[v]
        for x, y in zip(src.spaces[v].actions, dst.spaces[v].actions):
            # (alpha x - y alpha)[p][q]
            for p in range(r):
                for q in range(c):
                    eq = [ZERO] * n
                    for k in range(c):
                        if x.rows[k][q]:
                            eq[var(v, p, k)] += x.rows[k][q]
                    for k in range(r):
                        if y.rows[p][k]:
                            eq[var(v, k, q)] -= y.rows[p][k]
                    if any(eq):
                        eqs.append(eq)
    for (i, j) in _pairs(m):
        dm = m.bimodules[(i, j)].dim
        phi, psi = src.maps[(i, j)], dst.maps[(i, j)]
        _, rj, cj = layout[j]
        _, ri, ci = layout[i]
        for p in range(rj):
            for q in range(ci):
                for k in range(dm):
                    col = q * dm + k
                    eq = [ZERO] * n
                    # (alpha_j phi)[p][col]
                    for s in range(cj):
                        if phi.rows[s][col]:
                            eq[var(j, p, s)] += phi.rows[s][col]
                    # (psi (alpha_i x 1))[p][col] = sum_t psi[p][t*dm+k] alpha_i[t][q]
                    for t in range(ri):
                        x = psi.rows[p][t * dm + k]
                        if x:
                            eq[var(i, t, q)] -= x
                    if any(eq):
                        eqs.append(eq)
    if n == 0:
        return [{v: ExactMatrix.zeros(layout[v][1], layout[v][2]) for v in m.vertices}]
    if eqs:
        sol = nullspace(ExactMatrix(eqs))
    else:
        sol = [tuple(ONE if k == t else ZERO for k in range(n)) for t in range(n)]
    return [_unpack(vec, layout) for vec in sol]


def _unpack(vec, layout) -> dict:
    out = {}
    for v, (o, r, c) in layout.items():
        out[v] = ExactMatrix.zeros(r, c) if r == 0 or c == 0 else ExactMatrix(
            (vec[o + p * c:o + (p + 1) * c] for p in range(r)), ncols=c)
    return out


def random_morphism(src: ModulationRep, dst: ModulationRep, seed: int) -> dict:
    rng = random.Random(seed)
    basis = rep_morphism_space(src, dst)
    out = {}
    coeffs = [rng.randint(-3, 3) for _ in basis]
    for v in src.modulation.vertices:
        r, c = dst.spaces[v].dim, src.spaces[v].dim
        out[v] = ExactMatrix.zeros(r, c) if not basis else _combine_rect([b[v] for b in basis], coeffs, r, c)
    return out


def _combine_rect(mats, coeffs, r, c) -> ExactMatrix:
    if r == 0:
        return ExactMatrix.zeros(0, c)
    return _combine(mats, coeffs, r, c)


def compose(beta: Mapping, alpha: Mapping) -> dict:
    return {v: beta[v] @ alpha[v] for v in alpha}


# -- regular module -------------------------------------------------------------------


def regular_module(g: GPAlgebra) -> tuple[RightTModule, PseudoModulation]:
    """``k(Q, A)`` as a right module over itself, in the tensor-algebra presentation.

    Only exact when the degree window is closed under products (acyclic ``Q``
    with the default bound).
    """
    m = premodulation_of(g)
    dim = g.dim

    def right_mult(elem: GPAElement) -> ExactMatrix:
        cols = [(g.basis_element(k) * elem).vector() for k in range(dim)]
        return ExactMatrix.from_columns(cols, dim)

    a0 = {}
    for v in m.vertices:
        alg = m.algebras[v]
        for a in range(alg.dim):
            a0[(v, a)] = right_mult(g.vertex_element(v, alg.labels[a]))
    m1 = {}
    for (i, j) in _pairs(m):
        arrows = sorted(a.name for a in g.quiver.arrows if a.source == i and a.target == j)
        Ai, Aj = m.algebras[i], m.algebras[j]
        k = 0
        for x in range(Ai.dim):
            for w in arrows:
                for y in range(Aj.dim):
                    elem = g.vertex_element(i, Ai.labels[x]) * g.arrow_element(w) * g.vertex_element(j, Aj.labels[y])
                    m1[(i, j, k)] = right_mult(elem)
                    k += 1
    return RightTModule(m, dim, a0, m1), m
