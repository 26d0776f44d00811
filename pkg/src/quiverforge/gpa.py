"""Generalized path algebras ``k(Q, A)`` and truncated tensor algebras.

An A-path of degree ``n`` is a word ``b0 a1 b1 ... an bn`` where the ``a``s
form a path of ``Q`` and each ``b`` is a basis element of the algebra at the
vertex it sits on.  Products concatenate words and multiply the two
elements meeting at the junction.

Everything is kept inside a finite window: degree ``<= D`` and, optionally,
weight ``<= W`` where the weight adds the declared grading of the vertex
algebra elements to the degree.  Products that leave the window are dropped
and the result carries a sticky ``truncated`` flag.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .algebra import (StructureConstAlgebra, check_algebra_map, matrix_algebra,
                      truncated_path_algebra)
from .exactla import ONE, ZERO, ExactMatrix, scalar, format_scalar
from .modulation import ConcreteBimodule, PseudoModulation, bimodule_ranks, modulation_iso
from .modules import Subquotient
from .quiver import (Arrow, PseudoValuedQuiver, Quiver, ValuedEdge, ValuedQuiver,
                     enumerate_paths, omega)


@dataclass(frozen=True)
class APath:
    vertices: tuple
    arrows: tuple
    elems: tuple  # basis indices into the vertex algebras

    @property
    def degree(self) -> int:
        return len(self.arrows)


class GPAlgebra:
    def __init__(self, quiver: Quiver, algebras: Mapping, degree_bound: int | None = None,
                 weight_bound: int | None = None, name: str = ""):
        missing = [v for v in quiver.vertices if v not in algebras]
        if missing:
            raise ValueError(f"no vertex algebra for {missing}")
        if degree_bound is None:
            if not quiver.is_acyclic():
                raise ValueError("cyclic quiver needs a truncation degree")
            degree_bound = quiver.longest_path_length()
        if degree_bound < 0:
            raise ValueError("truncation degree must be non-negative")
        self.quiver = quiver
        self.algebras = {v: algebras[v] for v in quiver.vertices}
        self.degree_bound = degree_bound
        self.weight_bound = weight_bound
        self.name = name
        self.basis: list[APath] = []
        for p in enumerate_paths(quiver, degree_bound):
            verts = (p.source,) + tuple(quiver.arrow(a).target for a in p.arrows)
            ranges = [range(self.algebras[v].dim) for v in verts]
            for elems in itertools.product(*ranges):
                ap = APath(verts, p.arrows, elems)
                if weight_bound is None or self.weight(ap) <= weight_bound:
                    self.basis.append(ap)
        self.basis.sort(key=lambda ap: (ap.degree, self.weight(ap)))
        self.index = {ap: k for k, ap in enumerate(self.basis)}
        self._labels = self._label_map()

    def __repr__(self):
        return f"GPAlgebra(dim={self.dim}, D={self.degree_bound})"

    @property
    def dim(self) -> int:
        return len(self.basis)

    def weight(self, ap: APath) -> int:
        return ap.degree + sum(self.algebras[v].weights[b] for v, b in zip(ap.vertices, ap.elems))

    def graded_dims(self) -> list[int]:
        dims = [0] * (self.degree_bound + 1)
        for ap in self.basis:
            dims[ap.degree] += 1
        return dims

    def element(self, terms: Mapping, truncated: bool = False) -> "GPAElement":
        return GPAElement(self, terms, truncated)

    def basis_element(self, k: int) -> "GPAElement":
        return GPAElement(self, {k: ONE})

    def zero(self) -> "GPAElement":
        return GPAElement(self, {})

    def one(self) -> "GPAElement":
        terms = {}
        for v, a in self.algebras.items():
            for b, c in enumerate(a.unit):
                if c:
                    terms[self.index[APath((v,), (), (b,))]] = c
        return GPAElement(self, terms)

    def vertex_element(self, v, label: str | None = None) -> "GPAElement":
        """Unit of ``A_v``, or its basis element called ``label``."""
        a = self.algebras[v]
        if label is None:
            return GPAElement(self, {self.index[APath((v,), (), (b,))]: c
                                     for b, c in enumerate(a.unit) if c})
        b = a.labels.index(label)
        return self.basis_element(self.index[APath((v,), (), (b,))])

    def arrow_element(self, name: str) -> "GPAElement":
        """``1_s . a . 1_t`` for an arrow ``a: s -> t``."""
        arr = self.quiver.arrow(name)
        if self.degree_bound < 1:
            return GPAElement(self, {}, truncated=True)
        us = self.algebras[arr.source].unit
        ut = self.algebras[arr.target].unit
        terms = {}
        truncated = False
        for b, c in enumerate(us):
            for b2, c2 in enumerate(ut):
                if c and c2:
                    ap = APath((arr.source, arr.target), (name,), (b, b2))
                    if ap in self.index:
                        terms[self.index[ap]] = c * c2
                    else:
                        truncated = True
        return GPAElement(self, terms, truncated)

    # -- printing and parsing ------------------------------------------------

    def _label_map(self):
        owners: dict = {}
        for v, a in self.algebras.items():
            for lab in a.labels:
                owners.setdefault(lab, []).append(v)
        return owners

    def elem_token(self, v, b: int) -> str:
        a = self.algebras[v]
        if a.dim == 1:
            return f"({v})"
        lab = a.labels[b]
        if len(self._labels.get(lab, [])) == 1 and str(lab) not in {str(x) for x in self.algebras}:
            return f"({lab})"
        return f"({v}:{lab})"

    def path_label(self, ap: APath) -> str:
        parts = [self.elem_token(ap.vertices[0], ap.elems[0])]
        for a, v, b in zip(ap.arrows, ap.vertices[1:], ap.elems[1:]):
            parts.append(a)
            parts.append(self.elem_token(v, b))
        return " ".join(parts)

    def parse(self, text: str) -> "GPAElement":
        return parse_element(self, text)


class GPAElement:
    """Finite linear combination of A-paths; ``truncated`` is sticky."""

    __slots__ = ("parent", "terms", "truncated")

    def __init__(self, parent: GPAlgebra, terms: Mapping, truncated: bool = False):
        self.parent = parent
        self.terms = {k: scalar(c) for k, c in terms.items() if c}
        self.truncated = truncated

    def _check(self, other):
        if not isinstance(other, GPAElement) or other.parent is not self.parent:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        self._check(other)
        terms = dict(self.terms)
        for k, c in other.terms.items():
            terms[k] = terms.get(k, ZERO) + c
        return GPAElement(self.parent, terms, self.truncated or other.truncated)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "GPAElement":
        c = scalar(c)
        return GPAElement(self.parent, {k: c * v for k, v in self.terms.items()}, self.truncated)

    def __mul__(self, other):
        return gpa_multiply(self, other)

    def __eq__(self, other):
        if not isinstance(other, GPAElement):
            return NotImplemented
        return self.parent is other.parent and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def vector(self) -> tuple:
        v = [ZERO] * self.parent.dim
        for k, c in self.terms.items():
            v[k] = c
        return tuple(v)

    @classmethod
    def from_vector(cls, parent: GPAlgebra, vec: Sequence) -> "GPAElement":
        return cls(parent, {k: c for k, c in enumerate(vec) if c})

    def degrees(self) -> set:
        return {self.parent.basis[k].degree for k in self.terms}

    def __repr__(self):
        return f"GPAElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for k in sorted(self.terms):
            c = self.terms[k]
            lab = self.parent.path_label(self.parent.basis[k])
            out.append(lab if c == 1 else f"{format_scalar(c)} * {lab}")
        return " + ".join(out)


def gpa_multiply(x: GPAElement, y: GPAElement) -> GPAElement:
    """Concatenate A-paths, multiplying the junction elements in the vertex algebra."""
    x._check(y)
    g = x.parent
    out: dict = {}
    truncated = x.truncated or y.truncated
    for k1, c1 in x.terms.items():
        p = g.basis[k1]
        for k2, c2 in y.terms.items():
            q = g.basis[k2]
            if p.vertices[-1] != q.vertices[0]:
                continue
            if p.degree + q.degree > g.degree_bound or (
                    g.weight_bound is not None and g.weight(p) + g.weight(q) > g.weight_bound):
                truncated = True
                continue
            v = q.vertices[0]
            for c, val in g.algebras[v].table[p.elems[-1]][q.elems[0]]:
                ap = APath(p.vertices + q.vertices[1:], p.arrows + q.arrows,
                           p.elems[:-1] + (c,) + q.elems[1:])
                k = g.index.get(ap)
                if k is None:
                    truncated = True
                    continue
                out[k] = out.get(k, ZERO) + c1 * c2 * val
    return GPAElement(g, out, truncated)


_TOKEN = re.compile(r"\s*(?:(?P<paren>\([^()]*\))|(?P<coef>-?\d+(?:/\d+)?)\s*\*|(?P<sign>[+-])|(?P<name>[^\s()+*]+))")


def _tokenize(text: str):
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse element literal at column {pos + 1}: {text[pos:pos + 10]!r}")
        kind = m.lastgroup
        yield kind, m.group(kind), pos + 1
        pos = m.end()


def parse_element(g: GPAlgebra, text: str) -> GPAElement:
    """Parse ``coef * (b0) a1 (b1) ... + ...``.

    ``(label)`` names a basis element of some vertex algebra, ``(v:label)``
    pins the vertex, ``(v)`` is the unit of ``A_v``; bare words are arrows.
    Factors multiply left to right; a missing junction element means the unit.
    """
    if text.strip() == "0":
        return g.zero()
    terms: list = []
    sign = ONE
    coef = ONE
    factors: list = []

    def flush(pos):
        nonlocal factors, coef
        if not factors:
            raise ValueError(f"empty term before column {pos}")
        terms.append((sign * coef, factors))
        factors = []
        coef = ONE

    for kind, tok, pos in _tokenize(text):
        if kind == "sign":
            if factors:
                flush(pos)
            elif terms or coef != ONE:
                raise ValueError(f"unexpected sign at column {pos}")
            sign = ONE if tok == "+" else -ONE
        elif kind == "coef":
            if factors:
                raise ValueError(f"coefficient must precede the term at column {pos}")
            coef *= Fraction(tok)
        else:
            factors.append((kind, tok, pos))
    if factors:
        flush(len(text) + 1)
    if not terms:
        raise ValueError("empty element literal")
    total = g.zero()
    for c, fs in terms:
        total = total + _term(g, fs).scale(c)
    return total


def _term(g: GPAlgebra, factors) -> GPAElement:
    arrows = {a.name: a for a in g.quiver.arrows}
    resolved = []
    for n, (kind, tok, pos) in enumerate(factors):
        if kind == "name":
            if tok not in arrows:
                raise ValueError(f"unknown arrow {tok!r} at column {pos}")
            resolved.append(g.arrow_element(tok))
            continue
        body = tok[1:-1].strip()
        vertex_names = {str(v): v for v in g.algebras}
        if ":" in body:
            vs, lab = body.split(":", 1)
            if vs not in vertex_names:
                raise ValueError(f"unknown vertex {vs!r} at column {pos}")
            v = vertex_names[vs]
            if lab not in g.algebras[v].labels:
                raise ValueError(f"vertex {vs} has no basis element {lab!r} (column {pos})")
            resolved.append(g.vertex_element(v, lab))
            continue
        if body in vertex_names:
            # a vertex name always means the unit of that vertex algebra
            resolved.append(g.vertex_element(vertex_names[body]))
            continue
        owners = g._labels.get(body, [])
        if len(owners) > 1:
            # disambiguate by a neighbouring arrow
            hint = None
            if n + 1 < len(factors) and factors[n + 1][0] == "name" and factors[n + 1][1] in arrows:
                hint = arrows[factors[n + 1][1]].source
            elif n > 0 and factors[n - 1][0] == "name" and factors[n - 1][1] in arrows:
                hint = arrows[factors[n - 1][1]].target
            if hint in owners:
                owners = [hint]
        if not owners:
            raise ValueError(f"unknown basis element {body!r} at column {pos}")
        if len(owners) > 1:
            raise ValueError(f"ambiguous basis element {body!r} at column {pos}; write (vertex:{body})")
        resolved.append(g.vertex_element(owners[0], body))
    out = resolved[0]
    for r in resolved[1:]:
        out = gpa_multiply(out, r)
    return out


def gpa_build(q: Quiver, algebras: Mapping | None = None, degree_bound: int | None = None,
              weight_bound: int | None = None, name: str = "") -> GPAlgebra:
    """``k(Q, A)``; vertices without an algebra get ``Q``."""
    algebras = dict(algebras or {})
    for v in q.vertices:
        algebras.setdefault(v, matrix_algebra(1))
    return GPAlgebra(q, algebras, degree_bound, weight_bound, name)


def gpa_structure_algebra(g: GPAlgebra) -> StructureConstAlgebra:
    """Structure constants of the truncated algebra on the A-path basis.

    Only meaningful when the window is closed under products, e.g. acyclic
    quivers with the default degree bound.
    """
    table = []
    for a in range(g.dim):
        row = []
        for b in range(g.dim):
            prod = gpa_multiply(g.basis_element(a), g.basis_element(b))
            row.append(tuple(sorted(prod.terms.items())))
        table.append(row)
    labels = [g.path_label(ap) for ap in g.basis]
    return StructureConstAlgebra(labels, table, g.one().vector())


# -- valued quivers and pre-modulations -------------------------------------------


def induced_valued_quiver(g: GPAlgebra) -> ValuedQuiver:
    """Edge ``i -> j`` when ``Omega(i, j)`` is nonempty, valued ``|Omega| dim A_i, |Omega| dim A_j``."""
    edges = []
    for i in g.quiver.vertices:
        for j in g.quiver.vertices:
            t = len(omega(g.quiver, i, j))
            if t:
                edges.append(ValuedEdge(i, j, t * g.algebras[i].dim, t * g.algebras[j].dim))
    witness = {v: g.algebras[v].dim for v in g.quiver.vertices}
    return ValuedQuiver(PseudoValuedQuiver(g.quiver.vertices, tuple(edges)), witness)


def free_bimodule(A: StructureConstAlgebra, B: StructureConstAlgebra, arrows: Sequence[str]) -> ConcreteBimodule:
    """``A Omega B`` on the basis ``a . w . b`` (``w`` running over ``arrows``)."""
    n = len(arrows)
    dim = A.dim * n * B.dim

    def idx(a, w, b):
        return (a * n + w) * B.dim + b

    left = []
    for x in range(A.dim):
        rows = [[ZERO] * dim for _ in range(dim)]
        for a in range(A.dim):
            for c, v in A.table[x][a]:
                for w in range(n):
                    for b in range(B.dim):
                        rows[idx(c, w, b)][idx(a, w, b)] += v
        left.append(ExactMatrix(rows, ncols=dim))
    right = []
    for y in range(B.dim):
        rows = [[ZERO] * dim for _ in range(dim)]
        for b in range(B.dim):
            for c, v in B.table[b][y]:
                for a in range(A.dim):
                    for w in range(n):
                        rows[idx(a, w, c)][idx(a, w, b)] += v
        right.append(ExactMatrix(rows, ncols=dim))
    return ConcreteBimodule(A, B, dim, left, right, check=False)


def premodulation_of(g: GPAlgebra) -> PseudoModulation:
    """The pre-modulation ``(A_i, A_i Omega(i, j) A_j)``; vertex algebras must be split semisimple."""
    for v, a in g.algebras.items():
        if a.blocks is None:
            raise ValueError(f"vertex {v!r}: pre-modulation needs split semisimple vertex algebras")
    bimodules = {}
    for i in g.quiver.vertices:
        for j in g.quiver.vertices:
            arrows = sorted(omega(g.quiver, i, j))
            if arrows:
                bimodules[(i, j)] = free_bimodule(g.algebras[i], g.algebras[j], arrows)
    return PseudoModulation(g.quiver.vertices, g.algebras, bimodules, name=g.name)


def gpa_from_premodulation(m: PseudoModulation, degree_bound: int | None = None) -> GPAlgebra:
    """``t_ij`` arrows ``i -> j`` where ``t_ij`` is the bimodule rank of ``_iM_j``."""
    if not m.is_concrete:
        raise ValueError("needs a concrete modulation")
    arrows = []
    for (i, j) in sorted(m.nonzero_pairs(), key=lambda p: (m.vertices.index(p[0]), m.vertices.index(p[1]))):
        r = bimodule_ranks(m.bimodules[(i, j)])
        if not r.free:
            raise ValueError(f"bimodule on ({i}, {j}) is not free; not a pre-modulation")
        for k in range(r.t):
            arrows.append(Arrow(f"a_{i}_{j}_{k + 1}", i, j))
    q = Quiver(m.vertices, tuple(arrows))
    return GPAlgebra(q, m.algebras, degree_bound, name=m.name)


def is_normal(g: GPAlgebra) -> bool:
    return all(a.blocks is not None and len(a.blocks) == 1 for a in g.algebras.values())


COUNTEREXAMPLE_NOTE = (
    "without simple vertex algebras the statement fails: one vertex carrying Q x Q and "
    "two vertices carrying Q each give isomorphic 2-dimensional algebras whose "
    "pre-modulations are not isomorphic"
)


def gpa_iso_check(g1: GPAlgebra, g2: GPAlgebra) -> dict | None:
    """Decide ``g1 ~ g2`` for normal GPAs on finite acyclic quivers via their pre-modulations."""
    for g in (g1, g2):
        if not is_normal(g):
            raise ValueError(f"theorem hypotheses not met; refusing: {g.name or 'input'} is not normal ({COUNTEREXAMPLE_NOTE})")
        if not g.quiver.is_acyclic():
            raise ValueError(f"theorem hypotheses not met; refusing: {g.name or 'input'} has oriented cycles")
    return modulation_iso(premodulation_of(g1), premodulation_of(g2))


# -- loop elimination ----------------------------------------------------------


@dataclass
class LoopElimination:
    quiver: Quiver  # loops removed
    loops: dict  # vertex -> loop names
    algebras: dict
    gpa: GPAlgebra
    truncation: int
    loop_count_valuation: dict  # (i, j) -> (d_ij, d_ji) from |Omega| |loops|
    rank_valuation: dict  # (i, j) -> (d_ij, d_ji) from |Omega| dim A
    anomalies: list = field(default_factory=list)
    words: dict = field(default_factory=dict)  # vertex -> loop word of each basis element


def loop_algebra(v, loops: Sequence[str], L: int):
    """Free algebra on ``loops`` truncated at word length ``L`` (a realized bound quiver algebra)."""
    q = Quiver((v,), tuple(Arrow(x, v, v) for x in loops))
    return truncated_path_algebra(q, L)


def loop_eliminate(q: Quiver, L: int) -> LoopElimination:
    if L < 1:
        raise ValueError("loop elimination needs L >= 1")
    loops = {v: [a.name for a in q.arrows if a.source == v and a.target == v] for v in q.vertices}
    rest = Quiver(q.vertices, tuple(a for a in q.arrows if a.source != a.target))
    algebras, words = {}, {}
    for v in q.vertices:
        if loops[v]:
            realized = loop_algebra(v, loops[v], L)
            algebras[v] = realized.carrier
            words[v] = [p.arrows for p in realized.paths]
        else:
            algebras[v] = matrix_algebra(1)
            words[v] = [()]
    g = GPAlgebra(rest, algebras, degree_bound=L, weight_bound=L)
    counted, ranks, anomalies = {}, {}, []
    for i in rest.vertices:
        for j in rest.vertices:
            t = len(omega(rest, i, j))
            if not t:
                continue
            counted[(i, j)] = (t * len(loops[i]), t * len(loops[j]))
            ranks[(i, j)] = (t * algebras[i].dim, t * algebras[j].dim)
            if 0 in counted[(i, j)]:
                anomalies.append(
                    f"edge {i}->{j}: loop-count valuation {counted[(i, j)]} has a zero entry "
                    f"on an existing edge (rank-based value {ranks[(i, j)]})")
    return LoopElimination(rest, loops, algebras, g, L, counted, ranks, anomalies, words)


def _apath_to_path(le: LoopElimination, ap: APath) -> tuple:
    """The word of ``q`` read off an A-path: loop words interleaved with arrows."""
    word = []
    for n, (v, b) in enumerate(zip(ap.vertices, ap.elems)):
        word.extend(le.words[v][b])
        if n < ap.degree:
            word.append(ap.arrows[n])
    return tuple(word)


def dimension_match_check(q: Quiver, L: int) -> bool:
    """Paths of ``q`` with at most ``L`` arrows against A-paths of total count at most ``L``."""
    if L < 0:
        raise ValueError("L must be non-negative")
    n_paths = len(enumerate_paths(q, L))
    if L == 0:
        return n_paths == len(q.vertices)
    return n_paths == loop_eliminate(q, L).gpa.dim


def loop_elimination_iso_check(q: Quiver, L: int) -> bool:
    """Read each A-path as a word of ``q`` and check this is a multiplicative bijection."""
    le = loop_eliminate(q, L)
    target = truncated_path_algebra(q, L)
    tindex = {tuple(p.arrows) if p.arrows else ("e", p.source): k for k, p in enumerate(target.paths)}
    images = []
    for ap in le.gpa.basis:
        w = _apath_to_path(le, ap)
        key = w if w else ("e", ap.vertices[0])
        if key not in tindex:
            return False
        images.append(target.carrier.basis_vector(tindex[key]))
    src = gpa_structure_algebra(le.gpa)
    return check_algebra_map(src, target.carrier, images)


# -- tensor algebras of modulations --------------------------------------------------


def _kron(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    rows = []
    for ra in a.rows:
        for rb in b.rows:
            rows.append([x * y for x in ra for y in rb])
    return ExactMatrix(rows, ncols=a.ncols * b.ncols)


def balanced_tensor(x: ConcreteBimodule, y: ConcreteBimodule) -> tuple[ConcreteBimodule, Subquotient]:
    """``X (x)_B Y`` as the quotient of ``X (x)_k Y`` by ``xb (x) y - x (x) by``."""
    p, q = x.dim, y.dim
    dim = p * q
    ident_p, ident_q = ExactMatrix.identity(p), ExactMatrix.identity(q)
    rel = []
    for rb, lb in zip(x.right_actions, y.left_actions):
        d = _kron(rb, ident_q) - _kron(ident_p, lb)
        rel.extend(d.columns())
    full = [tuple(ONE if k == i else ZERO for k in range(dim)) for i in range(dim)]
    sq = Subquotient(full, rel, dim)
    left = [sq.matrix_of(lambda v, m=_kron(la, ident_q): m @ v) for la in x.left_actions]
    right = [sq.matrix_of(lambda v, m=_kron(ident_p, rc): m @ v) for rc in y.right_actions]
    return ConcreteBimodule(x.left, y.right, sq.dim, left, right, check=False), sq


@dataclass
class TruncatedTensorAlgebra:
    modulation: PseudoModulation
    degree_bound: int
    components: dict  # vertex sequence -> ConcreteBimodule (length >= 2)

    def graded_dims(self) -> list[int]:
        dims = [sum(a.dim for a in self.modulation.algebras.values())] + [0] * self.degree_bound
        for seq, m in self.components.items():
            dims[len(seq) - 1] += m.dim
        return dims

    @property
    def dim(self) -> int:
        return sum(self.graded_dims())


def tensor_algebra_of_modulation(m: PseudoModulation, D: int) -> TruncatedTensorAlgebra:
    """Components ``M^{(x) n}`` for ``n <= D``, split by vertex sequence."""
    if not m.is_concrete:
        raise ValueError("tensor algebra needs concrete bimodules")
    pairs = [p for p in m.nonzero_pairs()]
    comps: dict = {}
    layer = {p: m.bimodules[p] for p in pairs} if D >= 1 else {}
    comps.update(layer)
    for _ in range(2, D + 1):
        nxt = {}
        for seq, x in layer.items():
            for (i, j) in pairs:
                if i == seq[-1]:
                    t, _ = balanced_tensor(x, m.bimodules[(i, j)])
                    if t.dim:
                        nxt[seq + (j,)] = t
        comps.update(nxt)
        layer = nxt
    return TruncatedTensorAlgebra(m, D, comps)


# -- differentials ------------------------------------------------------------------


@dataclass
class Verdict:
    name: str
    ok: bool
    first_violation: str | None = None


@dataclass
class DifferentialReport:
    grading: Verdict
    leibniz: Verdict
    square_zero: Verdict
    checked_pairs: int = 0

    @property
    def ok(self) -> bool:
        return self.grading.ok and self.leibniz.ok and self.square_zero.ok

    def verdicts(self) -> list[Verdict]:
        return [self.grading, self.leibniz, self.square_zero]


def differential_check(g: GPAlgebra, delta) -> DifferentialReport:
    """Check grading shift, signed Leibniz rule and ``delta^2 = 0`` on the basis.

    ``delta`` is an ``ExactMatrix`` (column ``k`` = image of basis element
    ``k``) or a mapping from basis index to :class:`GPAElement`.
    """
    n = g.dim
    if isinstance(delta, ExactMatrix):
        if delta.shape != (n, n):
            raise ValueError(f"differential matrix has shape {delta.shape}, expected {(n, n)}")
        images = [GPAElement.from_vector(g, delta.column(k)) for k in range(n)]
    else:
        images = [delta.get(k, g.zero()) for k in range(n)]
        for im in images:
            im._check(g.zero())

    def d(x: GPAElement) -> GPAElement:
        out = g.zero()
        for k, c in x.terms.items():
            out = out + images[k].scale(c)
        return out

    D = g.degree_bound
    grading = Verdict("grading", True)
    for k, ap in enumerate(g.basis):
        bad = [g.basis[j].degree for j in images[k].terms if g.basis[j].degree != ap.degree + 1]
        if bad:
            grading = Verdict("grading", False,
                              f"d({g.path_label(ap)}) = {images[k]} has degree {bad[0]}, expected {ap.degree + 1}")
            break
    leibniz = Verdict("leibniz", True)
    pairs = 0
    for a, pa in enumerate(g.basis):
        if not leibniz.ok:
            break
        for b, pb in enumerate(g.basis):
            if pa.degree + pb.degree + 1 > D:
                continue
            pairs += 1
            x, y = g.basis_element(a), g.basis_element(b)
            lhs = d(x * y)
            sign = -1 if pa.degree % 2 else 1
            rhs = d(x) * y + (x * d(y)).scale(sign)
            if lhs != rhs:
                leibniz = Verdict("leibniz", False,
                                  f"a = {g.path_label(pa)}, b = {g.path_label(pb)}: d(ab) = {lhs}, "
                                  f"d(a)b + (-1)^|a| a d(b) = {rhs}")
                break
    square = Verdict("square-zero", True)
    for k, ap in enumerate(g.basis):
        if ap.degree > D - 2:
            continue
        dd = d(images[k])
        if not dd.is_zero():
            square = Verdict("square-zero", False, f"d(d({g.path_label(ap)})) = {dd}")
            break
    return DifferentialReport(grading, leibniz, square, pairs)
