"""Quivers, pseudo-valued quivers and valued quivers.

Orientation convention used throughout the package: an arrow ``a`` has a
``source`` and a ``target``, and ``omega(q, i, j)`` is the set of arrows with
source ``i`` and target ``j``.  Paths are written in traversal order, so the
path ``(a, b)`` runs along ``a`` first and then ``b``; multiplication of paths
is concatenation in that order.
"""

from __future__ import annotations

import math
from collections import defaultdict, deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Hashable, Iterator, Mapping

DEFAULT_MAX_ISO_VERTICES = 10

Vertex = Hashable


@dataclass(frozen=True)
class Arrow:
    name: str
    source: Vertex
    target: Vertex


@dataclass(frozen=True)
class Path:
    source: Vertex
    target: Vertex
    arrows: tuple = ()

    @property
    def length(self) -> int:
        return len(self.arrows)

    def label(self) -> str:
        return f"e{self.source}" if not self.arrows else "*".join(self.arrows)


@dataclass(frozen=True)
class Quiver:
    vertices: tuple
    arrows: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        arrows = tuple(a if isinstance(a, Arrow) else Arrow(*a) for a in self.arrows)
        object.__setattr__(self, "arrows", arrows)
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        vs = set(self.vertices)
        names = set()
        for a in arrows:
            if a.source not in vs or a.target not in vs:
                raise ValueError(f"arrow {a.name!r} has an undeclared endpoint")
            if a.name in names:
                raise ValueError(f"duplicate arrow id {a.name!r}")
            names.add(a.name)

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise KeyError(f"unknown arrow {name!r}")

    def index(self, v: Vertex) -> int:
        try:
            return self.vertices.index(v)
        except ValueError:
            raise KeyError(f"unknown vertex {v!r}") from None

    def count_matrix(self) -> list[list[int]]:
        """``C[i][j]`` = number of arrows from vertex ``i`` to vertex ``j`` (by index)."""
        n = len(self.vertices)
        c = [[0] * n for _ in range(n)]
        for a in self.arrows:
            c[self.index(a.source)][self.index(a.target)] += 1
        return c

    def loops(self) -> list[Arrow]:
        return [a for a in self.arrows if a.source == a.target]

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        out = defaultdict(list)
        for a in self.arrows:
            indeg[a.target] += 1
            out[a.source].append(a.target)
        queue = deque(v for v, d in indeg.items() if d == 0)
        seen = 0
        while queue:
            v = queue.popleft()
            seen += 1
            for w in out[v]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        return seen == len(self.vertices)

    def longest_path_length(self) -> int:
        if not self.is_acyclic():
            raise ValueError("quiver has oriented cycles")
        best = {v: 0 for v in self.vertices}
        # relax |V| times; fine at corpus scale
        for _ in range(len(self.vertices)):
            for a in self.arrows:
                best[a.target] = max(best[a.target], best[a.source] + 1)
        return max(best.values(), default=0)

    def relabel(self, mapping: Mapping[Vertex, Vertex]) -> "Quiver":
        return Quiver(
            tuple(mapping[v] for v in self.vertices),
            tuple(Arrow(a.name, mapping[a.source], mapping[a.target]) for a in self.arrows),
        )


def omega(q: Quiver, i: Vertex, j: Vertex) -> frozenset:
    """Arrow names with source ``i`` and target ``j``."""
    q.index(i)
    q.index(j)
    return frozenset(a.name for a in q.arrows if a.source == i and a.target == j)


def enumerate_paths(q: Quiver, max_len: int) -> list[Path]:
    """All paths with at most ``max_len`` arrows, ordered by length then discovery."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    out_arrows = defaultdict(list)
    for a in q.arrows:
        out_arrows[a.source].append(a)
    layer = [Path(v, v, ()) for v in q.vertices]
    paths = list(layer)
    for _ in range(max_len):
        nxt = []
        for p in layer:
            for a in out_arrows[p.target]:
                nxt.append(Path(p.source, a.target, p.arrows + (a.name,)))
        paths.extend(nxt)
        layer = nxt
    return paths


# -- valued quivers ---------------------------------------------------------


@dataclass(frozen=True)
class ValuedEdge:
    source: Vertex
    target: Vertex
    d_st: int
    d_ts: int


@dataclass(frozen=True)
class PseudoValuedQuiver:
    vertices: tuple
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        edges = tuple(e if isinstance(e, ValuedEdge) else ValuedEdge(*e) for e in self.edges)
        object.__setattr__(self, "edges", edges)
        vs = set(self.vertices)
        seen = set()
        for e in edges:
            if e.source not in vs or e.target not in vs:
                raise ValueError(f"edge {e} has an undeclared endpoint")
            if (e.source, e.target) in seen:
                raise ValueError(f"more than one oriented edge {e.source}->{e.target}")
            seen.add((e.source, e.target))
            if e.d_st <= 0 or e.d_ts <= 0:
                raise ValueError(f"edge {e.source}->{e.target} needs both valuations nonzero")

    def valuation(self, i: Vertex, j: Vertex) -> tuple[int, int] | None:
        for e in self.edges:
            if (e.source, e.target) == (i, j):
                return e.d_st, e.d_ts
        return None

    def edge_map(self) -> dict:
        return {(e.source, e.target): (e.d_st, e.d_ts) for e in self.edges}


@dataclass(frozen=True)
class ValuedQuiver:
    quiver: PseudoValuedQuiver
    witness: Mapping[Vertex, int] = field(default_factory=dict)

    def __post_init__(self):
        for v in self.quiver.vertices:
            if self.witness.get(v, 0) <= 0:
                raise ValueError(f"witness missing or non-positive at {v!r}")
        for e in self.quiver.edges:
            if e.d_st * self.witness[e.target] != e.d_ts * self.witness[e.source]:
                raise ValueError(
                    f"d*eps relation fails on {e.source}->{e.target}: "
                    f"{e.d_st}*{self.witness[e.target]} != {e.d_ts}*{self.witness[e.source]}"
                )

    @property
    def vertices(self):
        return self.quiver.vertices

    @property
    def edges(self):
        return self.quiver.edges


def _edges_of(vq):
    return vq.quiver.edges if isinstance(vq, ValuedQuiver) else vq.edges


def sinks_and_sources(vq) -> tuple[frozenset, frozenset]:
    edges = _edges_of(vq)
    vertices = vq.vertices
    has_out = {e.source for e in edges}
    has_in = {e.target for e in edges}
    return (frozenset(v for v in vertices if v not in has_out),
            frozenset(v for v in vertices if v not in has_in))


def valuation_witness(pvq: PseudoValuedQuiver) -> dict | None:
    """Positive integers eps with d_ij eps_j = d_ji eps_i on every edge, or None.

    Ratios are propagated along a spanning forest, the remaining edges are
    checked, and each component is scaled to coprime integers.
    """
    adj = defaultdict(list)
    for e in pvq.edges:
        # eps_t = (d_ts / d_st) eps_s
        adj[e.source].append((e.target, Fraction(e.d_ts, e.d_st)))
        adj[e.target].append((e.source, Fraction(e.d_st, e.d_ts)))
    ratio: dict = {}
    components = []
    for root in pvq.vertices:
        if root in ratio:
            continue
        ratio[root] = Fraction(1)
        comp = [root]
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w, f in adj[v]:
                if w not in ratio:
                    ratio[w] = ratio[v] * f
                    comp.append(w)
                    queue.append(w)
        components.append(comp)
    for e in pvq.edges:
        if e.d_st * ratio[e.target] != e.d_ts * ratio[e.source]:
            return None
    eps = {}
    for comp in components:
        lcm_den = math.lcm(*(ratio[v].denominator for v in comp))
        ints = [int(ratio[v] * lcm_den) for v in comp]
        g = math.gcd(*ints)
        for v, x in zip(comp, ints):
            eps[v] = x // g
    return eps


def to_valued(pvq: PseudoValuedQuiver) -> ValuedQuiver | None:
    eps = valuation_witness(pvq)
    return None if eps is None else ValuedQuiver(pvq, eps)


# -- isomorphism ------------------------------------------------------------


def _structure(x):
    """Vertex list and a dict of (i, j) -> edge data for either quiver kind."""
    if isinstance(x, ValuedQuiver):
        x = x.quiver
    if isinstance(x, Quiver):
        data = defaultdict(int)
        for a in x.arrows:
            data[(a.source, a.target)] += 1
        return list(x.vertices), dict(data)
    if isinstance(x, PseudoValuedQuiver):
        return list(x.vertices), x.edge_map()
    raise TypeError(f"not a quiver: {type(x).__name__}")


def iter_isos(x, y, labels_x=None, labels_y=None,
              max_vertices: int = DEFAULT_MAX_ISO_VERTICES) -> Iterator[dict]:
    """Yield every vertex bijection x -> y preserving edges, valuations and labels."""
    vx, ex = _structure(x)
    vy, ey = _structure(y)
    if type(x) is not type(y) and not (
        {type(x), type(y)} <= {PseudoValuedQuiver, ValuedQuiver}
    ):
        raise TypeError("both arguments must be quivers of the same kind")
    if len(vx) != len(vy):
        return
    if len(vx) > max_vertices:
        raise ValueError(f"brute-force isomorphism capped at {max_vertices} vertices")
    lx = labels_x or {}
    ly = labels_y or {}

    def sig(vs, es, labels, v):
        outs = sorted(repr(d) for (s, t), d in es.items() if s == v and t != v)
        ins = sorted(repr(d) for (s, t), d in es.items() if t == v and s != v)
        return (repr(labels.get(v)), repr(es.get((v, v))), tuple(outs), tuple(ins))

    sx = {v: sig(vx, ex, lx, v) for v in vx}
    sy = {v: sig(vy, ey, ly, v) for v in vy}
    if sorted(sx.values()) != sorted(sy.values()):
        return
    theta: dict = {}
    used: set = set()

    def consistent(v, w):
        for u, u2 in theta.items():
            if ex.get((v, u)) != ey.get((w, u2)) or ex.get((u, v)) != ey.get((u2, w)):
                return False
        return ex.get((v, v)) == ey.get((w, w))

    def backtrack(k):
        if k == len(vx):
            yield dict(theta)
            return
        v = vx[k]
        for w in vy:
            if w in used or sx[v] != sy[w] or not consistent(v, w):
                continue
            theta[v] = w
            used.add(w)
            yield from backtrack(k + 1)
            del theta[v]
            used.discard(w)

    yield from backtrack(0)


def labeled_iso(x, y, labels_x=None, labels_y=None,
                max_vertices: int = DEFAULT_MAX_ISO_VERTICES) -> dict | None:
    """First structure-preserving vertex bijection, or None."""
    return next(iter_isos(x, y, labels_x, labels_y, max_vertices), None)


# -- DOT --------------------------------------------------------------------


def _dot_id(v) -> str:
    s = str(v).replace("\\", "\\\\").replace('"', '\\"')
    return f'"{s}"'


def to_dot(q, name: str = "Q") -> str:
    """DOT digraph text; valued edges carry a ``(d_ij,d_ji)`` label."""
    lines = [f"digraph {_dot_id(name)} {{"]
    if isinstance(q, ValuedQuiver):
        q = q.quiver
    for v in q.vertices:
        lines.append(f"  {_dot_id(v)};")
    if isinstance(q, Quiver):
        for a in q.arrows:
            lines.append(f"  {_dot_id(a.source)} -> {_dot_id(a.target)} [label={_dot_id(a.name)}];")
    else:
        for e in q.edges:
            lines.append(
                f"  {_dot_id(e.source)} -> {_dot_id(e.target)} "
                f"[label=\"({e.d_st},{e.d_ts})\"];"
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
