"""JSON input documents: validation, canonical form and object builders.

Every document is an object with a ``kind`` tag.  ``load_document`` checks
the schema and returns the canonical form (a plain dict); ``build`` turns a
canonical document into library objects.  Problems raise :class:`InputError`
carrying a JSON path such as ``$.arrows[2].target``.

Scalars are integers or ``"p/q"`` strings; the canonical form writes
integers as JSON numbers and everything else as strings.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from pathlib import Path as FsPath

from .algebra import (BoundQuiverPresentation, NotAdmissibleError, RealizedAlgebra, SemisimpleSpec,
                      blow_up, realize_bound_quiver, split_semisimple)
from .exactla import ExactMatrix
from .gpa import GPAlgebra, gpa_build
from .modulation import (ALG_CLOSED_CHAR0, ConcreteBimodule, GroupData, GroupPair, GroupSpeciesSpec,
                         PseudoModulation, SymbolicBimodule, from_group_species, standard_bimodule)
from .quiver import Arrow, Quiver
from .reps import ModulationRep, VertexModule, random_rep, simple_right_modules

KINDS = ("quiver", "bound-quiver-algebra", "blow-up", "gpa", "modulation", "group-species",
         "representation", "differential")


class InputError(ValueError):
    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path


def _type(obj, types, path, what):
    if isinstance(obj, bool) and bool not in (types if isinstance(types, tuple) else (types,)):
        raise InputError(path, f"expected {what}, got a boolean")
    if not isinstance(obj, types):
        raise InputError(path, f"expected {what}, got {type(obj).__name__}")
    return obj


def _req(obj: dict, key: str, path: str):
    if key not in obj:
        raise InputError(path, f"missing required field {key!r}")
    return obj[key]


def _no_extra(obj: dict, allowed, path: str):
    extra = sorted(set(obj) - set(allowed))
    if extra:
        raise InputError(path, f"unknown field(s) {', '.join(map(repr, extra))}")


def _count(x, path, minimum=0) -> int:
    _type(x, int, path, "an integer")
    if x < minimum:
        raise InputError(path, f"must be >= {minimum}")
    return x


def _scalar(x, path) -> Fraction:
    if isinstance(x, bool):
        raise InputError(path, "expected a scalar, got a boolean")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError):
            raise InputError(path, f"cannot read {x!r} as a rational \"p/q\"") from None
    raise InputError(path, f"expected a scalar, got {type(x).__name__}")


def scalar_out(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _vertex(x, path):
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise InputError(path, "vertex ids are integers or strings")
    return x


def _matrix(x, path, shape=None) -> list:
    _type(x, list, path, "a matrix (list of rows)")
    rows = []
    width = None
    for r, row in enumerate(x):
        _type(row, list, f"{path}[{r}]", "a row")
        if width is None:
            width = len(row)
        elif len(row) != width:
            raise InputError(f"{path}[{r}]", "ragged matrix")
        rows.append([scalar_out(_scalar(v, f"{path}[{r}][{c}]")) for c, v in enumerate(row)])
    if shape is not None:
        got = (len(rows), width if width is not None else shape[1])
        if got != shape:
            raise InputError(path, f"expected shape {shape[0]}x{shape[1]}, got {got[0]}x{got[1]}")
    return rows


def _to_matrix(rows, ncols: int) -> ExactMatrix:
    return ExactMatrix(([Fraction(v) if isinstance(v, int) else Fraction(v) for v in r] for r in rows), ncols=ncols)


# -- normalisers ---------------------------------------------------------------------


def _norm_quiver(obj, path) -> dict:
    _type(obj, dict, path, "an object")
    verts = _type(_req(obj, "vertices", path), list, f"{path}.vertices", "a list")
    vs = [_vertex(v, f"{path}.vertices[{k}]") for k, v in enumerate(verts)]
    keys = [str(v) for v in vs]
    if len(set(keys)) != len(keys):
        raise InputError(f"{path}.vertices", "duplicate vertex ids")
    arrows = []
    names = set()
    for k, a in enumerate(_type(obj.get("arrows", []), list, f"{path}.arrows", "a list")):
        p = f"{path}.arrows[{k}]"
        if isinstance(a, list):
            if len(a) != 3:
                raise InputError(p, "arrow lists are [name, source, target]")
            a = {"name": a[0], "source": a[1], "target": a[2]}
        _type(a, dict, p, "an arrow object")
        _no_extra(a, ("name", "source", "target"), p)
        name = _type(_req(a, "name", p), str, f"{p}.name", "a string")
        if name in names:
            raise InputError(f"{p}.name", f"duplicate arrow id {name!r}")
        names.add(name)
        ends = {}
        for end in ("source", "target"):
            v = _vertex(_req(a, end, p), f"{p}.{end}")
            if v not in vs:
                raise InputError(f"{p}.{end}", f"unknown vertex {v!r}")
            ends[end] = v
        arrows.append({"name": name, "source": ends["source"], "target": ends["target"]})
    return {"vertices": vs, "arrows": arrows}


def _quiver_of(q: dict) -> Quiver:
    return Quiver(tuple(q["vertices"]), tuple(Arrow(a["name"], a["source"], a["target"]) for a in q["arrows"]))


def _vertex_key(q_vertices, key, path):
    lookup = {str(v): v for v in q_vertices}
    if str(key) not in lookup:
        raise InputError(path, f"unknown vertex {key!r}")
    return lookup[str(key)]


def _norm_bound(obj, path) -> dict:
    _no_extra(obj, ("kind", "name", "quiver", "relations", "bound"), path)
    q = _norm_quiver(_req(obj, "quiver", path), f"{path}.quiver")
    names = {a["name"]: a for a in q["arrows"]}
    rels = []
    for k, rel in enumerate(_type(obj.get("relations", []), list, f"{path}.relations", "a list")):
        p = f"{path}.relations[{k}]"
        _type(rel, list, p, "a list of terms")
        if not rel:
            raise InputError(p, "empty relation")
        terms = []
        for t, term in enumerate(rel):
            tp = f"{p}[{t}]"
            _type(term, dict, tp, "a term object {coef, path}")
            _no_extra(term, ("coef", "path"), tp)
            coef = _scalar(term.get("coef", 1), f"{tp}.coef")
            arrows = _type(_req(term, "path", tp), list, f"{tp}.path", "a list of arrow names")
            for n, a in enumerate(arrows):
                if a not in names:
                    raise InputError(f"{tp}.path[{n}]", f"unknown arrow {a!r}")
            for n in range(len(arrows) - 1):
                if names[arrows[n]]["target"] != names[arrows[n + 1]]["source"]:
                    raise InputError(f"{tp}.path[{n + 1}]", "path is not composable")
            if not arrows:
                raise InputError(f"{tp}.path", "relations use paths of length >= 1")
            terms.append({"coef": scalar_out(coef), "path": list(arrows)})
        rels.append(terms)
    bound = _count(_req(obj, "bound", path), f"{path}.bound", 1)
    return {"kind": "bound-quiver-algebra", "name": obj.get("name", ""), "quiver": q,
            "relations": rels, "bound": bound}


def _norm_algebra_spec(obj, path) -> dict:
    _type(obj, dict, path, "an algebra object")
    _no_extra(obj, ("blocks", "symbolic"), path)
    if "blocks" in obj and "symbolic" in obj:
        raise InputError(path, "give either 'blocks' or 'symbolic'")
    if "symbolic" in obj:
        blocks = []
        for k, b in enumerate(_type(obj["symbolic"], list, f"{path}.symbolic", "a list of [n, eps]")):
            bp = f"{path}.symbolic[{k}]"
            _type(b, list, bp, "[n, eps]")
            if len(b) != 2:
                raise InputError(bp, "[n, eps]")
            blocks.append([_count(b[0], f"{bp}[0]", 1), _count(b[1], f"{bp}[1]", 1)])
        if not blocks:
            raise InputError(f"{path}.symbolic", "at least one block")
        return {"symbolic": blocks}
    blocks = _type(obj.get("blocks", [1]), list, f"{path}.blocks", "a list of block sizes")
    if not blocks:
        raise InputError(f"{path}.blocks", "at least one block")
    return {"blocks": [_count(b, f"{path}.blocks[{k}]", 1) for k, b in enumerate(blocks)]}


def _norm_gpa(obj, path) -> dict:
    _no_extra(obj, ("kind", "name", "quiver", "algebras", "degree_bound", "weight_bound"), path)
    q = _norm_quiver(_req(obj, "quiver", path), f"{path}.quiver")
    algs = {}
    for key, spec in _type(obj.get("algebras", {}), dict, f"{path}.algebras", "an object").items():
        v = _vertex_key(q["vertices"], key, f"{path}.algebras.{key}")
        spec = _norm_algebra_spec(spec, f"{path}.algebras.{key}")
        if "symbolic" in spec:
            raise InputError(f"{path}.algebras.{key}", "GPA vertex algebras must be concrete blocks")
        algs[str(v)] = spec
    out = {"kind": "gpa", "name": obj.get("name", ""), "quiver": q, "algebras": dict(sorted(algs.items()))}
    for k in ("degree_bound", "weight_bound"):
        if obj.get(k) is not None:
            out[k] = _count(obj[k], f"{path}.{k}")
    return out


def _norm_blowup(obj, path, base_dir) -> dict:
    _no_extra(obj, ("kind", "name", "base", "multiplicities"), path)
    base = _req(obj, "base", path)
    if isinstance(base, str):
        ref = base
        base_doc = _load_ref(ref, base_dir, f"{path}.base")
        if base_doc["kind"] != "bound-quiver-algebra":
            raise InputError(f"{path}.base", "base must be a bound-quiver-algebra")
        verts = base_doc["quiver"]["vertices"]
        base_out = ref
    else:
        _type(base, dict, f"{path}.base", "an object or a file name")
        base_doc = _norm_bound(base, f"{path}.base")
        verts = base_doc["quiver"]["vertices"]
        base_out = base_doc
    mult = {}
    for key, n in _type(_req(obj, "multiplicities", path), dict, f"{path}.multiplicities", "an object").items():
        v = _vertex_key(verts, key, f"{path}.multiplicities.{key}")
        mult[str(v)] = _count(n, f"{path}.multiplicities.{key}", 1)
    return {"kind": "blow-up", "name": obj.get("name", ""), "base": base_out, "multiplicities": dict(sorted(mult.items()))}


def _norm_modulation(obj, path) -> dict:
    _no_extra(obj, ("kind", "name", "vertices", "algebras", "bimodules", "regime"), path)
    verts = [_vertex(v, f"{path}.vertices[{k}]")
             for k, v in enumerate(_type(_req(obj, "vertices", path), list, f"{path}.vertices", "a list"))]
    if len({str(v) for v in verts}) != len(verts):
        raise InputError(f"{path}.vertices", "duplicate vertex ids")
    algs = {}
    for key, spec in _type(obj.get("algebras", {}), dict, f"{path}.algebras", "an object").items():
        v = _vertex_key(verts, key, f"{path}.algebras.{key}")
        algs[str(v)] = _norm_algebra_spec(spec, f"{path}.algebras.{key}")
    for v in verts:
        algs.setdefault(str(v), {"blocks": [1]})
    bims = []
    seen = set()
    for k, b in enumerate(_type(obj.get("bimodules", []), list, f"{path}.bimodules", "a list")):
        p = f"{path}.bimodules[{k}]"
        _type(b, dict, p, "a bimodule object")
        i = _vertex_key(verts, _req(b, "source", p), f"{p}.source")
        j = _vertex_key(verts, _req(b, "target", p), f"{p}.target")
        if (str(i), str(j)) in seen:
            raise InputError(p, f"second bimodule on ({i}, {j})")
        seen.add((str(i), str(j)))
        out = {"source": i, "target": j}
        ai, aj = algs[str(i)], algs[str(j)]
        if "multiplicities" in b:
            _no_extra(b, ("source", "target", "multiplicities"), p)
            if "blocks" not in ai or "blocks" not in aj:
                raise InputError(p, "multiplicities need concrete block algebras at both ends")
            rows = _type(b["multiplicities"], list, f"{p}.multiplicities", "a matrix")
            if len(rows) != len(ai["blocks"]):
                raise InputError(f"{p}.multiplicities", f"expected {len(ai['blocks'])} rows")
            mult = []
            for r, row in enumerate(rows):
                _type(row, list, f"{p}.multiplicities[{r}]", "a row")
                if len(row) != len(aj["blocks"]):
                    raise InputError(f"{p}.multiplicities[{r}]", f"expected {len(aj['blocks'])} entries")
                mult.append([_count(x, f"{p}.multiplicities[{r}][{c}]") for c, x in enumerate(row)])
            out["multiplicities"] = mult
        elif "left_actions" in b or "right_actions" in b:
            _no_extra(b, ("source", "target", "dim", "left_actions", "right_actions"), p)
            if "blocks" not in ai or "blocks" not in aj:
                raise InputError(p, "action matrices need concrete block algebras at both ends")
            dim = _count(_req(b, "dim", p), f"{p}.dim")
            for side, alg in (("left_actions", ai), ("right_actions", aj)):
                mats = _type(_req(b, side, p), list, f"{p}.{side}", "a list of matrices")
                n = sum(x * x for x in alg["blocks"])
                if len(mats) != n:
                    raise InputError(f"{p}.{side}", f"expected {n} matrices (one per basis element)")
                out[side] = [_matrix(m, f"{p}.{side}[{t}]", (dim, dim)) for t, m in enumerate(mats)]
            out["dim"] = dim
        else:
            _no_extra(b, ("source", "target", "d_ij", "d_ji", "free", "t", "dual"), p)
            out["d_ij"] = _count(_req(b, "d_ij", p), f"{p}.d_ij")
            out["d_ji"] = _count(_req(b, "d_ji", p), f"{p}.d_ji")
            out["free"] = bool(_type(b.get("free", False), bool, f"{p}.free", "a boolean"))
            if b.get("t") is not None:
                out["t"] = _count(b["t"], f"{p}.t")
            if b.get("dual") is not None:
                out["dual"] = _type(b["dual"], bool, f"{p}.dual", "a boolean")
        bims.append(out)
    regime = obj.get("regime")
    if regime is not None and regime != ALG_CLOSED_CHAR0:
        raise InputError(f"{path}.regime", f"only {ALG_CLOSED_CHAR0!r} is recognised")
    out = {"kind": "modulation", "name": obj.get("name", ""), "vertices": verts,
           "algebras": dict(sorted(algs.items())), "bimodules": bims}
    if regime:
        out["regime"] = regime
    return out


def _norm_group_species(obj, path) -> dict:
    _no_extra(obj, ("kind", "name", "index", "groups", "pairs", "regime"), path)
    index = [_vertex(v, f"{path}.index[{k}]")
             for k, v in enumerate(_type(_req(obj, "index", path), list, f"{path}.index", "a list"))]
    groups = {}
    gobj = _type(_req(obj, "groups", path), dict, f"{path}.groups", "an object")
    for v in index:
        p = f"{path}.groups.{v}"
        g = _type(_req(gobj, str(v), f"{path}.groups"), dict, p, "a group object")
        _no_extra(g, ("cyclic", "order", "blocks"), p)
        if "cyclic" in g:
            n = _count(g["cyclic"], f"{p}.cyclic", 1)
            data = GroupData.cyclic(n)
            groups[str(v)] = {"order": n, "blocks": [list(b) for b in data.blocks], "cyclic": n}
        else:
            order = _count(_req(g, "order", p), f"{p}.order", 1)
            blocks = []
            for k, b in enumerate(_type(_req(g, "blocks", p), list, f"{p}.blocks", "a list of [n, eps]")):
                _type(b, list, f"{p}.blocks[{k}]", "[n, eps]")
                if len(b) != 2:
                    raise InputError(f"{p}.blocks[{k}]", "[n, eps]")
                blocks.append([_count(b[0], f"{p}.blocks[{k}][0]", 1), _count(b[1], f"{p}.blocks[{k}][1]", 1)])
            total = sum(n * n * e for n, e in blocks)
            if total != order:
                raise InputError(f"{p}.blocks", f"blocks have total dimension {total}, group order is {order}")
            groups[str(v)] = {"order": order, "blocks": blocks}
    pairs = []
    for k, pr in enumerate(_type(obj.get("pairs", []), list, f"{path}.pairs", "a list")):
        p = f"{path}.pairs[{k}]"
        _type(pr, dict, p, "a pair object")
        i = _vertex_key(index, _req(pr, "source", p), f"{p}.source")
        j = _vertex_key(index, _req(pr, "target", p), f"{p}.target")
        out = {"source": i, "target": j}
        if "regular" in pr:
            _no_extra(pr, ("source", "target", "regular"), p)
            out["regular"] = _count(pr["regular"], f"{p}.regular", 1)
        elif "multiplicities" in pr:
            _no_extra(pr, ("source", "target", "multiplicities"), p)
            out["multiplicities"] = [[_count(x, f"{p}.multiplicities[{r}][{c}]") for c, x in enumerate(row)]
                                     for r, row in enumerate(pr["multiplicities"])]
        else:
            _no_extra(pr, ("source", "target", "ranks", "free"), p)
            ranks = _type(_req(pr, "ranks", p), list, f"{p}.ranks", "[d_ij, d_ji]")
            if len(ranks) != 2:
                raise InputError(f"{p}.ranks", "[d_ij, d_ji]")
            out["ranks"] = [_count(ranks[0], f"{p}.ranks[0]"), _count(ranks[1], f"{p}.ranks[1]")]
            out["free"] = bool(pr.get("free", False))
        pairs.append(out)
    regime = obj.get("regime")
    if regime is not None and regime != ALG_CLOSED_CHAR0:
        raise InputError(f"{path}.regime", f"only {ALG_CLOSED_CHAR0!r} is recognised")
    out = {"kind": "group-species", "name": obj.get("name", ""), "index": index, "groups": groups, "pairs": pairs}
    if regime:
        out["regime"] = regime
    return out


def _norm_representation(obj, path, base_dir) -> dict:
    _no_extra(obj, ("kind", "name", "modulation", "spaces", "maps", "random"), path)
    mod = _req(obj, "modulation", path)
    if isinstance(mod, str):
        mdoc = _load_ref(mod, base_dir, f"{path}.modulation")
        mod_out = mod
    else:
        mdoc = _norm_modulation(_type(mod, dict, f"{path}.modulation", "an object"), f"{path}.modulation")
        mod_out = mdoc
    if mdoc["kind"] != "modulation":
        raise InputError(f"{path}.modulation", "expected a modulation document")
    out = {"kind": "representation", "name": obj.get("name", ""), "modulation": mod_out}
    if "random" in obj:
        r = _type(obj["random"], dict, f"{path}.random", "an object")
        _no_extra(r, ("seed", "max_dim"), f"{path}.random")
        out["random"] = {"seed": _count(r.get("seed", 0), f"{path}.random.seed"),
                         "max_dim": _count(r.get("max_dim", 3), f"{path}.random.max_dim")}
        return out
    spaces = {}
    for key, sp in _type(_req(obj, "spaces", path), dict, f"{path}.spaces", "an object").items():
        v = _vertex_key(mdoc["vertices"], key, f"{path}.spaces.{key}")
        p = f"{path}.spaces.{key}"
        _type(sp, dict, p, "a space object")
        _no_extra(sp, ("counts", "dim", "actions"), p)
        if "counts" in sp:
            spaces[str(v)] = {"counts": [_count(c, f"{p}.counts[{k}]") for k, c in enumerate(sp["counts"])]}
        else:
            dim = _count(_req(sp, "dim", p), f"{p}.dim")
            spaces[str(v)] = {"dim": dim, "actions": [_matrix(m, f"{p}.actions[{k}]", (dim, dim))
                                                      for k, m in enumerate(_req(sp, "actions", p))]}
    maps = []
    for k, mp in enumerate(_type(obj.get("maps", []), list, f"{path}.maps", "a list")):
        p = f"{path}.maps[{k}]"
        _type(mp, dict, p, "a map object")
        _no_extra(mp, ("source", "target", "matrix"), p)
        maps.append({"source": _vertex_key(mdoc["vertices"], _req(mp, "source", p), f"{p}.source"),
                     "target": _vertex_key(mdoc["vertices"], _req(mp, "target", p), f"{p}.target"),
                     "matrix": _matrix(_req(mp, "matrix", p), f"{p}.matrix")})
    out["spaces"] = dict(sorted(spaces.items()))
    out["maps"] = maps
    return out


def _norm_differential(obj, path, base_dir) -> dict:
    _no_extra(obj, ("kind", "name", "gpa", "images"), path)
    g = _req(obj, "gpa", path)
    if isinstance(g, str):
        gdoc = _load_ref(g, base_dir, f"{path}.gpa")
        if gdoc["kind"] != "gpa":
            raise InputError(f"{path}.gpa", "expected a gpa document")
        g_out = g
    else:
        g_out = _norm_gpa(_type(g, dict, f"{path}.gpa", "an object"), f"{path}.gpa")
    images = _type(_req(obj, "images", path), dict, f"{path}.images", "an object")
    for k, v in images.items():
        _type(v, str, f"{path}.images.{k}", "an element literal")
    return {"kind": "differential", "name": obj.get("name", ""), "gpa": g_out,
            "images": dict(sorted(images.items()))}


def _load_ref(ref: str, base_dir, path) -> dict:
    target = FsPath(base_dir or ".") / ref
    if not target.exists():
        raise InputError(path, f"referenced file {ref!r} not found")
    return load_file(target)


def load_document(obj, base_dir=None) -> dict:
    """Validate and return the canonical form of a parsed JSON document."""
    _type(obj, dict, "$", "a JSON object")
    kind = _req(obj, "kind", "$")
    if kind not in KINDS:
        raise InputError("$.kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    if "name" in obj:
        _type(obj["name"], str, "$.name", "a string")
    if kind == "quiver":
        _no_extra(obj, ("kind", "name", "vertices", "arrows"), "$")
        out = {"kind": "quiver", "name": obj.get("name", "")}
        out.update(_norm_quiver(obj, "$"))
        return out
    if kind == "bound-quiver-algebra":
        return _norm_bound(obj, "$")
    if kind == "blow-up":
        return _norm_blowup(obj, "$", base_dir)
    if kind == "gpa":
        return _norm_gpa(obj, "$")
    if kind == "modulation":
        return _norm_modulation(obj, "$")
    if kind == "group-species":
        return _norm_group_species(obj, "$")
    if kind == "representation":
        return _norm_representation(obj, "$", base_dir)
    return _norm_differential(obj, "$", base_dir)


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_file(path) -> dict:
    path = FsPath(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError("$", f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError("$", f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    doc = load_document(obj, base_dir=path.parent)
    doc["_base_dir"] = str(path.parent)
    return doc


def strip_private(doc: dict) -> dict:
    return {k: v for k, v in doc.items() if not k.startswith("_")}


def corpus_dir() -> FsPath:
    env = os.environ.get("QUIVERFORGE_CORPUS")
    if env:
        return FsPath(env)
    return FsPath(__file__).resolve().parent / "corpus"


# -- builders ------------------------------------------------------------------------


def _sub(doc, key):
    """A referenced or inline sub-document, in canonical form."""
    x = doc[key]
    if isinstance(x, str):
        return load_file(FsPath(doc.get("_base_dir", ".")) / x)
    return x


def build_quiver(doc: dict) -> Quiver:
    if doc["kind"] == "quiver":
        return _quiver_of(doc)
    if doc["kind"] in ("bound-quiver-algebra", "gpa"):
        return _quiver_of(doc["quiver"])
    if doc["kind"] == "blow-up":
        return _quiver_of(_sub(doc, "base")["quiver"])
    raise InputError("$.kind", f"a {doc['kind']} document has no quiver")


def build_algebra(doc: dict) -> RealizedAlgebra:
    kind = doc["kind"]
    try:
        if kind == "bound-quiver-algebra":
            rels = tuple(tuple((Fraction(t["coef"]), tuple(t["path"])) for t in rel) for rel in doc["relations"])
            p = BoundQuiverPresentation(_quiver_of(doc["quiver"]), rels, doc["bound"])
            return realize_bound_quiver(p, name=doc.get("name", ""))
        if kind == "blow-up":
            base_doc = _sub(doc, "base")
            base = build_algebra(base_doc)
            verts = base_doc["quiver"]["vertices"]
            mult = {_vertex_key(verts, k, "$.multiplicities"): n for k, n in doc["multiplicities"].items()}
            return blow_up(base, mult, name=doc.get("name", ""))
    except NotAdmissibleError as exc:
        raise InputError("$.bound", str(exc)) from None
    except ValueError as exc:
        raise InputError("$.relations" if kind == "bound-quiver-algebra" else "$", str(exc)) from None
    raise InputError("$.kind", f"expected an algebra document, got {kind!r}")


def _algebra_from_spec(spec):
    if "symbolic" in spec:
        return SemisimpleSpec(tuple(tuple(b) for b in spec["symbolic"]))
    return split_semisimple(spec["blocks"])


def build_gpa(doc: dict) -> GPAlgebra:
    if doc["kind"] != "gpa":
        raise InputError("$.kind", f"expected a gpa document, got {doc['kind']!r}")
    q = _quiver_of(doc["quiver"])
    algs = {_vertex_key(q.vertices, k, "$.algebras"): _algebra_from_spec(s) for k, s in doc["algebras"].items()}
    try:
        return gpa_build(q, algs, doc.get("degree_bound"), doc.get("weight_bound"), name=doc.get("name", ""))
    except ValueError as exc:
        raise InputError("$.degree_bound", str(exc)) from None


def build_modulation(doc: dict) -> PseudoModulation:
    if doc["kind"] == "group-species":
        return build_group_species(doc)
    if doc["kind"] != "modulation":
        raise InputError("$.kind", f"expected a modulation document, got {doc['kind']!r}")
    verts = doc["vertices"]
    algs = {_vertex_key(verts, k, "$.algebras"): _algebra_from_spec(s) for k, s in doc["algebras"].items()}
    bims = {}
    for n, b in enumerate(doc["bimodules"]):
        i, j = b["source"], b["target"]
        p = f"$.bimodules[{n}]"
        if "multiplicities" in b:
            bims[(i, j)] = standard_bimodule(algs[i], algs[j], b["multiplicities"])
        elif "left_actions" in b:
            dim = b["dim"]
            try:
                bims[(i, j)] = ConcreteBimodule(algs[i], algs[j], dim,
                                                [_to_matrix(m, dim) for m in b["left_actions"]],
                                                [_to_matrix(m, dim) for m in b["right_actions"]])
            except ValueError as exc:
                raise InputError(p, str(exc)) from None
        else:
            try:
                bims[(i, j)] = SymbolicBimodule(b["d_ij"], b["d_ji"], b["free"], b.get("t"), b.get("dual"))
            except ValueError as exc:
                raise InputError(p, str(exc)) from None
    return PseudoModulation(verts, algs, bims, regime=doc.get("regime"), name=doc.get("name", ""))


def build_group_species(doc: dict) -> PseudoModulation:
    groups = {}
    for v in doc["index"]:
        g = doc["groups"][str(v)]
        groups[v] = GroupData(g["order"], tuple(tuple(b) for b in g["blocks"]))
    pairs = {}
    for n, pr in enumerate(doc["pairs"]):
        key = (pr["source"], pr["target"])
        if "regular" in pr:
            pairs[key] = GroupPair("regular", t=pr["regular"])
        elif "multiplicities" in pr:
            pairs[key] = GroupPair("multiplicities", multiplicities=tuple(map(tuple, pr["multiplicities"])))
        else:
            pairs[key] = GroupPair("ranks", d_ij=pr["ranks"][0], d_ji=pr["ranks"][1], free=pr["free"])
    spec = GroupSpeciesSpec(tuple(doc["index"]), groups, pairs, doc.get("regime"))
    try:
        m = from_group_species(spec)
    except ValueError as exc:
        raise InputError("$.pairs", str(exc)) from None
    m.name = doc.get("name", "")
    return m


def build_representation(doc: dict, seed: int | None = None) -> ModulationRep:
    mdoc = _sub(doc, "modulation")
    m = build_modulation(mdoc)
    if not m.is_concrete:
        raise InputError("$.modulation", "representations need a concrete modulation")
    if "random" in doc or seed is not None:
        r = doc.get("random", {"seed": 0, "max_dim": 3})
        return random_rep(m, r["seed"] if seed is None else seed, r.get("max_dim", 3))
    spaces = {}
    for v in m.vertices:
        sp = doc["spaces"].get(str(v), {"counts": [0] * len(m.algebras[v].blocks)})
        if "counts" in sp:
            if len(sp["counts"]) != len(m.algebras[v].blocks):
                raise InputError(f"$.spaces.{v}.counts", f"expected {len(m.algebras[v].blocks)} entries")
            spaces[v] = simple_right_modules(m.algebras[v], sp["counts"])
        else:
            if len(sp["actions"]) != m.algebras[v].dim:
                raise InputError(f"$.spaces.{v}.actions", f"expected {m.algebras[v].dim} matrices")
            spaces[v] = VertexModule(sp["dim"], tuple(_to_matrix(a, sp["dim"]) for a in sp["actions"]))
    maps = {}
    for n, mp in enumerate(doc["maps"]):
        key = (mp["source"], mp["target"])
        if key not in m.bimodules:
            raise InputError(f"$.maps[{n}]", f"no bimodule on {key}")
        ncols = spaces[key[0]].dim * m.bimodules[key].dim
        try:
            maps[key] = _to_matrix(mp["matrix"], ncols) if mp["matrix"] else ExactMatrix.zeros(0, ncols)
        except ValueError as exc:
            raise InputError(f"$.maps[{n}].matrix", str(exc)) from None
    try:
        return ModulationRep(m, spaces, maps)
    except ValueError as exc:
        raise InputError("$", str(exc)) from None


def build_differential(doc: dict):
    g = build_gpa(_sub(doc, "gpa"))
    images = {}
    for key, lit in doc["images"].items():
        try:
            src = g.parse(key)
        except ValueError as exc:
            raise InputError(f"$.images.{key}", str(exc)) from None
        if len(src.terms) != 1 or next(iter(src.terms.values())) != 1:
            raise InputError(f"$.images.{key}", "keys must name a single basis element")
        try:
            images[next(iter(src.terms))] = g.parse(lit)
        except ValueError as exc:
            raise InputError(f"$.images.{key}", str(exc)) from None
    return g, images
