"""Command-line front end.

Exit status is 0 when every requested check passes, 1 when a check fails
and 2 for input errors (missing files, malformed JSON, schema violations).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path as FsPath

from .documents import (InputError, build_algebra, build_differential, build_gpa, build_modulation,
                        build_quiver, build_representation, corpus_dir, load_file)
from .gpa import (differential_check, gpa_iso_check, induced_valued_quiver, is_normal, loop_eliminate,
                  loop_elimination_iso_check, dimension_match_check, premodulation_of)
from .modulation import classify, modulation_iso, pseudo_valued_quiver_of
from .natext import (ext_dims_lemma, ext_dims_resolution, natural_quiver, natural_valued_quiver,
                     valued_ext_quiver, verify_algebra)
from .quiver import DEFAULT_MAX_ISO_VERTICES, Arrow, PseudoValuedQuiver, Quiver, labeled_iso, to_dot
from .report import Report
from .reps import compose, functor_F, functor_F_morphism, random_morphism, roundtrip_check

ALGEBRA_KINDS = ("bound-quiver-algebra", "blow-up")


def resolve(path: str) -> FsPath:
    """The file itself, or a bundled corpus entry of the same name."""
    p = FsPath(path)
    if p.exists():
        return p
    alt = corpus_dir() / p.name
    if alt.exists():
        return alt
    raise InputError("$", f"cannot read {path}: no such file")


def _load(path: str) -> dict:
    return load_file(resolve(path))


def _subject(doc: dict, path: str) -> str:
    return doc.get("name") or FsPath(path).stem


def _need(doc: dict, kinds, what: str):
    if doc["kind"] not in kinds:
        raise InputError("$.kind", f"{what} needs a {' or '.join(kinds)} document, got {doc['kind']!r}")


def _emit(out, fmt: str, text: str, data: dict, dot: str | None = None) -> None:
    if fmt == "json":
        out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    elif fmt == "dot":
        if dot is None:
            raise InputError("$", "this command has no DOT output")
        out.write(dot)
    else:
        out.write(text)


def _edge_rows(pvq) -> list:
    return [{"source": e.source, "target": e.target, "valuation": [e.d_st, e.d_ts]} for e in pvq.edges]


def _edge_text(pvq) -> list:
    return [f"  {e.source} -> {e.target} ({e.d_st},{e.d_ts})" for e in pvq.edges]


def _report_out(out, fmt, rep: Report) -> bool:
    _emit(out, fmt, rep.to_text(), rep.to_dict())
    return rep.ok


# -- subcommands ---------------------------------------------------------------------


def cmd_natural_quiver(args, out) -> bool:
    doc = _load(args.file)
    _need(doc, ALGEBRA_KINDS, "natural-quiver")
    a = build_algebra(doc)
    nq = natural_quiver(a)
    names = nq.vertices
    arrows = []
    for i, vi in enumerate(names):
        for j, vj in enumerate(names):
            for k in range(nq.t[i][j]):
                arrows.append(Arrow(f"{vi}_{vj}_{k + 1}", vi, vj))
    q = Quiver(tuple(names), tuple(arrows))
    lines = [f"natural-quiver {_subject(doc, args.file)}"]
    lines += [f"  vertex {v}: dim A = {d}" for v, d in zip(names, nq.dims)]
    lines += [f"  {vi} -> {vj} x{nq.t[i][j]}" for i, vi in enumerate(names) for j, vj in enumerate(names)
              if nq.t[i][j]]
    data = {"vertices": names, "dims": nq.dims, "t": nq.t}
    _emit(out, args.format, "\n".join(lines) + "\n", data, to_dot(q, _subject(doc, args.file)))
    return True


def cmd_natural_valued_quiver(args, out) -> bool:
    doc = _load(args.file)
    _need(doc, ALGEBRA_KINDS, "natural-valued-quiver")
    a = build_algebra(doc)
    nvq = natural_valued_quiver(a)
    rep = Report("natural-valued-quiver", _subject(doc, args.file))
    for e in nvq.edges:
        rep.add(f"d_ij eps_j = d_ji eps_i on {e.source}->{e.target}",
                e.d_st * nvq.witness[e.target], e.d_ts * nvq.witness[e.source])
    lines = [f"natural-valued-quiver {_subject(doc, args.file)}"]
    lines += _edge_text(nvq.quiver)
    lines += [f"  witness {v}: {nvq.witness[v]}" for v in nvq.vertices]
    lines += [f"  {c.line()}" for c in rep.checks]
    data = {"edges": _edge_rows(nvq.quiver), "witness": [[v, nvq.witness[v]] for v in nvq.vertices],
            "checks": rep.to_dict()["checks"], "ok": rep.ok}
    _emit(out, args.format, "\n".join(lines) + "\n", data, to_dot(nvq, _subject(doc, args.file)))
    return rep.ok


def cmd_ext_quiver(args, out) -> bool:
    doc = _load(args.file)
    _need(doc, ALGEBRA_KINDS, "ext-quiver")
    a = build_algebra(doc)
    lemma, resolution = ext_dims_lemma(a), ext_dims_resolution(a)
    veq = valued_ext_quiver(a, lemma)
    rep = Report("ext-quiver", _subject(doc, args.file))
    rep.add("ext dims: cut route = resolution route", lemma, resolution)
    lines = [f"ext-quiver {_subject(doc, args.file)}"]
    lines += [f"  dim Ext^1(T_{vj}, T_{vi}) = {lemma[i][j]}" for i, vi in enumerate(veq.quiver.vertices)
              for j, vj in enumerate(veq.quiver.vertices) if lemma[i][j]]
    lines += _edge_text(veq.quiver)
    lines += [f"  {c.line()}" for c in rep.checks]
    data = {"vertices": list(veq.quiver.vertices), "ext_dims": lemma, "resolution_dims": resolution,
            "edges": _edge_rows(veq.quiver), "ok": rep.ok}
    _emit(out, args.format, "\n".join(lines) + "\n", data, to_dot(veq.quiver, _subject(doc, args.file)))
    return rep.ok


def verify_document(doc: dict, subject: str) -> Report:
    kind = doc["kind"]
    if kind in ALGEBRA_KINDS:
        rep = verify_algebra(build_algebra(doc))
        rep.subject = subject
        return rep
    rep = Report("verify", subject)
    if kind == "gpa":
        g = build_gpa(doc)
        vq = induced_valued_quiver(g)
        for e in vq.edges:
            rep.add(f"d_ij eps_j = d_ji eps_i on {e.source}->{e.target}",
                    e.d_st * vq.witness[e.target], e.d_ts * vq.witness[e.source])
        rep.add("graded dims sum to dim", sum(g.graded_dims()), g.dim)
        if all(a.blocks is not None for a in g.algebras.values()):
            pvq = pseudo_valued_quiver_of(premodulation_of(g))
            rep.add("pre-modulation is free on every pair", classify(premodulation_of(g)).pre, True)
            if is_normal(g):
                rep.add("pre-modulation ranks = induced valuation",
                        sorted(pvq.edge_map().items(), key=repr), sorted(vq.quiver.edge_map().items(), key=repr))
    elif kind in ("modulation", "group-species"):
        m = build_modulation(doc)
        c = classify(m)
        dims = {v: m.algebras[v].dim for v in m.vertices}
        for (i, j) in m.nonzero_pairs():
            d_ij, d_ji = m.ranks(i, j)
            data = m.bimodule_rank_data(i, j)
            if (data.free if data is not None else m.bimodules[(i, j)].free):
                rep.add(f"d_ij eps_j = d_ji eps_i on free {i}->{j}", d_ij * dims[j], d_ji * dims[i])
        rep.add("pseudo-valued quiver well formed", isinstance(pseudo_valued_quiver_of(m), PseudoValuedQuiver), True)
        rep.info.append("flags: " + ", ".join(f"{k}={v}" for k, v in c.flags().items()))
    elif kind == "representation":
        r = build_representation(doc)
        rep.add("G(F(V)) = V", roundtrip_check(r), True)
    elif kind == "differential":
        g, images = build_differential(doc)
        dr = differential_check(g, images)
        for v in dr.verdicts():
            rep.add(v.name, v.ok, True)
            if v.first_violation:
                rep.info.append(f"{v.name}: {v.first_violation}")
    elif kind == "quiver":
        q = build_quiver(doc)
        for L in range(1, 5):
            rep.add(f"loop elimination dimension match at L={L}", dimension_match_check(q, L), True)
    return rep


def cmd_verify(args, out) -> bool:
    if args.all is not None:
        folder = FsPath(args.all) if args.all else corpus_dir()
        if not folder.is_dir():
            raise InputError("$", f"cannot read {folder}: not a directory")
        files = sorted(folder.glob("*.json"), key=lambda p: p.name)
        if not files:
            raise InputError("$", f"no .json documents in {folder}")
        reports, errors = [], []
        for f in files:
            try:
                reports.append(verify_document(load_file(f), f.stem))
            except InputError as exc:
                errors.append(f"{f.name}: {exc}")
        ok = all(r.ok for r in reports)
        if args.format == "json":
            data = {"entries": [r.to_dict() for r in reports], "errors": errors, "ok": ok and not errors}
            out.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
        else:
            for r in reports:
                out.write(r.to_text())
            for e in errors:
                out.write(f"input error: {e}\n")
            passed = sum(r.ok for r in reports)
            out.write(f"corpus: {passed}/{len(reports)} entries pass, {len(errors)} input errors\n")
        if errors:
            raise InputError("$", f"{len(errors)} corpus entries could not be read")
        return ok
    if not args.file:
        raise InputError("$", "verify needs a FILE or --all [DIR]")
    doc = _load(args.file)
    return _report_out(out, args.format, verify_document(doc, _subject(doc, args.file)))


def _modulation_of(doc):
    if doc["kind"] == "gpa":
        return premodulation_of(build_gpa(doc))
    _need(doc, ("modulation", "group-species"), "classify")
    return build_modulation(doc)


def cmd_classify(args, out) -> bool:
    doc = _load(args.file)
    m = _modulation_of(doc)
    c = classify(m)
    pvq = pseudo_valued_quiver_of(m)
    lines = [f"classify {_subject(doc, args.file)}"]
    lines += [f"  {k}: {'yes' if v else 'no'}" for k, v in c.flags().items()]
    lines.append(f"  generalized decided by: {c.generalized_source}")
    lines += _edge_text(pvq)
    lines += [f"  one-sided pair: {i} -> {j}" for i, j in c.one_sided_pairs]
    lines += [f"  note: {n}" for n in c.notes]
    data = {"flags": c.flags(), "generalized_source": c.generalized_source, "edges": _edge_rows(pvq),
            "one_sided_pairs": [list(p) for p in c.one_sided_pairs], "notes": list(c.notes)}
    _emit(out, args.format, "\n".join(lines) + "\n", data, to_dot(pvq, _subject(doc, args.file)))
    return True


def cmd_gpa_mul(args, out) -> bool:
    doc = _load(args.file)
    _need(doc, ("gpa",), "gpa-mul")
    g = build_gpa(doc)
    try:
        x, y = g.parse(args.x), g.parse(args.y)
    except ValueError as exc:
        raise InputError("$", f"element literal: {exc}") from None
    z = x * y
    text = f"({x}) * ({y}) = {z}" + ("  [truncated]" if z.truncated else "") + "\n"
    data = {"x": str(x), "y": str(y), "product": str(z), "truncated": z.truncated}
    _emit(out, args.format, text, data)
    return True


def cmd_loop_eliminate(args, out) -> bool:
    doc = _load(args.file)
    q = build_quiver(doc)
    L = args.truncate
    if L is None:
        raise InputError("$", "loop-eliminate needs --truncate L")
    if L < 1:
        raise InputError("$", "--truncate must be >= 1")
    le = loop_eliminate(q, L)
    rep = Report("loop-eliminate", _subject(doc, args.file))
    rep.add(f"dim k(Gamma, A) = paths of length <= {L}", dimension_match_check(q, L), True)
    rep.add("A-paths read as words give a multiplicative bijection", loop_elimination_iso_check(q, L), True)
    lines = [f"loop-eliminate {_subject(doc, args.file)} L={L}"]
    for v in q.vertices:
        lines.append(f"  vertex {v}: loops [{', '.join(le.loops[v])}], dim A = {le.algebras[v].dim}")
    lines += [f"  arrow {a.name}: {a.source} -> {a.target}" for a in le.quiver.arrows]
    for (i, j) in sorted(le.rank_valuation, key=repr):
        lines.append(f"  edge {i} -> {j}: loop-count valuation {le.loop_count_valuation[(i, j)]}, "
                     f"rank valuation {le.rank_valuation[(i, j)]}")
    lines += [f"  anomaly: {s}" for s in le.anomalies]
    lines += [f"  {c.line()}" for c in rep.checks]
    lines.append(f"  overall: {'PASS' if rep.ok else 'FAIL'}")
    data = {"loops": [[v, le.loops[v]] for v in q.vertices],
            "algebra_dims": [[v, le.algebras[v].dim] for v in q.vertices],
            "arrows": [[a.name, a.source, a.target] for a in le.quiver.arrows],
            "valuations": [{"source": i, "target": j, "loop_count": list(le.loop_count_valuation[(i, j)]),
                            "rank": list(le.rank_valuation[(i, j)])}
                           for (i, j) in sorted(le.rank_valuation, key=repr)],
            "anomalies": list(le.anomalies), "checks": rep.to_dict()["checks"], "ok": rep.ok}
    _emit(out, args.format, "\n".join(lines) + "\n", data, to_dot(le.quiver, _subject(doc, args.file)))
    return rep.ok


def cmd_iso(args, out) -> bool:
    d1, d2 = _load(args.a), _load(args.b)
    k1, k2 = d1["kind"], d2["kind"]
    cap = args.max_iso_vertices
    try:
        if k1 == k2 == "gpa":
            theta = gpa_iso_check(build_gpa(d1), build_gpa(d2))
        elif {k1, k2} <= {"modulation", "group-species"}:
            theta = modulation_iso(build_modulation(d1), build_modulation(d2), cap)
        elif {k1, k2} <= {"quiver", "bound-quiver-algebra"}:
            theta = labeled_iso(build_quiver(d1), build_quiver(d2), max_vertices=cap)
        else:
            raise InputError("$.kind", f"cannot compare a {k1} document with a {k2} document")
    except ValueError as exc:
        if isinstance(exc, InputError):
            raise
        text = f"iso: {exc}\n"
        _emit(out, args.format, text, {"iso": None, "refused": str(exc)})
        return False
    if theta is None:
        _emit(out, args.format, "iso: absent\n", {"iso": None})
        return False
    pairs = sorted(theta.items(), key=lambda kv: repr(kv[0]))
    text = "iso: " + ", ".join(f"{v} -> {w}" for v, w in pairs) + "\n"
    _emit(out, args.format, text, {"iso": [[v, w] for v, w in pairs]})
    return True


def cmd_diff_check(args, out) -> bool:
    doc = _load(args.file)
    _need(doc, ("differential",), "diff-check")
    g, images = build_differential(doc)
    try:
        dr = differential_check(g, images)
    except ValueError as exc:
        raise InputError("$.images", str(exc)) from None
    rep = Report("diff-check", _subject(doc, args.file))
    for v in dr.verdicts():
        rep.add(v.name, "ok" if v.ok else "violated", "ok")
        if v.first_violation:
            rep.info.append(f"first {v.name} violation: {v.first_violation}")
    rep.info.append(f"{dr.checked_pairs} basis pairs checked for the Leibniz rule")
    return _report_out(out, args.format, rep)


def cmd_rep_roundtrip(args, out) -> bool:
    doc = _load(args.file)
    if doc["kind"] == "modulation":
        doc = {"kind": "representation", "name": doc.get("name", ""), "modulation": doc,
               "random": {"seed": args.seed or 0, "max_dim": 3}}
    _need(doc, ("representation",), "rep-roundtrip")
    r = build_representation(doc, args.seed)
    rep = Report("rep-roundtrip", _subject(doc, args.file))
    rep.info.append("dims: " + ", ".join(f"{v}:{d}" for v, d in r.dims().items()))
    rep.add("dim F(V) = sum of dim V_i", functor_F(r).dim, sum(r.dims().values()))
    rep.add("G(F(V)) = V", roundtrip_check(r), True)
    seed = args.seed or 0
    alpha, beta = random_morphism(r, r, seed), random_morphism(r, r, seed + 1)
    lhs = functor_F_morphism(r, r, compose(beta, alpha))
    rhs = functor_F_morphism(r, r, beta) @ functor_F_morphism(r, r, alpha)
    rep.add("F(beta alpha) = F(beta) F(alpha)", "equal" if lhs == rhs else "different", "equal")
    return _report_out(out, args.format, rep)


def cmd_dot(args, out) -> bool:
    doc = _load(args.file)
    name = _subject(doc, args.file)
    kind = doc["kind"]
    if kind in ("quiver", "bound-quiver-algebra", "gpa"):
        out.write(to_dot(build_quiver(doc), name))
    elif kind == "blow-up":
        out.write(to_dot(natural_valued_quiver(build_algebra(doc)), name))
    elif kind in ("modulation", "group-species"):
        out.write(to_dot(pseudo_valued_quiver_of(build_modulation(doc)), name))
    else:
        raise InputError("$.kind", f"no DOT rendering for a {kind} document")
    return True


# -- entry point ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "dot"), default="text")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--truncate", type=int, default=None, metavar="L")
    common.add_argument("--max-iso-vertices", type=int, default=DEFAULT_MAX_ISO_VERTICES, metavar="K")
    parser = argparse.ArgumentParser(prog="quiverforge", description="Exact computations with quivers, "
                                     "modulations and generalized path algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, *positional, **kw):
        p = sub.add_parser(name, parents=[common], **kw)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    add("natural-quiver", cmd_natural_quiver, "file", help="natural quiver of an algebra")
    add("natural-valued-quiver", cmd_natural_valued_quiver, "file", help="natural valued quiver of an algebra")
    add("ext-quiver", cmd_ext_quiver, "file", help="valued Ext-quiver of an algebra")
    v = add("verify", cmd_verify, help="check every applicable identity")
    v.add_argument("file", nargs="?")
    v.add_argument("--all", nargs="?", const="", default=None, metavar="DIR",
                   help="verify every .json document in DIR (default: bundled corpus)")
    add("classify", cmd_classify, "file", help="classify a modulation")
    add("gpa-mul", cmd_gpa_mul, "file", "x", "y", help="multiply two element literals")
    add("loop-eliminate", cmd_loop_eliminate, "file", help="trade loops for vertex algebras")
    add("iso", cmd_iso, "a", "b", help="search for an isomorphism")
    add("diff-check", cmd_diff_check, "file", help="check a differential")
    add("rep-roundtrip", cmd_rep_roundtrip, "file", help="check G(F(V)) = V")
    add("dot", cmd_dot, "file", help="DOT rendering")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        ok = args.func(args, out)
    except InputError as exc:
        err.write(f"quiverforge: input error: {exc}\n")
        return 2
    return 0 if ok else 1


def main() -> None:
    sys.exit(run())


__all__ = ["run", "main", "verify_document"]
