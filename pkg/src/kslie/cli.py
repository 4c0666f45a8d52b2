"""Command-line interface.

Exit codes: 0 pass, 1 semantic failure, 2 usage or parse error.
Input files may be a path, ``-`` for standard input, or ``catalog:NAME``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import catalog, construct
from .derivh2 import (
    InconsistentMetricError,
    common_kernel,
    derivation_space,
    h2_dimension,
    skew_derivation_space,
)
from .document import AlgebraDocument, DocumentError, document_dict, emit_document, from_catalog, parse_document
from .ksymp import (
    InfeasibleDimensionError,
    check_h_admissibility,
    obstruction_scan,
    search_ksymplectic,
    verify_certificate,
)
from .liealg import Subspace, check_jacobi
from .notation import NotationError, format_combination, parse_combination
from .quadform import QuadraticLieAlgebra, check_invariance, is_degenerate_on, is_nondegenerate
from .ratlin import Mat


class UsageError(Exception):
    pass


def _load(spec: str) -> AlgebraDocument:
    if spec.startswith("catalog:"):
        try:
            return from_catalog(spec[len("catalog:"):])
        except catalog.CatalogError as exc:
            raise UsageError(str(exc)) from None
    try:
        text = sys.stdin.read() if spec == "-" else open(spec, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {spec}: {exc.strerror}") from None
    return parse_document(text)


def _quadratic(doc: AlgebraDocument) -> QuadraticLieAlgebra:
    if doc.metric is None:
        raise UsageError("this command needs a metric")
    return QuadraticLieAlgebra(doc.algebra, doc.metric)


def _vector(text: str, names) -> tuple:
    """Vector as comma separated rationals or as a combination of basis labels."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) == len(names):
        try:
            return tuple(Fraction(p) for p in parts)
        except ValueError:
            pass
    try:
        return parse_combination(text, names)
    except NotationError as exc:
        raise UsageError(f"bad vector {text!r}: {exc}") from None


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(text)


def _fmt_map(m: Mat) -> str:
    return "[" + "; ".join(" ".join(str(x) for x in m.row(i)) for i in range(m.rows)) + "]"


def cmd_check(args) -> int:
    doc = _load(args.file)
    g = doc.algebra
    results = []
    jac = check_jacobi(g)
    results.append(("jacobi", jac is None,
                    "" if jac is None else f"triple ({jac.i + 1},{jac.j + 1},{jac.k + 1})"))
    if doc.metric is not None:
        nd = is_nondegenerate(doc.metric)
        results.append(("nondegenerate", nd, "" if nd else "det = 0"))
        inv = check_invariance(g, doc.metric)
        results.append(("invariance", inv is None,
                        "" if inv is None else f"triple ({inv.u + 1},{inv.v + 1},{inv.w + 1}) value {inv.value}"))
    for i, cert in enumerate(doc.certificates):
        rep = verify_certificate(g, cert)
        detail = "" if rep.ok else ", ".join(f.clause for f in rep.failures)
        results.append((f"certificate {i + 1} (k={cert.k})", rep.ok, detail))
    ok = all(r[1] for r in results)
    text = "".join(f"{name}: {'ok' if good else 'FAIL'}{' ' + d if d else ''}\n" for name, good, d in results)
    text += "pass\n" if ok else "fail\n"
    _emit(args, {"name": doc.name, "ok": ok,
                 "checks": [{"check": n, "ok": good, "detail": d} for n, good, d in results]}, text)
    return 0 if ok else 1


def cmd_construct(args) -> int:
    kind = args.kind
    try:
        if kind == "tstar":
            base = _load(args.base)
            q = construct.t_star_extension(base.algebra)
            doc = AlgebraDocument(f"T*{base.name}", q.algebra, q.metric, tags=["t-star"])
        elif kind == "double-ext":
            base = _load(args.base)
            rows = json.loads(args.matrix)
            a = Mat.from_rows([[Fraction(x) for x in r] for r in rows])
            q = construct.double_extension(construct.DoubleExtensionDatum(_quadratic(base), a))
            doc = AlgebraDocument(f"double-extension({base.name})", q.algebra, q.metric)
        elif kind == "oscillator":
            q = construct.oscillator([Fraction(x) for x in args.lambdas])
            doc = AlgebraDocument("osc(" + ",".join(args.lambdas) + ")", q.algebra, q.metric, tags=["oscillator"])
        elif kind == "product":
            a, b = _load(args.first), _load(args.second)
            q = construct.quadratic_product(_quadratic(a), _quadratic(b))
            doc = AlgebraDocument(f"{a.name}x{b.name}", q.algebra, q.metric)
        elif kind == "sln":
            g, cert = construct.sln_certificate(args.n)
            doc = AlgebraDocument(f"sl({args.n})", g, None, [cert], tags=["semisimple"])
        else:
            q, cert = construct.abelian_ksymplectic(args.n, args.k)
            doc = AlgebraDocument(f"abelian({args.n},{args.k})", q.algebra, q.metric, [cert], tags=["abelian"])
    except (ValueError, json.JSONDecodeError) as exc:
        raise UsageError(str(exc)) from None
    sys.stdout.write(emit_document(doc))
    return 0


def cmd_derivations(args) -> int:
    doc = _load(args.file)
    names = doc.algebra.names
    payload: dict = {"name": doc.name}
    if args.h:
        q = _quadratic(doc)
        h = Subspace(doc.algebra.dim, [_vector(v, names) for v in args.h])
        k = args.k if args.k else _infer_k(doc.algebra.dim, h.dim)
        res = check_h_admissibility(q, h, k)
        space = res.space
        payload.update(kind="admissible", status=res.status, subalgebra=res.is_subalgebra,
                       witness=None if res.witness is None else format_combination(res.witness, names))
    elif args.skew:
        space = skew_derivation_space(_quadratic(doc))
        payload["kind"] = "skew"
    else:
        space = derivation_space(doc.algebra)
        payload["kind"] = "all"
    kern = common_kernel(space)
    payload["dim"] = space.dim
    payload["basis"] = [[[str(x) for x in m.row(i)] for i in range(m.rows)] for m in space.basis]
    payload["common_kernel"] = [format_combination(v, names) for v in kern.rows]
    lines = [f"{payload['kind']} derivations: dim {space.dim}"]
    lines += [f"  D{i + 1} = {_fmt_map(m)}" for i, m in enumerate(space.basis)]
    lines.append("common kernel: " + (", ".join(payload["common_kernel"]) or "0"))
    if args.h:
        if not payload["subalgebra"]:
            lines.append("note: h is not a subalgebra")
        lines.append(f"{payload['status']}" + (f" (witness {payload['witness']})" if payload["witness"] else ""))
    _emit(args, payload, "\n".join(lines) + "\n")
    return 0


def _infer_k(dim: int, hdim: int) -> int:
    n = dim - hdim
    if n <= 0 or hdim % n:
        raise UsageError(f"dim h = {hdim} does not have the form nk in dimension {dim}; pass -k")
    return hdim // n


def cmd_h2(args) -> int:
    doc = _load(args.file)
    try:
        d = h2_dimension(_quadratic(doc))
    except InconsistentMetricError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    _emit(args, {"name": doc.name, "h2": d}, f"{d}\n")
    return 0


def _read_candidates(path: str, names) -> list:
    try:
        text = open(path, encoding="utf-8").read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    text = text.strip()
    if text.startswith("["):
        vecs = json.loads(text)
        return [tuple(Fraction(x) for x in v) for v in vecs]
    return [_vector(line, names) for line in text.splitlines() if line.strip() and not line.startswith("#")]


def cmd_search(args) -> int:
    doc = _load(args.file)
    names = doc.algebra.names
    target = doc.algebra if args.no_metric or doc.metric is None else _quadratic(doc)
    cands = [_read_candidates(p, names) for p in args.candidate]
    hints, complete = doc.hints.get(args.k, ([], False))
    try:
        res = search_ksymplectic(target, args.k, trials=args.trials, seed=args.seed, coeff_bound=args.coeff_bound,
                                 extra_h_candidates=cands, hints=hints,
                                 candidates_complete=args.complete or (complete and not cands),
                                 tags=doc.construction)
    except InfeasibleDimensionError as exc:
        raise UsageError(str(exc)) from None
    payload = {"name": doc.name, "k": args.k, "status": res.status, "transcript": res.transcript()}
    if res.certificate is not None:
        payload["certificate"] = document_dict(AlgebraDocument(doc.name, doc.algebra, None,
                                                               [res.certificate]))["certificates"][0]
    _emit(args, payload, res.transcript())
    return 0 if res.status == "found" else 1


def cmd_obstructions(args) -> int:
    doc = _load(args.file)
    q = _quadratic(doc)
    verdicts = obstruction_scan(q, doc.construction)
    names = doc.algebra.names
    rows = [{"rule": v.rule, "kind": v.kind, "k": sorted(v.ruled_out), "citation": v.citation,
             "witness": None if v.witness is None else format_combination(v.witness, names),
             "detail": v.detail} for v in verdicts]
    lines = []
    for r in rows:
        line = f"{r['rule']} [{r['kind']}] k in {{{','.join(map(str, r['k']))}}}: {r['citation']}"
        if r["witness"]:
            line += f" (witness {r['witness']})"
        if r["detail"]:
            line += f" ({r['detail']})"
        lines.append(line)
    _emit(args, {"name": doc.name, "verdicts": rows}, "\n".join(lines or ["no rule applies"]) + "\n")
    return 0


def cmd_verify_cert(args) -> int:
    doc = _load(args.file)
    if args.cert:
        doc.certificates = _load(args.cert).certificates
    if not doc.certificates:
        raise UsageError("no certificate to verify")
    names = doc.algebra.names
    out, lines, ok = [], [], True
    for i, cert in enumerate(doc.certificates):
        rep = verify_certificate(doc.algebra, cert, doc.metric)
        ok &= rep.ok
        fails = [{"clause": f.clause, "detail": f.detail} for f in rep.failures]
        out.append({"index": i + 1, "k": cert.k, "ok": rep.ok, "failures": fails, "h_degenerate": rep.h_degenerate})
        lines.append(f"certificate {i + 1} (k={cert.k}): {'ok' if rep.ok else 'FAIL'}")
        lines += [f"  {f['clause']}: {f['detail']}" for f in fails]
        if rep.h_degenerate is not None:
            lines.append(f"  h is {'degenerate' if rep.h_degenerate else 'nondegenerate'} for the metric")
        lines.append("  h = span{" + ", ".join(format_combination(v, names) for v in cert.h.rows) + "}")
    _emit(args, {"name": doc.name, "ok": ok, "certificates": out}, "\n".join(lines) + "\n")
    return 0 if ok else 1


def cmd_catalog(args) -> int:
    if args.action == "list":
        names = catalog.list_entries(dimension=args.dim, tag=args.tag, include_extras=args.extras)
        _emit(args, {"entries": names}, "".join(n + "\n" for n in names))
    elif args.action == "show":
        if not args.name:
            raise UsageError("catalog show needs an entry name")
        sys.stdout.write(emit_document(_load("catalog:" + args.name)))
    else:
        report = catalog.classification_report(include_extras=args.extras)
        sys.stdout.write(catalog.report_json(report) if args.json else catalog.format_report(report))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kslie", description="k-symplectic structures on quadratic Lie algebras")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        return sp

    sp = add("check", cmd_check, "Jacobi, metric and certificate checks")
    sp.add_argument("file")

    sp = add("construct", cmd_construct, "emit a constructed algebra document")
    csub = sp.add_subparsers(dest="kind", required=True)
    c = csub.add_parser("tstar")
    c.add_argument("base")
    c = csub.add_parser("double-ext")
    c.add_argument("base")
    c.add_argument("--matrix", required=True, help='A as JSON rows, e.g. "[[0,-1],[1,0]]"')
    c = csub.add_parser("oscillator")
    c.add_argument("lambdas", nargs="+")
    c = csub.add_parser("product")
    c.add_argument("first")
    c.add_argument("second")
    c = csub.add_parser("sln")
    c.add_argument("n", type=int)
    c = csub.add_parser("abelian-ksym")
    c.add_argument("n", type=int)
    c.add_argument("k", type=int)

    sp = add("derivations", cmd_derivations, "derivation spaces")
    sp.add_argument("file")
    sp.add_argument("--skew", action="store_true", help="skew-symmetric derivations only")
    sp.add_argument("--admissible", dest="h", action="append", default=[], metavar="VECTOR",
                    help="a spanning vector of h (repeat); selects admissible derivations")
    sp.add_argument("-k", type=int, default=0)

    sp = add("h2", cmd_h2, "dimension of H^2 of a quadratic algebra")
    sp.add_argument("file")

    sp = add("search", cmd_search, "randomized certificate search")
    sp.add_argument("file")
    sp.add_argument("-k", type=int, required=True)
    sp.add_argument("--trials", type=int, default=64)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--coeff-bound", type=int, default=10)
    sp.add_argument("--candidate", action="append", default=[], metavar="H_FILE")
    sp.add_argument("--complete", action="store_true", help="the supplied candidates are exhaustive")
    sp.add_argument("--no-metric", action="store_true", help="search over cocycles directly")

    sp = add("obstructions", cmd_obstructions, "run the non-existence rules")
    sp.add_argument("file")

    sp = add("verify-cert", cmd_verify_cert, "verify certificates")
    sp.add_argument("file")
    sp.add_argument("--cert", help="take certificates from this document instead")

    sp = add("catalog", cmd_catalog, "built-in entries")
    sp.add_argument("action", choices=["list", "show", "report"])
    sp.add_argument("name", nargs="?")
    sp.add_argument("--dim", type=int)
    sp.add_argument("--tag")
    sp.add_argument("--extras", action="store_true", help="include decomposable entries")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    try:
        return args.func(args)
    except (UsageError, DocumentError, NotationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except ValueError as exc:
        # invalid algebra data (non-antisymmetric input, singular metric, ...)
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
