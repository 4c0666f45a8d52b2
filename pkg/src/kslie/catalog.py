"""Built-in quadratic Lie algebras of dimension at most 6 with their known certificates.

Entries are stored in table notation and instantiated at rational parameter
values.  Each entry carries the expected verdict for every feasible k,
together with the rule that justifies it, and :func:`classification_report`
recomputes those verdicts from scratch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping

from .ksymp import (
    RULES,
    KSymplecticCertificate,
    check_h_admissibility,
    feasible_ks,
    obstruction_scan,
    ruled_out,
    verify_certificate,
)
from .liealg import LieAlgebra, Subspace, check_jacobi
from .notation import parse_combination, parse_terms
from .quadform import BilinearForm, QuadraticLieAlgebra, check_invariance, is_nondegenerate, wedge

FORMAT_VERSION = 1


class CatalogError(ValueError):
    pass


@dataclass(frozen=True)
class Param:
    name: str
    default: Fraction
    valid: Callable[[Fraction], bool]
    domain: str


@dataclass(frozen=True)
class Expectation:
    status: str  # "exists" | "none"
    rule: str  # "certificate", a rule code, "EXH" or "EXT"


@dataclass(frozen=True)
class HintList:
    candidates: tuple  # of Subspace
    complete: bool = True


@dataclass
class CatalogEntry:
    name: str
    table: str
    algebra: LieAlgebra
    metric: BilinearForm | None
    parameters: dict
    tags: tuple
    construction: dict
    certificates: tuple
    expected: dict
    hints: dict = field(default_factory=dict)
    external: dict = field(default_factory=dict)
    notes: tuple = ()
    extra: bool = False
    bracket_text: str = ""
    metric_text: str = ""

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def quadratic(self) -> QuadraticLieAlgebra | None:
        return None if self.metric is None else QuadraticLieAlgebra(self.algebra, self.metric)


def _names(n: int) -> list[str]:
    return [f"e{i + 1}" for i in range(n)]


def _metric(n: int, text: str, params: Mapping) -> BilinearForm:
    """Metric from ``"(1,2)=1, (3,3)=2"`` style entries (1-based, upper triangle)."""
    entries = {}
    for part in text.split(";"):
        keys, _, val = part.partition("=")
        i, j = (int(x) - 1 for x in keys.strip().strip("()").split(","))
        entries[(i, j)] = _scalar(val, params)
    return BilinearForm.from_entries(n, entries)


def _scalar(text: str, params: Mapping) -> Fraction:
    text = text.strip()
    if text.startswith("1/") and not text[2:].isdigit():
        return 1 / _scalar(text[2:], params)
    terms = parse_terms(text, params)
    if any(lbls for _, lbls in terms):
        raise CatalogError(f"metric entry {text!r} is not a scalar")
    return sum((c for c, _ in terms), Fraction(0))


def _span(names, params, *vectors: str) -> Subspace:
    return Subspace(len(names), [parse_combination(v, names, params) for v in vectors])


def _cert(names, params, h: tuple, *thetas: str) -> KSymplecticCertificate:
    return KSymplecticCertificate(_span(names, params, *h), [wedge(t, names, params) for t in thetas])


_POSITIVE = ("> 0", lambda x: x > 0)
_NONZERO = ("!= 0", lambda x: x != 0)
_AT_LEAST_ONE = (">= 1", lambda x: x >= 1)
_SIGN = ("in {1, -1}", lambda x: x in (1, -1))


def _param(name, default, rng):
    return Param(name, Fraction(default), rng[1], rng[0])


@dataclass(frozen=True)
class _Spec:
    name: str
    table: str
    dim: int
    brackets: str
    metric: str | None
    params: tuple = ()
    tags: tuple = ()
    construction: dict = field(default_factory=dict)
    certificates: tuple = ()  # of (h vectors, theta strings)
    expected: dict = field(default_factory=dict)
    hints: dict = field(default_factory=dict)  # k -> tuple of vector tuples
    external: dict = field(default_factory=dict)
    corrections: tuple = ()  # (printed, used, reason)
    remarks: tuple = ()
    extra: bool = False
    names: tuple | None = None
    check_params: Callable | None = None


def _de(e, ebar, *abelian):
    return {"double_extension": {"e": e, "ebar": ebar, "abelian": list(abelian)}}


_NONE_R5 = {k: Expectation("none", "R5") for k in (1, 2, 5)}
_STAR = ("e1", "e2", "e3", "e1*", "e2*", "e3*")

_SPECS = [
    _Spec("su2", "1", 3, "[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2",
          "(1,1)=c; (2,2)=c; (3,3)=c", (_param("c", 1, _NONZERO),),
          tags=("semisimple", "compact"), expected={2: Expectation("none", "R6")}),
    _Spec("sl2R", "1", 3, "[e1,e2]=e3, [e3,e1]=2e1, [e3,e2]=-2e2",
          "(1,2)=c; (3,3)=2c", (_param("c", 1, _NONZERO),), tags=("semisimple",),
          certificates=((("e1", "e3"), ("e3*^e2*", "e1*^e2*")),
                        (("e1", "e3"), ("e3*^e2* + e1*^e2*", "e1*^e2*"))),
          expected={2: Expectation("exists", "certificate")}),
    _Spec("osc(4)", "2", 4, "[e2,e3]=e1, [e4,e2]=lambda e3, [e4,e3]=-lambda e2",
          "(2,2)=1/lambda; (3,3)=1/lambda; (1,4)=1", (_param("lambda", 1, _POSITIVE),),
          tags=("oscillator", "solvable", "double-extension-nonnilpotent"), construction=_de(1, 4),
          expected={1: Expectation("none", "R5"), 3: Expectation("none", "R5")}),
    _Spec("g1,4", "2", 4, "[e4,e2]=e2, [e4,e3]=-e3, [e2,e3]=e1", "(1,4)=1; (2,3)=1",
          tags=("solvable", "double-extension-nonnilpotent"), construction=_de(1, 4),
          expected={1: Expectation("none", "R5"), 3: Expectation("none", "R5")}),
    _Spec("g1,5", "3", 5, "[e2,e3]=e1, [e3,e4]=-e1, [e5,e2]=e3, [e5,e3]=e2 - e4, [e5,e4]=e3",
          "(1,5)=1; (2,2)=-1; (3,3)=1; (4,4)=1", tags=("nilpotent", "double-extension-nilpotent"),
          expected={4: Expectation("none", "R4")}),
    _Spec("osc(6)", "4", 6,
          "[e2,e4]=[e3,e5]=e1, [e6,e2]=lambda1 e4, [e6,e4]=-lambda1 e2,"
          " [e6,e3]=lambda2 e5, [e6,e5]=-lambda2 e3",
          "(2,2)=1/lambda1; (3,3)=1/lambda2; (4,4)=1/lambda1; (5,5)=1/lambda2; (1,6)=1",
          (_param("lambda1", 1, _POSITIVE), _param("lambda2", 2, _POSITIVE)),
          tags=("oscillator", "solvable", "double-extension-nonnilpotent"), construction=_de(1, 6),
          expected=_NONE_R5, check_params=lambda p: p["lambda1"] <= p["lambda2"]),
    _Spec("l2", "4", 6,
          "[e2,e3]=e1, [e4,e5]=lambda e1, [e6,e2]=e3, [e6,e3]=e2, [e6,e4]=lambda e5, [e6,e5]=-lambda e4",
          "(2,2)=-1; (3,3)=1; (4,4)=1; (5,5)=1; (1,6)=1", (_param("lambda", 1, _POSITIVE),),
          tags=("solvable", "double-extension-nonnilpotent"), construction=_de(1, 6), expected=_NONE_R5),
    _Spec("so(3,1)", "4", 6,
          "[e1,e2]=e3, [e1,e3]=-e2, [e1,e4]=e5, [e1,e5]=-e4, [e2,e3]=e1, [e2,e4]=e6, [e2,e6]=-e4,"
          " [e3,e5]=e6, [e3,e6]=-e5, [e4,e5]=-e1, [e4,e6]=-e2, [e5,e6]=-e3",
          "(1,1)=1; (2,2)=1; (3,3)=1; (4,4)=-1; (5,5)=-1; (6,6)=-1", tags=("semisimple",),
          certificates=((("e3", "e4", "e1 + e5", "e2 + e6"),
                         ("-e1*^e2* - e1*^e4* + e2*^e3* + e3*^e6* - e4*^e5* + e5*^e6*",
                          "e1*^e3* - e1*^e5* + e2*^e4* - e2*^e6* + e3*^e5* + e4*^e6*")),),
          expected={1: Expectation("none", "R1"), 2: Expectation("exists", "certificate"),
                    5: Expectation("none", "EXT")},
          external={5: "so(3,1) has no 5-dimensional subalgebra (cited classification of its subalgebras)"}),
    _Spec("T*sl2R", "4", 6,
          "[e1,e2]=e3, [e3,e1]=2e1, [e3,e2]=-2e2, [e1,e1*]=2e3*, [e1,e3*]=-e2*, [e2,e2*]=-2e3*,"
          " [e2,e3*]=e1*, [e3,e1*]=-2e1*, [e3,e2*]=2e2*",
          "(1,4)=1; (2,5)=1; (3,6)=1", tags=("t-star-simple",), names=_STAR,
          certificates=((("e1", "e3", "e2*", "e3*"), ("e1*^e1** - e2*^e2**", "e2*^e3** - 2e3*^e1**")),),
          expected={1: Expectation("none", "R1"), 2: Expectation("exists", "certificate"),
                    5: Expectation("none", "EXH")},
          remarks=("k=2: the normal-form candidate span{e1,e3,e2*,e3*} is not blocked and carries "
                   "the stored certificate, so the printed non-existence claim for k=2 does not hold",),
          hints={2: (("e1", "e1*", "e2*", "e3*"), ("e3", "e1*", "e2*", "e3*"),
                     ("e1", "e3", "e1*", "e2*"), ("e1", "e3", "e2*", "e3*")),
                 5: (("e1", "e3", "e1*", "e2*", "e3*"),)}),
    _Spec("T*su2", "4", 6,
          "[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2, [e1,e2*]=e3*, [e1,e3*]=-e2*, [e2,e1*]=-e3*,"
          " [e2,e3*]=e1*, [e3,e1*]=e2*, [e3,e2*]=-e1*",
          "(1,4)=1; (2,5)=1; (3,6)=1", tags=("t-star-simple",), names=_STAR,
          expected={1: Expectation("none", "R1"), 2: Expectation("none", "EXH"), 5: Expectation("none", "EXT")},
          hints={2: (("e1", "e1*", "e2*", "e3*"),)},
          external={5: "T*su(2) has no 5-dimensional subalgebra (su(2) has no 2-dimensional subalgebra)"}),
    _Spec("n1(2,2)", "4", 6, "[e6,e3]=e2, [e6,e5]=e4, [e3,e5]=e1", "(1,6)=1; (2,5)=1; (3,4)=-1",
          tags=("nilpotent", "double-extension-nilpotent"),
          certificates=((("e1", "e2", "e4"),
                         ("e1*^e3* - e1*^e6* + e2*^e5* + e2*^e6* + e4*^e5*",)),
                        (("e1", "e2", "e4", "e3 + e6"),
                         ("e1*^e3* - e1*^e5* - e1*^e6* + e3*^e4* + e3*^e6* + e4*^e6*",
                          "e1*^e3* - e1*^e5* - e1*^e6* + 2e2*^e5* - e3*^e4* + e3*^e6* - e4*^e6*"))),
          expected={1: Expectation("exists", "certificate"), 2: Expectation("exists", "certificate"),
                    5: Expectation("none", "R4")}),
    _Spec("n2(2,2)", "4", 6,
          "[e6,e2]=e2 + t e3, [e6,e3]=-t e2 + e3, [e6,e4]=-e4 + t e5, [e6,e5]=-t e4 - e5,"
          " [e2,e4]=-t e1, [e2,e5]=e1, [e3,e4]=-e1, [e3,e5]=-t e1",
          "(1,6)=1; (2,5)=1; (3,4)=-1", (_param("t", 1, _POSITIVE),),
          tags=("solvable", "double-extension-nonnilpotent"), construction=_de(1, 6), expected=_NONE_R5,
          corrections=(("[e6,e5]=-t e4 - e3", "[e6,e5]=-t e4 - e5",
                        "printed bracket breaks Jacobi and invariance; skewness of ad_e6 forces -e5"),)),
    _Spec("n3(2,2)", "4", 6,
          "[e6,e2]=e3, [e6,e3]=-e2, [e6,e4]=eps e2 + e5, [e6,e5]=eps e3 - e4,"
          " [e2,e4]=-e1, [e3,e5]=-e1, [e4,e5]=eps e1",
          "(1,6)=1; (2,5)=1; (3,4)=-1", (_param("eps", 1, _SIGN),),
          tags=("solvable", "double-extension-nonnilpotent"), construction=_de(1, 6), expected=_NONE_R5),
    _Spec("n4(2,2)", "4", 6,
          "[e6,e2]=e3, [e6,e3]=-e2, [e6,e4]=t e5, [e6,e5]=-t e4, [e2,e3]=-e1, [e4,e5]=t e1",
          "(2,2)=-1; (3,3)=-1; (4,4)=1; (5,5)=1; (1,6)=1", (_param("t", 1, _POSITIVE),),
          tags=("solvable", "double-extension-nonnilpotent"), construction=_de(1, 6), expected=_NONE_R5),
    _Spec("n5(2,2)", "4", 6,
          "[e6,e2]=e2, [e6,e3]=e2 + e3, [e6,e4]=-e4, [e6,e5]=e4 - e5, [e2,e5]=e1, [e3,e4]=-e1, [e3,e5]=e1",
          "(1,6)=1; (2,5)=1; (3,4)=-1",
          tags=("solvable", "double-extension-nonnilpotent"), construction=_de(1, 6), expected=_NONE_R5),
    _Spec("n6(2,2)", "4", 6,
          "[e6,e2]=e2, [e6,e3]=-e3, [e6,e4]=t e4, [e6,e5]=-t e5, [e2,e3]=e1, [e4,e5]=t e1",
          "(1,6)=1; (2,3)=1; (4,5)=1", (_param("t", 1, _AT_LEAST_ONE),),
          tags=("solvable", "double-extension-nonnilpotent"), construction=_de(1, 6), expected=_NONE_R5),
    # decomposable algebras quoted alongside the tables
    _Spec("su2xR", "-", 4, "[e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2", "(1,1)=1; (2,2)=1; (3,3)=1; (4,4)=1",
          tags=("decomposable",), expected={1: Expectation("none", "R2"), 3: Expectation("none", "R2")},
          extra=True),
    _Spec("sl2RxR", "-", 4, "[e1,e2]=e3, [e3,e1]=2e1, [e3,e2]=-2e2", "(1,2)=1; (3,3)=2; (4,4)=1",
          tags=("decomposable",), expected={1: Expectation("none", "R2"), 3: Expectation("none", "R2")},
          extra=True),
    _Spec("osc(4)xR", "-", 5, "[e2,e3]=e1, [e4,e2]=e3, [e4,e3]=-e2",
          "(2,2)=1; (3,3)=1; (1,4)=1; (5,5)=1", tags=("decomposable", "oscillator"),
          construction=_de(1, 4, 5), expected={4: Expectation("none", "R5")}, extra=True),
    _Spec("g1,4xR", "-", 5, "[e4,e2]=e2, [e4,e3]=-e3, [e2,e3]=e1", "(1,4)=1; (2,3)=1; (5,5)=1",
          tags=("decomposable",), construction=_de(1, 4, 5), expected={4: Expectation("none", "R5")},
          extra=True),
]

_BY_NAME = {s.name: s for s in _SPECS}


def _apply_corrections(text: str, corrections) -> str:
    for printed, used, _ in corrections:
        if printed not in text:
            raise CatalogError(f"correction target {printed!r} not found")
        text = text.replace(printed, used)
    return text


def printed_brackets(name: str) -> str:
    """Bracket table exactly as printed, before any recorded correction."""
    spec = _spec(name)
    text = spec.brackets
    for printed, used, _ in spec.corrections:
        text = text.replace(used, printed)
    return text


def _spec(name: str) -> _Spec:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise CatalogError(f"unknown catalog entry {name!r}") from None


def parameter_specs(name: str) -> tuple:
    return _spec(name).params


def load_entry(name: str, overrides: Mapping | None = None) -> CatalogEntry:
    """Instantiate an entry, validating parameters, Jacobi, metric and certificates."""
    spec = _spec(name)
    params = {p.name: p.default for p in spec.params}
    for key, val in (overrides or {}).items():
        if key not in params:
            raise CatalogError(f"{name} has no parameter {key!r}")
        params[key] = Fraction(val)
    for p in spec.params:
        if not p.valid(params[p.name]):
            raise CatalogError(f"{name}: parameter {p.name}={params[p.name]} outside {p.domain}")
    if spec.check_params is not None and not spec.check_params(params):
        raise CatalogError(f"{name}: parameters {params} violate the ordering constraint")
    names = list(spec.names or _names(spec.dim))
    g = LieAlgebra.from_notation(names, spec.brackets, params)
    bad = check_jacobi(g)
    if bad is not None:
        raise CatalogError(f"{name}: Jacobi fails on ({bad.i + 1},{bad.j + 1},{bad.k + 1})")
    metric = None
    if spec.metric is not None:
        metric = _metric(spec.dim, spec.metric, params)
        if not is_nondegenerate(metric):
            raise CatalogError(f"{name}: metric is degenerate")
        inv = check_invariance(g, metric)
        if inv is not None:
            raise CatalogError(f"{name}: metric not invariant on ({inv.u + 1},{inv.v + 1},{inv.w + 1})")
    certs = tuple(_cert(names, params, h, *thetas) for h, thetas in spec.certificates)
    for c in certs:
        rep = verify_certificate(g, c)
        if not rep.ok:
            raise CatalogError(f"{name}: stored certificate fails clause {rep.first_failure.clause}")
    hints = {k: HintList(tuple(_span(names, params, *vs) for vs in cands)) for k, cands in spec.hints.items()}
    notes = tuple(f"bracket printed as {p!r} is used as {u!r}: {why}" for p, u, why in spec.corrections)
    notes += spec.remarks
    return CatalogEntry(spec.name, spec.table, g, metric, params, spec.tags, dict(spec.construction), certs,
                        dict(spec.expected), hints, dict(spec.external), notes, spec.extra,
                        spec.brackets, spec.metric or "")


def list_entries(dimension: int | None = None, tag: str | None = None, include_extras: bool = False) -> list[str]:
    out = []
    for s in _SPECS:
        if s.extra and not include_extras:
            continue
        if dimension is not None and s.dim != dimension:
            continue
        if tag is not None and tag not in s.tags:
            continue
        out.append(s.name)
    return out


@dataclass(frozen=True)
class Verdict:
    k: int
    status: str  # "exists" | "none" | "inconclusive"
    rules: tuple
    detail: str = ""
    expected: Expectation | None = None

    @property
    def matches(self) -> bool:
        if self.expected is None:
            return True
        return self.status == self.expected.status and (self.expected.rule in self.rules)


def entry_verdicts(entry: CatalogEntry) -> list[Verdict]:
    """Recompute the verdict for every feasible k of one entry."""
    q = entry.quadratic
    scan = obstruction_scan(q, entry.construction) if q is not None else []
    out = []
    for k in feasible_ks(entry.dim):
        exp = entry.expected.get(k)
        certs = [c for c in entry.certificates if c.k == k and verify_certificate(entry.algebra, c).ok]
        blocking = [v.rule for v in ruled_out(scan, k)]
        if certs:
            if blocking:
                raise CatalogError(f"{entry.name}: rules {blocking} contradict a verified certificate for k={k}")
            out.append(Verdict(k, "exists", ("certificate",), f"{len(certs)} verified certificate(s)", exp))
            continue
        rules = list(blocking)
        detail = ""
        hint = entry.hints.get(k)
        if hint is not None and hint.complete and q is not None:
            results = [check_h_admissibility(q, h, k) for h in hint.candidates]
            if all(r.blocked or not r.is_subalgebra for r in results):
                rules.append("EXH")
                detail = f"{len(results)} normal-form candidate(s) blocked or not closed"
        if k in entry.external:
            rules.append("EXT")
            detail = detail or entry.external[k]
        status = "none" if rules else "inconclusive"
        out.append(Verdict(k, status, tuple(rules), detail, exp))
    return out


def classification_report(include_extras: bool = False) -> dict:
    """Verdict table for every entry, as a JSON-ready document."""
    rows = []
    for name in list_entries(include_extras=include_extras):
        entry = load_entry(name)
        verdicts = entry_verdicts(entry)
        rows.append({
            "name": name,
            "table": entry.table,
            "dim": entry.dim,
            "parameters": {k: str(v) for k, v in entry.parameters.items()},
            "brackets": entry.bracket_text,
            "metric": entry.metric_text,
            "verdicts": [{"k": v.k, "status": v.status, "rules": list(v.rules),
                          "expected": None if v.expected is None else v.expected.status,
                          "matches": v.matches} for v in verdicts],
        })
    admitting = [r["name"] for r in rows if any(v["status"] == "exists" for v in r["verdicts"])]
    return {"format_version": FORMAT_VERSION, "rules": dict(RULES), "entries": rows,
            "admitting": admitting,
            "all_match": all(v["matches"] for r in rows for v in r["verdicts"])}


def format_report(report: dict) -> str:
    lines = [f"classification report (format {report['format_version']})", ""]
    lines.append(f"{'entry':<10} {'table':<5} {'dim':>3}  verdicts")
    for r in report["entries"]:
        cells = []
        for v in r["verdicts"]:
            rules = ",".join(v["rules"]) if v["rules"] else "-"
            mark = "" if v["matches"] else " MISMATCH"
            cells.append(f"k={v['k']}: {v['status']} [{rules}]{mark}")
        lines.append(f"{r['name']:<10} {r['table']:<5} {r['dim']:>3}  " + "; ".join(cells))
    lines.append("")
    lines.append("admitting a k-symplectic structure: " + ", ".join(report["admitting"]))
    lines.append("rules:")
    for code, text in report["rules"].items():
        lines.append(f"  {code}: {text}")
    lines.append("all verdicts match expectations: " + ("yes" if report["all_match"] else "no"))
    return "\n".join(lines) + "\n"


def report_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=False) + "\n"
