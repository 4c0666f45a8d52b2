"""JSON document format for algebras, metrics and certificates.

Indices are 1-based.  Rationals are strings such as ``"-3/2"``.  Only one
of each antisymmetric pair is stored::

    {
      "format_version": 1,
      "name": "sl2R",
      "dim": 3,
      "basis": ["e1", "e2", "e3"],
      "brackets": [{"i": 1, "j": 2, "coeffs": {"3": "1"}}, ...],
      "metric": [{"i": 1, "j": 2, "value": "1"}, ...],
      "certificates": [{"k": 2, "h": [["1", "0", "0"], ...],
                        "thetas": [[{"i": 1, "j": 2, "value": "1"}], ...]}],
      "hints": [{"k": 2, "complete": true, "candidates": [[["1", "0", "0"]]]}],
      "tags": ["semisimple"],
      "construction": {}
    }
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .ksymp import KSymplecticCertificate
from .liealg import LieAlgebra, Subspace
from .quadform import BilinearForm, QuadraticLieAlgebra
from .ratlin import Mat

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed document (maps to CLI exit code 2)."""


@dataclass
class AlgebraDocument:
    name: str
    algebra: LieAlgebra
    metric: BilinearForm | None = None
    certificates: list = field(default_factory=list)
    hints: dict = field(default_factory=dict)  # k -> (list of Subspace, complete)
    tags: list = field(default_factory=list)
    construction: dict = field(default_factory=dict)

    @property
    def quadratic(self) -> QuadraticLieAlgebra | None:
        """The quadratic algebra, unchecked; run the checks separately."""
        if self.metric is None:
            return None
        return QuadraticLieAlgebra(self.algebra, self.metric, check=False)


def _rat(x: Any, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise DocumentError(f"{where}: rationals must be strings or integers, got {x!r}")
    try:
        return Fraction(x)
    except (TypeError, ValueError, ZeroDivisionError):
        raise DocumentError(f"{where}: not a rational: {x!r}") from None


def _index(x: Any, n: int, where: str) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or not 1 <= x <= n:
        raise DocumentError(f"{where}: index {x!r} outside 1..{n}")
    return x - 1


def _pairs(items: Any, n: int, where: str, diagonal: bool) -> dict[tuple[int, int], Fraction]:
    if not isinstance(items, list):
        raise DocumentError(f"{where}: expected a list")
    out: dict[tuple[int, int], Fraction] = {}
    for pos, item in enumerate(items):
        w = f"{where}[{pos}]"
        if not isinstance(item, dict):
            raise DocumentError(f"{w}: expected an object")
        i, j = _index(item.get("i"), n, w), _index(item.get("j"), n, w)
        if i == j and not diagonal:
            raise DocumentError(f"{w}: diagonal entry not allowed")
        if (i, j) in out or (j, i) in out:
            raise DocumentError(f"{w}: entry ({i + 1},{j + 1}) given twice")
        out[(i, j)] = _rat(item.get("value"), w)
    return out


def _form(entries: dict, n: int, symmetric: bool) -> BilinearForm:
    m = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), v in entries.items():
        m[i][j] = v
        if i != j:
            m[j][i] = v if symmetric else -v
    return BilinearForm(Mat(n, n, m), symmetric)


def _vector(v: Any, n: int, where: str) -> tuple:
    if not isinstance(v, list) or len(v) != n:
        raise DocumentError(f"{where}: expected a vector of length {n}")
    return tuple(_rat(x, where) for x in v)


def parse_document(text: str) -> AlgebraDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise DocumentError("document must be a JSON object")
    version = data.get("format_version", FORMAT_VERSION)
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {version!r}")
    basis = data.get("basis")
    dim = data.get("dim", len(basis) if isinstance(basis, list) else None)
    if not isinstance(dim, int) or dim < 0:
        raise DocumentError("missing or invalid dim")
    if basis is None:
        basis = [f"e{i + 1}" for i in range(dim)]
    if not isinstance(basis, list) or len(basis) != dim or not all(isinstance(b, str) for b in basis):
        raise DocumentError("basis must list dim labels")
    brackets: dict[tuple[int, int], list] = {}
    raw = data.get("brackets", [])
    if not isinstance(raw, list):
        raise DocumentError("brackets: expected a list")
    for pos, item in enumerate(raw):
        w = f"brackets[{pos}]"
        if not isinstance(item, dict) or not isinstance(item.get("coeffs", {}), dict):
            raise DocumentError(f"{w}: expected {{i, j, coeffs}}")
        i, j = _index(item.get("i"), dim, w), _index(item.get("j"), dim, w)
        if i == j:
            raise DocumentError(f"{w}: [e_i, e_i] is always zero")
        if (i, j) in brackets or (j, i) in brackets:
            raise DocumentError(f"{w}: bracket ({i + 1},{j + 1}) given twice")
        v = [Fraction(0)] * dim
        for key, val in item.get("coeffs", {}).items():
            try:
                k = int(key)
            except ValueError:
                raise DocumentError(f"{w}: coefficient key {key!r} is not an index") from None
            v[_index(k, dim, w)] = _rat(val, w)
        brackets[(i, j)] = v
    algebra = LieAlgebra.from_brackets(basis, brackets)
    metric = None
    if data.get("metric") is not None:
        metric = _form(_pairs(data["metric"], dim, "metric", True), dim, True)
    certs = []
    for pos, c in enumerate(data.get("certificates", []) or []):
        w = f"certificates[{pos}]"
        if not isinstance(c, dict):
            raise DocumentError(f"{w}: expected an object")
        h = Subspace(dim, [_vector(v, dim, w + ".h") for v in c.get("h", [])])
        thetas = [_form(_pairs(t, dim, f"{w}.thetas[{a}]", False), dim, False)
                  for a, t in enumerate(c.get("thetas", []))]
        if "k" in c and c["k"] != len(thetas):
            raise DocumentError(f"{w}: k = {c['k']!r} but {len(thetas)} forms given")
        certs.append(KSymplecticCertificate(h, thetas))
    hints = {}
    for pos, hint in enumerate(data.get("hints", []) or []):
        w = f"hints[{pos}]"
        k = hint.get("k") if isinstance(hint, dict) else None
        if not isinstance(k, int):
            raise DocumentError(f"{w}: expected {{k, candidates}}")
        cands = [Subspace(dim, [_vector(v, dim, w) for v in cand]) for cand in hint.get("candidates", [])]
        hints[k] = (cands, bool(hint.get("complete", False)))
    tags = data.get("tags", [])
    construction = data.get("construction", {})
    if not isinstance(tags, list) or not isinstance(construction, dict):
        raise DocumentError("tags must be a list and construction an object")
    return AlgebraDocument(str(data.get("name", "")), algebra, metric, certs, hints, tags, construction)


def _emit_pairs(m: Mat, diagonal: bool) -> list[dict]:
    n = m.rows
    return [{"i": i + 1, "j": j + 1, "value": str(m[i, j])}
            for i in range(n) for j in range(i if diagonal else i + 1, n) if m[i, j]]


def document_dict(doc: AlgebraDocument) -> dict:
    g = doc.algebra
    out: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "name": doc.name,
        "dim": g.dim,
        "basis": list(g.names),
        "brackets": [{"i": i + 1, "j": j + 1, "coeffs": {str(k + 1): str(c) for k, c in enumerate(v) if c}}
                     for (i, j), v in sorted(g.brackets().items())],
    }
    if doc.metric is not None:
        out["metric"] = _emit_pairs(doc.metric.matrix, True)
    if doc.certificates:
        out["certificates"] = [{"k": c.k, "h": [[str(x) for x in v] for v in c.h.rows],
                                "thetas": [_emit_pairs(t.matrix, False) for t in c.thetas]}
                               for c in doc.certificates]
    if doc.hints:
        out["hints"] = [{"k": k, "complete": complete,
                         "candidates": [[[str(x) for x in v] for v in s.rows] for s in cands]}
                        for k, (cands, complete) in sorted(doc.hints.items())]
    if doc.tags:
        out["tags"] = list(doc.tags)
    if doc.construction:
        out["construction"] = doc.construction
    return out


def emit_document(doc: AlgebraDocument) -> str:
    return json.dumps(document_dict(doc), indent=2) + "\n"


def from_catalog(name: str) -> AlgebraDocument:
    from .catalog import load_entry

    e = load_entry(name)
    hints = {k: (list(h.candidates), h.complete) for k, h in e.hints.items()}
    return AlgebraDocument(e.name, e.algebra, e.metric, list(e.certificates), hints, list(e.tags),
                           dict(e.construction))
