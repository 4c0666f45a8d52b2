"""Parsing of table-style notation: brackets, metrics and wedge forms.

Accepted syntax, with basis labels such as ``e1`` or ``e3*``::

    "[e1,e2]=e3, [e3,e1]=2e1, [e6,e5]=-t e4 - e3"
    "e3*^e2* + b e1*^e2*"

Coefficients are integers, ``p/q`` rationals, or parameter names looked up
in a mapping; juxtaposition multiplies.  Covector labels are basis labels
followed by ``*``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*\**)|([-+*^(),=\[\]]))")


class NotationError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise NotationError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        num, ident, op = m.groups()
        if num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", op))
    return out


def parse_terms(text: str, params: Mapping[str, Fraction] | None = None) -> list[tuple[Fraction, list[str]]]:
    """Split a signed sum into ``(coefficient, [label, ...])`` terms.

    Labels joined by ``^`` are collected in order; every identifier that is
    not a parameter is treated as a label.
    """
    params = dict(params or {})
    toks = _tokenize(text)
    terms = []
    i = 0
    while i < len(toks):
        sign = Fraction(1)
        while i < len(toks) and toks[i] in (("op", "+"), ("op", "-")):
            if toks[i][1] == "-":
                sign = -sign
            i += 1
        coef = sign
        labels: list[str] = []
        while i < len(toks) and toks[i] not in (("op", "+"), ("op", "-")):
            kind, val = toks[i]
            if kind == "num":
                coef *= Fraction(val)
            elif kind == "id" and val in params and not labels:
                coef *= Fraction(params[val])
            elif kind == "id":
                labels.append(val)
            elif val == "(":
                depth, j = 1, i + 1
                while j < len(toks) and depth:
                    depth += {"(": 1, ")": -1}.get(toks[j][1], 0) if toks[j][0] == "op" else 0
                    j += 1
                inner = parse_terms(" ".join(v for _, v in toks[i + 1:j - 1]), params)
                if any(lbl for _, lbl in inner):
                    raise NotationError(f"only scalar expressions allowed in parentheses: {text!r}")
                coef *= sum((c for c, _ in inner), Fraction(0))
                i = j
                continue
            elif val in ("*", "^"):
                pass
            else:
                raise NotationError(f"unexpected {val!r} in {text!r}")
            i += 1
        terms.append((coef, labels))
    return terms


def parse_combination(text: str, labels: Sequence[str],
                      params: Mapping[str, Fraction] | None = None) -> tuple:
    """Coordinate vector of a linear combination of basis labels."""
    index = {lbl: i for i, lbl in enumerate(labels)}
    out = [Fraction(0)] * len(labels)
    for coef, lbls in parse_terms(text, params):
        if len(lbls) != 1:
            raise NotationError(f"expected one basis label per term in {text!r}")
        if lbls[0] not in index:
            raise NotationError(f"unknown basis label {lbls[0]!r}")
        out[index[lbls[0]]] += coef
    return tuple(out)


_BRACKET = re.compile(r"\s*\[\s*([^,\]]+?)\s*,\s*([^\]]+?)\s*\]\s*=")


def parse_brackets(text: str, labels: Sequence[str],
                   params: Mapping[str, Fraction] | None = None) -> dict[tuple[int, int], tuple]:
    """Parse ``[x,y]=expr`` statements (comma separated) into 0-based index pairs.

    Chained equalities such as ``[e2,e4]=[e3,e5]=e1`` assign the final
    expression to every bracket on the chain.
    """
    index = {lbl: i for i, lbl in enumerate(labels)}
    out: dict[tuple[int, int], tuple] = {}
    pos = 0
    text = text.strip()
    while pos < len(text):
        pending = []
        while (m := _BRACKET.match(text, pos)) is not None:
            a, b = m.group(1).strip(), m.group(2).strip()
            if a not in index or b not in index:
                raise NotationError(f"unknown label in [{a},{b}]")
            pending.append((index[a], index[b]))
            pos = m.end()
        if not pending:
            raise NotationError(f"expected a bracket at {text[pos:]!r}")
        end = _find_statement_end(text, pos)
        value = parse_combination(text[pos:end], labels, params)
        for key in pending:
            if key in out or key[::-1] in out:
                raise NotationError(f"bracket {key} given twice")
            out[key] = value
        pos = end
        while pos < len(text) and text[pos] in ", \t\n":
            pos += 1
    return out


def _find_statement_end(text: str, pos: int) -> int:
    """Position of the comma that starts the next ``[`` statement (or the end)."""
    depth = 0
    i = pos
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            rest = text[i + 1:].lstrip()
            if rest.startswith("["):
                return i
        i += 1
    return len(text)


def parse_wedge(text: str, labels: Sequence[str],
                params: Mapping[str, Fraction] | None = None) -> list[list[Fraction]]:
    """Antisymmetric matrix of a sum of ``a x*^y*`` terms.

    ``(x*^y*)(u, v) = x*(u) y*(v) - x*(v) y*(u)``, so the term contributes
    ``+a`` at (x, y) and ``-a`` at (y, x).
    """
    n = len(labels)
    index = {lbl + "*": i for i, lbl in enumerate(labels)}
    m = [[Fraction(0)] * n for _ in range(n)]
    for coef, lbls in parse_terms(text, params):
        if len(lbls) != 2:
            raise NotationError(f"expected x*^y* terms in {text!r}")
        try:
            i, j = index[lbls[0]], index[lbls[1]]
        except KeyError as exc:
            raise NotationError(f"unknown covector {exc.args[0]!r}") from None
        m[i][j] += coef
        m[j][i] -= coef
    return m


def _format_coef(c: Fraction, first: bool) -> tuple[str, str]:
    sign = "-" if c < 0 else ("" if first else "+")
    mag = abs(c)
    return sign, "" if mag == 1 else f"{mag} "


def format_combination(v: Sequence[Fraction], labels: Sequence[str]) -> str:
    """Inverse of :func:`parse_combination`, e.g. ``"e1 - 1/2 e3"``."""
    parts = []
    for c, lbl in zip(v, labels):
        if not c:
            continue
        sign, mag = _format_coef(c, not parts)
        parts.append(f"{sign}{mag}{lbl}" if not parts else f"{sign} {mag}{lbl}")
    return " ".join(parts) if parts else "0"


def format_wedge(m: Sequence[Sequence[Fraction]], labels: Sequence[str]) -> str:
    """Antisymmetric matrix as a sum of ``a x*^y*`` terms with x before y."""
    parts = []
    n = len(labels)
    for i in range(n):
        for j in range(i + 1, n):
            c = m[i][j]
            if not c:
                continue
            sign, mag = _format_coef(c, not parts)
            term = f"{mag}{labels[i]}*^{labels[j]}*"
            parts.append(f"{sign}{term}" if not parts else f"{sign} {term}")
    return " ".join(parts) if parts else "0"
