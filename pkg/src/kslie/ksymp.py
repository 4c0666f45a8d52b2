"""k-symplectic certificates: verification, decomposition, obstructions and search.

A certificate on a Lie algebra of dimension ``n(k+1)`` is a subalgebra
``h`` of dimension ``nk`` with ``k`` closed 2-forms that have no common
kernel and all vanish on ``h x h``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .derivh2 import MapSpace, admissible_derivations, common_kernel, h2_dimension
from .liealg import (
    LieAlgebra,
    Subspace,
    center,
    change_basis,
    is_abelian,
    is_nilpotent,
    is_subalgebra,
    killing_form,
    unit,
)
from .notation import format_combination, format_wedge
from .prng import SplitMix64
from .quadform import (
    BilinearForm,
    QuadraticLieAlgebra,
    check_cocycle,
    form_from_derivation,
    is_degenerate_on,
    is_negative_definite,
)
from .ratlin import Mat, matmul, nullspace

ZERO = Fraction(0)

RULES = {
    "R1": "non-nilpotent quadratic algebra has no symplectic form",
    "R2": "H^2 = 0 and nontrivial center",
    "R3": "one-dimensional nondegenerate center is killed by every skew derivation",
    "R4": "non-abelian nilpotent quadratic algebra of dimension m has no (m-1)-symplectic structure",
    "R5": "double extension of an abelian algebra by a non-nilpotent map, times an abelian factor",
    "R6": "negative definite Killing form (compact semisimple)",
    "R7": "k > dim H^2 forces h to be degenerate for the metric",
    "EXH": "every normal-form subalgebra candidate is blocked",
    "EXT": "cited external fact",
}


@dataclass(frozen=True)
class KSymplecticCertificate:
    h: Subspace
    thetas: tuple

    def __post_init__(self):
        object.__setattr__(self, "thetas", tuple(self.thetas))

    @property
    def k(self) -> int:
        return len(self.thetas)

    @property
    def n(self) -> int:
        return self.h.ambient_dim // (self.k + 1)


@dataclass(frozen=True)
class ClauseFailure:
    clause: str
    detail: str
    witness: object = None


@dataclass(frozen=True)
class CertificateReport:
    failures: tuple
    h_degenerate: bool | None = None

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> ClauseFailure | None:
        return self.failures[0] if self.failures else None


CLAUSES = ("dimension", "h-dimension", "subalgebra", "cocycle", "nondegenerate", "isotropic")


def feasible_ks(dim: int) -> list[int]:
    """All k >= 1 with (k+1) dividing ``dim``."""
    return [k for k in range(1, dim) if dim % (k + 1) == 0]


def joint_kernel(forms: Sequence[BilinearForm], dim: int) -> Subspace:
    rows = [f.matrix.row(i) for f in forms for i in range(dim)]
    if not rows:
        return Subspace.full(dim)
    return Subspace.from_columns(nullspace(Mat(len(rows), dim, rows)))


def verify_certificate(g: LieAlgebra, cert: KSymplecticCertificate,
                       metric: BilinearForm | None = None) -> CertificateReport:
    """Check every clause of the certificate contract; collect all failures."""
    failures = []
    dim, k = g.dim, cert.k
    if k < 1 or dim % (k + 1) or cert.h.ambient_dim != dim or any(t.dim != dim for t in cert.thetas):
        failures.append(ClauseFailure("dimension", f"dim {dim} is not n(k+1) for k={k}, "
                                                   "or a form/subspace has the wrong size"))
        return CertificateReport(tuple(failures))
    n = dim // (k + 1)
    h = cert.h
    if h.dim != n * k:
        failures.append(ClauseFailure("h-dimension", f"dim h = {h.dim}, expected {n * k}", h.dim))
    for i, x in enumerate(h.rows):
        bad = next((y for y in h.rows[i + 1:] if not h.contains(g.bracket(x, y))), None)
        if bad is not None:
            failures.append(ClauseFailure("subalgebra", "h is not closed under the bracket", (x, bad)))
            break
    for a, theta in enumerate(cert.thetas):
        if theta.symmetric:
            failures.append(ClauseFailure("cocycle", f"theta_{a + 1} is not antisymmetric", a))
            continue
        bad = check_cocycle(g, theta)
        if bad is not None:
            failures.append(ClauseFailure("cocycle", f"theta_{a + 1} is not closed", (a, bad)))
    kern = joint_kernel(cert.thetas, dim)
    if kern.dim:
        failures.append(ClauseFailure("nondegenerate", "the forms share a kernel", kern.rows[0]))
    for a, theta in enumerate(cert.thetas):
        bad = next(((y, z) for i, y in enumerate(h.rows) for z in h.rows[i + 1:] if theta(y, z)), None)
        if bad is not None:
            failures.append(ClauseFailure("isotropic", f"theta_{a + 1} does not vanish on h", (a,) + bad))
    degenerate = is_degenerate_on(metric, h) if metric is not None else None
    return CertificateReport(tuple(failures), degenerate)


def theta_decomposition(g: LieAlgebra, cert: KSymplecticCertificate) -> list[Subspace]:
    """Summands ``h^a = {x in h : theta_b(x, .) = 0 for all b != a}``."""
    report = verify_certificate(g, cert)
    if not report.ok:
        raise ValueError(f"invalid certificate: {report.first_failure.clause}")
    dim = g.dim
    hb = cert.h.rows
    out = []
    for a in range(cert.k):
        rows = []
        for b, theta in enumerate(cert.thetas):
            if b == a:
                continue
            images = [matmul(Mat.from_rows([y]), theta.matrix).row(0) for y in hb]
            rows.extend([img[j] for img in images] for j in range(dim))
        if not rows:
            out.append(cert.h)
            continue
        coeffs = nullspace(Mat(len(rows), len(hb), rows))
        vecs = [tuple(sum((c * y[i] for c, y in zip(col, hb)), ZERO) for i in range(dim))
                for col in coeffs.columns()]
        out.append(Subspace(dim, vecs))
    return out


@dataclass(frozen=True)
class ObstructionVerdict:
    rule: str
    ruled_out: frozenset
    kind: str = "none"  # "none" rules the ks out; "constraint" only restricts h
    witness: object = None
    detail: str = ""

    @property
    def citation(self) -> str:
        return RULES.get(self.rule, self.rule)


def verify_double_extension_presentation(q: QuadraticLieAlgebra, presentation: Mapping) -> tuple[bool, str]:
    """Check that ``q`` is literally ``delta_A(abelian) x abelian`` with non-nilpotent ``A``.

    ``presentation`` names 1-based indices: ``e`` (central generator),
    ``ebar`` (the extending element) and optionally ``abelian`` (the
    extra abelian factor).  The algebra is rebuilt from the extracted datum
    and compared entry by entry.
    """
    from .construct import DoubleExtensionDatum, double_extension, quadratic_product

    g, n = q.algebra, q.dim
    e, eb = presentation["e"] - 1, presentation["ebar"] - 1
    extra = [i - 1 for i in presentation.get("abelian", ())]
    base_idx = [i for i in range(n) if i not in {e, eb, *extra}]
    order = [e] + base_idx + [eb] + extra
    if sorted(order) != list(range(n)):
        return False, "presentation indices do not partition the basis"
    p = Mat.from_cols([unit(n, i) for i in order], n)
    g2 = change_basis(g, p)
    gm = matmul(matmul(p.T, q.metric.matrix), p)
    m = len(base_idx)
    block = lambda rows, cols: Mat(len(rows), len(cols), [[gm[r, c] for c in cols] for r in rows])
    base_metric = BilinearForm(block(range(1, m + 1), range(1, m + 1)), symmetric=True)
    a_cols = []
    for j in range(1, m + 1):
        v = g2.struct[m + 1][j]
        if v[0] or v[m + 1:].count(ZERO) != len(v) - m - 1:
            return False, "ad_ebar does not preserve the base"
        a_cols.append(v[1:m + 1])
    a = Mat.from_cols(a_cols, m) if m else Mat(0, 0)
    try:
        base = QuadraticLieAlgebra(LieAlgebra.abelian(m), base_metric)
        de = double_extension(DoubleExtensionDatum(base, a))
        if extra:
            ab = QuadraticLieAlgebra(LieAlgebra.abelian(len(extra)),
                                     BilinearForm(block(range(m + 2, n), range(m + 2, n)), symmetric=True))
            de = quadratic_product(de, ab)
    except ValueError as exc:
        return False, str(exc)
    if de.algebra.struct != g2.struct or de.metric.matrix != gm:
        return False, "algebra differs from the double extension of its extracted datum"
    power = a
    for _ in range(max(m - 1, 0)):
        power = matmul(power, a)
    if m == 0 or power.is_zero():
        return False, "A is nilpotent"
    return True, "verified"


def obstruction_scan(q: QuadraticLieAlgebra, tags: Mapping | None = None) -> list[ObstructionVerdict]:
    """Run every non-existence rule against ``q``; R5 needs a double-extension presentation tag."""
    g = q.algebra
    dim = g.dim
    ks = frozenset(feasible_ks(dim))
    verdicts = []
    nilpotent = is_nilpotent(g)
    if not nilpotent and 1 in ks:
        verdicts.append(ObstructionVerdict("R1", frozenset({1})))
    z = center(g)
    h2 = h2_dimension(q)
    if h2 == 0 and z.dim and ks:
        verdicts.append(ObstructionVerdict("R2", ks, witness=z.rows[0]))
    if z.dim == 1 and q.metric(z.rows[0], z.rows[0]) and ks:
        verdicts.append(ObstructionVerdict("R3", ks, witness=z.rows[0]))
    if nilpotent and not is_abelian(g) and dim >= 2:
        verdicts.append(ObstructionVerdict("R4", frozenset({dim - 1})))
    presentation = (tags or {}).get("double_extension")
    if presentation and ks:
        ok, why = verify_double_extension_presentation(q, presentation)
        if ok:
            verdicts.append(ObstructionVerdict("R5", ks, witness=unit(dim, presentation["e"] - 1)))
        else:
            verdicts.append(ObstructionVerdict("R5", frozenset(), kind="rejected", detail=why))
    if dim and is_negative_definite(killing_form(g)) and ks:
        verdicts.append(ObstructionVerdict("R6", ks))
    constrained = frozenset(k for k in ks if k > h2)
    if constrained:
        verdicts.append(ObstructionVerdict("R7", constrained, kind="constraint",
                                           detail=f"dim H^2 = {h2}"))
    return verdicts


def ruled_out(verdicts: Sequence[ObstructionVerdict], k: int) -> list[ObstructionVerdict]:
    return [v for v in verdicts if v.kind == "none" and k in v.ruled_out]


@dataclass(frozen=True)
class AdmissibilityResult:
    status: str  # "blocked" or "open"
    space: MapSpace
    kernel: Subspace
    witness: tuple | None = None
    is_subalgebra: bool = True

    @property
    def blocked(self) -> bool:
        return self.status == "blocked"


def check_h_admissibility(q: QuadraticLieAlgebra, h: Subspace, k: int) -> AdmissibilityResult:
    """Blocked when every admissible skew derivation kills a common nonzero vector.

    The computation does not need ``h`` to be a subalgebra; closure is
    reported in ``is_subalgebra`` so callers can discard such candidates.
    """
    if (k + 1) * h.dim != k * q.dim:
        raise ValueError(f"dim h = {h.dim} does not fit k = {k} in dimension {q.dim}")
    closed = is_subalgebra(q.algebra, h)
    space = admissible_derivations(q, h)
    kern = common_kernel(space)
    if kern.dim:
        return AdmissibilityResult("blocked", space, kern, kern.rows[0], closed)
    return AdmissibilityResult("open", space, kern, None, closed)


def isotropic_cocycles(g: LieAlgebra, h: Subspace | None = None) -> list[BilinearForm]:
    """Basis of closed 2-forms (vanishing on ``h x h`` when given)."""
    n = g.dim
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    col = {p: c for c, p in enumerate(pairs)}

    def coeff(row, i, j, c):
        if i == j or not c:
            return
        if i < j:
            row[col[(i, j)]] += c
        else:
            row[col[(j, i)]] -= c

    rows = []
    for u, v, w in itertools.combinations(range(n), 3):
        row = [ZERO] * len(pairs)
        for (a, b, x) in ((u, v, w), (v, w, u), (w, u, v)):
            for m, c in enumerate(g.struct[a][b]):
                coeff(row, m, x, c)
        if any(row):
            rows.append(row)
    if h is not None:
        for y, z in itertools.combinations(h.rows, 2):
            row = [ZERO] * len(pairs)
            for (i, j) in pairs:
                row[col[(i, j)]] = y[i] * z[j] - y[j] * z[i]
            if any(row):
                rows.append(row)
    if not pairs:
        return []
    kern = nullspace(Mat(len(rows), len(pairs), rows)) if rows else \
        Mat(len(pairs), len(pairs), [[1 if a == b else 0 for b in range(len(pairs))] for a in range(len(pairs))])
    forms = []
    for c in kern.columns():
        m = [[ZERO] * n for _ in range(n)]
        for (i, j), v in zip(pairs, c):
            m[i][j] = v
            m[j][i] = -v
        forms.append(BilinearForm(Mat(n, n, m), symmetric=False))
    return forms


class InfeasibleDimensionError(ValueError):
    pass


@dataclass
class CandidateReport:
    index: int
    source: str
    h: Subspace
    status: str
    witness: tuple | None = None
    space_dim: int | None = None
    trials: int = 0


@dataclass
class SearchResult:
    status: str  # "found" | "obstructed" | "inconclusive"
    k: int
    certificate: KSymplecticCertificate | None = None
    verdicts: list = field(default_factory=list)
    candidates: list = field(default_factory=list)
    names: tuple = ()
    settings: dict = field(default_factory=dict)

    def transcript(self) -> str:
        names = self.names
        s = self.settings
        lines = [f"search k={self.k} seed={s.get('seed')} trials={s.get('trials')} "
                 f"coeff_bound={s.get('coeff_bound')}"]
        for v in self.verdicts:
            ks = ",".join(str(k) for k in sorted(v.ruled_out))
            lines.append(f"  rule {v.rule} [{v.kind}] k in {{{ks}}}: {v.citation}"
                         + (f" ({v.detail})" if v.detail else ""))
        for c in self.candidates:
            span = ", ".join(format_combination(r, names) for r in c.h.rows)
            line = f"  candidate #{c.index} [{c.source}] h = span{{{span}}}: {c.status}"
            if c.witness is not None:
                line += f" (witness {format_combination(c.witness, names)})"
            if c.space_dim is not None:
                line += f", admissible dim {c.space_dim}"
            if c.trials:
                line += f", trials {c.trials}"
            lines.append(line)
        lines.append(f"result: {self.status.upper()}")
        if self.certificate is not None:
            for a, t in enumerate(self.certificate.thetas):
                lines.append(f"  theta_{a + 1} = {format_wedge(t.matrix.tolist(), names)}")
        return "\n".join(lines) + "\n"


def _basis_subset_candidates(g: LieAlgebra, size: int):
    n = g.dim
    for idx in itertools.combinations(range(n), size):
        s = Subspace(n, [unit(n, i) for i in idx])
        if is_subalgebra(g, s):
            yield s


def search_ksymplectic(target: QuadraticLieAlgebra | LieAlgebra, k: int, *, trials: int = 64, seed: int = 0,
                       coeff_bound: int = 10, extra_h_candidates: Sequence = (), hints: Sequence = (),
                       candidates_complete: bool = False, tags: Mapping | None = None) -> SearchResult:
    """Look for a k-symplectic certificate by random exact draws over admissible data.

    ``found`` is always backed by a certificate that passed
    :func:`verify_certificate`.  ``obstructed`` is returned only from a
    rule or from blocking every candidate of a list declared complete
    (``candidates_complete=True``, in which case basis subsets are not
    enumerated).  Everything else is ``inconclusive``.
    """
    q = target if isinstance(target, QuadraticLieAlgebra) else None
    g = q.algebra if q is not None else target
    dim = g.dim
    if k < 1 or dim % (k + 1):
        raise InfeasibleDimensionError(f"k+1 = {k + 1} does not divide dim = {dim}")
    hdim = dim // (k + 1) * k
    settings = {"seed": seed, "trials": trials, "coeff_bound": coeff_bound}
    result = SearchResult("inconclusive", k, names=g.names, settings=settings)
    if q is not None:
        result.verdicts = obstruction_scan(q, tags)
        if ruled_out(result.verdicts, k):
            result.status = "obstructed"
            return result
        need_degenerate = k > h2_dimension(q)
    else:
        need_degenerate = False

    seen = set()
    ordered = []

    def add(source, s):
        if s not in seen:
            seen.add(s)
            ordered.append((source, s))

    for vecs in extra_h_candidates:
        add("user", vecs if isinstance(vecs, Subspace) else Subspace(dim, vecs))
    for vecs in hints:
        add("hint", vecs if isinstance(vecs, Subspace) else Subspace(dim, vecs))
    if not candidates_complete:
        for s in _basis_subset_candidates(g, hdim):
            add("basis-subset", s)

    rng = SplitMix64(seed)
    for idx, (source, h) in enumerate(ordered):
        rep = CandidateReport(idx, source, h, "open")
        result.candidates.append(rep)
        if h.dim != hdim:
            rep.status = "wrong-dimension"
            continue
        if not is_subalgebra(g, h):
            rep.status = "not-subalgebra"
            continue
        if need_degenerate and not is_degenerate_on(q, h):
            rep.status = "skipped-nondegenerate"
            continue
        if q is not None:
            adm = check_h_admissibility(q, h, k)
            basis = [form_from_derivation(q, d).matrix for d in adm.space.basis]
            kern = adm.kernel
        else:
            basis = [f.matrix for f in isotropic_cocycles(g, h)]
            kern = joint_kernel([BilinearForm(m, symmetric=False) for m in basis], dim)
        rep.space_dim = len(basis)
        if kern.dim:
            rep.status = "blocked"
            rep.witness = kern.rows[0]
            continue
        for t in range(trials):
            thetas = []
            for _ in range(k):
                m = Mat(dim, dim)
                for b in basis:
                    c = rng.randint(-coeff_bound, coeff_bound)
                    if c:
                        m = m + b * c
                thetas.append(BilinearForm(m, symmetric=False))
            cert = KSymplecticCertificate(h, thetas)
            rep.trials = t + 1
            if verify_certificate(g, cert).ok:
                rep.status = "found"
                result.status = "found"
                result.certificate = cert
                return result
        rep.status = "open-unresolved"
    if candidates_complete and ordered and all(
            c.status in ("blocked", "not-subalgebra", "skipped-nondegenerate", "wrong-dimension")
            for c in result.candidates):
        result.status = "obstructed"
        result.verdicts.append(ObstructionVerdict("EXH", frozenset({k}),
                                                  detail="all declared candidates blocked"))
    return result
