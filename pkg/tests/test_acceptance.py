"""Acceptance criteria 1-10, one line of output each.

Run with ``pytest tests/test_acceptance.py`` (lines appear in the terminal
summary) or ``python tests/test_acceptance.py``.
"""

import functools
import json
import sys
from pathlib import Path

from kslie.catalog import classification_report, format_report, list_entries, load_entry
from kslie.construct import abelian_ksymplectic, six_dim_example, sln_certificate
from kslie.derivh2 import (
    MapSpace,
    common_kernel,
    h2_dimension,
    inner_derivations,
    skew_derivation_space,
)
from kslie.ksymp import (
    KSymplecticCertificate,
    check_h_admissibility,
    joint_kernel,
    ruled_out,
    search_ksymplectic,
    verify_certificate,
)
from kslie.liealg import Subspace, change_basis, check_jacobi, killing_form, unit
from kslie.notation import format_combination, parse_combination
from kslie.quadform import (
    BilinearForm,
    QuadraticLieAlgebra,
    check_cocycle,
    check_invariance,
    derivation_from_form,
    form_from_derivation,
    is_degenerate_on,
    is_nondegenerate,
    orthogonal_complement,
)
from kslie.ratlin import identity, matmul, solve, zeros

GOLDEN = Path(__file__).parent / "golden"
STAR = ("e1", "e2", "e3", "e1*", "e2*", "e3*")
RESULTS = {}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def run():
            try:
                fn()
            except Exception as exc:
                RESULTS[number] = (title, False, str(exc).splitlines()[0] if str(exc) else type(exc).__name__)
                print(f"criterion {number:>2} FAIL  {title}: {RESULTS[number][2]}")
                raise
            RESULTS[number] = (title, True, "")
            print(f"criterion {number:>2} PASS  {title}")
        return run
    return wrap


def check(cond, msg):
    if not cond:
        raise AssertionError(msg)


def span(names, *vectors):
    return Subspace(len(names), [parse_combination(v, names) for v in vectors])


@criterion(1, "catalog integrity")
def test_criterion_1():
    names = list_entries()
    check(len(list_entries(6)) == 11, f"{len(list_entries(6))} entries of dimension 6")
    for name in names:
        e = load_entry(name)
        check(check_jacobi(e.algebra) is None, f"{name}: Jacobi")
        check(check_invariance(e.algebra, e.metric) is None, f"{name}: invariance")
        check(is_nondegenerate(e.metric), f"{name}: degenerate metric")


@criterion(2, "printed certificates verify")
def test_criterion_2():
    wanted = {"sl2R": [2, 2], "so(3,1)": [2], "n1(2,2)": [1, 2]}
    for name, ks in wanted.items():
        e = load_entry(name)
        check(sorted(c.k for c in e.certificates) == ks, f"{name}: stored k values")
        for c in e.certificates:
            rep = verify_certificate(e.algebra, c, e.metric)
            check(rep.ok, f"{name} k={c.k}: {rep.first_failure}")


@criterion(3, "sl(n) certificates for n = 2, 3, 4")
def test_criterion_3():
    for n in (2, 3, 4):
        g, cert = sln_certificate(n)
        check(verify_certificate(g, cert).ok, f"n={n} fails")
        check(cert.h.dim == n * (n - 1), f"n={n}: dim h = {cert.h.dim}")
        check(joint_kernel(cert.thetas, g.dim).dim == 0, f"n={n}: joint kernel")


@criterion(4, "H^2 of the cotangent extensions")
def test_criterion_4():
    for name in ("T*sl2R", "T*su2"):
        q = load_entry(name).quadratic
        skew, inner = skew_derivation_space(q).dim, inner_derivations(q.algebra).dim
        check(h2_dimension(q) == 0 and skew == inner == 6, f"{name}: skew {skew}, inner {inner}")


@criterion(5, "oscillator skew derivations kill the center")
def test_criterion_5():
    for name, params in (("osc(4)", {"lambda": 1}), ("osc(6)", {"lambda1": 1, "lambda2": 2})):
        e = load_entry(name, params)
        z = unit(e.dim, 0)
        space = skew_derivation_space(e.quadratic)
        check(all(not any(d.apply(z)) for d in space.basis), f"{name}: some D moves e1")
        check(common_kernel(space).contains(z), f"{name}: common kernel misses e1")


# (algebra, h, k, vectors the argument says every admissible D must kill)
ADMISSIBILITY_CASES = [
    ("T*su2", ("e1", "e1*", "e2*", "e3*"), 2, ("e1*",)),
    ("T*sl2R", ("e1", "e3", "e1*", "e2*", "e3*"), 5, ("e1*", "e2*", "e3*")),
    ("T*sl2R", ("e1", "e1*", "e2*", "e3*"), 2, ("e2*",)),
    ("T*sl2R", ("e3", "e1*", "e2*", "e3*"), 2, ("e1*",)),
    ("T*sl2R", ("e1", "e3", "e1*", "e2*"), 2, ("e2",)),
    ("T*sl2R", ("e1", "e3", "e2*", "e3*"), 2, ("e1*",)),
]


@criterion(6, "normal-form candidates are blocked")
def test_criterion_6():
    problems = []
    for name, vectors, k, named in ADMISSIBILITY_CASES:
        q = load_entry(name).quadratic
        h = span(STAR, *vectors)
        r = check_h_admissibility(q, h, k)
        label = f"{name} span{{{', '.join(vectors)}}}"
        if not r.blocked:
            problems.append(f"{label} is open")
            continue
        missing = [v for v in named if not r.kernel.contains(parse_combination(v, STAR))]
        if missing:
            found = ", ".join(format_combination(v, STAR) for v in r.kernel.rows)
            problems.append(f"{label}: {', '.join(missing)} not killed (common kernel {found})")
    check(not problems, "; ".join(problems))


@criterion(7, "classification report")
def test_criterion_7():
    report = classification_report()
    check(format_report(report) == (GOLDEN / "report.txt").read_text(), "report differs from golden report.txt")
    published = json.loads((GOLDEN / "published_verdicts.json").read_text())
    problems = []
    for row in report["entries"]:
        claims = published["verdicts"][row["name"]]
        got = {str(v["k"]): v for v in row["verdicts"]}
        check(set(got) == set(claims), f"{row['name']}: feasible k differ")
        for k, (status, rule) in claims.items():
            v = got[k]
            if v["status"] != status or rule not in v["rules"]:
                problems.append(f"{row['name']} k={k}: computed {v['status']} {v['rules']}, published {status} {rule}")
    if report["admitting"] != published["admitting"]:
        problems.insert(0, f"admitting {report['admitting']} vs published {published['admitting']}")
    check(not problems, "; ".join(problems))


@criterion(8, "search success and soundness")
def test_criterion_8():
    sl2 = load_entry("sl2R").quadratic
    res = search_ksymplectic(sl2, 2, seed=0, trials=64)
    check(res.status == "found", f"sl2R: {res.status}")
    check(verify_certificate(sl2.algebra, res.certificate).ok, "sl2R certificate does not re-verify")
    su2 = load_entry("su2")
    res = search_ksymplectic(QuadraticLieAlgebra(su2.algebra, killing_form(su2.algebra)), 2)
    check(res.status == "obstructed" and [v.rule for v in ruled_out(res.verdicts, 2)] == ["R6"], "su2 not R6")
    targets = [("sl2R", 2), ("n1(2,2)", 1), ("n1(2,2)", 2), ("T*sl2R", 2)]
    found = 0
    for seed in range(100):
        name, k = targets[seed % len(targets)]
        q = load_entry(name).quadratic
        r = search_ksymplectic(q, k, seed=seed, trials=4)
        if r.status == "found":
            found += 1
            check(verify_certificate(q.algebra, r.certificate).ok, f"{name} seed {seed}: unsound")
    check(found > 0, "no search succeeded")


def _combination(basis, rng):
    d = None
    for m in basis:
        term = m * rng.randint(-3, 3)
        d = term if d is None else d + term
    return d


@criterion(9, "property suites")
def test_criterion_9():
    import random

    from strategies import random_invertible

    rng = random.Random(2024)
    names = list_entries(include_extras=True)
    # (a) cocycle <=> skew derivation
    for _ in range(50):
        q = load_entry(rng.choice(names)).quadratic
        d = _combination(skew_derivation_space(q).basis, rng)
        d = zeros(q.dim, q.dim) if d is None else d
        theta = form_from_derivation(q, d)
        check(check_cocycle(q.algebra, theta) is None, "(a) form of a skew derivation is not closed")
        check(derivation_from_form(q, theta) == d, "(a) round trip")
    # (b) basis changes
    certified = [(e.algebra, e.metric, c) for e in map(load_entry, names) for c in e.certificates]
    for seed in range(20):
        g, metric, cert = certified[seed % len(certified)]
        p = random_invertible(g.dim, seed)
        pinv = solve(p, identity(g.dim))
        h = Subspace(g.dim, [pinv.apply(v) for v in cert.h.rows])
        thetas = [BilinearForm(matmul(matmul(p.T, t.matrix), p), symmetric=False) for t in cert.thetas]
        check(verify_certificate(change_basis(g, p), KSymplecticCertificate(h, thetas)).ok, f"(b) seed {seed}")
    # (c) double orthogonal complement
    for name in names:
        q = load_entry(name).quadratic
        for _ in range(50):
            s = Subspace(q.dim, [[rng.randint(-2, 2) for _ in range(q.dim)] for _ in range(rng.randint(0, q.dim))])
            check(orthogonal_complement(q, orthogonal_complement(q, s)) == s, f"(c) {name}")
    # (d) independence modulo inner derivations when h is nondegenerate
    pool = list(certified)
    for n, k in ((1, 1), (2, 2), (3, 1), (1, 5)):
        q, c = abelian_ksymplectic(n, k)
        pool.append((q.algebra, q.metric, c))
    for g, metric, cert in pool:
        if metric is None or is_degenerate_on(metric, cert.h):
            continue
        q = QuadraticLieAlgebra(g, metric)
        inner = inner_derivations(g)
        ds = [derivation_from_form(q, t) for t in cert.thetas]
        check(MapSpace(g.dim, list(inner.basis) + ds).dim == inner.dim + cert.k, "(d) dependent classes")


@criterion(10, "abelian and six-dimensional examples")
def test_criterion_10():
    for n, k in ((1, 1), (2, 2), (3, 1), (1, 5)):
        q, cert = abelian_ksymplectic(n, k)
        check(verify_certificate(q.algebra, cert).ok, f"abelian ({n},{k})")
    for abc in ((0, 0, 0), (1, 1, 1), (2, -1, 3)):
        g, cert = six_dim_example(*abc)
        check(verify_certificate(g, cert).ok, f"six-dimensional {abc}")


def summary_lines():
    lines = []
    for number in sorted(RESULTS):
        title, ok, why = RESULTS[number]
        lines.append(f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}" + ("" if ok else f": {why}"))
    return lines


if __name__ == "__main__":
    sys.path.insert(0, str(Path(__file__).parent))
    failed = 0
    for number in range(1, 11):
        fn = globals()[f"test_criterion_{number}"]
        try:
            fn()
        except Exception:
            failed += 1
    sys.exit(1 if failed else 0)
