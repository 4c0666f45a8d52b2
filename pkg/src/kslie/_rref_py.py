"""Pure-Python row reduction kernel.

Rows are cleared of denominators and reduced fraction-free over the
integers (each row kept primitive), so intermediate growth stays bounded
by the data rather than by repeated Fraction normalisation.
"""

from fractions import Fraction
from math import gcd, lcm


def _integer_row(row):
    den = lcm(*(x.denominator for x in row)) if row else 1
    return [x.numerator * (den // x.denominator) for x in row]


def rref_rows(rows, ncols):
    """Reduce a list of Fraction rows; return (nonzero RREF rows, pivot columns)."""
    work = []
    for row in rows:
        ints = _integer_row(row)
        if any(ints):
            work.append(ints)
    nrows = len(work)
    pivots = []
    prow = 0
    for c in range(ncols):
        if prow == nrows:
            break
        best = -1
        best_abs = 0
        for r in range(prow, nrows):
            v = work[r][c]
            if v and (best < 0 or abs(v) < best_abs):
                best = r
                best_abs = abs(v)
        if best < 0:
            continue
        if best != prow:
            work[prow], work[best] = work[best], work[prow]
        p = work[prow]
        pv = p[c]
        for r in range(nrows):
            if r == prow:
                continue
            row = work[r]
            f = row[c]
            if not f:
                continue
            g = gcd(pv, f)
            a = pv // g
            b = f // g
            new = [a * x - b * y for x, y in zip(row, p)]
            content = gcd(*new)
            if content > 1:
                new = [x // content for x in new]
            work[r] = new
        pivots.append(c)
        prow += 1
    out = []
    for i, c in enumerate(pivots):
        pv = work[i][c]
        out.append([Fraction(x, pv) for x in work[i]])
    return out, pivots
