"""
Exact sparse Gaussian elimination over Q.

Variables are plain non-negative integers; their numeric order is the pivot
order.  Rows are kept as integer dictionaries (fraction-free): reducing row r
by a pivot row p at variable v replaces r by  p[v]/g * r - r[v]/g * p  with
g = gcd(p[v], r[v]), and the integer content of the result is divided out.
Rational arithmetic only appears in back-substitution.

The echelon form is built incrementally: each incoming row is reduced by the
existing pivots, always at its smallest variable, until it either vanishes or
acquires a new pivot.  With the same rows fed in the same order the result is
identical run to run.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable


class Inconsistent(Exception):
    """A row reduced to 0 = c with c != 0."""

    def __init__(self, combination: dict, rhs: int):
        self.combination = combination
        self.rhs = rhs
        super().__init__(f"inconsistent system (0 = {rhs})")


def integer_row(row: dict, rhs=0):
    """Scale a rational row to coprime integers; returns (row, rhs, scale)."""
    den = 1
    for c in row.values():
        if isinstance(c, Fraction):
            den = den * c.denominator // gcd(den, c.denominator)
    if isinstance(rhs, Fraction):
        den = den * rhs.denominator // gcd(den, rhs.denominator)
    out = {v: int(c * den) for v, c in row.items() if c}
    b = int(rhs * den)
    g = 0
    for c in out.values():
        g = gcd(g, c)
    g = gcd(g, b)
    if g > 1:
        out = {v: c // g for v, c in out.items()}
        b //= g
    return out, b, Fraction(den, g or 1)


def _content(row: dict, rhs: int, comb: dict | None) -> int:
    g = rhs
    for c in row.values():
        g = gcd(g, c)
        if g == 1:
            return 1
    if comb:
        for c in comb.values():
            g = gcd(g, c)
            if g == 1:
                return 1
    return g


class SparseEchelon:
    """
    Incremental row echelon form.

    ``pivots`` maps a pivot variable to ``(row, rhs, combination)``; every
    variable of ``row`` is >= the pivot variable.  With ``track=True`` each row
    also remembers which input rows (by tag) it is an integer combination of,
    so that an inconsistency can be reported as an explicit certificate.
    """

    def __init__(self, track: bool = False):
        self.track = track
        self.pivots: dict = {}
        self.rows_seen = 0
        self._scales: dict = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _reduce(self, row: dict, rhs: int, comb: dict | None, full: bool):
        pivots = self.pivots
        floor = -1
        while row:
            cand = [v for v in row if v > floor] if full else row
            if not cand:
                break
            v = min(cand)
            piv = pivots.get(v)
            if piv is None:
                if not full:
                    break
                floor = v
                continue
            prow, prhs, pcomb = piv
            a, b = prow[v], row[v]
            g = gcd(a, b)
            a //= g
            b //= g
            if a != 1:
                row = {w: c * a for w, c in row.items()}
                rhs *= a
                if comb is not None:
                    comb = {t: c * a for t, c in comb.items()}
            for w, c in prow.items():
                s = row.get(w, 0) - b * c
                if s:
                    row[w] = s
                else:
                    del row[w]
            rhs -= b * prhs
            if comb is not None:
                for t, c in pcomb.items():
                    s = comb.get(t, 0) - b * c
                    if s:
                        comb[t] = s
                    else:
                        del comb[t]
            g = _content(row, rhs, comb)
            if g > 1:
                row = {w: c // g for w, c in row.items()}
                rhs //= g
                if comb is not None:
                    comb = {t: c // g for t, c in comb.items()}
        return row, rhs, comb

    def add(self, row: dict, rhs=0, tag=None) -> bool:
        """Insert a row; True if it produced a new pivot.  Raises Inconsistent."""
        self.rows_seen += 1
        irow, irhs, scale = integer_row(row, rhs)
        comb = None
        if self.track:
            comb = {tag: 1} if irow or irhs else {}
            self._scales[tag] = scale
        row, rhs, comb = self._reduce(irow, irhs, comb, full=False)
        if not row:
            if rhs:
                raise Inconsistent(
                    {t: c * self._scales[t] for t, c in (comb or {}).items()}, rhs)
            return False
        v = min(row)
        if row[v] < 0:
            row = {w: -c for w, c in row.items()}
            rhs = -rhs
            if comb is not None:
                comb = {t: -c for t, c in comb.items()}
        self.pivots[v] = (row, rhs, comb)
        return True

    def add_rows(self, rows: Iterable) -> int:
        """Insert (row, rhs, tag) triples; returns the number of new pivots."""
        n = 0
        for row, rhs, tag in rows:
            n += self.add(row, rhs, tag)
        return n

    def remainder(self, row: dict) -> dict:
        """Fully reduced normal form of a homogeneous row (zero iff it lies in the row space)."""
        irow, _, _ = integer_row(row)
        out, _, _ = self._reduce(irow, 0, None, full=True)
        return out

    def solve(self, variables: Iterable | None = None) -> dict:
        """
        A particular solution with every free variable set to zero.

        Only the pivots whose rows mention nothing outside ``variables`` are
        needed when ``variables`` is given (used for projected solves).
        """
        x: dict = {}
        keys = sorted(self.pivots, reverse=True)
        if variables is not None:
            allowed = set(variables)
            keys = [v for v in keys if v in allowed]
        for v in keys:
            row, rhs, _ = self.pivots[v]
            s = Fraction(rhs)
            for w, c in row.items():
                if w != v and w in x:
                    s -= c * x[w]
            val = s / row[v]
            if val:
                x[v] = val
        return x

    def kernel_basis(self, variables: Iterable) -> list:
        """Basis of the homogeneous solution space over the given variable set."""
        variables = sorted(variables)
        free = [v for v in variables if v not in self.pivots]
        keys = sorted(self.pivots, reverse=True)
        basis = []
        for f in free:
            x = {f: Fraction(1)}
            for v in keys:
                if v < f:
                    row = self.pivots[v][0]
                    s = Fraction(0)
                    for w, c in row.items():
                        if w != v and w in x:
                            s -= c * x[w]
                    if s:
                        x[v] = s / row[v]
            basis.append(x)
        return basis


def peel_singletons(rows: Iterable, track: bool = False):
    """
    Repeatedly solve rows that mention a single remaining variable and
    substitute the value everywhere else.

    ``rows`` are ``(coefficients, rhs, tag)``.  Returns ``(fixed, core)``
    where ``fixed`` maps solved variables to Fractions and ``core`` lists the
    remaining rows as ``(coefficients, rhs, origin)``; ``origin`` is the tag,
    or with ``track=True`` a dict tag -> Fraction expressing the row as a
    combination of input rows.  Raises Inconsistent on a row 0 = c, c != 0.
    """
    work = []
    for coeffs, rhs, tag in rows:
        origin = {tag: Fraction(1)} if track else tag
        work.append([dict(coeffs), Fraction(rhs), origin])
    occurs: dict = {}
    queue = []
    for n, (coeffs, rhs, origin) in enumerate(work):
        for x in coeffs:
            occurs.setdefault(x, []).append(n)
        if len(coeffs) == 1:
            queue.append(n)
        elif not coeffs and rhs:
            raise Inconsistent(origin if track else {origin: Fraction(1)}, rhs)
    fixed: dict = {}
    head = 0
    while head < len(queue):
        n = queue[head]
        head += 1
        coeffs, rhs, origin = work[n]
        if len(coeffs) != 1:
            continue
        (x, a), = coeffs.items()
        val = rhs / a
        fixed[x] = val
        del coeffs[x]
        work[n][1] = Fraction(0)
        for j in occurs.pop(x, ()):
            if j == n:
                continue
            row = work[j]
            c = row[0].pop(x, None)
            if c is None:
                continue
            row[1] -= c * val
            if track:
                f = c / a
                comb = row[2]
                for t, e in origin.items():
                    s = comb.get(t, 0) - f * e
                    if s:
                        comb[t] = s
                    else:
                        comb.pop(t, None)
            if len(row[0]) == 1:
                queue.append(j)
            elif not row[0] and row[1]:
                raise Inconsistent(row[2] if track else {row[2]: Fraction(1)}, row[1])
    core = [(c, r, o) for c, r, o in work if c]
    return fixed, core
