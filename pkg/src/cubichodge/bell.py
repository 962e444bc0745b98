"""Exponential and complete Bell polynomials, and the jet polynomials f_{i,j}.

The abstract partial Bell polynomials B_{n,k}(X_1, ..., X_{n-k+1}) are
cached as sparse exponent maps over the slot variables.  The jet
polynomials f_{i,j} are produced by the first-order recursion

    f_{i,0} = delta_{i,0},   f_{i+1,j+1} = derive(f_{i,j+1}) + z1 * f_{i,j}

and identify with B_{i,j}(z1, ..., z_{i-j+1}); the identification is
checked once per table against the cached Bell polynomials.
"""
from __future__ import annotations

from math import comb

from .jets import JetPoly
from .ratio import Q, QONE


class BellTable:
    """Cache of partial Bell polynomials up to n_max.

    bell_partial(n, k) returns a dict mapping slot-exponent tuples of
    length n (slot i holds the exponent of X_{i+1}) to rational
    coefficients.
    """

    def __init__(self, n_max: int):
        self.n_max = n_max
        self._table = {(0, 0): {(): QONE}}
        for n in range(1, n_max + 1):
            self._table[(n, 0)] = {}
            for k in range(1, n + 1):
                self._table[(n, k)] = self._build(n, k)

    def _build(self, n: int, k: int) -> dict:
        # B_{n,k} = sum_i C(n-1, i-1) X_i B_{n-i, k-1}
        out = {}
        for i in range(1, n - k + 2):
            c = Q(comb(n - 1, i - 1))
            for mono, v in self._table[(n - i, k - 1)].items():
                key = list(mono) + [0] * (n - (n - i))
                key[i - 1] += 1
                key = tuple(key)
                out[key] = out.get(key, 0) + c * v
        return {k2: v for k2, v in out.items() if v}

    def bell_partial(self, n: int, k: int) -> dict:
        if not (0 <= k <= n <= self.n_max):
            raise ValueError(f"bell_partial indices out of range: ({n}, {k})")
        return self._table[(n, k)]

    def substitute(self, poly: dict, xs, one):
        """Evaluate an abstract Bell polynomial at ring elements xs[0] = X_1, ..."""
        total = None
        powers = {}
        for mono, c in poly.items():
            term = one * c
            for i, e in enumerate(mono):
                if not e:
                    continue
                p = powers.get((i, e))
                if p is None:
                    p = xs[i] ** e
                    powers[(i, e)] = p
                term = term * p
            total = term if total is None else total + term
        if total is None:
            return one * Q(0)
        return total


def bell_partial(n: int, k: int, table: BellTable | None = None) -> dict:
    if table is None:
        table = BellTable(n)
    return table.bell_partial(n, k)


def bell_complete_all(n: int, xs, one):
    """Complete Bell values B_0..B_n at xs[0] = X_1, ... via the recurrence
    B_{m+1} = sum_i C(m, i) B_{m-i} X_{i+1}; equals the sum over k of the
    partial Bell polynomials evaluated at the same arguments."""
    values = [one]
    for m in range(n):
        acc = None
        for i in range(m + 1):
            term = values[m - i] * xs[i] * Q(comb(m, i))
            acc = term if acc is None else acc + term
        values.append(acc)
    return values


def bell_complete(n: int, xs, one):
    return bell_complete_all(n, xs, one)[n]


class FJetTable:
    """f_{i,j} jet polynomials at a fixed cutoff, with the Bell cross-check."""

    def __init__(self, cutoff: int, selfcheck_to: int = 8):
        self.cutoff = cutoff
        self._zero = JetPoly.zero(cutoff)
        self._rows = [[JetPoly.one(cutoff)]]
        self._selfcheck_to = selfcheck_to
        self._verified_to = 0

    def f(self, i: int, j: int) -> JetPoly:
        if j > i or j < 0 or i < 0:
            return self._zero
        self._extend(i)
        return self._rows[i][j]

    def _extend(self, imax: int):
        grew = len(self._rows) <= imax
        while len(self._rows) <= imax:
            i = len(self._rows) - 1
            prev = self._rows[i]
            z1 = JetPoly.z(1, self.cutoff)
            row = [self._zero]
            for j in range(i + 1):
                up = prev[j + 1].derive() if j + 1 <= i else self._zero
                row.append(up + z1 * prev[j])
            self._rows.append(row)
        if grew:
            top = min(len(self._rows) - 1, self._selfcheck_to)
            if top > self._verified_to:
                self._verify_against_bell(self._verified_to + 1, top)
                self._verified_to = top

    def _verify_against_bell(self, lo: int, hi: int):
        table = BellTable(hi)
        for i in range(lo, hi + 1):
            for j in range(i + 1):
                if self._rows[i][j] != bell_jet(table, i, j, self.cutoff):
                    raise AssertionError(f"f_({i},{j}) disagrees with its Bell closed form")


def bell_jet(table: BellTable, n: int, k: int, cutoff: int) -> JetPoly:
    """B_{n,k}(z1, ..., z_{n-k+1}) as a JetPoly."""
    out = JetPoly.zero(cutoff)
    for mono, c in table.bell_partial(n, k).items():
        jets = {m + 1: e for m, e in enumerate(mono) if e}
        out = out + JetPoly.monomial(c, (0, 0), jets, cutoff)
    return out
