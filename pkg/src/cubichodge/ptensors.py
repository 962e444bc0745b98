"""The loop-equation coefficient tensors P~_{i,j}(Theta; s1, s3) and P_{i,j}.

Row zero comes from the explicit double sum

  sum_n z^-n P~_{0,n} = sum_n sum_{k=1}^{n+1} Q(n,k) Theta^k
      sum_{m=0}^n (-1)^{n-m} (2n-2m-1)!! / (2^{n-m} m! (n-m)!) z^{m-n}
      * Phi d_z^m (1/Phi),

assembled as a joint truncated object in (1/z, Theta) and read off at each
z^-n.  Higher rows follow the recursion P~_{i+1,j} = xi_euler(P~_{i,j}) -
P~_{i,j+1}; the index symmetry P~_{i,j} = P~_{j,i} is NOT used by the
construction, so it stays available as a genuine consistency check.  The
dressed tensors are P_{i,j} = sum_{k,l} f_{i,k} f_{j,l} P~_{k,l}.

All entries are cached; the table only ever grows.
"""
from __future__ import annotations

import hashlib
from math import factorial

from .bell import FJetTable
from .jets import JetPoly
from .phiseries import double_factorial_odd, phi_d_inv, q_number
from .ratio import Q
from .sigma import SigmaPoly
from .theta import ThetaPoly

CONSTRUCTION_VERSION = "ptensor-v1:binomial-lhs,row0-eq43,dfact(-1)=1"


class PTensorTable:
    def __init__(self, cutoff: int):
        self.cutoff = cutoff
        self.fjets = FJetTable(cutoff)
        self._row0: list[ThetaPoly] = []
        self._ptilde: dict[tuple[int, int], ThetaPoly] = {}
        self._gcache: dict[tuple[int, int], ThetaPoly] = {}
        self._p: dict[tuple[int, int], ThetaPoly] = {}

    # -- row zero -------------------------------------------------------

    def ensure_row0(self, n_max: int) -> None:
        if n_max < len(self._row0):
            return
        row = _build_row0(n_max, self.cutoff)
        for n, old in enumerate(self._row0):
            if row[n] != old:
                raise AssertionError("row-0 rebuild changed a cached entry")
        self._row0 = row

    def row0(self, n: int) -> ThetaPoly:
        self.ensure_row0(n)
        return self._row0[n]

    # -- the recursion ----------------------------------------------------

    def ptilde(self, i: int, j: int) -> ThetaPoly:
        """P~_{i,j}; built strictly by the first-index recursion from row 0."""
        if i < 0 or j < 0:
            raise ValueError("negative tensor index")
        got = self._ptilde.get((i, j))
        if got is not None:
            return got
        if i == 0:
            value = self.row0(j)
        else:
            value = self.ptilde(i - 1, j).xi_euler() - self.ptilde(i - 1, j + 1)
        self._ptilde[(i, j)] = value
        return value

    # -- dressing -----------------------------------------------------------

    def _g(self, k: int, j: int) -> ThetaPoly:
        """sum_l f_{j,l} P~_{k,l}, the inner factor of the dressing."""
        got = self._gcache.get((k, j))
        if got is not None:
            return got
        acc = ThetaPoly.zero(self.cutoff)
        lo = 0 if j == 0 else 1
        for l in range(lo, j + 1):
            acc = acc + self.ptilde(k, l) * self.fjets.f(j, l)
        self._gcache[(k, j)] = acc
        return acc

    def p(self, i: int, j: int) -> ThetaPoly:
        """Dressed P_{i,j} = sum_{k<=i, l<=j} f_{i,k} f_{j,l} P~_{k,l}."""
        got = self._p.get((i, j))
        if got is not None:
            return got
        acc = ThetaPoly.zero(self.cutoff)
        lo = 0 if i == 0 else 1
        for k in range(lo, i + 1):
            acc = acc + self._g(k, j) * self.fjets.f(i, k)
        self._p[(i, j)] = acc
        return acc

    # -- provenance and diagnostics ----------------------------------------

    def fingerprint(self) -> str:
        return hashlib.sha256(CONSTRUCTION_VERSION.encode()).hexdigest()[:16]

    def dump_json(self) -> dict:
        from .textform import jet_json

        built = {(0, n): tp for n, tp in enumerate(self._row0)}
        built.update(self._ptilde)
        entries = {}
        for (i, j), tp in sorted(built.items()):
            entries[f"{i},{j}"] = [jet_json(c) for c in tp.coeffs]
        return {"version": CONSTRUCTION_VERSION, "cutoff": self.cutoff, "ptilde": entries}


def _build_row0(n_max: int, cutoff: int) -> list[ThetaPoly]:
    pdi = [phi_d_inv(m, n_max) for m in range(n_max + 1)]
    # acc[n][k] accumulates the SigmaPoly coefficient of z^-n Theta^k
    acc: list[dict[int, SigmaPoly]] = [dict() for _ in range(n_max + 1)]
    for np_ in range(n_max + 1):
        qrow = {k: q_number(np_, k) for k in range(1, np_ + 2)}
        for m in range(np_ + 1):
            d = np_ - m
            cm = double_factorial_odd(d) / (Q(2) ** d * factorial(m) * factorial(d))
            if d % 2 == 1:
                cm = -cm
            for r, sig in pdi[m].terms.items():
                n = np_ - m + r
                if n > n_max:
                    continue
                contrib = sig * cm
                slot = acc[n]
                for k, qv in qrow.items():
                    got = slot.get(k)
                    slot[k] = contrib * qv if got is None else got + contrib * qv
    out = []
    for n in range(n_max + 1):
        top = max(acc[n], default=0)
        coeffs = [JetPoly.zero(cutoff)] * (top + 1)
        for k, sp in acc[n].items():
            if sp:
                coeffs[k] = JetPoly.from_sigma(sp, cutoff)
        out.append(ThetaPoly(cutoff, coeffs))
    return out


def top_coefficient_value(i: int, j: int):
    """Expected Theta^(i+j+1) coefficient of P~_{i,j}: (2i-1)!!(2j-1)!!/2^(i+j)."""
    return double_factorial_odd(i) * double_factorial_odd(j) / Q(2) ** (i + j)
