"""Polynomials in the formal loop-equation variable Theta with JetPoly coefficients.

Theta stands for 1/(1 - e^{z0}/mu) with mu never assigned a value; every
identity downstream holds coefficient-wise in Theta.  The two derivations:

  derive:   d = sum z_{k+1} d/dz_k, with d(Theta) = z1 (Theta^2 - Theta)
  xi_euler: xi d/dxi = Theta (Theta - 1) d/dTheta, jets held constant

where xi = (Theta - 1)/Theta.
"""
from __future__ import annotations

from math import comb

from .jets import CutoffError, JetPoly, add_scaled, from_raw
from .ratio import Q, is_rational
from .sigma import SigmaPoly


class ThetaPoly:
    __slots__ = ("cutoff", "coeffs")

    def __init__(self, cutoff: int, coeffs=()):
        self.cutoff = cutoff
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        for c in cs:
            if c.cutoff != cutoff:
                raise CutoffError("coefficient cutoff mismatch")
        self.coeffs = tuple(cs)

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls, cutoff: int) -> "ThetaPoly":
        return cls(cutoff)

    @classmethod
    def theta(cls, cutoff: int, power: int = 1) -> "ThetaPoly":
        cs = [JetPoly.zero(cutoff)] * power + [JetPoly.one(cutoff)]
        return cls(cutoff, cs)

    @classmethod
    def from_jet(cls, p: JetPoly, power: int = 0) -> "ThetaPoly":
        cs = [JetPoly.zero(p.cutoff)] * power + [p]
        return cls(p.cutoff, cs)

    # -- basic structure ------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coeff(self, d: int) -> JetPoly:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return JetPoly.zero(self.cutoff)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, ThetaPoly):
            return NotImplemented
        return self.cutoff == other.cutoff and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.cutoff, self.coeffs))

    # -- ring operations --------------------------------------------------

    def _check(self, other: "ThetaPoly"):
        if self.cutoff != other.cutoff:
            raise CutoffError("cutoff mismatch")

    def __add__(self, other):
        if not isinstance(other, ThetaPoly):
            return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ThetaPoly(self.cutoff, [self.coeff(d) + other.coeff(d) for d in range(n)])

    def __sub__(self, other):
        if not isinstance(other, ThetaPoly):
            return NotImplemented
        self._check(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return ThetaPoly(self.cutoff, [self.coeff(d) - other.coeff(d) for d in range(n)])

    def __neg__(self):
        return ThetaPoly(self.cutoff, [-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, ThetaPoly):
            self._check(other)
            if not self.coeffs or not other.coeffs:
                return ThetaPoly.zero(self.cutoff)
            out = [dict() for _ in range(len(self.coeffs) + len(other.coeffs) - 1)]
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if not b:
                        continue
                    add_scaled_poly(out[i + j], a, b)
            return ThetaPoly(self.cutoff, [from_raw(self.cutoff, d) for d in out])
        if isinstance(other, (JetPoly, SigmaPoly)) or is_rational(other):
            return ThetaPoly(self.cutoff, [c * other for c in self.coeffs])
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, q):
        if not is_rational(q):
            return NotImplemented
        return ThetaPoly(self.cutoff, [c / q for c in self.coeffs])

    # -- derivations --------------------------------------------------------

    def derive(self) -> "ThetaPoly":
        """Full derivation: jets via d(z_k) = z_{k+1}, Theta via the chain rule."""
        n = len(self.coeffs)
        if n == 0:
            return self
        out = [dict() for _ in range(n + 1)]
        for d, c in enumerate(self.coeffs):
            if c:
                add_scaled_poly_terms(out[d], c.derive().terms, 1)
            if d and c:
                # d * z1 * c * (Theta^{d+1} - Theta^d)
                shifted = c.mul_z(1).terms
                add_scaled_poly_terms(out[d + 1], shifted, Q(d))
                add_scaled_poly_terms(out[d], shifted, Q(-d))
        return ThetaPoly(self.cutoff, [from_raw(self.cutoff, t) for t in out])

    def xi_euler(self) -> "ThetaPoly":
        """Theta (Theta - 1) d/dTheta, treating JetPoly coefficients as constants."""
        n = len(self.coeffs)
        if n == 0:
            return self
        out = [dict() for _ in range(n + 1)]
        for d, c in enumerate(self.coeffs):
            if d == 0 or not c:
                continue
            add_scaled_poly_terms(out[d + 1], c.terms, Q(d))
            add_scaled_poly_terms(out[d], c.terms, Q(-d))
        return ThetaPoly(self.cutoff, [from_raw(self.cutoff, t) for t in out])

    # -- expansions -----------------------------------------------------------

    def xi_expansion(self, order: int):
        """Coefficients of the xi-series of this polynomial, xi = (Theta-1)/Theta.

        Uses Theta^k = sum_m C(k+m-1, m) xi^m.  Returns a list of JetPoly of
        length order + 1.
        """
        out = [dict() for _ in range(order + 1)]
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                add_scaled_poly_terms(out[0], c.terms, 1)
                continue
            for m in range(order + 1):
                add_scaled_poly_terms(out[m], c.terms, Q(comb(k + m - 1, m)))
        return [from_raw(self.cutoff, t) for t in out]

    def map_coeffs(self, fn) -> "ThetaPoly":
        return ThetaPoly(self.cutoff, [fn(c) for c in self.coeffs])

    def max_jet_index(self) -> int:
        return max((c.max_index() for c in self.coeffs), default=-1)

    def __repr__(self):
        from .textform import jet_text

        bits = [f"T^{d}*({jet_text(c)})" for d, c in enumerate(self.coeffs) if c]
        return "ThetaPoly(" + (" + ".join(bits) if bits else "0") + ")"


def add_scaled_poly(acc: dict, a: JetPoly, b: JetPoly) -> None:
    """acc += a * b over flat term dicts."""
    ta, tb = a.terms, b.terms
    if len(ta) < len(tb):
        ta, tb = tb, ta
    get = acc.get
    for kb, vb in tb.items():
        for ka, va in ta.items():
            k = tuple(map(int.__add__, ka, kb))
            v = va * vb
            w = get(k)
            if w is None:
                acc[k] = v
            else:
                w = w + v
                if w:
                    acc[k] = w
                else:
                    del acc[k]


def add_scaled_poly_terms(acc: dict, terms: dict, factor) -> None:
    add_scaled(acc, terms, factor)
