"""Sparse Laurent polynomials in the jet variables z0, z1, z2, ... over Q[s1, s3].

A JetPoly lives in Q[s1, s3][z0][z1^(+-1)][z2, ..., zM] for a declared jet
cutoff M.  Internally each term is keyed by a flat exponent tuple

    (sa, sb, e0, e1, ..., eM)

with the rational coefficient as the value; sa, sb are the s1, s3
exponents.  Only e1 (the z1 slot) may be negative.  The flat layout keeps
the hot ring operations to one dict merge per product, which matters at
genus 4 and above.

Operands of ring operations must share the cutoff; `derive` raises
CutoffError instead of silently dropping a z index that would exceed it.
"""
from __future__ import annotations

from .ratio import Q, QONE, QZERO, is_rational
from .sigma import SigmaPoly


class CutoffError(ValueError):
    """A jet index would exceed the declared cutoff, or cutoffs disagree."""


class ExactDivisionError(ArithmeticError):
    """Division in the jet ring left a remainder."""


class JetPoly:
    __slots__ = ("cutoff", "terms")

    def __init__(self, cutoff: int, terms=None):
        if cutoff < 1:
            raise ValueError("cutoff must allow at least z0, z1")
        self.cutoff = cutoff
        if terms is None:
            self.terms = {}
        else:
            n = cutoff + 3
            for k in terms:
                if len(k) != n:
                    raise CutoffError("term key does not match cutoff")
            self.terms = {k: v for k, v in terms.items() if v != 0}

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, cutoff: int) -> "JetPoly":
        return cls(cutoff)

    @classmethod
    def const(cls, c, cutoff: int) -> "JetPoly":
        c = Q(c)
        if c == 0:
            return cls(cutoff)
        return cls(cutoff, {(0,) * (cutoff + 3): c})

    @classmethod
    def one(cls, cutoff: int) -> "JetPoly":
        return cls.const(1, cutoff)

    @classmethod
    def from_sigma(cls, sp: SigmaPoly, cutoff: int) -> "JetPoly":
        zeros = (0,) * (cutoff + 1)
        return cls(cutoff, {(a, b) + zeros: c for (a, b), c in sp.terms.items()})

    @classmethod
    def z(cls, k: int, cutoff: int, power: int = 1) -> "JetPoly":
        if not 0 <= k <= cutoff:
            raise CutoffError(f"z{k} outside cutoff {cutoff}")
        if power < 0 and k != 1:
            raise ValueError("only z1 may carry a negative exponent")
        key = [0] * (cutoff + 3)
        key[2 + k] = power
        return cls(cutoff, {tuple(key): QONE})

    @classmethod
    def monomial(cls, c, sigma, jets, cutoff: int) -> "JetPoly":
        """Single term c * s1^sigma[0] * s3^sigma[1] * prod zk^jets[k]."""
        c = Q(c)
        if c == 0:
            return cls(cutoff)
        key = [0] * (cutoff + 3)
        key[0], key[1] = sigma
        for k, e in jets.items():
            if not 0 <= k <= cutoff:
                raise CutoffError(f"z{k} outside cutoff {cutoff}")
            if e < 0 and k != 1:
                raise ValueError("only z1 may carry a negative exponent")
            key[2 + k] = e
        return cls(cutoff, {tuple(key): c})

    # -- ring operations ----------------------------------------------

    def _check(self, other: "JetPoly"):
        if self.cutoff != other.cutoff:
            raise CutoffError(f"cutoff mismatch: {self.cutoff} vs {other.cutoff}")

    def __add__(self, other):
        if not isinstance(other, JetPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            if w is None:
                out[k] = v
            else:
                w = w + v
                if w:
                    out[k] = w
                else:
                    del out[k]
        return _raw(self.cutoff, out)

    def __sub__(self, other):
        if not isinstance(other, JetPoly):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            w = out.get(k)
            if w is None:
                out[k] = -v
            else:
                w = w - v
                if w:
                    out[k] = w
                else:
                    del out[k]
        return _raw(self.cutoff, out)

    def __neg__(self):
        return _raw(self.cutoff, {k: -v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, JetPoly):
            self._check(other)
            a, b = self.terms, other.terms
            if len(a) < len(b):
                a, b = b, a
            out = {}
            get = out.get
            for kb, vb in b.items():
                for ka, va in a.items():
                    k = tuple(map(int.__add__, ka, kb))
                    w = get(k)
                    out[k] = va * vb if w is None else w + va * vb
            return _raw(self.cutoff, {k: v for k, v in out.items() if v})
        if is_rational(other):
            if other == 0:
                return JetPoly(self.cutoff)
            q = Q(other)
            return _raw(self.cutoff, {k: v * q for k, v in self.terms.items()})
        if isinstance(other, SigmaPoly):
            return self * JetPoly.from_sigma(other, self.cutoff)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, q):
        if not is_rational(q):
            return NotImplemented
        q = Q(q)
        return _raw(self.cutoff, {k: v / q for k, v in self.terms.items()})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a JetPoly")
        result = JetPoly.one(self.cutoff)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, JetPoly):
            return NotImplemented
        return self.cutoff == other.cutoff and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        return hash((self.cutoff, frozenset(self.terms.items())))

    # -- calculus -------------------------------------------------------

    def derive(self) -> "JetPoly":
        """The derivation sum_k z_{k+1} d/dz_k on the jet variables."""
        M = self.cutoff
        out = {}
        get = out.get
        for key, c in self.terms.items():
            for k in range(M + 1):
                e = key[2 + k]
                if e == 0:
                    continue
                if k == M:
                    raise CutoffError(f"derive needs z{M + 1} beyond cutoff {M}")
                nk = list(key)
                nk[2 + k] = e - 1
                nk[3 + k] += 1
                nk = tuple(nk)
                v = c * e
                w = get(nk)
                out[nk] = v if w is None else w + v
        return _raw(M, {k: v for k, v in out.items() if v})

    def partial(self, k: int) -> "JetPoly":
        """d/dz_k."""
        if not 0 <= k <= self.cutoff:
            raise CutoffError(f"z{k} outside cutoff {self.cutoff}")
        out = {}
        i = 2 + k
        for key, c in self.terms.items():
            e = key[i]
            if e == 0:
                continue
            nk = key[:i] + (e - 1,) + key[i + 1:]
            out[nk] = c * e
        return _raw(self.cutoff, out)

    def integrate_z0(self) -> "JetPoly":
        """Antiderivative in z0 with zero constant."""
        out = {}
        for key, c in self.terms.items():
            e = key[2]
            nk = key[:2] + (e + 1,) + key[3:]
            out[nk] = c / (e + 1)
        return _raw(self.cutoff, out)

    def mul_z(self, k: int, power: int = 1) -> "JetPoly":
        """Fast multiply by z_k^power."""
        if not 0 <= k <= self.cutoff:
            raise CutoffError(f"z{k} outside cutoff {self.cutoff}")
        i = 2 + k
        out = {}
        for key, c in self.terms.items():
            e = key[i] + power
            if e < 0 and k != 1:
                raise ValueError("only z1 may carry a negative exponent")
            out[key[:i] + (e,) + key[i + 1:]] = c
        return _raw(self.cutoff, out)

    # -- views and queries -----------------------------------------------

    def items(self):
        return self.terms.items()

    def max_index(self) -> int:
        """Highest k with z_k actually present; -1 when jet-free."""
        top = -1
        for key in self.terms:
            for k in range(self.cutoff, top, -1):
                if key[2 + k]:
                    top = k
                    break
        return top

    def is_jet_free(self) -> bool:
        return self.max_index() < 0

    def as_sigma(self) -> SigmaPoly:
        if not self.is_jet_free():
            raise ValueError("polynomial still carries jet variables")
        return SigmaPoly({(k[0], k[1]): v for k, v in self.terms.items()})

    def sigma_coefficient(self, jets) -> SigmaPoly:
        """Coefficient of the jet monomial given as {k: exponent}."""
        want = [0] * (self.cutoff + 1)
        for k, e in jets.items():
            want[k] = e
        want = tuple(want)
        return SigmaPoly({(k[0], k[1]): v for k, v in self.terms.items() if k[2:] == want})

    def jet_monomials(self):
        return {k[2:] for k in self.terms}

    def with_cutoff(self, new: int) -> "JetPoly":
        if new == self.cutoff:
            return self
        if new > self.cutoff:
            pad = (0,) * (new - self.cutoff)
            return _raw(new, {k + pad: v for k, v in self.terms.items()})
        drop = self.cutoff - new
        out = {}
        for k, v in self.terms.items():
            if any(k[-drop:]):
                raise CutoffError(f"term uses jets above z{new}")
            out[k[:-drop]] = v
        return _raw(new, out)

    def subs_jets(self, values) -> SigmaPoly:
        """Evaluate the jet variables at exact rationals; z1 may be inverted."""
        out = SigmaPoly.zero()
        for key, c in self.terms.items():
            q = c
            for k in range(self.cutoff + 1):
                e = key[2 + k]
                if e == 0:
                    continue
                v = Q(values[k])
                if v == 0:
                    if e < 0:
                        raise ZeroDivisionError("negative power of zero jet value")
                    q = QZERO
                    break
                q = q * v**e
            if q:
                out = out + SigmaPoly.monomial(key[0], key[1], q)
        return out

    def weighted_degrees(self, jet_weight, s1_weight: int = 0, s3_weight: int = 0):
        """Set of term degrees under deg z_k = jet_weight(k)."""
        degs = set()
        for key in self.terms:
            d = key[0] * s1_weight + key[1] * s3_weight
            for k in range(self.cutoff + 1):
                e = key[2 + k]
                if e:
                    d += e * jet_weight(k)
            degs.add(d)
        return degs

    def is_homogeneous(self, degree: int, jet_weight, s1_weight: int = 0, s3_weight: int = 0) -> bool:
        degs = self.weighted_degrees(jet_weight, s1_weight, s3_weight)
        return degs <= {degree}

    # -- division ---------------------------------------------------------

    def exact_div(self, d: "JetPoly") -> "JetPoly":
        """Exact quotient self / d; raises ExactDivisionError on remainder."""
        self._check(d)
        if not d.terms:
            raise ZeroDivisionError("division by the zero JetPoly")
        if not self.terms:
            return JetPoly(self.cutoff)
        if len(d.terms) == 1:
            (dk, dc), = d.terms.items()
            out = {}
            for k, c in self.terms.items():
                nk = tuple(map(int.__sub__, k, dk))
                if nk[0] < 0 or nk[1] < 0 or nk[2] < 0 or any(e < 0 for e in nk[4:]):
                    raise ExactDivisionError("monomial divisor does not divide a term")
                out[nk] = c / dc
            return _raw(self.cutoff, out)
        return self._reduce_div(d)

    def _reduce_div(self, d: "JetPoly") -> "JetPoly":
        # clear negative z1 exponents so a genuine monomial order applies
        sflo = min(k[3] for k in self.terms)
        dflo = min(k[3] for k in d.terms)
        a = self.mul_z(1, -sflo) if sflo < 0 else self
        b = d.mul_z(1, -dflo) if dflo < 0 else d
        rem = dict(a.terms)
        quo = {}
        lead_b = max(b.terms, key=_grlex)
        cb = b.terms[lead_b]
        while rem:
            lead_r = max(rem, key=_grlex)
            qk = tuple(map(int.__sub__, lead_r, lead_b))
            if any(e < 0 for e in qk):
                raise ExactDivisionError("leading term not divisible")
            qc = rem[lead_r] / cb
            quo[qk] = qc
            for kb, vb in b.terms.items():
                k = tuple(map(int.__add__, qk, kb))
                w = rem.get(k, QZERO) - qc * vb
                if w:
                    rem[k] = w
                else:
                    rem.pop(k, None)
        shift = (0 if dflo >= 0 else -dflo) - (0 if sflo >= 0 else -sflo)
        q = _raw(self.cutoff, quo)
        return q.mul_z(1, shift) if shift else q

    def __repr__(self):
        from .textform import jet_text

        return f"JetPoly[{self.cutoff}]({jet_text(self)})"


def _raw(cutoff: int, terms: dict) -> JetPoly:
    p = JetPoly.__new__(JetPoly)
    p.cutoff = cutoff
    p.terms = terms
    return p


def _grlex(key):
    return (sum(key), key)


def add_scaled(acc: dict, terms: dict, factor) -> None:
    """acc += factor * terms, in place over flat term dicts."""
    if factor == 0:
        return
    get = acc.get
    if factor == 1:
        for k, v in terms.items():
            w = get(k)
            if w is None:
                acc[k] = v
            else:
                w = w + v
                if w:
                    acc[k] = w
                else:
                    del acc[k]
        return
    for k, v in terms.items():
        v = v * factor
        w = get(k)
        if w is None:
            acc[k] = v
        else:
            w = w + v
            if w:
                acc[k] = w
            else:
                del acc[k]


def from_raw(cutoff: int, terms: dict) -> JetPoly:
    """Wrap an accumulator dict; drops zeros."""
    return _raw(cutoff, {k: v for k, v in terms.items() if v})
