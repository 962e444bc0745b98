"""Bernoulli numbers, CY-reduced power sums, the log Phi series and Q(n,k).

log Phi(z) = - sum_{i>=1} B_{2i}/(2i(2i-1)) (p^{2i-1}+q^{2i-1}+r^{2i-1}) z^{1-2i}

with the odd power sums rewritten in (s1, s3) through Newton's identities
under the local Calabi-Yau constraint pq + qr + rp = 0, i.e. with
elementary symmetric values e1 = -s1, e2 = 0, e3 = s1^3/3 - s3/6.
"""
from __future__ import annotations

from math import comb, factorial

from .bell import bell_complete_all
from .ratio import Q, QONE, QZERO, is_rational
from .sigma import SigmaPoly

_INF = 1 << 60


class TruncationError(ValueError):
    """A series coefficient beyond the stored truncation order was requested."""


# -- Bernoulli numbers -------------------------------------------------------

_bernoulli_cache = [QONE, Q(-1, 2)]


def bernoulli(n: int):
    """B_n by the recurrence sum_k C(n+1, k) B_k = 0; convention B_1 = -1/2."""
    if n < 0:
        raise ValueError("negative Bernoulli index")
    while len(_bernoulli_cache) <= n:
        m = len(_bernoulli_cache)
        if m % 2 == 1:
            _bernoulli_cache.append(QZERO)
            continue
        s = QZERO
        for k in range(m):
            if _bernoulli_cache[k]:
                s += comb(m + 1, k) * _bernoulli_cache[k]
        _bernoulli_cache.append(-s / (m + 1))
    return _bernoulli_cache[n]


# -- power sums under the CY condition ---------------------------------------

_E1 = SigmaPoly.s1() * Q(-1)
_E3 = SigmaPoly.monomial(3, 0, Q(1, 3)) + SigmaPoly.monomial(0, 1, Q(-1, 6))
_power_cache = [SigmaPoly.const(3), _E1]


def _power_sum_any(k: int) -> SigmaPoly:
    while len(_power_cache) <= k:
        m = len(_power_cache)
        if m == 2:
            p = _E1 * _E1
        elif m == 3:
            p = _E1 * _power_cache[2] + SigmaPoly.const(3) * _E3
        else:
            p = _E1 * _power_cache[m - 1] + _E3 * _power_cache[m - 3]
        _power_cache.append(p)
    return _power_cache[k]


def power_sum(k: int) -> SigmaPoly:
    """p^k + q^k + r^k as a polynomial in (s1, s3); k must be odd."""
    if k < 1 or k % 2 == 0:
        raise ValueError("power_sum consumes odd k >= 1")
    return _power_sum_any(k)


# -- truncated series in 1/z ---------------------------------------------------


class ZInvSeries:
    """Truncated series sum_n a_n z^{-n} with SigmaPoly coefficients.

    `order` is the last reliable exponent: coefficients of z^{-n} are exact
    for all n <= order and must not be read beyond it.  Negative n (positive
    z powers) are allowed for shifted products.
    """

    __slots__ = ("order", "terms")

    def __init__(self, order: int, terms=None):
        self.order = order
        if terms is None:
            self.terms = {}
        else:
            self.terms = {n: c for n, c in terms.items() if c and n <= order}

    @classmethod
    def zero(cls, order: int = _INF) -> "ZInvSeries":
        return cls(order)

    @classmethod
    def const(cls, c, order: int = _INF) -> "ZInvSeries":
        sp = c if isinstance(c, SigmaPoly) else SigmaPoly.const(c)
        return cls(order, {0: sp})

    @classmethod
    def one(cls, order: int = _INF) -> "ZInvSeries":
        return cls.const(1, order)

    def coeff(self, n: int) -> SigmaPoly:
        if n > self.order:
            raise TruncationError(f"coefficient z^-{n} beyond order {self.order}")
        return self.terms.get(n, SigmaPoly.zero())

    def valuation(self) -> int:
        return min(self.terms) if self.terms else _INF

    def __add__(self, other):
        other = self._coerce(other)
        order = min(self.order, other.order)
        out = dict(self.terms)
        for n, c in other.terms.items():
            s = out.get(n)
            out[n] = c if s is None else s + c
        return ZInvSeries(order, out)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __neg__(self):
        r = ZInvSeries(self.order)
        r.terms = {n: -c for n, c in self.terms.items()}
        return r

    def __mul__(self, other):
        if is_rational(other) or isinstance(other, SigmaPoly):
            sp = other if isinstance(other, SigmaPoly) else SigmaPoly.const(other)
            if not sp:
                return ZInvSeries(self.order)
            r = ZInvSeries(self.order)
            r.terms = {n: c * sp for n, c in self.terms.items()}
            return r
        if not isinstance(other, ZInvSeries):
            return NotImplemented
        order = min(self.order + other.valuation(), other.order + self.valuation(), _INF)
        out = {}
        for n1, c1 in self.terms.items():
            for n2, c2 in other.terms.items():
                n = n1 + n2
                if n > order:
                    continue
                s = out.get(n)
                prod = c1 * c2
                out[n] = prod if s is None else s + prod
        return ZInvSeries(order, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative series power")
        result = ZInvSeries.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, ZInvSeries):
            return NotImplemented
        return self.order == other.order and self.terms == other.terms

    def agrees_with(self, other: "ZInvSeries", upto: int) -> bool:
        return all(self.coeff(n) == other.coeff(n) for n in range(min(self.valuation(), other.valuation(), 0), upto + 1))

    def ddz(self) -> "ZInvSeries":
        """d/dz; the truncation order improves by one."""
        out = {}
        for n, c in self.terms.items():
            if n != 0:
                out[n + 1] = c * Q(-n)
        order = self.order + 1 if self.order < _INF else _INF
        return ZInvSeries(order, out)

    def mul_zpow(self, s: int) -> "ZInvSeries":
        """Multiply by z^s (shifts exponents down by s)."""
        order = self.order - s if self.order < _INF else _INF
        return ZInvSeries(order, {n - s: c for n, c in self.terms.items()})

    def truncate(self, order: int) -> "ZInvSeries":
        if order > self.order:
            raise TruncationError(f"cannot extend order {self.order} to {order}")
        return ZInvSeries(order, {n: c for n, c in self.terms.items() if n <= order})

    def exp(self) -> "ZInvSeries":
        """exp of a series with positive valuation."""
        if self.terms and self.valuation() < 1:
            raise ValueError("exp needs a series vanishing at z = infinity")
        if self.terms and self.order >= _INF:
            raise ValueError("exp of an untruncated series is not representable")
        order = self.order
        result = ZInvSeries.one(order)
        term = ZInvSeries.one()
        k = 0
        v = self.valuation()
        while (k + 1) * v <= order:
            k += 1
            term = term * self * Q(1, k)
            result = result + term
        return result

    def __repr__(self):
        bits = [f"z^-{n}*({c!r})" for n, c in sorted(self.terms.items())]
        return f"ZInvSeries(order={self.order}: " + " + ".join(bits) + ")"

    @staticmethod
    def _coerce(x):
        if isinstance(x, ZInvSeries):
            return x
        if isinstance(x, SigmaPoly) or is_rational(x):
            return ZInvSeries.const(x)
        raise TypeError(f"cannot coerce {type(x)} to ZInvSeries")


def binom_q(e, m: int):
    """Generalized binomial coefficient C(e, m) for rational e."""
    e = Q(e)
    out = QONE
    for i in range(m):
        out = out * (e - i)
    return out / factorial(m)


def binomial_zinv(e, c, order: int) -> ZInvSeries:
    """(1 + c/z)^e expanded to the given order, e rational."""
    terms = {m: SigmaPoly.const(binom_q(e, m) * Q(c) ** m) for m in range(order + 1)}
    return ZInvSeries(order, terms)


# -- the log Phi series and friends -------------------------------------------


def log_phi(order: int) -> ZInvSeries:
    """log Phi(z; s1, s3) truncated at z^-order."""
    if order < 1:
        raise ValueError("order must be >= 1")
    terms = {}
    i = 1
    while 2 * i - 1 <= order:
        coeff = -bernoulli(2 * i) / (2 * i * (2 * i - 1))
        terms[2 * i - 1] = _power_sum_any(2 * i - 1) * coeff
        i += 1
    return ZInvSeries(order, terms)


def log_phi_shifted(order: int, shift) -> ZInvSeries:
    """log Phi(z - shift) expanded around z = infinity, truncated at z^-order."""
    shift = Q(shift)
    out = ZInvSeries(order)
    i = 1
    while 2 * i - 1 <= order:
        coeff = -bernoulli(2 * i) / (2 * i * (2 * i - 1))
        # (z - shift)^{1-2i} = z^{1-2i} (1 - shift/z)^{1-2i}
        expo = binomial_zinv(1 - 2 * i, -shift, order + 2 * i - 1).mul_zpow(1 - 2 * i)
        out = out + expo * (_power_sum_any(2 * i - 1) * coeff)
        i += 1
    return out.truncate(order)


def phi_d_inv(m: int, order: int) -> ZInvSeries:
    """Phi * d^m/dz^m (1/Phi) as the complete Bell polynomial of -log Phi derivatives."""
    if m < 0:
        raise ValueError("negative derivative order")
    if m == 0:
        return ZInvSeries.one(order)
    lp = log_phi(order)
    xs = []
    d = lp
    for _ in range(m):
        d = d.ddz()
        xs.append(-d)
    value = bell_complete_all(m, xs, ZInvSeries.one())[m]
    return value.truncate(order)


def q_number(n: int, k: int):
    """Q(n, k) = (1/k) sum_{i=1}^k (-1)^{i-1} C(k, i) i^{n+1}."""
    if n < 0 or not 1 <= k <= n + 1:
        raise ValueError(f"q_number index out of range: ({n}, {k})")
    s = 0
    for i in range(1, k + 1):
        t = comb(k, i) * i ** (n + 1)
        s += t if (i - 1) % 2 == 0 else -t
    return Q(s, k)


def double_factorial_odd(j: int):
    """(2j - 1)!! with the (-1)!! = 1 convention."""
    out = 1
    for i in range(1, j + 1):
        out *= 2 * i - 1
    return Q(out)
