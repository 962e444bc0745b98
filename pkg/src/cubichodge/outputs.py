"""Downstream quantities: v(t), gap polynomials R_g, Faber leading terms,
Hodge intersection tables and the first-flow consistency check.

TSeries is a total-degree truncated power series in t_0..t_{n_max} with
SigmaPoly coefficients.  v(t) solves v = sum_i t_i v^i / i!; its jets
substitute into a free energy to expand H_g back into intersection-number
data (coefficients are reported raw; the factorial-normalized view is a
formatting concern).
"""
from __future__ import annotations

from math import factorial

from .jets import JetPoly
from .loop import FreeEnergy
from .phiseries import bernoulli
from .ratio import Q, QZERO, is_rational
from .sigma import SigmaPoly


class TSeries:
    __slots__ = ("n_max", "d_max", "terms")

    def __init__(self, n_max: int, d_max: int, terms=None):
        self.n_max = n_max
        self.d_max = d_max
        if terms is None:
            self.terms = {}
        else:
            self.terms = {k: v for k, v in terms.items() if v and sum(k) <= d_max}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, n_max: int, d_max: int) -> "TSeries":
        return cls(n_max, d_max)

    @classmethod
    def const(cls, c, n_max: int, d_max: int) -> "TSeries":
        sp = c if isinstance(c, SigmaPoly) else SigmaPoly.const(c)
        return cls(n_max, d_max, {(0,) * (n_max + 1): sp} if sp else {})

    @classmethod
    def t(cls, i: int, n_max: int, d_max: int) -> "TSeries":
        key = [0] * (n_max + 1)
        key[i] = 1
        return cls(n_max, d_max, {tuple(key): SigmaPoly.one()})

    # -- ring ops ------------------------------------------------------------

    def _check(self, other: "TSeries") -> int:
        if self.n_max != other.n_max:
            raise ValueError("t-variable count mismatch")
        return min(self.d_max, other.d_max)

    def __add__(self, other):
        d = self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            out[k] = v if s is None else s + v
        return TSeries(self.n_max, d, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        r = TSeries(self.n_max, self.d_max)
        r.terms = {k: -v for k, v in self.terms.items()}
        return r

    def __mul__(self, other):
        if is_rational(other) or isinstance(other, SigmaPoly):
            sp = other if isinstance(other, SigmaPoly) else SigmaPoly.const(other)
            if not sp:
                return TSeries(self.n_max, self.d_max)
            r = TSeries(self.n_max, self.d_max)
            r.terms = {k: v * sp for k, v in self.terms.items()}
            return r
        d = self._check(other)
        out = {}
        for k1, v1 in self.terms.items():
            d1 = sum(k1)
            for k2, v2 in other.terms.items():
                if d1 + sum(k2) > d:
                    continue
                k = tuple(map(int.__add__, k1, k2))
                s = out.get(k)
                prod = v1 * v2
                out[k] = prod if s is None else s + prod
        return TSeries(self.n_max, d, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative TSeries power; use recip first")
        result = TSeries.const(1, self.n_max, self.d_max)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, TSeries):
            return NotImplemented
        return (self.n_max, self.d_max, self.terms) == (other.n_max, other.d_max, other.terms)

    def __bool__(self):
        return bool(self.terms)

    # -- calculus and series inverses -------------------------------------------

    def diff(self, i: int) -> "TSeries":
        out = {}
        for k, v in self.terms.items():
            e = k[i]
            if e:
                out[k[:i] + (e - 1,) + k[i + 1:]] = v * Q(e)
        return TSeries(self.n_max, self.d_max, out)

    def constant_term(self) -> SigmaPoly:
        return self.terms.get((0,) * (self.n_max + 1), SigmaPoly.zero())

    def coefficient(self, exponents) -> SigmaPoly:
        key = tuple(exponents)
        if sum(key) > self.d_max:
            raise ValueError("monomial beyond the degree truncation")
        return self.terms.get(key, SigmaPoly.zero())

    def recip(self) -> "TSeries":
        """1/self for a series with constant term 1."""
        if self.constant_term() != SigmaPoly.one():
            raise ValueError("recip needs constant term 1")
        u = TSeries.const(1, self.n_max, self.d_max) - self
        acc = TSeries.const(1, self.n_max, self.d_max)
        p = TSeries.const(1, self.n_max, self.d_max)
        for _ in range(self.d_max):
            p = p * u
            if not p:
                break
            acc = acc + p
        return acc

    def log(self) -> "TSeries":
        """log(self) for a series with constant term 1."""
        if self.constant_term() != SigmaPoly.one():
            raise ValueError("log needs constant term 1")
        u = self - TSeries.const(1, self.n_max, self.d_max)
        acc = TSeries.zero(self.n_max, self.d_max)
        p = TSeries.const(1, self.n_max, self.d_max)
        for k in range(1, self.d_max + 1):
            p = p * u
            if not p:
                break
            acc = acc + p * Q((-1) ** (k + 1), k)
        return acc

    def zpow(self, e: int) -> "TSeries":
        return self**e if e >= 0 else self.recip() ** (-e)

    def truncate(self, d_max: int) -> "TSeries":
        if d_max > self.d_max:
            raise ValueError("cannot extend a degree truncation")
        return TSeries(self.n_max, d_max, self.terms)


# -- genus zero -----------------------------------------------------------------


def v_series(n_max: int, d_max: int, cross_check: bool = True) -> TSeries:
    """v(t) = d^2 H_0 / dt_0^2 by fixed-point iteration of v = sum t_i v^i / i!."""
    ts = [TSeries.t(i, n_max, d_max) for i in range(n_max + 1)]
    v = TSeries.zero(n_max, d_max)
    for _ in range(d_max):
        acc = ts[0]
        p = v
        for i in range(1, n_max + 1):
            if not p:
                break
            acc = acc + ts[i] * p * Q(1, factorial(i))
            p = p * v
        v = acc
    if cross_check:
        _check_v_explicit(v, min(4, d_max))
    return v


def _check_v_explicit(v: TSeries, deg: int) -> None:
    """Compare against the explicit sum over index tuples with i_1+..+i_n = n-1."""
    expect = {}
    for n in range(1, deg + 1):
        # sum over multisets {i_1..i_n} with sum = n - 1; each multiset of
        # multiplicities m_i contributes (1/n) n!/(prod m_i!) / prod (i_j!)
        def gen(slots_left, remaining, start, counts):
            if slots_left == 0:
                if remaining == 0:
                    mult = factorial(n)
                    w = Q(1, n)
                    for i, m in counts.items():
                        mult //= factorial(m)
                        w /= Q(factorial(i)) ** m
                    key = [0] * (v.n_max + 1)
                    for i, m in counts.items():
                        key[i] = m
                    k = tuple(key)
                    expect[k] = expect.get(k, QZERO) + w * mult
                return
            for i in range(start, remaining + 1):
                if i > v.n_max:
                    break
                counts[i] = counts.get(i, 0) + 1
                gen(slots_left - 1, remaining - i, i, counts)
                counts[i] -= 1
                if not counts[i]:
                    del counts[i]

        gen(n, n - 1, 0, {})
    for key, val in expect.items():
        if v.coefficient(key) != SigmaPoly.const(val):
            raise AssertionError(f"v(t) fixed point disagrees with the explicit sum at {key}")
    for key, sp in v.terms.items():
        if sum(key) <= deg and not sp.is_constant:
            raise AssertionError("v(t) picked up sigma dependence")


def t0_jets(v: TSeries, count: int) -> list:
    jets = [v]
    for _ in range(count):
        jets.append(jets[-1].diff(0))
    return jets


def riemann_check(i: int, order: int, n_max: int | None = None) -> bool:
    """dv/dt_i = (v^i / i!) dv/dt_0 on TSeries, exact to the given degree."""
    n_max = max(i, 1) if n_max is None else n_max
    v = v_series(n_max, order + 1, cross_check=False)
    lhs = v.diff(i)
    rhs = v**i * v.diff(0) * Q(1, factorial(i))
    cut = order
    for key in set(lhs.terms) | set(rhs.terms):
        if sum(key) <= cut and lhs.terms.get(key) != rhs.terms.get(key):
            return False
    return True


# -- gap polynomials and the Faber term --------------------------------------------


def log_jet_values(top: int) -> dict:
    """z_j value (-1)^(j-1) (j-1)! carried by the jets of log x, j = 1..top."""
    vals = {0: QZERO}
    for j in range(1, top + 1):
        vals[j] = Q((-1) ** (j - 1) * factorial(j - 1))
    return vals


def r_poly(fe: FreeEnergy) -> SigmaPoly:
    """R_g: the x^(2-2g) content of H_g on the jets of log x."""
    if fe.genus < 2:
        raise ValueError("gap polynomials start at genus 2")
    out = fe.body.subs_jets(log_jet_values(fe.body.cutoff))
    if out.degree() > 3 * fe.genus - 3:
        raise AssertionError(f"R_{fe.genus} exceeds the degree bound")
    return out


def faber_leading(g: int) -> SigmaPoly:
    """Closed form (-1)^g / (2 (2g-2)!) |B_2g||B_{2g-2}| / (2g (2g-2)) (s1^3/3 - s3/6)^(g-1)."""
    if g < 2:
        raise ValueError("the Faber leading term starts at genus 2")
    b2g = bernoulli(2 * g)
    b2g2 = bernoulli(2 * g - 2)
    c = Q((-1) ** g) * abs(b2g) * abs(b2g2) / (2 * factorial(2 * g - 2) * 2 * g * (2 * g - 2))
    base = SigmaPoly.monomial(3, 0, Q(1, 3)) + SigmaPoly.monomial(0, 1, Q(-1, 6))
    return base ** (g - 1) * c


def h1_gap_check(fe: FreeEnergy) -> bool:
    """H_1 at (z0, z1) = (log x, 1/x) must collapse to ((s1 - 1)/24) log x."""
    if fe.genus != 1:
        raise ValueError("h1_gap_check takes the genus-1 free energy")
    # log(1/x) contributes -log_z1_coeff; the z0-linear part contributes its coefficient
    z0_lin = fe.body.sigma_coefficient({0: 1})
    rest = fe.body - JetPoly.from_sigma(z0_lin, fe.body.cutoff).mul_z(0)
    if rest:
        return False
    logx_coeff = z0_lin - SigmaPoly.const(fe.log_z1_coeff)
    expect = (SigmaPoly.s1() - SigmaPoly.const(1)) * Q(1, 24)
    return logx_coeff == expect


# -- Hodge tables --------------------------------------------------------------------


def hodge_expand(fe: FreeEnergy, n_max: int, d_max: int, v: TSeries | None = None) -> TSeries:
    """H_g(v, v', ...) as a t-series; raw monomial coefficients.

    The genus-g expansion differentiates v up to 3g-2 times, so the working
    v is built (or must be supplied) with that much degree headroom before
    truncating back to d_max.
    """
    pad = fe.max_jet_index()
    if v is None:
        v = v_series(n_max, d_max + pad, cross_check=False)
    elif v.d_max < d_max + pad:
        raise ValueError(f"supplied v needs degree >= {d_max + pad}")
    jets = [j.truncate(d_max) for j in t0_jets(v, pad)]
    if fe.genus == 1:
        return jets[1].log() * fe.log_z1_coeff + jets[0] * fe.body.sigma_coefficient({0: 1})
    powers: dict[tuple[int, int], TSeries] = {}

    def jet_power(k, e):
        got = powers.get((k, e))
        if got is None:
            got = jets[k].zpow(e)
            powers[(k, e)] = got
        return got

    acc = TSeries.zero(n_max, d_max)
    for key, c in fe.body.terms.items():
        term = TSeries.const(SigmaPoly.monomial(key[0], key[1], c), n_max, d_max)
        for k in range(fe.body.cutoff + 1):
            e = key[2 + k]
            if e:
                term = term * jet_power(k, e)
        acc = acc + term
    return acc


def dimension_check(g: int, series: TSeries):
    """Every sigma part of every stored coefficient must sit on the dimension
    constraint sum(i_a) + a + 3b = 3g - 3 + n.  Returns (ok, first_violation)."""
    for key, sp in series.terms.items():
        n = sum(key)
        weight = sum(i * e for i, e in enumerate(key))
        for (a, b), c in sp.terms.items():
            if weight + a + 3 * b != 3 * g - 3 + n:
                return False, (key, (a, b), c)
    return True, None


def intersection_table(fe: FreeEnergy, n_max: int, d_max: int, normalized: bool = False):
    """Rows ((i_1..i_n), SigmaPoly) sorted canonically; normalized multiplies by
    the automorphism factors prod m_i! to give the bracket values."""
    series = hodge_expand(fe, n_max, d_max)
    rows = []
    for key in sorted(series.terms, key=lambda k: (sum(k), k)):
        sp = series.terms[key]
        if normalized:
            for e in key:
                sp = sp * Q(factorial(e))
        indices = []
        for i, e in enumerate(key):
            indices.extend([i] * e)
        rows.append((tuple(indices), sp))
    return rows


# -- the first Hodge flow ---------------------------------------------------------------


def first_flow_check(h1: FreeEnergy, order: int = 3) -> bool:
    """Order-epsilon^2 slice of w_{t1} = w w_{t0} + eps^2/12 (w_{t0t0t0} + s1 w_{t0} w_{t0t0})."""
    if h1.genus != 1:
        raise ValueError("first_flow_check takes the genus-1 free energy")
    n_max, d_max = max(order, 2), order + 4
    v = v_series(n_max, d_max, cross_check=False)
    v1 = v.diff(0)
    sig1 = h1.body.sigma_coefficient({0: 1})
    # Delta = d^2/dt0^2 of H_1(v, v')
    h1_series = v1.log() * h1.log_z1_coeff + v * sig1
    delta = h1_series.diff(0).diff(0)
    lhs = delta.diff(1)
    rhs = (delta * v.diff(0) + v * delta.diff(0)
           + (v.diff(0).diff(0).diff(0) + SigmaPoly.s1() * v.diff(0) * v.diff(0).diff(0)) * Q(1, 12))
    diff = lhs - rhs
    return all(sum(key) > order for key in diff.terms)
