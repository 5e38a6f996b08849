"""Windowed bivariate Laurent series over (Z/p^e)[x]/(modulus) coefficients.

Elements of k((S))((T)) and of Fr(W(k))((S))((T)) are represented by their
finite term maps.  Exact elements (Laurent polynomials) carry full
information; inexact elements (unit inverses, dlog expansions) carry a
guaranteed quadrant ``(s_hi, t_hi)``: every true coefficient with
eS <= s_hi and eT <= t_hi is stored correctly, nothing is claimed beyond.
Together with a certified lower support bound ``(s_lo, t_lo)`` this makes
residue extraction a checkable finite computation.
"""

import numpy as np

from .errors import NotAUnit, WindowTooSmall, ZeroValuation
from .kernels import series_conv

INF = 10**8


def expvec_key(e):
    """Sort key realizing the two-dimensional order: compare eT, then eS."""
    return (e[1], e[0])


def expvec_lt(a, b):
    return a[1] < b[1] or (a[1] == b[1] and a[0] < b[0])


class Window:
    """Inclusive exponent box used to steer expansions and comparisons."""

    __slots__ = ("s_min", "s_max", "t_min", "t_max")

    def __init__(self, s_min, s_max, t_min, t_max):
        if s_min > s_max or t_min > t_max:
            raise ValueError("empty window")
        self.s_min = s_min
        self.s_max = s_max
        self.t_min = t_min
        self.t_max = t_max

    @classmethod
    def square(cls, radius):
        return cls(-radius, radius, -radius, radius)

    def contains(self, e):
        return self.s_min <= e[0] <= self.s_max and self.t_min <= e[1] <= self.t_max

    def doubled(self):
        return Window(2 * self.s_min, 2 * self.s_max, 2 * self.t_min, 2 * self.t_max)

    def __repr__(self):
        return f"Window(S:[{self.s_min},{self.s_max}], T:[{self.t_min},{self.t_max}])"


_MODRED_CACHE = {}


class Series:
    """A bivariate Laurent series with exactness bookkeeping."""

    __slots__ = ("ring", "terms", "exact", "s_hi", "t_hi", "s_lo", "t_lo")

    def __init__(self, ring, terms, exact=True, hi=None, lo=None):
        self.ring = ring
        self.terms = terms
        self.exact = exact
        if exact:
            self.s_hi = INF
            self.t_hi = INF
        else:
            self.s_hi, self.t_hi = hi
        if lo is None:
            if terms:
                self.s_lo = min(e[0] for e in terms)
                self.t_lo = min(e[1] for e in terms)
            else:
                self.s_lo = INF
                self.t_lo = INF
        else:
            self.s_lo, self.t_lo = lo

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, ring):
        return cls(ring, {})

    @classmethod
    def const(cls, ring, c):
        if ring.is_zero(c):
            return cls(ring, {})
        return cls(ring, {(0, 0): tuple(c)})

    @classmethod
    def monomial(cls, ring, c, exp):
        if ring.is_zero(c):
            return cls(ring, {})
        return cls(ring, {(int(exp[0]), int(exp[1])): tuple(c)})

    @classmethod
    def from_terms(cls, ring, items):
        terms = {}
        for exp, c in items:
            e = (int(exp[0]), int(exp[1]))
            acc = terms.get(e)
            c = ring.add(acc, c) if acc is not None else tuple(c)
            if ring.is_zero(c):
                terms.pop(e, None)
            else:
                terms[e] = c
        return cls(ring, terms)

    # -- inspection ---------------------------------------------------------

    def is_zero(self):
        return not self.terms

    def coeff(self, exp):
        return self.terms.get(tuple(exp), self.ring.zero())

    def support(self):
        return sorted(self.terms, key=expvec_key)

    def valuation(self):
        """(vS, vT): minimal T-exponent, then minimal S-exponent there."""
        if not self.terms:
            raise ZeroValuation("valuation of the zero series")
        return min(self.terms, key=expvec_key)

    def terms_within(self, window):
        return {e: c for e, c in self.terms.items() if window.contains(e)}

    def is_zero_within(self, window):
        return not self.terms_within(window)

    def __eq__(self, other):
        return (
            isinstance(other, Series)
            and self.ring is other.ring
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "Series(0)"
        parts = []
        for e in self.support()[:8]:
            parts.append(f"{self.terms[e]}*S^{e[0]}*T^{e[1]}")
        if len(self.terms) > 8:
            parts.append("...")
        tag = "" if self.exact else f" !hi=({self.s_hi},{self.t_hi})"
        return "Series(" + " + ".join(parts) + tag + ")"

    # -- linear operations --------------------------------------------------

    def _meta_binary(self, other):
        exact = self.exact and other.exact
        hi = (min(self.s_hi, other.s_hi), min(self.t_hi, other.t_hi))
        lo = (min(self.s_lo, other.s_lo), min(self.t_lo, other.t_lo))
        return exact, hi, lo

    def add(self, other):
        ring = self.ring
        big, small = (self.terms, other.terms)
        if len(big) < len(small):
            big, small = small, big
        out = dict(big)
        for e, c in small.items():
            acc = out.get(e)
            c = ring.add(acc, c) if acc is not None else c
            if ring.is_zero(c):
                out.pop(e, None)
            else:
                out[e] = c
        exact, hi, lo = self._meta_binary(other)
        return Series(ring, out, exact, hi, lo)

    def neg(self):
        ring = self.ring
        out = {e: ring.neg(c) for e, c in self.terms.items()}
        return Series(ring, out, self.exact, (self.s_hi, self.t_hi), (self.s_lo, self.t_lo))

    def sub(self, other):
        return self.add(other.neg())

    def int_mul(self, n):
        ring = self.ring
        out = {}
        for e, c in self.terms.items():
            c = ring.int_mul(n, c)
            if not ring.is_zero(c):
                out[e] = c
        return Series(ring, out, self.exact, (self.s_hi, self.t_hi), (self.s_lo, self.t_lo))

    def scalar_mul(self, c):
        ring = self.ring
        out = {}
        for e, t in self.terms.items():
            v = ring.mul(c, t)
            if not ring.is_zero(v):
                out[e] = v
        return Series(ring, out, self.exact, (self.s_hi, self.t_hi), (self.s_lo, self.t_lo))

    def shift(self, ds, dt):
        out = {(e[0] + ds, e[1] + dt): c for e, c in self.terms.items()}
        hi = (min(self.s_hi + ds, INF), min(self.t_hi + dt, INF))
        lo = (min(self.s_lo + ds, INF), min(self.t_lo + dt, INF))
        return Series(self.ring, out, self.exact, hi, lo)

    # -- multiplication -----------------------------------------------------

    def _arrays(self):
        n = len(self.terms)
        d = self.ring.d
        exps = np.empty((n, 2), dtype=np.int64)
        coefs = np.empty((n, d), dtype=np.int64)
        for i, (e, c) in enumerate(self.terms.items()):
            exps[i, 0] = e[0]
            exps[i, 1] = e[1]
            for t in range(d):
                coefs[i, t] = c[t]
        return exps, coefs

    def mul(self, other):
        ring = self.ring
        assert ring is other.ring, "mixed coefficient rings"
        if not self.terms or not other.terms:
            out = {}
        else:
            eA, cA = self._arrays()
            eB, cB = other._arrays()
            key = (ring.p, ring.e, ring.modulus)
            modred = _MODRED_CACHE.get(key)
            if modred is None:
                modred = np.array(ring.modred, dtype=np.int64)
                _MODRED_CACHE[key] = modred
            ee, cc = series_conv(eA, cA, eB, cB, modred, ring.pe)
            out = {}
            for i in range(ee.shape[0]):
                out[(int(ee[i, 0]), int(ee[i, 1]))] = tuple(int(x) for x in cc[i])
        exact = self.exact and other.exact
        cands_s = [INF]
        cands_t = [INF]
        if not self.exact:
            cands_s.append(self.s_hi + other.s_lo)
            cands_t.append(self.t_hi + other.t_lo)
        if not other.exact:
            cands_s.append(other.s_hi + self.s_lo)
            cands_t.append(other.t_hi + self.t_lo)
        hi = (min(cands_s), min(cands_t))
        lo = (min(self.s_lo + other.s_lo, INF), min(self.t_lo + other.t_lo, INF))
        return Series(ring, out, exact, hi, lo)

    def frobenius_power(self, k=1):
        """Termwise p^k-th power; valid over characteristic-p coefficients."""
        assert self.ring.e == 1, "termwise power needs characteristic p"
        ring = self.ring
        q = ring.p**k
        out = {(e[0] * q, e[1] * q): ring.pow(c, q) for e, c in self.terms.items()}
        hi = (min(self.s_hi, INF), min(self.t_hi, INF))  # callers use exact inputs
        lo = (min(self.s_lo * q, INF) if self.s_lo != INF else INF,
              min(self.t_lo * q, INF) if self.t_lo != INF else INF)
        return Series(ring, out, self.exact, hi, lo)

    def pow(self, n):
        assert n >= 0
        ring = self.ring
        if n == 0:
            return Series.const(ring, ring.one())
        f = self
        if ring.e == 1:
            v = 0
            while n % ring.p == 0:
                n //= ring.p
                v += 1
            if v:
                f = f.frobenius_power(v)
        r = None
        base = f
        while n:
            if n & 1:
                r = base if r is None else r.mul(base)
            n >>= 1
            if n:
                base = base.mul(base)
        return r

    # -- calculus -----------------------------------------------------------

    def d_dS(self):
        ring = self.ring
        out = {}
        for (s, t), c in self.terms.items():
            v = ring.int_mul(s, c)
            if not ring.is_zero(v):
                out[(s - 1, t)] = v
        hi = (self.s_hi if self.exact else self.s_hi - 1, self.t_hi)
        lo = (self.s_lo - 1 if self.s_lo != INF else INF, self.t_lo)
        return Series(ring, out, self.exact, hi, lo)

    def d_dT(self):
        ring = self.ring
        out = {}
        for (s, t), c in self.terms.items():
            v = ring.int_mul(t, c)
            if not ring.is_zero(v):
                out[(s, t - 1)] = v
        hi = (self.s_hi, self.t_hi if self.exact else self.t_hi - 1)
        lo = (self.s_lo, self.t_lo - 1 if self.t_lo != INF else INF)
        return Series(ring, out, self.exact, hi, lo)


def inv_unit(f, window):
    """Inverse of a unit whose leading monomial dominates its support.

    The result is guaranteed exact on the quadrant (window.s_max, window.t_max).
    """
    ring = f.ring
    if f.is_zero():
        raise NotAUnit("zero series")
    val = f.valuation()
    c = f.terms[val]
    if not ring.is_unit(c):
        raise NotAUnit("leading coefficient is not invertible")
    cinv = ring.inv(c)
    # u = 1 + eps with eps of positive two-dimensional valuation
    u = f.scalar_mul(cinv).shift(-val[0], -val[1])
    eps = u.sub(Series.const(ring, ring.one()))
    for (s, t) in eps.terms:
        if not (t > 0 or (t == 0 and s > 0)):
            raise NotAUnit("leading monomial does not dominate the support")
    tcap = window.t_max + max(0, -val[1]) + 1
    scap0 = window.s_max + max(0, -val[0]) + 1
    neg_s = max(0, -min((e[0] for e in eps.terms), default=0))
    scap = scap0 + (tcap + 1) * neg_s

    def clip(g):
        kept = {e: c2 for e, c2 in g.terms.items() if e[0] <= scap and e[1] <= tcap}
        return Series(ring, kept, g.exact, None, (g.s_lo, g.t_lo))

    one = Series.const(ring, ring.one())
    acc = one
    pw = clip(eps.neg())
    iters = 0
    itercap = (tcap + 2) * (scap + 2) + 10
    while not pw.is_zero():
        acc = acc.add(pw)
        pw = clip(pw.mul(eps.neg()))
        iters += 1
        if iters > itercap:
            raise WindowTooSmall("unit inverse expansion did not stabilize")
    res = acc.scalar_mul(cinv).shift(-val[0], -val[1])
    lo_s = -val[0] - tcap * neg_s if neg_s else -val[0]
    return Series(ring, res.terms, False, (window.s_max, window.t_max), (lo_s, -val[1]))


class OneForm:
    """uS dS + uT dT with a shared coefficient ring."""

    __slots__ = ("uS", "uT")

    def __init__(self, uS, uT):
        self.uS = uS
        self.uT = uT

    def add(self, other):
        return OneForm(self.uS.add(other.uS), self.uT.add(other.uT))


class TwoForm:
    """f dS ^ dT."""

    __slots__ = ("f",)

    def __init__(self, f):
        self.f = f

    def add(self, other):
        return TwoForm(self.f.add(other.f))

    def int_mul(self, n):
        return TwoForm(self.f.int_mul(n))


def dlog_unit(f, window):
    """(df/dS)/f dS + (df/dT)/f dT for an invertible series."""
    # widen the inversion window so the products stay guaranteed on `window`
    pad_s = max(0, -min((e[0] for e in f.terms), default=0)) + 1
    pad_t = max(0, -min((e[1] for e in f.terms), default=0)) + 1
    wide = Window(window.s_min, window.s_max + pad_s, window.t_min, window.t_max + pad_t)
    finv = inv_unit(f, wide)
    return OneForm(f.d_dS().mul(finv), f.d_dT().mul(finv))


def wedge(u, v):
    """(uS dS + uT dT) ^ (vS dS + vT dT) = (uS vT - uT vS) dS ^ dT."""
    return TwoForm(u.uS.mul(v.uT).sub(u.uT.mul(v.uS)))


def residue(omega):
    """The S^-1 T^-1 coefficient of a two-form, with the exactness check."""
    f = omega.f
    if f.s_hi < -1 or f.t_hi < -1:
        raise WindowTooSmall("residue coefficient lies outside the guaranteed region")
    return f.coeff((-1, -1))
