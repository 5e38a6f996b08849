"""Truncated p-typical Witt vectors over a generic coefficient ring.

Ring structure comes from universal integer polynomials generated once per
(p, m) by symbolic recursion over the ghost identities; integrality is
asserted at generation time.  Vectors are plain tuples of ring elements,
with the ring plugged in through a small adapter so that the same code
runs over k, Z_q/p^N, plain integers, and Laurent series over either.
"""

from functools import lru_cache

import sympy

from .errors import DivisibilityError
from .series import Series


# ---------------------------------------------------------------------------
# universal polynomials


def _ghost_expr(vars_, p, h):
    return sum(p**i * vars_[i] ** (p ** (h - i)) for i in range(h + 1))


def _solve_level(target, prev, vars_, p, h):
    """prev are the already-solved lower coordinates; returns coordinate h."""
    num = target - sum(p**i * prev[i] ** (p ** (h - i)) for i in range(h))
    num = sympy.expand(num)
    poly = sympy.Poly(num, *vars_, domain="ZZ")
    ph = p**h
    out_terms = []
    for exps, coef in poly.terms():
        c = int(coef)
        if c % ph:
            raise AssertionError("universal Witt polynomial is not integral")
        out_terms.append((exps, c // ph))
    return sympy.Poly.from_dict({e: c for e, c in out_terms}, *vars_).as_expr()


@lru_cache(maxsize=None)
def universal_polys(p, m):
    """Term lists for sum, negation, product, Frobenius at each level.

    Each entry is a list (per coordinate) of [(int coefficient, exponent
    tuple over the 2m variables x0..x_{m-1}, y0..y_{m-1})].
    """
    xs = sympy.symbols(f"x0:{m}")
    ys = sympy.symbols(f"y0:{m}")
    allv = list(xs) + list(ys)

    def to_terms(expr):
        poly = sympy.Poly(expr, *allv, domain="ZZ")
        return tuple((int(c), tuple(int(e) for e in exps)) for exps, c in poly.terms())

    add_exprs, neg_exprs, mul_exprs, frob_exprs = [], [], [], []
    for h in range(m):
        gx = _ghost_expr(xs, p, h)
        gy = _ghost_expr(ys, p, h)
        add_exprs.append(_solve_level(gx + gy, add_exprs, allv, p, h))
        neg_exprs.append(_solve_level(-gx, neg_exprs, allv, p, h))
        mul_exprs.append(_solve_level(gx * gy, mul_exprs, allv, p, h))
    for h in range(m - 1):
        gx_next = _ghost_expr(xs, p, h + 1)
        frob_exprs.append(_solve_level(gx_next, frob_exprs, allv, p, h))

    return {
        "add": [to_terms(e) for e in add_exprs],
        "neg": [to_terms(e) for e in neg_exprs],
        "mul": [to_terms(e) for e in mul_exprs],
        "frob": [to_terms(e) for e in frob_exprs],
    }


# ---------------------------------------------------------------------------
# coefficient ring adapters


class IntRing:
    """Plain integers; characteristic 0.  Used by oracle tests."""

    char_p = False

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, n):
        return a**n

    def int_mul(self, n, a):
        return n * a

    def is_zero(self, a):
        return a == 0

    def eq(self, a, b):
        return a == b

    def div_p_power(self, a, p, h):
        ph = p**h
        if a % ph:
            raise DivisibilityError(f"{a} not divisible by {p}^{h}")
        return a // ph


class IntModRing:
    """Z/pe; characteristic 0 model when e > 1."""

    def __init__(self, p, e):
        self.p = p
        self.e = e
        self.pe = p**e
        self.char_p = e == 1

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.pe

    def neg(self, a):
        return (-a) % self.pe

    def mul(self, a, b):
        return (a * b) % self.pe

    def pow(self, a, n):
        return pow(a, n, self.pe)

    def int_mul(self, n, a):
        return (n * a) % self.pe

    def is_zero(self, a):
        return a % self.pe == 0

    def eq(self, a, b):
        return (a - b) % self.pe == 0

    def frob(self, a):
        return pow(a, self.p, self.pe)

    def div_p_power(self, a, p, h):
        a %= self.pe
        if a % p**h:
            raise DivisibilityError(f"{a} not divisible by {p}^{h} mod {self.pe}")
        return a // p**h


class ScalarRing:
    """Adapter over a fields.PolyRing (k when e = 1, Z_q/p^N when e = N)."""

    def __init__(self, ring):
        self.ring = ring
        self.char_p = ring.e == 1

    def zero(self):
        return self.ring.zero()

    def one(self):
        return self.ring.one()

    def add(self, a, b):
        return self.ring.add(a, b)

    def neg(self, a):
        return self.ring.neg(a)

    def mul(self, a, b):
        return self.ring.mul(a, b)

    def pow(self, a, n):
        return self.ring.pow(a, n)

    def int_mul(self, n, a):
        return self.ring.int_mul(n, a)

    def is_zero(self, a):
        return self.ring.is_zero(a)

    def eq(self, a, b):
        return a == b

    def frob(self, a):
        return self.ring.pow(a, self.ring.p)

    def div_p_power(self, a, p, h):
        ph = p**h
        out = []
        for c in a:
            c %= self.ring.pe
            if c % ph:
                raise DivisibilityError("coefficient not divisible by the p-power")
            out.append(c // ph)
        return tuple(out)


class SeriesCoeffRing:
    """Adapter whose elements are Series over a shared PolyRing."""

    def __init__(self, ring):
        self.ring = ring
        self.char_p = ring.e == 1

    def zero(self):
        return Series.zero(self.ring)

    def one(self):
        return Series.const(self.ring, self.ring.one())

    def add(self, a, b):
        return a.add(b)

    def neg(self, a):
        return a.neg()

    def mul(self, a, b):
        return a.mul(b)

    def pow(self, a, n):
        return a.pow(n)

    def int_mul(self, n, a):
        return a.int_mul(n)

    def is_zero(self, a):
        return a.is_zero()

    def eq(self, a, b):
        return a.sub(b).is_zero()

    def frob(self, a):
        return a.frobenius_power(1)

    def div_p_power(self, a, p, h):
        scalar = ScalarRing(self.ring)
        out = {}
        for e, c in a.terms.items():
            q = scalar.div_p_power(c, p, h)
            if not self.ring.is_zero(q):
                out[e] = q
        return Series(self.ring, out, a.exact, (a.s_hi, a.t_hi), (a.s_lo, a.t_lo))


# ---------------------------------------------------------------------------
# the Witt ring


def _eval_terms(terms, values, R):
    """Evaluate an integer term list at ring values with power caching."""
    powcache = {}
    acc = R.zero()
    for coef, exps in terms:
        term = None
        dead = False
        for vi, e in enumerate(exps):
            if e == 0:
                continue
            v = values[vi]
            if R.is_zero(v):
                dead = True
                break
            key = (vi, e)
            pw = powcache.get(key)
            if pw is None:
                pw = R.pow(v, e)
                powcache[key] = pw
            term = pw if term is None else R.mul(term, pw)
        if dead:
            continue
        if term is None:
            term = R.one()
        acc = R.add(acc, R.int_mul(coef, term))
    return acc


class WittRing:
    """W_m over a coefficient ring adapter; vectors are coordinate tuples."""

    def __init__(self, p, m, R):
        self.p = p
        self.m = m
        self.R = R
        self._polys = universal_polys(p, m)

    def zero(self):
        return (self.R.zero(),) * self.m

    def teichmuller(self, c):
        return (c,) + (self.R.zero(),) * (self.m - 1)

    def eq(self, a, b):
        return all(self.R.eq(x, y) for x, y in zip(a, b))

    def _binary(self, kind, a, b):
        values = list(a) + list(b)
        return tuple(_eval_terms(t, values, self.R) for t in self._polys[kind])

    def add(self, a, b):
        return self._binary("add", a, b)

    def mul(self, a, b):
        return self._binary("mul", a, b)

    def neg(self, a):
        values = list(a) + [self.R.zero()] * self.m
        return tuple(_eval_terms(t, values, self.R) for t in self._polys["neg"])

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def int_mul(self, n, a):
        """n-fold sum for an integer scalar n (small n; double-and-add)."""
        if n < 0:
            return self.neg(self.int_mul(-n, a))
        acc = self.zero()
        base = a
        while n:
            if n & 1:
                acc = self.add(acc, base)
            n >>= 1
            if n:
                base = self.add(base, base)
        return acc

    def scalar_teich(self, c, a):
        """Multiplication by the Teichmuller vector [c]: coordinatewise c^(p^h)."""
        return tuple(
            self.R.mul(self.R.pow(c, self.p**h), x) for h, x in enumerate(a)
        )

    def frobenius(self, a):
        """Witt Frobenius.  Coordinatewise p-th power in characteristic p,
        the universal polynomials (one coordinate shorter) otherwise."""
        if self.R.char_p:
            return tuple(self.R.frob(x) for x in a)
        values = list(a) + [self.R.zero()] * self.m
        return tuple(_eval_terms(t, values, self.R) for t in self._polys["frob"])

    def wp(self, a):
        """The Artin-Schreier-Witt operator: Frobenius minus identity."""
        assert self.R.char_p, "wp needs a characteristic-p coefficient ring"
        return self.sub(self.frobenius(a), a)

    def ghost(self, a):
        comps = []
        for h in range(self.m):
            acc = self.R.zero()
            for i in range(h + 1):
                acc = self.R.add(
                    acc, self.R.int_mul(self.p**i, self.R.pow(a[i], self.p ** (h - i)))
                )
            comps.append(acc)
        return tuple(comps)

    def ghost_inverse(self, comps):
        """Invert the ghost map over a characteristic-0 model.

        Coordinate h is recovered mod p^(N-h); raises DivisibilityError when
        the input does not satisfy the ghost integrality pattern.
        """
        coords = []
        for h in range(self.m):
            acc = comps[h]
            for i in range(h):
                acc = self.R.add(
                    acc,
                    self.R.neg(
                        self.R.int_mul(
                            self.p**i, self.R.pow(coords[i], self.p ** (h - i))
                        )
                    ),
                )
            coords.append(self.R.div_p_power(acc, self.p, h))
        return tuple(coords)
