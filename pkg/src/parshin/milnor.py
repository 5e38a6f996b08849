"""Canonical K2 symbol products and normalization in the p-completion.

A class in the p-completed topological K2 of k((S))((T)) built from the
supported input shapes is stored as

    {S, T}^e  *  prod over generators {1 + a S^i T^j, S or T}^n,

with e and the exponents n taken mod p^m.  Prime-to-p content (constant
entries, {-1, .} torsion) is discarded.  Supported inputs to
``normalize_symbol`` are pairs where at least one argument is a monomial
c*S^a*T^b; general unit-unit pairs raise UnsupportedPair.
"""

from dataclasses import dataclass
from math import gcd

from .errors import NotPrincipalUnit, UnsupportedPair
from .series import Series, Window, expvec_key, inv_unit

S_KIND = "S"
T_KIND = "T"


@dataclass(frozen=True)
class K2Generator:
    """{1 + a S^i T^j, S}^n (kind S) or {1 + a S^i T^j, T}^n (kind T)."""

    kind: str
    i: int
    j: int
    a: tuple
    n: int

    def key(self):
        return (self.kind, self.i, self.j, self.a)


class CanonicalK2:
    """{S,T}^e times a merged list of generators."""

    __slots__ = ("p", "m", "e", "gens")

    def __init__(self, p, m, e=0, gens=()):
        self.p = p
        self.m = m
        pm = p**m
        self.e = e % pm
        merged = {}
        for g in gens:
            merged[g.key()] = (merged.get(g.key(), 0) + g.n) % pm
        out = []
        for (kind, i, j, a), n in merged.items():
            if n % pm == 0:
                continue
            if kind == S_KIND:
                assert j % p != 0 and (i >= 1 or (i == 0 and j >= 1))
            else:
                assert i >= 1 and i % p != 0 and j % p == 0
            out.append(K2Generator(kind, i, j, a, n))
        out.sort(key=lambda g: (g.kind, expvec_key((g.i, g.j)), g.a))
        self.gens = tuple(out)

    def is_trivial(self):
        return self.e == 0 and not self.gens

    def __eq__(self, other):
        return (
            isinstance(other, CanonicalK2)
            and (self.p, self.m, self.e, self.gens)
            == (other.p, other.m, other.e, other.gens)
        )

    def __repr__(self):
        parts = [f"{{S,T}}^{self.e}"] if self.e else []
        for g in self.gens:
            parts.append(f"{{1+{g.a}*S^{g.i}*T^{g.j}, {g.kind}}}^{g.n}")
        return " * ".join(parts) if parts else "1"

    def merge(self, other):
        assert (self.p, self.m) == (other.p, other.m)
        return CanonicalK2(self.p, self.m, self.e + other.e, self.gens + other.gens)

    def power(self, n):
        gens = [K2Generator(g.kind, g.i, g.j, g.a, g.n * n) for g in self.gens]
        return CanonicalK2(self.p, self.m, self.e * n, gens)


def _in_unit_cone(e):
    # exponents of 1-unit factors: i >= 1 with any j, or i = 0 with j >= 1
    return e[0] >= 1 or (e[0] == 0 and e[1] >= 1)


def factor_unit(u, bound=64):
    """Write a principal unit as a product prod (1 + a S^i T^j) of factors
    with exponents in [0,bound] x [-bound,bound]; re-multiplying the
    emitted factors reproduces u exactly on that box.

    Peeling runs in lexicographic (i, j) order: every correction is a sum
    of unit-cone exponents, so it sits strictly later in that order and
    the S-exponent never decreases.  That monotonicity makes two drop
    rules permanently sound: i > bound always, and for a support with no
    negative T-exponents (where j is monotone too) also j > bound.
    Otherwise i = 0 debris is only dropped beyond bound*(bound+1), past
    the largest j-descent reachable while i stays within the box.
    """
    ring = u.ring
    if u.terms.get((0, 0)) != ring.one():
        raise NotPrincipalUnit("constant term is not 1")
    for e in u.terms:
        if e != (0, 0) and not _in_unit_cone(e):
            raise NotPrincipalUnit(f"term at exponent {e} outside the unit cone")
    # slope invariant: j >= -maxneg * i holds on the support and is
    # preserved by every product taken below, so terms with i <= bound
    # can only descend to j >= -maxneg*bound, and anything peeled or
    # dropped beyond jcap can never fall back into the bound box
    maxneg = max([0] + [-e[1] for e in u.terms if e[1] < 0])
    jcap = bound * (1 + maxneg) + 1

    cur = u
    factors = []
    max_peels = (bound + 1) * (jcap + maxneg * bound + 2) + 10
    for _ in range(max_peels):
        cand = [e for e in cur.terms if e != (0, 0) and e[0] <= bound and e[1] <= jcap]
        if not cand:
            break
        e = min(cand)  # lexicographic (i, j); corrections are strictly later
        a = cur.terms[e]
        factors.append((e[0], e[1], a))
        # divide by (1 + a S^i T^j) via a geometric series truncated only
        # once its tail lands in the droppable region
        reps = bound if e[0] >= 1 else jcap // e[1] + 1
        geom_items = []
        coef = ring.one()
        for r in range(reps + 1):
            geom_items.append(((e[0] * r, e[1] * r), coef))
            coef = ring.mul(coef, ring.neg(a))
        cur = cur.mul(Series.from_terms(ring, geom_items))
        kept = {
            ee: c for ee, c in cur.terms.items() if ee[0] <= bound and ee[1] <= jcap
        }
        cur = Series(ring, kept, True, (cur.s_hi, cur.t_hi), (cur.s_lo, cur.t_lo))
    else:
        raise NotPrincipalUnit("unit factorization did not terminate")
    factors.sort(key=lambda f: expvec_key((f[0], f[1])))
    return factors


def _split_monomial_unit(f):
    """f = c * S^a T^b * u with u a principal unit; returns (c, (a,b), u).

    The monomial exponent is the lexicographic minimum of the support, not
    the 2D valuation: unit-cone offsets (i > 0, or i = 0 with j > 0) are
    exactly the lex-positive ones, so lex-min recovers the split even for
    mixed-sign units like 1 + a S^4 T^-5 whose cone term sits below (0,0)
    in the 2D order.
    """
    ring = f.ring
    if f.is_zero():
        raise UnsupportedPair("symbol entry is zero")
    val = min(f.terms)
    c = f.terms[val]
    if not ring.is_unit(c):
        raise NotPrincipalUnit("leading coefficient is not invertible")
    u = f.scalar_mul(ring.inv(c)).shift(-val[0], -val[1])
    return c, val, u


def _one_unit_symbol(i, j, a, n, kind, fp, m):
    """Generators for {1 + a S^i T^j, S or T}^n in the p-completion."""
    p = fp.p
    pm = p**m
    # p | gcd(i, j): 1 + a S^i T^j = (1 + a^(1/p) S^(i/p) T^(j/p))^p in char p
    while i % p == 0 and j % p == 0 and (i, j) != (0, 0):
        i //= p
        j //= p
        a = fp.pth_root_ff(a)
        n = (n * p) % pm
    if n % pm == 0:
        return []
    if kind == S_KIND:
        if j % p != 0:
            return [K2Generator(S_KIND, i, j, a, n)]
        # p | j, p coprime to i: {1+x, S} = {1+x, T}^(-j/i)
        n2 = (-j * pow(i, -1, pm) * n) % pm
        return [K2Generator(T_KIND, i, j, a, n2)] if n2 else []
    if j % p == 0:
        if i % p != 0:
            return [K2Generator(T_KIND, i, j, a, n)]
        # here p | i forces i = 0 after root peeling, j >= 1 coprime shape
        # cannot occur: peeling stopped, so p divides exactly one of i, j
        raise AssertionError("unreachable generator shape")
    # p coprime to j: {1+x, T} = {1+x, S}^(-i/j)
    n2 = (-i * pow(j, -1, pm) * n) % pm
    return [K2Generator(S_KIND, i, j, a, n2)] if n2 else []


def normalize_symbol(f, g, fp, m, bound=64):
    """Canonical form of the symbol {f, g} in the p-completion.

    At least one of f, g must be a pure monomial c*S^a*T^b; the other may
    carry a principal-unit part.  Constants and {-1,.} content vanish in
    the p-completion and are dropped.
    """
    _, ef, uf = _split_monomial_unit(f)
    _, eg, ug = _split_monomial_unit(g)
    one = Series.const(f.ring, f.ring.one())
    uf_trivial = uf.sub(one).is_zero()
    ug_trivial = ug.sub(one).is_zero()
    if not uf_trivial and not ug_trivial:
        raise UnsupportedPair("unit-unit symbols are not supported")
    e = ef[0] * eg[1] - ef[1] * eg[0]
    gens = []
    if not uf_trivial:
        for (i, j, a) in factor_unit(uf, bound=bound):
            if eg[0]:
                gens += _one_unit_symbol(i, j, a, eg[0], S_KIND, fp, m)
            if eg[1]:
                gens += _one_unit_symbol(i, j, a, eg[1], T_KIND, fp, m)
    if not ug_trivial:
        # {mono_f, u_g} = {u_g, mono_f}^-1
        for (i, j, a) in factor_unit(ug, bound=bound):
            if ef[0]:
                gens += _one_unit_symbol(i, j, a, -ef[0], S_KIND, fp, m)
            if ef[1]:
                gens += _one_unit_symbol(i, j, a, -ef[1], T_KIND, fp, m)
    return CanonicalK2(fp.p, m, e, gens)


def lift_and_dlog(y, fp, window):
    """dlog of the Teichmuller lift of y, as a 2-form over Z_q mod p^N.

    {S,T} contributes S^-1 T^-1; a generator {1 + A S^i T^j, S}^n
    contributes -n*j*A*S^(i-1)*T^(j-1)*(1+A S^iT^j)^-1 and a T-kind
    generator the same with +n*i in place of -n*j.

    The 1-unit coefficient a lifts as A = -[-a], not [a].  The two agree
    for odd p; for p = 2 only the A-lift keeps this residue computation
    equal to the ghost-component formula and to the value forced by
    Artin-Schreier-Witt reciprocity (the [a]-lift is off by -1 on every
    generator-matched term mod 4).
    """
    zq = fp.zq
    acc = Series.zero(zq)
    hi_s, hi_t = None, None

    def meet(series):
        nonlocal hi_s, hi_t
        if not series.exact:
            hi_s = series.s_hi if hi_s is None else min(hi_s, series.s_hi)
            hi_t = series.t_hi if hi_t is None else min(hi_t, series.t_hi)

    if y.e:
        acc = acc.add(Series.monomial(zq, zq.from_int(y.e), (-1, -1)))
    for g in y.gens:
        ta = zq.neg(fp.teichmuller(fp.ff.neg(g.a)))
        u = Series.from_terms(zq, [((0, 0), zq.one()), ((g.i, g.j), ta)])
        pad_s = max(0, 1 - g.i) + 1
        pad_t = max(0, 1 - g.j) + 1
        wide = Window(window.s_min, window.s_max + pad_s, window.t_min, window.t_max + pad_t)
        uinv = inv_unit(u, wide)
        scale = (-g.n * g.j) if g.kind == S_KIND else (g.n * g.i)
        mono = Series.monomial(zq, zq.int_mul(scale, ta), (g.i - 1, g.j - 1))
        term = uinv.mul(mono)
        meet(term)
        acc = acc.add(term)

    from .series import TwoForm

    if hi_s is not None:
        acc = Series(zq, acc.terms, False, (min(hi_s, acc.s_hi), min(hi_t, acc.t_hi)), (acc.s_lo, acc.t_lo))
    return TwoForm(acc)
