"""Canonical representatives of W_m(K) / wp W_m(K) and the two liftings.

Every finite-support Witt vector over k((S))((T)) is rewritten, coordinate
by coordinate, into the normal form

    c * beta  +  sum c_ij [S^-i T^-j],

with c an integer mod p^m and c_ij in Z_q mod p^m, keyed by (i, j) with a
negative actual exponent and p not dividing gcd(i, j).  The rewriting
produces an explicit wp-witness, so soundness is a checkable identity:
x = embed(canonical) + wp(witness) exactly within the guarantee window.
"""

from math import gcd

from .errors import WindowTooSmall
from .fields import FieldParams, PolyRing
from .series import Series, Window, expvec_key
from .witt import SeriesCoeffRing, WittRing

# Truncation geometry for reduce_witt, in multiples of the window extent.
#
# Positive-cone elimination chains at level h are truncated once an exponent
# passes chain_cut * p^h; anything already beyond junk_cut * p^h is abandoned
# outright.  The cutoffs scale with the level because Witt carries push a
# monomial family from exponent e at level h to p*e at level h+1: scaling
# keeps whole families on the same side of the cut, so the debris
# contributions that must cancel in the canonical accumulator are never
# half-junked.  Cancelling partners within one level still sit at exponent
# ratios up to ~p^m, so a family straddling the junk cut can orphan
# survivors down to key junk_cut / p^(m+2) = key_cut; everything at or past
# key_cut is certified truncation debris because genuine canonical keys are
# bounded by the input support, which is checked to stay below key_cut.
KEY_MARGIN = 4  # key_cut = KEY_MARGIN * window extent


def teich_int(b, p, m):
    """Teichmuller representative of b in Z/p^m (fixed point of t -> t^p)."""
    t = b % p**m
    for _ in range(m + 2):
        t = pow(t, p, p**m)
    return t


def int_teich_digits(c, p, m):
    """Digits (b_0, ..., b_{m-1}) in F_p with c = sum p^i [b_i] mod p^m."""
    digits = []
    cur = c % p**m
    for i in range(m):
        b = cur % p
        digits.append(b)
        cur = (cur - teich_int(b, p, m)) % p ** (m - i)
        cur //= p
    return digits


class CanonicalASW:
    """Normal form of a class in W_m(K)/wp W_m(K)."""

    __slots__ = ("fp", "m", "c", "terms", "zq_m")

    def __init__(self, fp, m, c=0, terms=None):
        self.fp = fp
        self.m = m
        self.zq_m = PolyRing(fp.p, m, fp.modulus)
        self.c = c % fp.p**m
        self.terms = {}
        if terms:
            for key, v in terms.items():
                v = self.zq_m.reduce_mod(tuple(v), m)
                if not self.zq_m.is_zero(v):
                    self.terms[key] = v

    def is_zero(self):
        return self.c == 0 and not self.terms

    def __eq__(self, other):
        return (
            isinstance(other, CanonicalASW)
            and self.m == other.m
            and self.c == other.c
            and self.terms == other.terms
        )

    def __repr__(self):
        items = ", ".join(
            f"({i},{j}): {v}" for (i, j), v in sorted(self.terms.items(), key=lambda kv: expvec_key(kv[0]))
        )
        return f"CanonicalASW(c={self.c}, terms={{{items}}})"

    def add(self, other):
        assert self.m == other.m
        out = dict(self.terms)
        for key, v in other.terms.items():
            acc = out.get(key)
            v = self.zq_m.add(acc, v) if acc is not None else v
            if self.zq_m.is_zero(v):
                out.pop(key, None)
            else:
                out[key] = v
        return CanonicalASW(self.fp, self.m, self.c + other.c, out)


def _fp_at_prec(fp, m):
    if fp.zq_prec == m:
        return fp
    return FieldParams(fp.p, fp.d, fp.modulus, zq_prec=m)


def _common_p_valuation(p, e1, e2):
    g = gcd(abs(e1), abs(e2))
    v = 0
    while g % p == 0:
        g //= p
        v += 1
    return v


def reduce_witt(x, fp, beta, window):
    """Rewrite x into (canonical, witness) with x = embed + wp(witness).

    x is a length-m tuple of exact k-coefficient Series.  Raises
    WindowTooSmall when a canonical monomial would fall outside `window`.
    """
    m = len(x)
    p = fp.p
    ff = fp.ff
    W = WittRing(p, m, SeriesCoeffRing(ff))
    fp_m = _fp_at_prec(fp, m)
    zq_m = PolyRing(p, m, fp.modulus)

    extent = max(
        abs(window.s_min), window.s_max, abs(window.t_min), window.t_max, 1
    )
    key_cut = KEY_MARGIN * extent
    junk_cut = key_cut * p ** (m + 2)
    chain_cut = junk_cut * p * p
    for coord in x:
        for e in coord.terms:
            if max(abs(e[0]), abs(e[1])) >= key_cut:
                raise WindowTooSmall(
                    f"input exponent {e} beyond the certified reduction range"
                )

    tr_alpha_inv = pow(fp.ff_trace(beta.alpha)[0], -1, p)
    teich_alpha_m = fp_m.teichmuller(beta.alpha)

    work = tuple(x)
    witness = W.zero()
    canon_c = 0
    canon_terms = {}

    for h in range(m):
        f = work[h]
        ph = p**h
        w_items = []  # witness monomials introduced at this level
        level_items = []  # the canonical content of coordinate h
        for e in sorted(f.terms, key=expvec_key):
            a = f.terms[e]
            e1, e2 = e
            if max(abs(e1), abs(e2)) >= junk_cut * ph:
                continue  # truncation debris from an earlier chain
            if e1 == 0 and e2 == 0:
                # constant: split off the trace part along alpha^(p^h)
                delta = (fp.ff_trace(a)[0] * tr_alpha_inv) % p
                alpha_ph = ff.pow(beta.alpha, ph)
                part = ff.int_mul(delta, alpha_ph)
                resid = ff.sub(a, part)
                if not ff.is_zero(resid):
                    w0 = fp.artin_schreier_solve(resid)
                    assert w0 is not None, "trace-zero element outside wp(k)"
                    w_items.append(((0, 0), w0))
                if delta:
                    level_items.append(((0, 0), part))
                    canon_c = (canon_c + ph * teich_int(delta, p, m)) % p**m
                continue
            if e2 > 0 or (e2 == 0 and e1 > 0):
                # positive 2D valuation: the chain x = wp(-sum x^(p^n))
                # converges T-adically; truncate once far outside any window
                cur_c, cur_e = a, e
                while max(abs(cur_e[0]), abs(cur_e[1])) <= chain_cut * ph:
                    w_items.append((cur_e, ff.neg(cur_c)))
                    cur_c = ff.pow(cur_c, p)
                    cur_e = (cur_e[0] * p, cur_e[1] * p)
                continue
            # basis-eligible: normalize the common p-valuation to exactly h
            v = _common_p_valuation(p, e1, e2)
            while v > h:
                a = fp.pth_root_ff(a)
                e1 //= p
                e2 //= p
                w_items.append(((e1, e2), a))
                v -= 1
            while v < h:
                w_items.append(((e1, e2), ff.neg(a)))
                a = ff.pow(a, p)
                e1 *= p
                e2 *= p
                v += 1
            i, j = -e1 // ph, -e2 // ph
            digit = a
            for _ in range(h):
                digit = fp.pth_root_ff(digit)
            contrib = zq_m.int_mul(ph, fp_m.teichmuller(digit))
            acc = canon_terms.get((i, j))
            contrib = zq_m.add(acc, contrib) if acc is not None else contrib
            if zq_m.is_zero(contrib):
                canon_terms.pop((i, j), None)
            else:
                canon_terms[(i, j)] = contrib
            level_items.append(((e1, e2), a))

        w_h = Series.from_terms(ff, w_items)
        v_h = tuple(
            w_h if t == h else Series.zero(ff) for t in range(m)
        )
        if h == m - 1:
            # a vector supported only on the last coordinate adds with no
            # carries, so the whole level collapses to plain series ops
            if not w_h.is_zero():
                witness = W.add(witness, v_h)
            last = work[h].sub(w_h.frobenius_power(1).sub(w_h))
            last = last.sub(Series.from_terms(ff, level_items))
            work = work[:h] + (last,)
        else:
            if not w_h.is_zero():
                work = W.sub(work, W.wp(v_h))
                witness = W.add(witness, v_h)
            # each canonical item is its own Verschiebung-of-Teichmuller
            # vector; Witt-summing them (not summing the series first)
            # matches embed, which differs from V_h(sum) by
            # Teichmuller-addition carries.
            for exp, coef in level_items:
                mono = Series.monomial(ff, coef, exp)
                e_h = tuple(mono if t == h else Series.zero(ff) for t in range(m))
                work = W.sub(work, e_h)
        for e in work[h].terms:
            if max(abs(e[0]), abs(e[1])) < junk_cut * ph:
                raise AssertionError(f"level {h} reduction left term at {e}")

    # Witt-carry debris between chain and basis witness terms produces
    # intermediate canonical contributions at large exponents that cancel
    # in the accumulator, so the window is enforced only on survivors.
    # Cancelling partners within a level sit at exponent ratios up to p^m,
    # so the junk cutoff unavoidably straddles a few families; the orphaned
    # survivors always lie at key magnitude >= key_cut — far beyond the
    # window and the input support — and are discarded as truncation debris
    # along with their partners.
    canonical = CanonicalASW(fp, m, canon_c, canon_terms)
    for (i, j) in list(canonical.terms):
        if max(abs(i), abs(j)) >= key_cut:
            del canonical.terms[(i, j)]
        elif not window.contains((-i, -j)):
            raise WindowTooSmall(
                f"canonical monomial S^{-i} T^{-j} escapes the window"
            )
    return canonical, witness


def embed(canonical, beta, fp=None):
    """Rebuild the Witt vector c*beta + sum c_ij [S^-i T^-j] over k-series."""
    fp = fp or canonical.fp
    m = canonical.m
    p = fp.p
    ff = fp.ff
    W = WittRing(p, m, SeriesCoeffRing(ff))
    fp_m = _fp_at_prec(fp, m)
    zq_m = canonical.zq_m

    acc = W.zero()

    def basis_vector(z, u_exp):
        digits = fp_m.teich_digits(z, m)
        coords = []
        for h, b in enumerate(digits):
            coef = ff.pow(b, p**h)
            exp = (u_exp[0] * p**h, u_exp[1] * p**h)
            coords.append(Series.monomial(ff, coef, exp))
        return tuple(coords)

    if canonical.c:
        z = zq_m.int_mul(canonical.c, fp_m.teichmuller(beta.alpha))
        acc = W.add(acc, basis_vector(z, (0, 0)))
    for (i, j), cij in sorted(canonical.terms.items(), key=lambda kv: expvec_key(kv[0])):
        acc = W.add(acc, basis_vector(cij, (-i, -j)))
    return acc


def verify_reduction(x, canonical, witness, beta, window, fp=None):
    """Check x - embed(canonical) - wp(witness) = 0 inside the window."""
    fp = fp or canonical.fp
    m = canonical.m
    W = WittRing(fp.p, m, SeriesCoeffRing(fp.ff))
    r = W.sub(W.sub(x, embed(canonical, beta, fp)), W.wp(witness))
    return all(c.is_zero_within(window) for c in r)


def reduce_auto(x, fp, beta, window=None, max_radius=2048):
    """reduce_witt with the doubling retry on WindowTooSmall."""
    window = window or Window.square(64)
    while True:
        try:
            return reduce_witt(x, fp, beta, window), window
        except WindowTooSmall:
            if max(window.s_max, window.t_max) * 2 > max_radius:
                raise
            window = window.doubled()


def lift_canonical(canonical, beta, fp=None):
    """The canonical lift x~ = c*beta + sum c_ij S^-i T^-j over Z_q mod p^N."""
    fp = fp or canonical.fp
    zq = fp.zq
    items = []
    if canonical.c:
        items.append(((0, 0), zq.int_mul(canonical.c, fp.teichmuller(beta.alpha))))
    for (i, j), cij in canonical.terms.items():
        items.append(((-i, -j), tuple(c % zq.pe for c in cij)))
    return Series.from_terms(zq, items)


def hat_lift(x, fp):
    """Coefficientwise Teichmuller lift of a Witt vector of k-series."""
    out = []
    for coord in x:
        items = [(e, fp.teichmuller(c)) for e, c in coord.terms.items()]
        out.append(Series.from_terms(fp.zq, items))
    return tuple(out)
