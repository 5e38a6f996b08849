"""Upper ramification data for the symbol: levels ell(r, m), the window
profile of the r-th ramification subgroup, membership of a K2 class in the
r-th unit filtration, and the duality map phi sending a class to its
pairing column.

The two-dimensional order throughout compares the T-entry first:
(a1, a2) < (b1, b2) iff a2 < b2, or a2 = b2 and a1 < b1.
"""

from math import gcd, inf

from .errors import BadIndex
from .fields import FieldParams
from .milnor import S_KIND
from .series import expvec_key

INF_LEVEL = inf


def _less(a, b):
    return expvec_key(a) < expvec_key(b)


class RamVector:
    """A ramification index r = (r1, r2), componentwise >= 0."""

    __slots__ = ("r1", "r2")

    def __init__(self, r1, r2):
        if r1 < 0 or r2 < 0:
            raise BadIndex("ramification vector entries must be >= 0")
        self.r1 = r1
        self.r2 = r2

    def as_tuple(self):
        return (self.r1, self.r2)

    def __repr__(self):
        return f"RamVector({self.r1}, {self.r2})"


def ell(r, mvec, p):
    """The least level l with (p^l*m1, p^l*m2) not < r.

    mvec = (m1, m2) with m1 >= 0, p not dividing gcd, (m1, m2) != (0, 0);
    m2 may be negative (indices dual to mixed-sign generators), in which
    case every level stays below any r with r2 >= 1 and the result is
    infinite.  Scaling by p moves the vector strictly up the order when
    m2 >= 0, so the first failing level is final.
    """
    if isinstance(r, RamVector):
        r = r.as_tuple()
    m1, m2 = mvec
    if m1 < 0:
        raise BadIndex("first index entry must be >= 0")
    if (m1, m2) == (0, 0):
        raise BadIndex("index (0, 0) is excluded")
    if gcd(abs(m1), abs(m2)) % p == 0:
        raise BadIndex("index with p | gcd is excluded")
    if m2 < 0:
        return 0 if not _less((m1, m2), r) else INF_LEVEL
    if m2 == 0 and r[1] >= 1:
        # (p^l*m1, 0) stays below (r1, r2) for every l when r2 >= 1
        return INF_LEVEL
    level = 0
    cur = (m1, m2)
    while _less(cur, r):
        level += 1
        cur = (cur[0] * p, cur[1] * p)
    return level


def ram_profile(r, m, p, bound=8):
    """Exponent profile of the r-th ramification subgroup at level m.

    Returns {(m1, m2): min(ell, m)} over 0 <= m1, m2 <= bound with
    p coprime to gcd, in the two-dimensional order.
    """
    out = {}
    idx = [
        (m1, m2)
        for m1 in range(bound + 1)
        for m2 in range(bound + 1)
        if (m1, m2) != (0, 0) and gcd(m1, m2) % p != 0
    ]
    idx.sort(key=expvec_key)
    for mvec in idx:
        lv = ell(r, mvec, p)
        out[mvec] = m if lv is INF_LEVEL else min(lv, m)
    return out


def u_membership(y, r):
    """Whether the class lies in the r-th unit filtration.

    The base-p digit k of a generator exponent must vanish whenever
    (p^k*i, p^k*j) < r.  Correct for classes with at most one generator
    per exponent pair (the unique-decomposition shape); the {S,T} part
    is not in the V-filtration and is ignored.
    """
    if isinstance(r, RamVector):
        r = r.as_tuple()
    p = y.p
    for g in y.gens:
        n = g.n
        cur = (g.i, g.j)
        for _ in range(y.m):
            if n % p and _less(cur, r):
                return False
            n //= p
            cur = (cur[0] * p, cur[1] * p)
    return True


def _ratio(mm, nn, i, j):
    """The integer r >= 1 with (mm, nn) = r*(i, j), or None."""
    if i == 0:
        if mm != 0 or j == 0 or nn % j:
            return None
        r = nn // j
    else:
        if mm % i:
            return None
        r = mm // i
        if nn != r * j:
            return None
    return r if r >= 1 else None


def phi_map(y, fp, bound=8):
    """The pairing column of a K2 class: {(m1, m2): Zq mod p^m}.

    Component (m1, m2) sums, over generators with (m1, m2) = r*(i, j),
    r >= 1, n*j*[-a]^r for S-kind and -n*i*[-a]^r for T-kind — the same
    values the closed-form pairing multiplies against the x-coefficient at
    (m1, m2).  S-kind generators feed indices with p coprime to m2; T-kind
    those with p | m2 and p coprime to m1.  Generators with j < 0 never
    match an index in the nonnegative quadrant and contribute nothing.
    """
    m = y.m
    p = y.p
    fp_m = fp if fp.zq_prec == m else FieldParams(p, fp.d, fp.modulus, zq_prec=m)
    zq_m = fp_m.zq
    out = {}
    idx = [
        (m1, m2)
        for m1 in range(bound + 1)
        for m2 in range(bound + 1)
        if (m1, m2) != (0, 0) and gcd(m1, m2) % p != 0
    ]
    idx.sort(key=expvec_key)
    for mvec in idx:
        acc = zq_m.zero()
        for g in y.gens:
            r = _ratio(mvec[0], mvec[1], g.i, g.j)
            if r is None:
                continue
            t = zq_m.pow(fp_m.teichmuller(fp.ff.neg(g.a)), r)
            scale = g.n * g.j if g.kind == S_KIND else -g.n * g.i
            acc = zq_m.add(acc, zq_m.int_mul(scale, t))
        out[mvec] = acc
    return out
