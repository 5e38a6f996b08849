"""Arithmetic for the residue field k = GF(p^d) and its unramified lift.

The lift Z_q = W(k) is modeled as (Z/p^N)[x]/(modulus) with the modulus
lifted coefficientwise, not as Witt coordinates; Witt coordinates enter
only through Teichmuller-digit decompositions (``teich_digits``).
"""

from dataclasses import dataclass

from sympy import isprime
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_irreducible_p

from .errors import InputError

# Small irreducibles used by the CLI when no modulus is supplied.
# Coefficient lists are low-to-high degree, monic.
DEFAULT_MODULI = {
    (2, 1): (0, 1),
    (2, 2): (1, 1, 1),
    (2, 3): (1, 1, 0, 1),
    (3, 1): (0, 1),
    (3, 2): (1, 0, 1),
    (3, 3): (1, 2, 0, 1),
    (5, 1): (0, 1),
    (5, 2): (2, 0, 1),
    (5, 3): (1, 1, 0, 1),
}


class PolyRing:
    """(Z/p^e)[x]/(modulus) with monic degree-d modulus, elements as coeff tuples."""

    __slots__ = ("p", "e", "pe", "d", "modulus", "modred")

    def __init__(self, p, e, modulus):
        self.p = p
        self.e = e
        self.pe = p**e
        self.d = len(modulus) - 1
        self.modulus = tuple(c % self.pe for c in modulus[:-1]) + (1,)
        self.modred = tuple(c % self.pe for c in modulus[:-1])

    def zero(self):
        return (0,) * self.d

    def one(self):
        return (1 % self.pe,) + (0,) * (self.d - 1)

    def from_int(self, n):
        return (n % self.pe,) + (0,) * (self.d - 1)

    def gen(self):
        if self.d == 1:
            # k = F_p: the generator is the class of x, i.e. -modred[0]
            return ((-self.modred[0]) % self.pe,)
        return (0, 1) + (0,) * (self.d - 2)

    def add(self, a, b):
        pe = self.pe
        return tuple((x + y) % pe for x, y in zip(a, b))

    def sub(self, a, b):
        pe = self.pe
        return tuple((x - y) % pe for x, y in zip(a, b))

    def neg(self, a):
        pe = self.pe
        return tuple((-x) % pe for x in a)

    def int_mul(self, n, a):
        pe = self.pe
        n %= pe
        return tuple((n * x) % pe for x in a)

    def mul(self, a, b):
        d, pe = self.d, self.pe
        if d == 1:
            return ((a[0] * b[0]) % pe,)
        full = [0] * (2 * d - 1)
        for s in range(d):
            if a[s]:
                for t in range(d):
                    full[s + t] = (full[s + t] + a[s] * b[t]) % pe
        for k in range(2 * d - 2, d - 1, -1):
            top = full[k]
            if top:
                for t in range(d):
                    full[k - d + t] = (full[k - d + t] - top * self.modred[t]) % pe
        return tuple(full[:d])

    def pow(self, a, n):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = self.one()
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def is_unit(self, a):
        # unit iff nonzero mod p
        return any(x % self.p for x in a)

    def inv(self, a):
        if not self.is_unit(a):
            raise ZeroDivisionError("not a unit in the coefficient ring")
        # field inverse mod p, then Hensel lifting to p^e
        ab = tuple(x % self.p for x in a)
        field = self if self.e == 1 else PolyRing(self.p, 1, self.modulus)
        x = field.pow(ab, self.p**self.d - 2)
        if self.e == 1:
            return x
        x = tuple(c % self.pe for c in x)
        prec = 1
        while prec < self.e:
            # x <- x (2 - a x)
            ax = self.mul(a, x)
            two = self.sub(self.from_int(2), ax)
            x = self.mul(x, two)
            prec *= 2
        return x

    def reduce_mod(self, a, e2):
        """Coefficientwise reduction into precision p^e2 (e2 <= e)."""
        pe2 = self.p**e2
        return tuple(x % pe2 for x in a)


@dataclass(frozen=True)
class Beta:
    """The fixed trace-unit constant: alpha in k with nonzero trace, beta = [alpha]."""

    alpha: tuple
    beta: tuple


class FieldParams:
    """Residue field k = GF(p^d) together with Z_q = W(k) mod p^N."""

    def __init__(self, p, d, modulus=None, zq_prec=4):
        if not isprime(p):
            raise InputError(f"p = {p} is not prime")
        if modulus is None:
            try:
                modulus = DEFAULT_MODULI[(p, d)]
            except KeyError:
                raise InputError(f"no default modulus for p={p}, d={d}") from None
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise InputError("modulus must be monic of degree d")
        if d > 1 or modulus != (0, 1):
            # gf_* work with descending ZZ coefficient lists
            desc = [ZZ(c) for c in reversed(modulus)]
            if not gf_irreducible_p(desc, p, ZZ):
                raise InputError("modulus is not irreducible over F_p")
        self.p = p
        self.d = d
        self.q = p**d
        self.zq_prec = zq_prec
        self.modulus = modulus
        self.ff = PolyRing(p, 1, modulus)
        self.zq = PolyRing(p, zq_prec, modulus)
        self._sigma_gen = None  # cached image of the generator under Frobenius

    # -- residue field ------------------------------------------------------

    def ff_frobenius(self, a):
        return self.ff.pow(a, self.p)

    def pth_root_ff(self, a):
        """The unique r with r^p = a (k is perfect)."""
        return self.ff.pow(a, self.p ** (self.d - 1)) if self.d > 1 else a

    def ff_trace(self, a):
        """Sum of the d Frobenius conjugates; lands in the prime field."""
        s = a
        w = a
        for _ in range(self.d - 1):
            w = self.ff_frobenius(w)
            s = self.ff.add(s, w)
        assert all(c == 0 for c in s[1:]), "trace left the prime field"
        return s

    def all_ff(self):
        """All field elements, in deterministic base-p coordinate order."""
        p, d = self.p, self.d
        for n in range(self.q):
            coeffs = []
            m = n
            for _ in range(d):
                coeffs.append(m % p)
                m //= p
            yield tuple(coeffs)

    def artin_schreier_solve(self, u):
        """Some w with w^p - w = u, or None if u is not in the image."""
        ff = self.ff
        for w in self.all_ff():
            if ff.sub(ff.pow(w, self.p), w) == u:
                return w
        return None

    # -- unramified lift ----------------------------------------------------

    def teichmuller(self, a):
        """The multiplicative lift of a in Z_q: the root of t^(p^d) = t over a."""
        t = tuple(x % self.zq.pe for x in a)
        for _ in range(self.zq_prec + 1):
            t = self.zq.pow(t, self.q)
        return t

    def _frobenius_gen(self):
        if self._sigma_gen is not None:
            return self._sigma_gen
        zq = self.zq
        g = zq.gen()
        if self.d == 1:
            self._sigma_gen = g
            return g
        # Newton-lift the root of the modulus that reduces to gen^p mod p
        mod = self.zq.modulus

        def f_eval(t):
            acc = zq.from_int(mod[-1])
            for c in reversed(mod[:-1]):
                acc = zq.add(zq.mul(acc, t), zq.from_int(c))
            return acc

        def fprime_eval(t):
            acc = zq.zero()
            for k in range(self.d, 0, -1):
                acc = zq.add(zq.mul(acc, t), zq.int_mul(k, zq.from_int(mod[k])))
            return acc

        t = zq.pow(g, self.p)
        for _ in range(self.zq_prec + 2):
            ft = f_eval(t)
            if zq.is_zero(ft):
                break
            t = zq.sub(t, zq.mul(ft, zq.inv(fprime_eval(t))))
        assert zq.is_zero(f_eval(t)), "Frobenius lift did not converge"
        self._sigma_gen = t
        return t

    def frobenius_zq(self, z):
        """The ring automorphism lifting x -> x^p; evaluates z at sigma(gen)."""
        if self.d == 1:
            return z
        zq = self.zq
        h = self._frobenius_gen()
        acc = zq.zero()
        for c in reversed(z):
            acc = zq.add(zq.mul(acc, h), zq.from_int(c))
        return acc

    def trace_zq(self, z):
        """Trace down to Z/p^N, returned as an integer."""
        s = z
        w = z
        for _ in range(self.d - 1):
            w = self.frobenius_zq(w)
            s = self.zq.add(s, w)
        assert all(c == 0 for c in s[1:]), "trace left W(F_p)"
        return s[0]

    def teich_digits(self, z, m):
        """Digits (b_0, ..., b_{m-1}) in k with z = sum p^i [b_i] mod p^m."""
        if m > self.zq_prec:
            raise InputError("requested more digits than the working precision")
        cur = [c % self.zq.pe for c in z]
        digits = []
        for i in range(m):
            b = tuple(c % self.p for c in cur)
            digits.append(b)
            t = self.teichmuller(b)
            cur = [(c - tc) % (self.p ** (self.zq_prec - i)) for c, tc in zip(cur, t)]
            assert all(c % self.p == 0 for c in cur)
            cur = [c // self.p for c in cur]
        return tuple(digits)

    def digits_to_zq(self, digits):
        """Inverse of teich_digits: sum p^i [b_i] in Z_q."""
        zq = self.zq
        acc = zq.zero()
        for i, b in enumerate(digits):
            acc = zq.add(acc, zq.int_mul(self.p**i, self.teichmuller(b)))
        return acc

    def make_beta(self, alpha=None):
        """Fix alpha with nonzero absolute trace and its Teichmuller lift."""
        if alpha is None:
            for a in self.all_ff():
                if self.ff_trace(a)[0] % self.p:
                    alpha = a
                    break
        else:
            alpha = tuple(int(c) % self.p for c in alpha)
            if self.ff_trace(alpha)[0] % self.p == 0:
                raise InputError("alpha has zero trace")
        return Beta(alpha=alpha, beta=self.teichmuller(alpha))
