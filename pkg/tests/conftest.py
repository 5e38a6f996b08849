"""Shared fixtures and random-object generators for the test suite."""

from math import gcd

from parshin.fields import FieldParams
from parshin.milnor import CanonicalK2, K2Generator, S_KIND, T_KIND
from parshin.series import Series

# every configuration exercised by the cross-method suites
CONFIGS = [
    (2, 1, 1),
    (2, 1, 2),
    (2, 1, 3),
    (2, 2, 2),
    (3, 1, 1),
    (3, 1, 2),
    (5, 1, 1),
]


def field(p, d, m):
    fp = FieldParams(p, d, zq_prec=max(m + 2, 4))
    return fp, fp.make_beta()


def nonzero_elements(fp):
    return [t for t in fp.all_ff() if any(t)]


def random_witt(rng, fp, m, nterms=3, emax=12):
    """Random finite-support Witt vector with exponents in [-emax, emax]^2."""
    ff = fp.ff
    pool = nonzero_elements(fp)
    coords = []
    for _ in range(m):
        items = {}
        for _ in range(rng.randint(0, nterms)):
            e = (rng.randint(-emax, emax), rng.randint(-emax, emax))
            items[e] = rng.choice(pool)
        coords.append(Series.from_terms(ff, list(items.items())))
    return tuple(coords)


def random_gen_key(rng, p, emax, neg_j=True):
    """A valid generator exponent pair: the unit cone with p-coprime gcd."""
    while True:
        i = rng.randint(0, emax)
        jlo = (-emax if neg_j else 0) if i >= 1 else 1
        j = rng.randint(jlo, emax)
        if (i, j) == (0, 0) or gcd(abs(i), abs(j)) % p == 0:
            continue
        return i, j


def random_k2(rng, fp, m, ngens=2, emax=6, neg_j=True, distinct=False, with_e=True):
    """Random canonical K2 class with valid generator shapes."""
    p = fp.p
    pool = nonzero_elements(fp)
    gens = []
    used = set()
    for _ in range(ngens):
        for _ in range(200):
            i, j = random_gen_key(rng, p, emax, neg_j)
            if not distinct or (i, j) not in used:
                break
        used.add((i, j))
        kind = S_KIND if j % p else T_KIND
        gens.append(K2Generator(kind, i, j, rng.choice(pool), rng.randint(1, p**m - 1)))
    e = rng.randint(0, p**m - 1) if with_e else 0
    return CanonicalK2(p, m, e, gens)
