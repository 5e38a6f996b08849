"""Windowed Laurent-series arithmetic and certified inexact tracking."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from parshin.errors import NotAUnit, WindowTooSmall
from parshin.fields import PolyRing
from parshin.series import Series, TwoForm, Window, dlog_unit, inv_unit, residue

R2 = PolyRing(2, 2, (1, 1, 1))
R3 = PolyRing(3, 1, (0, 1))
R5 = PolyRing(5, 3, (2, 0, 1))
RINGS = [R2, R3, R5]


def _series(ring, seed, emax=6, nmax=5):
    rng = random.Random(seed)
    items = {}
    for _ in range(rng.randint(0, nmax)):
        e = (rng.randint(-emax, emax), rng.randint(-emax, emax))
        items[e] = tuple(rng.randrange(ring.pe) for _ in range(ring.d))
    return Series.from_terms(ring, list(items.items()))


def _brute_mul(f, g):
    ring = f.ring
    out = {}
    for ea, ca in f.terms.items():
        for eb, cb in g.terms.items():
            key = (ea[0] + eb[0], ea[1] + eb[1])
            acc = out.get(key, ring.zero())
            out[key] = ring.add(acc, ring.mul(ca, cb))
    return {k: v for k, v in out.items() if not ring.is_zero(v)}


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2), st.integers(), st.integers(), st.integers())
def test_ring_laws_and_mul_correctness(ri, sa, sb, sc):
    ring = RINGS[ri]
    f, g, h = _series(ring, sa), _series(ring, sb), _series(ring, sc)
    assert f.mul(g).terms == _brute_mul(f, g)
    assert f.mul(g).sub(g.mul(f)).is_zero()
    assert f.mul(g.add(h)).sub(f.mul(g).add(f.mul(h))).is_zero()
    assert f.add(g).sub(g).sub(f).is_zero()


def test_pow_and_shift():
    f = Series.from_terms(R3, [((0, 0), (1,)), ((1, 2), (2,))])
    assert f.pow(3).terms == f.mul(f).mul(f).terms
    assert f.pow(0).terms == {(0, 0): (1,)}
    assert f.shift(2, -1).terms == {(2, -1): (1,), (3, 1): (2,)}
    assert f.int_mul(3).is_zero()


def test_valuation_and_window():
    f = Series.from_terms(R3, [((2, -1), (1,)), ((-5, 0), (2,)), ((0, 3), (1,))])
    assert f.valuation() == (2, -1)  # T-exponent first, then S
    w = Window(-1, 1, -1, 1)
    assert f.terms_within(w) == {}
    assert not f.is_zero_within(Window.square(5))


def test_inv_unit_certified():
    w = Window(-4, 8, -4, 8)
    for ring in (R2, R3):
        u = Series.from_terms(
            ring, [((0, 0), ring.one()), ((1, 0), ring.one()), ((0, 1), ring.one())]
        )
        v = inv_unit(u, w)
        prod = u.mul(v)
        one = Series.const(ring, ring.one())
        assert prod.sub(one).is_zero_within(w)
    with pytest.raises(NotAUnit):
        inv_unit(Series.monomial(R3, (3,), (0, 0)), w)  # 3 = 0 in F_3


def test_inexact_residue_guard():
    w = Window(-2, 3, -2, 3)
    u = Series.from_terms(R3, [((0, 0), (1,)), ((1, 1), (1,))])
    v = inv_unit(u, w)
    big = Series.monomial(R3, (1,), (-10, -10))
    with pytest.raises(WindowTooSmall):
        residue(TwoForm(big.mul(v)))


def test_residue_and_dlog():
    f = Series.from_terms(R3, [((-1, -1), (2,)), ((0, 0), (1,)), ((3, -1), (1,))])
    assert residue(TwoForm(f)) == (2,)
    w = Window(-6, 6, -6, 6)
    u = Series.from_terms(R3, [((0, 0), (1,)), ((2, 1), (1,))])
    om = dlog_unit(u, w)
    # d(u)/u has S-part 2*S^1*T^1*(1+S^2 T)^-1: check the leading terms
    assert om.uS.coeff((1, 1)) == (2,)
    assert om.uS.coeff((3, 2)) == (1,)


def test_derivatives():
    f = Series.from_terms(R5, [((3, 2), (1, 0)), ((0, 1), (0, 2))])
    assert f.d_dS().terms == {(2, 2): (3, 0)}
    assert f.d_dT().terms == {(3, 1): (2, 0), (0, 0): (0, 2)}
