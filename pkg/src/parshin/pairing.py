"""The symbol [x, y) in Z/p^m, computed three independent ways.

pair_theorem1: trace of the residue of x~ * dlog(y~), with x~ the
canonical lift and y~ the Teichmuller lift of a canonical K2 product.

pair_parshin: ghost components of the coefficientwise Teichmuller hat
lift, residues against dlog(y~), ghost inversion, digit reassembly, trace.

pair_closed_form: the finite ratio-match sum over x-terms and generators.

All three take the residue pipeline as sign-normative.  schmid_one_dim is
the one-variable degeneration used as an independent oracle at m = 1.
"""

from .canonical import hat_lift, lift_canonical
from .errors import DivisibilityError
from .fields import FieldParams
from .milnor import S_KIND, lift_and_dlog
from .series import Series, TwoForm, Window, inv_unit, residue
from .witt import ScalarRing, SeriesCoeffRing, WittRing


def _dlog_window_for(supports, base=4):
    """A window wide enough that products against series with the given
    supports keep the (-1,-1) residue cell inside the guarantee."""
    s_max = base
    t_max = base
    for terms in supports:
        for e in terms:
            s_max = max(s_max, -e[0] + 1)
            t_max = max(t_max, -e[1] + 1)
    return Window(-s_max, s_max, -t_max, t_max)


def pair_theorem1(xc, y, fp, beta):
    """Tr(Res(x~ * dlog(y~))) mod p^m."""
    m = xc.m
    xt = lift_canonical(xc, beta, fp)
    window = _dlog_window_for([xt.terms])
    omega = lift_and_dlog(y, fp, window)
    val = fp.trace_zq(residue(TwoForm(xt.mul(omega.f))))
    return val % fp.p**m


def pair_parshin(x, y, fp, beta=None):
    """The ghost-component formula, with the automatic precision retry."""
    m = len(x)
    p = fp.p
    n_prec = m + 1
    last = None
    while n_prec <= 2 * m + 2:
        fpn = FieldParams(p, fp.d, fp.modulus, zq_prec=n_prec)
        try:
            return _pair_parshin_at(x, y, fpn, m)
        except DivisibilityError as exc:
            last = exc
            n_prec += 2
    raise last


def _pair_parshin_at(x, y, fp, m):
    p = fp.p
    xh = hat_lift(x, fp)
    wser = WittRing(p, m, SeriesCoeffRing(fp.zq))
    ghost = wser.ghost(xh)
    window = _dlog_window_for([g.terms for g in ghost])
    omega = lift_and_dlog(y, fp, window)
    res = tuple(residue(TwoForm(g.mul(omega.f))) for g in ghost)
    wz = WittRing(p, m, ScalarRing(fp.zq))
    coords = wz.ghost_inverse(res)
    # Witt coordinates mod p are residue-field elements; coordinate h is
    # the p^h power of the h-th Teichmuller digit
    digits = []
    for h, c in enumerate(coords):
        a = tuple(v % p for v in c)
        for _ in range(h):
            a = fp.pth_root_ff(a)
        digits.append(a)
    z = fp.digits_to_zq(digits)
    return fp.trace_zq(z) % p**m


def _ratio_match(mm, nn, i, j):
    """The integer r with (mm, nn) = r*(i, j), or None."""
    if i == 0:
        if mm != 0 or j == 0 or nn % j:
            return None
        return nn // j
    if mm % i:
        return None
    r = mm // i
    if nn != r * j:
        return None
    return r


def pair_closed_form(xc, y, fp, beta):
    """Sum over x-terms and generators whose exponents are proportional.

    A generator whose 1-unit monomial has positive two-dimensional
    valuation (j > 0, or j = 0 with i > 0) matches ratios r >= 1; a
    negative-valuation generator (j < 0) expands through the inverse of
    its leading monomial, so it matches r <= 0 with the opposite sign —
    including r = 0 against the constant c*beta part.  The {S,T} factor
    pairs only with the constant part.
    """
    m = xc.m
    p = fp.p
    pm = p**m
    zq = fp.zq
    val = (y.e * xc.c * fp.trace_zq(beta.beta)) % pm
    items = [((mm, nn), tuple(v % zq.pe for v in c)) for (mm, nn), c in xc.terms.items()]
    if xc.c:
        items.append(((0, 0), zq.int_mul(xc.c, fp.teichmuller(beta.alpha))))
    for (mm, nn), cz in items:
        for g in y.gens:
            r = _ratio_match(mm, nn, g.i, g.j)
            if r is None:
                continue
            if g.j < 0:
                if r > 0:
                    continue
                sgn = -1
            else:
                if r < 1:
                    continue
                sgn = 1
            t = zq.pow(fp.teichmuller(fp.ff.neg(g.a)), r)
            scale = g.j if g.kind == S_KIND else -g.i
            term = zq.int_mul(g.n * scale * sgn, zq.mul(cz, t))
            val = (val + fp.trace_zq(term)) % pm
    return val


def schmid_one_dim(x0, u, fp, var="S"):
    """The one-variable symbol Tr(Res_1(x * du/u)) at m = 1.

    x0 and u are series supported on the single variable `var`; Res_1
    takes the coefficient of degree -1 in that variable.
    """
    axis = 0 if var == "S" else 1
    for e in list(x0.terms) + list(u.terms):
        assert e[1 - axis] == 0, "input is not one-variable"
    window = _dlog_window_for([x0.terms], base=8)
    uinv = inv_unit(u, window)
    du = u.d_dS() if axis == 0 else u.d_dT()
    f = x0.mul(du.mul(uinv))
    target = (-1, 0) if axis == 0 else (0, -1)
    if (f.s_hi, f.t_hi)[axis] < -1:
        from .errors import WindowTooSmall

        raise WindowTooSmall("one-variable residue outside the guarantee")
    return fp.ff_trace(f.coeff(target))[0] % fp.p
