"""Expression grammar for CLI inputs and deterministic printing of results.

Series expressions use integers, the residue-field generator ``a``, the
variables ``S`` and ``T``, and the operators ``+ - * ^`` with parentheses;
exponents are (possibly negative) integer literals, and negative powers are
admitted for monomial bases only.  Witt vectors are bracketed coordinate
lists ``[f0, f1, ...]``; symbols are products of ``{f, g}`` factors with
optional integer exponents.
"""

import re

from .errors import InputError
from .series import Series, expvec_key


class ParseError(InputError):
    """Malformed expression, with 1-based line/column position."""

    def __init__(self, message, line, col):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


_TOKEN_RE = re.compile(r"\d+|[aST]|[-+*^(){}\[\],]|\s+|.")


def tokenize(src):
    """Token list [(kind, text, line, col)]; kind in INT NAME OP."""
    out = []
    line, col = 1, 1
    for mo in _TOKEN_RE.finditer(src):
        text = mo.group()
        if text.isspace():
            for ch in text:
                if ch == "\n":
                    line, col = line + 1, 1
                else:
                    col += 1
            continue
        if text.isdigit():
            out.append(("INT", text, line, col))
        elif text in ("a", "S", "T"):
            out.append(("NAME", text, line, col))
        elif text in "-+*^(){}[],":
            out.append(("OP", text, line, col))
        else:
            raise ParseError(f"unexpected character {text!r}", line, col)
        col += len(text)
    out.append(("END", "", line, col))
    return out


class _Parser:
    __slots__ = ("toks", "pos", "ring")

    def __init__(self, src, ring):
        self.toks = tokenize(src)
        self.pos = 0
        self.ring = ring

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def accept(self, text):
        kind, t, _, _ = self.peek()
        if kind == "OP" and t == text:
            self.pos += 1
            return True
        return False

    def expect(self, text):
        kind, t, line, col = self.next()
        if kind != "OP" or t != text:
            raise ParseError(f"expected {text!r}, found {t or 'end of input'!r}", line, col)

    def fail(self, msg):
        _, t, line, col = self.peek()
        raise ParseError(msg + (f", found {t!r}" if t else ", found end of input"), line, col)

    def int_literal(self):
        neg = self.accept("-")
        kind, t, line, col = self.next()
        if kind != "INT":
            raise ParseError("expected an integer", line, col)
        return -int(t) if neg else int(t)

    # expr := term (('+'|'-') term)*
    def expr(self):
        v = self.term()
        while True:
            if self.accept("+"):
                v = v.add(self.term())
            elif self.accept("-"):
                v = v.sub(self.term())
            else:
                return v

    def term(self):
        v = self.unary()
        while self.accept("*"):
            v = v.mul(self.unary())
        return v

    def unary(self):
        if self.accept("-"):
            return self.unary().neg()
        return self.power()

    def power(self):
        base = self.atom()
        if not self.accept("^"):
            return base
        n = self.int_literal()
        if n >= 0:
            return base.pow(n)
        if len(base.terms) != 1:
            self.fail("negative powers need a monomial base")
        (e, c), = base.terms.items()
        try:
            cinv = self.ring.inv(c)
        except ZeroDivisionError:
            self.fail("monomial coefficient is not invertible")
        return Series.monomial(self.ring, self.ring.pow(cinv, -n), (e[0] * n, e[1] * n))

    def atom(self):
        kind, t, line, col = self.peek()
        if kind == "INT":
            self.next()
            return Series.const(self.ring, self.ring.from_int(int(t)))
        if kind == "NAME":
            self.next()
            if t == "a":
                return Series.const(self.ring, self.ring.gen())
            exp = (1, 0) if t == "S" else (0, 1)
            return Series.monomial(self.ring, self.ring.one(), exp)
        if kind == "OP" and t == "(":
            self.next()
            v = self.expr()
            self.expect(")")
            return v
        raise ParseError(f"expected a value, found {t or 'end of input'!r}", line, col)

    def end(self):
        kind, t, line, col = self.peek()
        if kind != "END":
            raise ParseError(f"trailing input {t!r}", line, col)


def parse_series(src, ring):
    """One series expression over `ring`."""
    p = _Parser(src, ring)
    v = p.expr()
    p.end()
    return v


def parse_witt(src, ring, m):
    """Witt vector literal [f0, ..., f_{k-1}], zero-padded to length m."""
    p = _Parser(src, ring)
    p.expect("[")
    coords = [p.expr()]
    while p.accept(","):
        coords.append(p.expr())
    p.expect("]")
    p.end()
    if len(coords) > m:
        raise InputError(f"Witt vector has {len(coords)} coordinates, length is {m}")
    coords += [Series.zero(ring)] * (m - len(coords))
    return tuple(coords)


def parse_symbol(src, ring):
    """Product of symbol factors {f, g}^n; returns [(f, g, n), ...]."""
    p = _Parser(src, ring)
    out = []
    while True:
        p.expect("{")
        f = p.expr()
        p.expect(",")
        g = p.expr()
        p.expect("}")
        n = p.int_literal() if p.accept("^") else 1
        out.append((f, g, n))
        if not p.accept("*"):
            break
    p.end()
    return out


# -- deterministic printing back into the grammar ---------------------------


def format_coeff(c):
    """A coefficient tuple as a (parenthesized) polynomial in `a`."""
    parts = []
    for k, v in enumerate(c):
        if v == 0:
            continue
        if k == 0:
            parts.append(str(v))
        else:
            head = "a" if k == 1 else f"a^{k}"
            parts.append(head if v == 1 else f"{v}*{head}")
    if not parts:
        return "0"
    body = " + ".join(parts)
    return f"({body})" if len(parts) > 1 else body


def format_series(f):
    """Terms in the two-dimensional order; re-parses to an equal series."""
    if not f.terms:
        return "0"
    parts = []
    for e in sorted(f.terms, key=expvec_key):
        c = f.terms[e]
        fac = [format_coeff(c)]
        if e[0]:
            fac.append(f"S^{e[0]}")
        if e[1]:
            fac.append(f"T^{e[1]}")
        parts.append("*".join(fac))
    return " + ".join(parts)


def format_witt(x):
    return "[" + ", ".join(format_series(c) for c in x) + "]"


def format_canonical_k2(y):
    """Symbol-grammar text; parse_symbol + renormalization round-trips."""
    parts = []
    if y.e:
        parts.append(f"{{S, T}}^{y.e}")
    for g in y.gens:
        unit = f"1 + {_gen_monomial(g)}"
        parts.append(f"{{{unit}, {g.kind}}}^{g.n}")
    return " * ".join(parts) if parts else "{S, S}^0"


def _gen_monomial(g):
    fac = [format_coeff(g.a)]
    if g.i:
        fac.append(f"S^{g.i}")
    if g.j:
        fac.append(f"T^{g.j}")
    return "*".join(fac)


def format_canonical_asw(xc):
    """c + sum c_ij * S^-i * T^-j in the series grammar over Z_q."""
    parts = []
    if xc.c:
        parts.append(str(xc.c))
    for (i, j) in sorted(xc.terms, key=expvec_key):
        fac = [format_coeff(xc.terms[(i, j)])]
        if i:
            fac.append(f"S^{-i}")
        if j:
            fac.append(f"T^{-j}")
        parts.append("*".join(fac))
    return " + ".join(parts) if parts else "0"
