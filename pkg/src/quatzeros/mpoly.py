"""Sparse multivariate polynomials over exact rationals.

Internal engine for the function-field scalars: exponent-map representation
with graded-lex ordering, exact single-divisor division, and a primitive-PRS
gcd.  Coefficients are `fractions.Fraction`; exponent keys are tuples of
non-negative ints of fixed length `nvars`.
"""

from __future__ import annotations

import math
from fractions import Fraction

Exps = tuple


def _gl_key(exps):
    # graded lex: total degree first, then lexicographic on the exponent tuple
    return (sum(exps), exps)


class MPoly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        if terms:
            for exps, c in terms.items():
                if c:
                    clean[exps] = c if isinstance(c, Fraction) else Fraction(c)
        self.terms = clean

    @classmethod
    def const(cls, nvars, c):
        c = Fraction(c)
        return cls(nvars, {(0,) * nvars: c} if c else {})

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, {})

    @classmethod
    def one(cls, nvars):
        return cls.const(nvars, 1)

    @classmethod
    def variable(cls, nvars, idx):
        exps = tuple(1 if m == idx else 0 for m in range(nvars))
        return cls(nvars, {exps: Fraction(1)})

    def is_zero(self):
        return not self.terms

    def is_const(self):
        return all(not any(e) for e in self.terms)

    def const_value(self):
        if not self.terms:
            return Fraction(0)
        (exps, c), = self.terms.items()
        if any(exps):
            raise ValueError("not a constant polynomial")
        return c

    def total_deg(self):
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def deg_in(self, idx):
        if not self.terms:
            return -1
        return max(e[idx] for e in self.terms)

    def vars_present(self):
        out = set()
        for e in self.terms:
            for m, k in enumerate(e):
                if k:
                    out.add(m)
        return out

    def leading(self):
        """Leading (exps, coeff) in graded-lex order."""
        exps = max(self.terms, key=_gl_key)
        return exps, self.terms[exps]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _coerce(self, other):
        if isinstance(other, MPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable-count mismatch")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        out = MPoly(self.nvars)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = MPoly(self.nvars)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = terms.get(e, 0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    del terms[e]
        out = MPoly(self.nvars)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        c = Fraction(c)
        out = MPoly(self.nvars)
        if c:
            out.terms = {e: v * c for e, v in self.terms.items()}
        return out

    def content(self):
        """Signed rational content: content() * primitive part == self."""
        if not self.terms:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.terms.values():
            num = math.gcd(num, c.numerator)
            den = math.lcm(den, c.denominator)
        cont = Fraction(num, den)
        _, lc = self.leading()
        return cont if lc > 0 else -cont

    def primitive(self):
        """(content, primitive) with integer coprime coefficients and a
        positive graded-lex leading coefficient."""
        if not self.terms:
            return Fraction(0), self
        cont = self.content()
        return cont, self.scale(1 / cont)

    def coeff_in(self, idx, k):
        """Coefficient of (variable idx)**k, as a polynomial with that
        variable's exponent zeroed."""
        terms = {}
        for e, c in self.terms.items():
            if e[idx] == k:
                terms[e[:idx] + (0,) + e[idx + 1:]] = c
        out = MPoly(self.nvars)
        out.terms = terms
        return out

    def by_var(self, idx):
        """Split into {k: coefficient poly of (variable idx)**k}."""
        parts = {}
        for e, c in self.terms.items():
            k = e[idx]
            stripped = e[:idx] + (0,) + e[idx + 1:]
            part = parts.setdefault(k, {})
            part[stripped] = c
        out = {}
        for k, terms in parts.items():
            p = MPoly(self.nvars)
            p.terms = terms
            out[k] = p
        return out

    def shift_var(self, idx, k):
        """Multiply by (variable idx)**k; k may be negative if every term allows."""
        terms = {}
        for e, c in self.terms.items():
            if e[idx] + k < 0:
                raise ValueError("negative exponent after shift")
            terms[e[:idx] + (e[idx] + k,) + e[idx + 1:]] = c
        out = MPoly(self.nvars)
        out.terms = terms
        return out

    def div_exact(self, other):
        """Exact quotient self/other, or None when the division is not exact."""
        if not isinstance(other, MPoly) or other.nvars != self.nvars:
            raise ValueError("divisor must be an MPoly over the same variables")
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return MPoly.zero(self.nvars)
        lt_e, lt_c = other.leading()
        cur = self
        q_terms = {}
        while cur.terms:
            ce, cc = cur.leading()
            qe = tuple(a - b for a, b in zip(ce, lt_e))
            if any(x < 0 for x in qe):
                return None
            qc = cc / lt_c
            q_terms[qe] = q_terms.get(qe, 0) + qc
            mono = MPoly(self.nvars)
            mono.terms = {qe: qc}
            cur = cur - mono * other
        return MPoly(self.nvars, q_terms)

    def subst_zero(self, idx):
        """Set variable idx to 0."""
        terms = {e: c for e, c in self.terms.items() if e[idx] == 0}
        out = MPoly(self.nvars)
        out.terms = dict(terms)
        return out

    def text(self, names):
        """Render with the given variable names, parser-compatible."""
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, key=_gl_key, reverse=True):
            c = self.terms[e]
            factors = []
            for m, k in enumerate(e):
                if k == 1:
                    factors.append(names[m])
                elif k > 1:
                    factors.append(f"{names[m]}^{k}")
            mag = abs(c)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            pieces.append(("- " if c < 0 else "+ ") + body)
        first = pieces[0]
        head = ("-" + first[2:]) if first.startswith("- ") else first[2:]
        return " ".join([head] + pieces[1:])

    def __repr__(self):
        names = [f"v{m}" for m in range(self.nvars)]
        return f"MPoly({self.text(names)})"


def _prem(a, b, idx):
    """Pseudo-remainder of a by b in the variable idx, reduced by its
    rational content after every step (callers only use it up to content, and
    unreduced PRS coefficients grow exponentially)."""
    db = b.deg_in(idx)
    lcb = b.coeff_in(idx, db)
    cur = a
    while not cur.is_zero():
        da = cur.deg_in(idx)
        if da < db:
            break
        lta = cur.coeff_in(idx, da)
        cur = lcb * cur - lta.shift_var(idx, da - db) * b
        if cur.terms:
            cur = cur.primitive()[1]
    return cur


def _content_in(p, idx):
    """Content of p viewed as a polynomial in variable idx (gcd of the
    coefficient polynomials)."""
    parts = list(p.by_var(idx).values())
    g = parts[0]
    for q in parts[1:]:
        g = gcd(g, q)
        if g.is_const():
            break
    return g


def gcd(a, b):
    """Polynomial gcd, normalized positive-primitive; gcd(0,0) = 0."""
    if a.is_zero() and b.is_zero():
        return MPoly.zero(a.nvars)
    if a.is_zero():
        return b.primitive()[1]
    if b.is_zero():
        return a.primitive()[1]
    a = a.primitive()[1]
    b = b.primitive()[1]
    avars = a.vars_present()
    bvars = b.vars_present()
    if not avars or not bvars:
        return MPoly.one(a.nvars)
    common = avars & bvars
    if not common:
        # no shared variable: gcd divides both contents, and both are primitive
        return MPoly.one(a.nvars)
    idx = max(common)
    ca = _content_in(a, idx)
    cb = _content_in(b, idx)
    c = gcd(ca, cb)
    pa = a.div_exact(ca)
    pb = b.div_exact(cb)
    if pa.deg_in(idx) < pb.deg_in(idx):
        pa, pb = pb, pa
    while True:
        r = _prem(pa, pb, idx)
        if r.is_zero():
            g = pb
            break
        if r.deg_in(idx) == 0:
            g = MPoly.one(a.nvars)
            break
        pa, pb = pb, r.div_exact(_content_in(r, idx))
    if not g.is_const():
        g = g.div_exact(_content_in(g, idx))
    return (c * g).primitive()[1]
