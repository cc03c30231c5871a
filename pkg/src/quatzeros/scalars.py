"""Exact scalar fields: rationals, rational function fields, and a binary64
adapter for approximate fallback.

Every value is immutable and every operation is pure; elements may be shared
freely between workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .mpoly import MPoly, gcd as mpoly_gcd

Rat = Fraction


class ZeroElement(ZeroDivisionError):
    pass


class PoleAtPi(ArithmeticError):
    pass


def rat_sqrt(x):
    """Exact square root of a Fraction if it is a perfect square, else None."""
    x = Fraction(x)
    if x < 0:
        return None
    n = math.isqrt(x.numerator)
    d = math.isqrt(x.denominator)
    if n * n == x.numerator and d * d == x.denominator:
        return Fraction(n, d)
    return None


def rat_content(values):
    """Positive content of a list of Fractions; 0 for an all-zero list."""
    num = 0
    den = 1
    for v in values:
        v = Fraction(v)
        num = math.gcd(num, v.numerator)
        den = math.lcm(den, v.denominator)
    return Fraction(num, den) if num else Fraction(0)


class RatField:
    """The exact rational field."""

    name = "rat"
    is_exact = True

    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def parse_scalar(self, text):
        return Fraction(text)

    def to_str(self, x):
        return str(x)

    def sqrt(self, x):
        return rat_sqrt(x)

    def __repr__(self):
        return "RatField()"


class F64:
    """Binary64 scalar with tolerance-based comparison (1e-9)."""

    TOL = 1e-9
    __slots__ = ("v",)

    def __init__(self, v):
        self.v = float(v)

    def _val(self, other):
        if isinstance(other, F64):
            return other.v
        if isinstance(other, (int, float, Fraction)):
            return float(other)
        return None

    def __add__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else F64(self.v + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else F64(self.v - o)

    def __rsub__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else F64(o - self.v)

    def __mul__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else F64(self.v * o)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        if abs(o) <= self.TOL:
            raise ZeroDivisionError("division by (approximately) zero")
        return F64(self.v / o)

    def __rtruediv__(self, other):
        o = self._val(other)
        if o is None:
            return NotImplemented
        if abs(self.v) <= self.TOL:
            raise ZeroDivisionError("division by (approximately) zero")
        return F64(o / self.v)

    def __neg__(self):
        return F64(-self.v)

    def __abs__(self):
        return F64(abs(self.v))

    def __eq__(self, other):
        o = self._val(other)
        return NotImplemented if o is None else abs(self.v - o) <= self.TOL

    def __lt__(self, other):
        return self.v < self._val(other)

    def __le__(self, other):
        return self.v <= self._val(other)

    def __gt__(self, other):
        return self.v > self._val(other)

    def __ge__(self, other):
        return self.v >= self._val(other)

    def __bool__(self):
        return abs(self.v) > self.TOL

    def __float__(self):
        return self.v

    def __repr__(self):
        return f"F64({self.v!r})"

    def __str__(self):
        return repr(self.v)


class F64Field:
    name = "f64"
    is_exact = False

    zero = F64(0.0)
    one = F64(1.0)

    def coerce(self, x):
        if isinstance(x, F64):
            return x
        if isinstance(x, (int, float, Fraction)):
            return F64(x)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def parse_scalar(self, text):
        return F64(float(Fraction(text)) if "/" in text else float(text))

    def to_str(self, x):
        return repr(float(x))

    def sqrt(self, x):
        return F64(math.sqrt(float(x)))

    def __repr__(self):
        return "F64Field()"


RAT = RatField()
FLOAT64 = F64Field()


class FunctionField:
    """Multivariate rational function field over the rationals.

    Elements are ratios of MPolys in canonical form: numerator and denominator
    coprime, denominator primitive with positive graded-lex leading
    coefficient.
    """

    name = "func"
    is_exact = True

    def __init__(self, variables):
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("duplicate variable names")
        self.nvars = len(self.variables)
        self.zero = self.from_mpoly(MPoly.zero(self.nvars))
        self.one = self.from_mpoly(MPoly.one(self.nvars))

    def var_index(self, name):
        try:
            return self.variables.index(name)
        except ValueError:
            raise KeyError(f"unknown field variable {name!r}") from None

    def gen(self, name):
        return self.from_mpoly(MPoly.variable(self.nvars, self.var_index(name)))

    def from_mpoly(self, num, den=None):
        return RatFunc(self, num, den if den is not None else MPoly.one(self.nvars))

    def coerce(self, x):
        if isinstance(x, RatFunc):
            if x.field is not self and x.field.variables != self.variables:
                raise TypeError("element of a different function field")
            return x
        if isinstance(x, (int, Fraction)):
            return self.from_mpoly(MPoly.const(self.nvars, x))
        if isinstance(x, MPoly):
            return self.from_mpoly(x)
        raise TypeError(f"cannot coerce {x!r} into {self.name}")

    def parse_scalar(self, text):
        return _parse_ratfunc(self, text)

    def to_str(self, x):
        return x.text()

    def __eq__(self, other):
        return isinstance(other, FunctionField) and self.variables == other.variables

    def __hash__(self):
        return hash(self.variables)

    def __repr__(self):
        return f"FunctionField({self.variables!r})"


class RatFunc:
    __slots__ = ("field", "num", "den")

    def __init__(self, field, num, den):
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            den = MPoly.one(field.nvars)
        elif den.is_const():
            num = num.scale(1 / den.const_value())
            den = MPoly.one(field.nvars)
        else:
            g = mpoly_gcd(num, den)
            if not g.is_const():
                num = num.div_exact(g)
                den = den.div_exact(g)
            cont, den = den.primitive()
            num = num.scale(1 / cont)
        self.field = field
        self.num = num
        self.den = den

    def is_zero(self):
        return self.num.is_zero()

    def is_one(self):
        return self.num == self.den

    def _coerce(self, other):
        try:
            return self.field.coerce(other)
        except TypeError:
            return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.field, self.num + o.num, self.den)
        return RatFunc(self.field, self.num * o.den + o.num * self.den,
                       self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        out = object.__new__(RatFunc)
        out.field, out.num, out.den = self.field, -self.num, self.den
        return out

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.field, self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by zero field element")
        return RatFunc(self.field, self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def inverse(self):
        return self.field.one / self

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        return RatFunc(self.field, self.num ** k, self.den ** k)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def cross_eq(self, other):
        """Equality by cross-multiplication, independent of canonical form."""
        o = self.field.coerce(other)
        return self.num * o.den == o.num * self.den

    def __hash__(self):
        return hash((self.field, self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def text(self):
        n = self.num.text(self.field.variables)
        if self.den == MPoly.one(self.field.nvars):
            return n
        return f"({n})/({self.den.text(self.field.variables)})"

    def __repr__(self):
        return f"RatFunc({self.text()})"

    __str__ = text


def _tokenize_poly_text(text):
    out = []
    m = 0
    while m < len(text):
        ch = text[m]
        if ch.isspace():
            m += 1
        elif ch in "+-*/^()":
            out.append(ch)
            m += 1
        elif ch.isdigit():
            j = m
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(int(text[m:j]))
            m = j
        elif ch.isalpha() or ch == "_":
            j = m
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(text[m:j])
            m = j
        else:
            raise ValueError(f"bad character {ch!r} in field element text")
    return out


def _parse_ratfunc(field, text):
    """Parse the canonical `text()` output (and simple variants) back into an
    element: sums of `coef*var^k*...` pieces, optionally `(num)/(den)`."""
    toks = _tokenize_poly_text(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        if pos >= len(toks):
            raise ValueError("unexpected end of field element text")
        t = toks[pos]
        if expected is not None and t != expected:
            raise ValueError(f"expected {expected!r}, got {t!r}")
        pos += 1
        return t

    def parse_atom():
        t = peek()
        if t == "(":
            take("(")
            v = parse_sum()
            take(")")
            return v
        if t == "-":
            take("-")
            return -parse_atom()
        if isinstance(t, int):
            take()
            return field.coerce(t)
        if isinstance(t, str) and t not in "+-*/^()":
            take()
            return field.gen(t)
        raise ValueError(f"unexpected token {t!r}")

    def parse_power():
        base = parse_atom()
        if peek() == "^":
            take("^")
            k = take()
            if not isinstance(k, int):
                raise ValueError("exponent must be an integer literal")
            return base ** k
        return base

    def parse_product():
        v = parse_power()
        while peek() in ("*", "/"):
            op = take()
            w = parse_power()
            v = v * w if op == "*" else v / w
        return v

    def parse_sum():
        neg = False
        if peek() == "-":
            take("-")
            neg = True
        v = parse_product()
        if neg:
            v = -v
        while peek() in ("+", "-"):
            op = take()
            w = parse_product()
            v = v + w if op == "+" else v - w
        return v

    v = parse_sum()
    if pos != len(toks):
        raise ValueError("trailing input in field element text")
    return v


@dataclass(frozen=True)
class SignedMonomial:
    """A signed monomial ±prod(var^e); the square-class bookkeeping unit."""

    sign: int
    exps: tuple  # ((name, exp), ...) sorted, exp > 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        for _, e in self.exps:
            if e < 0:
                raise ValueError("exponents must be non-negative")

    @classmethod
    def make(cls, sign, exps):
        items = tuple(sorted((n, e) for n, e in dict(exps).items() if e))
        return cls(sign, items)

    def exp_of(self, name):
        return dict(self.exps).get(name, 0)

    def to_elem(self, field):
        num = MPoly.one(field.nvars)
        for name, e in self.exps:
            num = num * MPoly.variable(field.nvars, field.var_index(name)) ** e
        return field.from_mpoly(num.scale(self.sign))

    def text(self):
        parts = []
        for name, e in self.exps:
            parts.append(name if e == 1 else f"{name}^{e}")
        body = "*".join(parts) if parts else "1"
        return ("-" if self.sign < 0 else "") + body

    def __repr__(self):
        return f"SignedMonomial({self.text()})"


def normalize_square_class(m):
    """Reduce all exponents mod 2; the sign is preserved."""
    return SignedMonomial.make(m.sign, {n: e % 2 for n, e in m.exps})


def square_class_of(elem):
    """Square-class representative of a field element as a SignedMonomial,
    or None when the class is not representable (non-monomial, or a rational
    factor that is not a perfect square)."""
    if isinstance(elem, (int, Fraction)):
        c = Fraction(elem)
        if c == 0:
            return None
        return SignedMonomial.make(1 if c > 0 else -1, {}) \
            if rat_sqrt(abs(c)) is not None else None
    if not isinstance(elem, RatFunc):
        return None
    if elem.is_zero():
        return None
    if len(elem.num.terms) != 1 or len(elem.den.terms) != 1:
        return None
    (en, cn), = elem.num.terms.items()
    (ed, cd), = elem.den.terms.items()
    c = cn / cd
    if rat_sqrt(abs(c)) is None:
        return None
    names = elem.field.variables
    exps = {names[m]: (en[m] + ed[m]) % 2 for m in range(len(names))}
    return SignedMonomial.make(1 if c > 0 else -1, exps)


def _prime_poly(field, pi):
    """Primitive polynomial form of a prime element, plus its main variable."""
    pi = field.coerce(pi)
    if pi.is_zero():
        raise ValueError("prime element must be nonzero")
    p = pi.num.primitive()[1]
    vs = p.vars_present()
    if not vs:
        raise ValueError("prime element must be non-constant")
    return p, max(vs)


def poly_valuation(e, pi):
    """Order and unit part of e at the prime polynomial pi:
    e == pi**order * unit, with unit of order zero."""
    field = e.field if isinstance(e, RatFunc) else None
    if field is None:
        raise TypeError("poly_valuation expects a function-field element")
    e = field.coerce(e)
    if e.is_zero():
        raise ZeroElement("the zero element has no valuation")
    p, _ = _prime_poly(field, pi)
    num, n_ord = e.num, 0
    while True:
        q = num.div_exact(p)
        if q is None:
            break
        num, n_ord = q, n_ord + 1
    den, d_ord = e.den, 0
    while True:
        q = den.div_exact(p)
        if q is None:
            break
        den, d_ord = q, d_ord + 1
    return n_ord - d_ord, RatFunc(field, num, den)


def residue_at(e, pi):
    """Residue of a pi-unit: substitute the root of pi (a degree-1 prime in
    its main variable) and simplify in the residue field."""
    field = e.field
    order, unit = poly_valuation(e, pi)
    if order != 0:
        raise PoleAtPi(f"element has order {order} at the prime")
    p, idx = _prime_poly(field, pi)
    if p.deg_in(idx) != 1:
        raise ValueError("residues are only supported at degree-1 primes")
    c1 = p.coeff_in(idx, 1)
    c0 = p.coeff_in(idx, 0)
    root = RatFunc(field, -c0, c1)

    def subst(poly):
        acc = field.zero
        for k, coeff in poly.by_var(idx).items():
            acc = acc + field.from_mpoly(coeff) * root ** k
        return acc

    den_val = subst(unit.den)
    if den_val.is_zero():
        raise PoleAtPi("denominator vanishes at the prime's root")
    return subst(unit.num) / den_val
