"""Polynomials with left quaternion coefficients and central variables.

Substitution places the coefficient on the left and coordinate powers in
ascending variable order; evaluation is therefore additive and left-linear
but not multiplicative in general.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .quat import Quaternion, _fully_wrapped
from .scalars import Rat

__all__ = [
    "ArityMismatch", "QPoly", "PointEvaluator", "random_poly",
    "default_coeff_pool",
]


class ArityMismatch(ValueError):
    pass


class QPoly:
    """Sparse polynomial over a quaternion algebra: exponent tuple -> nonzero
    left coefficient."""

    __slots__ = ("alg", "n", "terms")

    def __init__(self, alg, n, terms=None):
        self.alg = alg
        self.n = n
        clean = {}
        if terms:
            for exps, c in terms.items():
                if len(exps) != n:
                    raise ArityMismatch("exponent length does not match arity")
                if not c.is_zero():
                    clean[exps] = c
        self.terms = clean

    @classmethod
    def zero(cls, alg, n):
        return cls(alg, n, {})

    @classmethod
    def const(cls, alg, n, c):
        return cls(alg, n, {(0,) * n: alg.coerce(c)})

    @classmethod
    def variable(cls, alg, n, idx, coeff=1):
        if not 0 <= idx < n:
            raise ArityMismatch(f"variable index {idx} out of range")
        exps = tuple(1 if m == idx else 0 for m in range(n))
        return cls(alg, n, {exps: alg.coerce(coeff)})

    def is_zero(self):
        return not self.terms

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def support_vars(self):
        out = set()
        for e in self.terms:
            for m, k in enumerate(e):
                if k:
                    out.add(m)
        return out

    def has_central_coeffs(self):
        return all(c.is_scalar() for c in self.terms.values())

    def _check(self, other):
        if self.n != other.n:
            raise ArityMismatch("polynomials of different arity")
        if not self.alg.compatible(other.alg):
            raise TypeError("polynomials over different algebras")

    def __add__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms[e] + c if e in terms else c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        out = QPoly(self.alg, self.n)
        out.terms = terms
        return out

    def __neg__(self):
        out = QPoly(self.alg, self.n)
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        """Ring product: (a X^s)(b X^t) = (ab) X^(s+t)."""
        if not isinstance(other, QPoly):
            return self.scale_right(other)
        self._check(other)
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                c = c1 * c2
                if e in terms:
                    c = terms[e] + c
                if c.is_zero():
                    terms.pop(e, None)
                else:
                    terms[e] = c
        out = QPoly(self.alg, self.n)
        out.terms = terms
        return out

    def __rmul__(self, other):
        return self.scale_left(other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = QPoly.const(self.alg, self.n, self.alg.one)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale_left(self, c):
        c = self.alg.coerce(c)
        out = QPoly(self.alg, self.n)
        out.terms = {}
        for e, v in self.terms.items():
            cv = c * v
            if not cv.is_zero():
                out.terms[e] = cv
        return out

    def scale_right(self, c):
        c = self.alg.coerce(c)
        out = QPoly(self.alg, self.n)
        out.terms = {}
        for e, v in self.terms.items():
            vc = v * c
            if not vc.is_zero():
                out.terms[e] = vc
        return out

    def __eq__(self, other):
        if not isinstance(other, QPoly):
            return NotImplemented
        if self.n != other.n or len(self.terms) != len(other.terms):
            return False
        for e, c in self.terms.items():
            if e not in other.terms or not (other.terms[e] == c):
                return False
        return True

    def evaluate(self, v, powers=None):
        """Substitute the point v: sum of coeff * v1^e1 * ... * vn^en."""
        v = tuple(v)
        if len(v) != self.n:
            raise ArityMismatch("point length does not match arity")
        if powers is None:
            powers = [dict() for _ in range(self.n)]
        acc = self.alg.zero
        for exps, coeff in self.terms.items():
            val = coeff
            for m, e in enumerate(exps):
                if e:
                    val = val * _cached_power(v[m], e, powers[m])
            acc = acc + val
        return acc

    def __call__(self, v):
        return self.evaluate(v)

    def text(self, var_names=None):
        if not self.terms:
            return "0"
        names = var_names or [f"x{m + 1}" for m in range(self.n)]
        keys = sorted(self.terms, key=lambda e: (sum(e), e), reverse=True)
        pieces = []
        for e in keys:
            factors = []
            for m, k in enumerate(e):
                if k == 1:
                    factors.append(names[m])
                elif k > 1:
                    factors.append(f"{names[m]}^{k}")
            cs = self.terms[e].text()
            if " " in cs and not _fully_wrapped(cs):
                cs = f"({cs})"
            if factors and cs == "1":
                pieces.append("*".join(factors))
            else:
                pieces.append("*".join([cs] + factors))
        return " + ".join(pieces)

    def __repr__(self):
        return f"QPoly({self.text()})"

    def to_json(self):
        to_s = self.alg.field.to_str
        return {
            "n": self.n,
            "terms": [
                {
                    "exps": list(e),
                    "coeff": {f"x{m}": to_s(c.coords[m]) for m in range(4)},
                }
                for e, c in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data, alg):
        parse = alg.field.parse_scalar
        terms = {}
        for item in data["terms"]:
            coeff = alg.quat(*(parse(item["coeff"][f"x{m}"]) for m in range(4)))
            terms[tuple(item["exps"])] = coeff
        return cls(alg, data["n"], terms)


def _cached_power(q, e, cache):
    got = cache.get(e)
    if got is not None:
        return got
    if e == 1:
        val = q
    else:
        half = _cached_power(q, e // 2, cache)
        val = half * half
        if e & 1:
            val = val * q
    cache[e] = val
    return val


class PointEvaluator:
    """Repeated exact evaluation at one point.

    Over the rational field with integer structure constants the evaluator
    clears denominators once and runs on plain integers; otherwise it falls
    back to generic field arithmetic with a shared power cache.
    """

    __slots__ = ("point", "alg", "_powers", "_int_coords", "_int_powcache", "_ab")

    def __init__(self, point):
        self.point = tuple(point)
        if not self.point:
            raise ValueError("empty point")
        self.alg = self.point[0].alg
        self._powers = [dict() for _ in self.point]
        self._int_coords = None
        self._int_powcache = None
        self._ab = None
        if self.alg.field.name == "rat":
            a, b = self.alg.a, self.alg.b
            if a.denominator == 1 and b.denominator == 1:
                self._ab = (a.numerator, b.numerator)
                coords = []
                for q in self.point:
                    den = math.lcm(*(c.denominator for c in q.coords))
                    coords.append((tuple(int(c * den) for c in q.coords), den))
                self._int_coords = coords
                self._int_powcache = [
                    {0: ((1, 0, 0, 0), 1), 1: c} for c in coords
                ]

    def evaluate(self, p):
        if self._int_coords is None:
            return p.evaluate(self.point, self._powers)
        num, den = self._eval_int(self.int_form(p))
        alg = p.alg
        return alg.quat(*(Fraction(x, den) for x in num))

    def is_zero(self, p, form=None):
        if self._int_coords is None:
            return p.evaluate(self.point, self._powers).is_zero()
        num, _ = self._eval_int(form if form is not None else self.int_form(p))
        return num == (0, 0, 0, 0)

    @staticmethod
    def int_form(p):
        """Precompute the integer-cleared term list of p for reuse across
        evaluators (coefficients as 4 ints plus a denominator); None when the
        scalar field has no integer clearing."""
        if p.alg.field.name != "rat":
            return None
        out = []
        for exps, c in p.terms.items():
            den = math.lcm(*(x.denominator for x in c.coords))
            out.append((exps, tuple(int(x * den) for x in c.coords), den))
        return out

    def _int_power(self, m, e):
        cache = self._int_powcache[m]
        got = cache.get(e)
        if got is not None:
            return got
        half, hden = self._int_power(m, e // 2)
        val, den = self._qmul_int(half, half), hden * hden
        if e & 1:
            base, bden = cache[1]
            val, den = self._qmul_int(val, base), den * bden
        cache[e] = (val, den)
        return val, den

    def _qmul_int(self, p, q):
        a, b = self._ab
        p0, p1, p2, p3 = p
        q0, q1, q2, q3 = q
        return (
            p0 * q0 + a * (p1 * q1) + b * (p2 * q2) - a * b * (p3 * q3),
            p0 * q1 + p1 * q0 - b * (p2 * q3) + b * (p3 * q2),
            p0 * q2 + p2 * q0 + a * (p1 * q3) - a * (p3 * q1),
            p0 * q3 + p3 * q0 + p1 * q2 - p2 * q1,
        )

    def _eval_int(self, form):
        acc = (0, 0, 0, 0)
        acc_den = 1
        for exps, coeff, cden in form:
            val, vden = coeff, cden
            for m, e in enumerate(exps):
                if e:
                    pw, pden = self._int_power(m, e)
                    val = self._qmul_int(val, pw)
                    vden *= pden
            if acc_den == vden:
                acc = tuple(x + y for x, y in zip(acc, val))
            else:
                l = math.lcm(acc_den, vden)
                fa, fv = l // acc_den, l // vden
                acc = tuple(x * fa + y * fv for x, y in zip(acc, val))
                acc_den = l
        return acc, acc_den


def default_coeff_pool(alg):
    """Small exact quaternions used by the random generators."""
    one, i, j, k = alg.one, alg.i, alg.j, alg.k
    return (one, -one, alg.scalar(2), i, -i, j, -j, k, one + i, i + j, one - k)


def random_poly(alg, n, max_deg, n_terms, coeff_pool=None, seed=0):
    """Deterministic random polynomial: n_terms draws of degree <= max_deg
    with coefficients from the pool (colliding monomials merge)."""
    if n < 0 or max_deg < 0 or n_terms < 0:
        raise ValueError("bounds must be non-negative")
    rng = random.Random(seed) if isinstance(seed, int) else seed
    pool = coeff_pool or default_coeff_pool(alg)
    p = QPoly.zero(alg, n)
    for _ in range(n_terms):
        exps = [0] * n
        if n:
            for _ in range(rng.randint(0, max_deg)):
                exps[rng.randrange(n)] += 1
        coeff = rng.choice(pool)
        p = p + QPoly(alg, n, {tuple(exps): coeff})
    return p
