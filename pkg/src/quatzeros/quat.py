"""Quaternion algebras (a,b)_F with configurable structure constants.

Basis 1, I, J, K with I^2 = a, J^2 = b, JI = -IJ, K = IJ.  Hamilton's
algebra is the instance (-1,-1); the base field is pluggable (exact
rationals, a rational function field, or binary64).
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import RAT, F64, FLOAT64, RatFunc, rat_content


class NonInvertible(ArithmeticError):
    pass


class QuaternionAlgebra:
    """(a,b) over a scalar field; values are immutable, operations pure."""

    __slots__ = ("field", "a", "b", "_units")

    def __init__(self, a, b, field=RAT):
        self.field = field
        self.a = field.coerce(a)
        self.b = field.coerce(b)
        if self.a == 0 or self.b == 0:
            raise ValueError("structure constants must be nonzero")
        self._units = None

    @classmethod
    def hamilton(cls, field=RAT):
        return cls(-1, -1, field)

    def quat(self, x0, x1=0, x2=0, x3=0):
        c = self.field.coerce
        return Quaternion(self, c(x0), c(x1), c(x2), c(x3))

    def scalar(self, s):
        return self.quat(s)

    def coerce(self, x):
        if isinstance(x, Quaternion):
            if x.alg.compatible(self):
                return x
            raise TypeError("quaternion from an incompatible algebra")
        return self.scalar(x)

    @property
    def zero(self):
        return self.quat(0)

    @property
    def one(self):
        return self.quat(1)

    @property
    def i(self):
        return self.quat(0, 1)

    @property
    def j(self):
        return self.quat(0, 0, 1)

    @property
    def k(self):
        return self.quat(0, 0, 0, 1)

    def compatible(self, other):
        return (self is other
                or (self.field.name == other.field.name
                    and self.a == other.a and self.b == other.b))

    def is_hamilton(self):
        return self.a == -1 and self.b == -1

    def __repr__(self):
        return f"QuaternionAlgebra(a={self.a!r}, b={self.b!r}, field={self.field.name})"


_SCALARS = (int, Fraction, F64, RatFunc)


def _fully_wrapped(s):
    """True if s is one parenthesized group covering the whole string."""
    if not (s.startswith("(") and s.endswith(")")):
        return False
    depth = 0
    for m, ch in enumerate(s):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0 and m != len(s) - 1:
                return False
    return depth == 0


class Quaternion:
    __slots__ = ("alg", "coords")

    def __init__(self, alg, x0, x1, x2, x3):
        self.alg = alg
        self.coords = (x0, x1, x2, x3)

    @property
    def x0(self):
        return self.coords[0]

    @property
    def x1(self):
        return self.coords[1]

    @property
    def x2(self):
        return self.coords[2]

    @property
    def x3(self):
        return self.coords[3]

    def _coerce(self, other):
        if isinstance(other, Quaternion):
            if not other.alg.compatible(self.alg):
                raise TypeError("mixing quaternions from different algebras")
            return other
        if isinstance(other, _SCALARS):
            return self.alg.scalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q = self.coords, o.coords
        return Quaternion(self.alg, *(p[m] + q[m] for m in range(4)))

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(self.alg, *(-c for c in self.coords))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p, q = self.coords, o.coords
        return Quaternion(self.alg, *(p[m] - q[m] for m in range(4)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.alg.a, self.alg.b
        p0, p1, p2, p3 = self.coords
        q0, q1, q2, q3 = o.coords
        return Quaternion(
            self.alg,
            p0 * q0 + a * (p1 * q1) + b * (p2 * q2) - a * b * (p3 * q3),
            p0 * q1 + p1 * q0 - b * (p2 * q3) + b * (p3 * q2),
            p0 * q2 + p2 * q0 + a * (p1 * q3) - a * (p3 * q1),
            p0 * q3 + p3 * q0 + p1 * q2 - p2 * q1,
        )

    def __rmul__(self, other):
        # scalars are central, so scalar*q == q*scalar
        if isinstance(other, _SCALARS):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, _SCALARS):
            return self * (1 / self.alg.field.coerce(other))
        if isinstance(other, Quaternion):
            return self * other.inverse()
        return NotImplemented

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.alg.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self):
        x0, x1, x2, x3 = self.coords
        return Quaternion(self.alg, x0, -x1, -x2, -x3)

    def norm(self):
        """Reduced norm x0^2 - a*x1^2 - b*x2^2 + a*b*x3^2; multiplicative."""
        a, b = self.alg.a, self.alg.b
        x0, x1, x2, x3 = self.coords
        return x0 * x0 - a * (x1 * x1) - b * (x2 * x2) + a * b * (x3 * x3)

    def inverse(self):
        n = self.norm()
        if n == 0:
            raise NonInvertible("quaternion of norm zero")
        return self.conjugate() * (1 / n)

    def scalar_part(self):
        return self.coords[0]

    def pure(self):
        return Quaternion(self.alg, self.alg.field.zero, *self.coords[1:])

    def is_scalar(self):
        z = self.alg.field.zero
        return self.coords[1] == z and self.coords[2] == z and self.coords[3] == z

    def is_pure(self):
        return self.coords[0] == self.alg.field.zero

    def is_zero(self):
        z = self.alg.field.zero
        return all(c == z for c in self.coords)

    def __eq__(self, other):
        if isinstance(other, _SCALARS):
            other = self.alg.scalar(other)
        if not isinstance(other, Quaternion):
            return NotImplemented
        return all(p == q for p, q in zip(self.coords, other.coords))

    def __hash__(self):
        if not self.alg.field.is_exact:
            raise TypeError("approximate quaternions are unhashable")
        return hash(self.coords)

    def text(self):
        to_s = self.alg.field.to_str
        pieces = []
        for c, unit in zip(self.coords, ("", "I", "J", "K")):
            if c == 0:
                continue
            s = to_s(c)
            neg = False
            if s.startswith("-") and not any(ch in s[1:] for ch in "+-* ^"):
                # atomic negatives like -2, -3/2, -al peel their sign
                neg = True
                s = s[1:]
            if any(ch in s for ch in "+-*/^ ") and not _fully_wrapped(s):
                s = f"({s})"
            body = s if not unit else (unit if s == "1" else f"{s}*{unit}")
            pieces.append(("- " if neg else "+ ") + body)
        if not pieces:
            return "0"
        head = pieces[0]
        head = ("-" + head[2:]) if head.startswith("- ") else head[2:]
        return " ".join([head] + pieces[1:])

    def __repr__(self):
        return f"Quaternion({self.text()})"

    __str__ = text


def commutes(p, q):
    """True iff the commutator pq - qp vanishes."""
    return (p * q - q * p).is_zero()


def is_central_tuple(v):
    """True iff all coordinates pairwise commute."""
    v = list(v)
    for m in range(len(v)):
        for l in range(m + 1, len(v)):
            if not commutes(v[m], v[l]):
                return False
    return True


def conjugate_tuple(v, q):
    """Coordinatewise conjugation (q v_m q^-1); preserves centrality."""
    qinv = q.inverse()
    return tuple(q * x * qinv for x in v)


def imaginary_direction(q):
    """Split q = real_part + im with im purely imaginary (unnormalized)."""
    return q.scalar_part(), q.pure()


def primitive_direction(q):
    """Primitive pure direction of a non-scalar quaternion: the pure part
    divided by the positive content of its coordinates (exact fields only;
    over binary64 the pure part is returned as is)."""
    im = q.pure()
    if im.is_zero():
        raise ValueError("scalar quaternion has no direction")
    if q.alg.field.name != "rat":
        return im, q.alg.field.one
    cont = rat_content(im.coords[1:])
    return im / cont, cont
