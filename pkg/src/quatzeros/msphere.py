"""Operations on multispheres: multi-affine restriction, the vanishing
decision, and the generator system cutting out a blow-up.

On a block { A + lambda*w : n(w) = rho } every monomial collapses to
c + d*w with central c, d, by the rescaled identity
(a + b*w)(c + d*w) = (ac - bd*rho) + (ad + bc)*w.  A polynomial therefore
restricts to a multi-affine expression in the block directions, and it
vanishes on the whole multisphere iff that restriction is zero.
"""

from __future__ import annotations

import random

from .central import MultiSphere, is_central_tuple, sample_sphere_point
from .poly import ArityMismatch, QPoly, PointEvaluator, random_poly
from .quat import Quaternion
from .report import Report


class NotABlowUp(ValueError):
    pass


class MultiAffine:
    """Multi-affine expression in r sphere directions: map from index subsets
    of {0..r-1} to left quaternion coefficients.  Evaluation multiplies the
    coefficient by the chosen directions in ascending index order."""

    __slots__ = ("alg", "r", "terms")

    def __init__(self, alg, r, terms=None):
        self.alg = alg
        self.r = r
        clean = {}
        if terms:
            for subset, c in terms.items():
                key = tuple(sorted(subset))
                if any(m < 0 or m >= r for m in key):
                    raise ArityMismatch("sphere-variable index out of range")
                if not c.is_zero():
                    clean[key] = c
        self.terms = clean

    @classmethod
    def zero(cls, alg, r):
        return cls(alg, r, {})

    def is_zero(self):
        return not self.terms

    def coefficient(self, subset):
        return self.terms.get(tuple(sorted(subset)), self.alg.zero)

    def __add__(self, other):
        if not isinstance(other, MultiAffine) or other.r != self.r:
            return NotImplemented
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms[key] + c if key in terms else c
            if s.is_zero():
                terms.pop(key, None)
            else:
                terms[key] = s
        out = MultiAffine(self.alg, self.r)
        out.terms = terms
        return out

    def __sub__(self, other):
        if not isinstance(other, MultiAffine) or other.r != self.r:
            return NotImplemented
        return self + other.scale_left(-1)

    def scale_left(self, c):
        c = self.alg.coerce(c)
        out = MultiAffine(self.alg, self.r)
        out.terms = {}
        for key, v in self.terms.items():
            cv = c * v
            if not cv.is_zero():
                out.terms[key] = cv
        return out

    def __eq__(self, other):
        if not isinstance(other, MultiAffine):
            return NotImplemented
        if self.r != other.r or len(self.terms) != len(other.terms):
            return False
        return all(key in other.terms and other.terms[key] == c
                   for key, c in self.terms.items())

    def evaluate(self, ws):
        """Value at pure directions w_0..w_{r-1}."""
        ws = tuple(ws)
        if len(ws) != self.r:
            raise ArityMismatch("direction count does not match")
        acc = self.alg.zero
        for key, c in self.terms.items():
            val = c
            for m in key:
                val = val * ws[m]
            acc = acc + val
        return acc

    def max_var_degree(self):
        """Largest per-variable degree; <= 1 by construction."""
        return 1 if any(self.terms.keys()) else 0 if self.terms else -1

    def __repr__(self):
        if not self.terms:
            return "MultiAffine(0)"
        parts = []
        for key in sorted(self.terms):
            mon = "*".join(f"y{m + 1}" for m in key) or "1"
            parts.append(f"({self.terms[key].text()})*{mon}")
        return "MultiAffine(" + " + ".join(parts) + ")"


def block_monomial_reduce(exps, A, lam, rho):
    """Scalars (c, d) with prod_m (A_m + lam_m*w)^exps_m == c + d*w for every
    pure w of squared norm rho."""
    if not (len(exps) == len(A) == len(lam)):
        raise ArityMismatch("exponent/block size mismatch")
    one = A[0] - A[0] + 1 if A else 1
    c, d = one, one - one  # (1, 0) in the scalar field
    for a, l, e in zip(A, lam, exps):
        for _ in range(e):
            # (c + d*w)(a + l*w) with w^2 = -rho
            c, d = c * a - d * l * rho, c * l + d * a
    return c, d


def restrict(p, S):
    """Multi-affine restriction q of p to S: for all pure w_i with
    n(w_i) = rho_i, p(v0, A_1 + lam_1*w_1, ...) == q(w_1, ..., w_r)."""
    if p.n != S.dim:
        raise ArityMismatch("polynomial arity does not match the multisphere")
    alg = p.alg
    k0 = len(S.v0)
    sizes = [b.dim for b in S.blocks]
    r = len(S.blocks)
    out_terms = {}
    prefix_powers = [dict() for _ in range(k0)]
    for exps, coeff in p.terms.items():
        val = coeff
        for m in range(k0):
            e = exps[m]
            if e:
                val = val * _power(S.v0[m], e, prefix_powers[m])
        # per-block reduction to c_i + d_i*w_i, all c_i, d_i central
        factors = []
        pos = k0
        for b, size in zip(S.blocks, sizes):
            factors.append(block_monomial_reduce(
                exps[pos:pos + size], b.A, b.lam, b.rho))
            pos += size
        # expand prod_i (c_i + d_i*y_i) into subset terms
        expansion = {(): val}
        for idx, (c, d) in enumerate(factors):
            nxt = {}
            for key, q in expansion.items():
                qc = q * c
                if not qc.is_zero():
                    nxt[key] = nxt[key] + qc if key in nxt else qc
                qd = q * d
                if not qd.is_zero():
                    key2 = key + (idx,)
                    nxt[key2] = nxt[key2] + qd if key2 in nxt else qd
            expansion = nxt
        for key, q in expansion.items():
            if key in out_terms:
                out_terms[key] = out_terms[key] + q
            else:
                out_terms[key] = q
    return MultiAffine(alg, r, out_terms)


def _power(q, e, cache):
    got = cache.get(e)
    if got is not None:
        return got
    if e == 1:
        val = q
    else:
        half = _power(q, e // 2, cache)
        val = half * half
        if e & 1:
            val = val * q
    cache[e] = val
    return val


def vanishes_on(S, p):
    """True iff p vanishes on the entire multisphere (decided exactly via the
    restriction, which is complete; sampling is a cross-check only)."""
    return restrict(p, S).is_zero()


def two_point_grid(S, seed):
    """A grid {v0} x prod {w_i1, w_i2} with two distinct points per block."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    choices = []
    for b in S.blocks:
        w1 = sample_sphere_point(b, rng)
        w2 = w1
        while w2 == w1:
            w2 = sample_sphere_point(b, rng)
        choices.append((w1, w2))
    points = []
    for mask in range(1 << len(S.blocks)):
        coords = list(S.v0)
        for idx, b in enumerate(S.blocks):
            w = choices[idx][(mask >> idx) & 1]
            coords.extend(b.point_at(w))
        points.append(tuple(coords))
    return points


def vanishes_on_grid(points, p):
    return all(PointEvaluator(pt).is_zero(p) for pt in points)


def cutting_generators(S):
    """Generator system whose zero set (together with all left multiples) is
    exactly the blow-up: per block, pairwise proportionality equations
    (x_j - A_j)*lam_l - (x_l - A_l)*lam_j and norm equations
    (x_j - A_j)^2 + lam_j^2 * rho; plus prefix equations x_j - q_j."""
    if not is_central_tuple(S.v0):
        raise NotABlowUp("multisphere prefix is not central")
    if S.v0:
        alg = S.v0[0].alg
    elif S.blocks:
        alg = S.blocks[0].witness.alg
    else:
        raise ValueError("empty multisphere")
    n = S.dim
    gens = []
    for m, q in enumerate(S.v0):
        gens.append(QPoly.variable(alg, n, m) - QPoly.const(alg, n, q))
    offsets = S.block_offsets()
    for b, off in zip(S.blocks, offsets):
        for j in range(b.dim):
            xj = QPoly.variable(alg, n, off + j) - QPoly.const(alg, n, alg.scalar(b.A[j]))
            for l in range(j + 1, b.dim):
                xl = QPoly.variable(alg, n, off + l) - QPoly.const(alg, n, alg.scalar(b.A[l]))
                g = xj.scale_right(b.lam[l]) - xl.scale_right(b.lam[j])
                if not g.is_zero():
                    gens.append(g)
        for j in range(b.dim):
            xj = QPoly.variable(alg, n, off + j) - QPoly.const(alg, n, alg.scalar(b.A[j]))
            norm_const = b.lam[j] * b.lam[j] * b.rho
            gens.append(xj * xj + QPoly.const(alg, n, alg.scalar(norm_const)))
    return gens


def _centralizer_sample(q, rng):
    """Random element of C_q = {p : pq = qp}: a + b*q for non-scalar q, an
    arbitrary quaternion otherwise."""
    alg = q.alg
    if q.is_scalar():
        return alg.quat(*(rng.randint(-3, 3) for _ in range(4)))
    return q * rng.randint(-3, 3) + rng.randint(-3, 3)


def verify_cut(S, generators=None, seed=0):
    """Check that the generator system cuts out exactly the multisphere:
    sampled points annihilate generators and random left combinations,
    perturbed off-sphere points violate a raw generator, and left multiples
    of prefix generators vanish on commutant slices."""
    rng = random.Random(seed)
    report = Report("cut")
    gens = generators if generators is not None else cutting_generators(S)
    alg = S.v0[0].alg if S.v0 else S.blocks[0].witness.alg
    n = S.dim

    points = [S.sample_point(rng) for _ in range(50)]
    members = [_left_combination(gens, rng) for _ in range(50)]

    gen_forms = [PointEvaluator.int_form(g) for g in gens]
    member_forms = [PointEvaluator.int_form(m) for m in members]
    ok = True
    witness = None
    for pt in points:
        ev = PointEvaluator(pt)
        for g, form in zip(gens, gen_forms):
            if not ev.is_zero(g, form):
                ok, witness = False, (g, pt)
                break
        for m, form in zip(members, member_forms):
            if not ev.is_zero(m, form):
                ok, witness = False, (m, pt)
                break
        if not ok:
            break
    report.add("points_annihilate_system", ok,
               points=len(points), members=len(members),
               **({"witness": _point_text(witness[1])} if witness else {}))

    ok = True
    for _ in range(50):
        pt = _perturb_off(S, rng)
        if pt is None:
            continue
        ev = PointEvaluator(pt)
        if S.contains(pt) or all(ev.is_zero(g, f) for g, f in zip(gens, gen_forms)):
            ok = False
            break
    report.add("off_sphere_rejected", ok)

    ok = True
    for m, q in enumerate(S.v0):
        g = gens[m]  # prefix generator x_{m+1} - q
        for _ in range(10):
            coords = [_centralizer_sample(q, rng) for _ in range(m)]
            coords.append(q)
            coords.extend(alg.quat(*(rng.randint(-2, 2) for _ in range(4)))
                          for _ in range(n - m - 1))
            pt = tuple(coords)
            ev = PointEvaluator(pt)
            for _ in range(5):
                p = random_poly(alg, n, 2, 2, seed=rng)
                if not ev.is_zero(p * g):
                    ok = False
                    break
            if not ok:
                break
        if not ok:
            break
    report.add("prefix_multiples_on_commutant_slices", ok)
    return report


def _left_combination(gens, rng, max_deg=2, n_terms=2):
    alg = gens[0].alg
    n = gens[0].n
    acc = QPoly.zero(alg, n)
    for g in gens:
        acc = acc + random_poly(alg, n, max_deg, n_terms, seed=rng) * g
    return acc


def _perturb_off(S, rng, tries=8):
    """A sampled point nudged off the multisphere (None if unlucky)."""
    alg = S.v0[0].alg if S.v0 else S.blocks[0].witness.alg
    for _ in range(tries):
        pt = list(S.sample_point(rng))
        m = rng.randrange(len(pt))
        bump = alg.quat(*(rng.randint(-2, 2) for _ in range(4)))
        cand = tuple(pt[:m] + [pt[m] + bump] + pt[m + 1:])
        if not S.contains(cand):
            return cand
    return None


def _point_text(pt):
    return "(" + ", ".join(q.text() for q in pt) + ")"
