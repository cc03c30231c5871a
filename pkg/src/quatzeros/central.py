"""Central structure of points: sphere blocks, the unique central
presentation, blow-ups, and exact rational sampling of sphere points.

A central tuple decomposes as coordinates A_m + lambda_m * u for one common
pure direction u.  The paper-style unit direction is never materialized:
blocks carry (lambda, rho) with rho the exact squared norm of the stored
primitive direction, so every sphere identity is restated with w^2 = -rho
and all arithmetic stays in the base field.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .quat import (Quaternion, commutes, is_central_tuple, conjugate_tuple,
                   primitive_direction)


class NotCentral(ValueError):
    pass


class AllReal(ValueError):
    pass


def decompose_central(v):
    """Write a central, not all-scalar tuple as A + lambda * u.

    Returns (A, lam, rho, u): u is the primitive pure direction of the first
    non-scalar coordinate, rho = n(u), and v_m == A_m + lam_m * u exactly.
    """
    v = tuple(v)
    if not v:
        raise AllReal("empty tuple")
    alg = v[0].alg
    field = alg.field
    u = None
    for q in v:
        if not q.is_scalar():
            u, _ = primitive_direction(q)
            break
    if u is None:
        raise AllReal("all coordinates are scalar")
    A = []
    lam = []
    for q in v:
        A.append(q.scalar_part())
        im = q.pure()
        if im.is_zero():
            lam.append(field.zero)
            continue
        ratio = None
        for m in (1, 2, 3):
            if not (u.coords[m] == 0):
                ratio = im.coords[m] / u.coords[m]
                break
        if ratio is None or not (im == u * ratio):
            raise NotCentral("coordinate direction is not proportional to u")
        lam.append(ratio)
    return tuple(A), tuple(lam), u.norm(), u


@dataclass(frozen=True)
class SphereBlock:
    """The set { A + lambda*w : w pure, n(w) = rho } inside H^dim."""

    A: tuple
    lam: tuple
    rho: object
    witness: Quaternion  # a pure direction with n(witness) == rho

    @property
    def dim(self):
        return len(self.A)

    def point_at(self, w):
        """Block coordinates at the pure direction w."""
        return tuple(w * l + a for a, l in zip(self.A, self.lam))

    def reference(self):
        return self.point_at(self.witness)

    @classmethod
    def from_tuple(cls, block):
        """Block data of a central, not all-scalar tuple."""
        A, lam, rho, u = decompose_central(block)
        return cls(A, lam, rho, u)

    def solve_direction(self, coords, alg):
        """The common pure w with coords == A + lambda*w, or None."""
        w = None
        for q, a, l in zip(coords, self.A, self.lam):
            if l == 0:
                if not (q == alg.scalar(a)):
                    return None
                continue
            cand = (q - a) * (1 / l)
            if not cand.is_pure():
                return None
            if w is None:
                w = cand
            elif not (w == cand):
                return None
        if w is None or not (w.norm() == self.rho):
            return None
        return w


@dataclass(frozen=True)
class MultiSphere:
    """{v0} x prod_i { A_i + lambda_i * w : n(w) = rho_i }."""

    v0: tuple
    blocks: tuple

    @property
    def r(self):
        return len(self.blocks)

    @property
    def dim(self):
        return len(self.v0) + sum(b.dim for b in self.blocks)

    def block_offsets(self):
        """Global start index of each block."""
        out = []
        pos = len(self.v0)
        for b in self.blocks:
            out.append(pos)
            pos += b.dim
        return out

    def contains(self, w):
        return msphere_contains(self, w)

    def sample_point(self, seed):
        rng = seed if isinstance(seed, random.Random) else random.Random(seed)
        coords = list(self.v0)
        for b in self.blocks:
            coords.extend(b.point_at(sample_sphere_point(b, rng)))
        return tuple(coords)

    def to_json(self):
        if self.v0:
            field = self.v0[0].alg.field
        elif self.blocks:
            field = self.blocks[0].witness.alg.field
        else:
            raise ValueError("empty multisphere")
        to_s = field.to_str
        return {
            "v0": [[to_s(c) for c in q.coords] for q in self.v0],
            "blocks": [
                {
                    "A": [to_s(a) for a in b.A],
                    "lambda": [to_s(l) for l in b.lam],
                    "rho": to_s(b.rho),
                    "witness": [to_s(c) for c in b.witness.coords],
                }
                for b in self.blocks
            ],
        }

    @classmethod
    def from_json(cls, data, alg):
        parse = alg.field.parse_scalar
        v0 = tuple(alg.quat(*(parse(c) for c in q)) for q in data["v0"])
        blocks = []
        for b in data["blocks"]:
            blocks.append(SphereBlock(
                A=tuple(parse(a) for a in b["A"]),
                lam=tuple(parse(l) for l in b["lambda"]),
                rho=parse(b["rho"]),
                witness=alg.quat(*(parse(c) for c in b["witness"])),
            ))
        return cls(v0, tuple(blocks))


@dataclass(frozen=True)
class CentralPresentation:
    """The unique split of v into a central prefix and central blocks whose
    last coordinate fails to commute with the following block."""

    v0: tuple
    block_tuples: tuple

    @property
    def r(self):
        return len(self.block_tuples)

    def reconstruct(self):
        out = list(self.v0)
        for b in self.block_tuples:
            out.extend(b)
        return tuple(out)

    def sphere_blocks(self):
        return tuple(SphereBlock.from_tuple(b) for b in self.block_tuples)

    def multisphere(self):
        return MultiSphere(self.v0, self.sphere_blocks())


def central_presentation(v):
    """Greedy maximal central blocks left to right, then each block's
    trailing scalar coordinates shift into the following block."""
    v = tuple(v)
    segments = []
    for q in v:
        if segments and is_central_tuple(segments[-1] + [q]):
            segments[-1].append(q)
        else:
            segments.append([q])
    # merge: a new greedy segment always opens at a coordinate that fails to
    # commute with the previous segment, so segments are maximal by scan
    for m in range(len(segments) - 1):
        seg = segments[m]
        while seg and seg[-1].is_scalar():
            segments[m + 1].insert(0, seg.pop())
    if len(segments) == 1:
        return CentralPresentation(tuple(segments[0]), ())
    return CentralPresentation(
        tuple(segments[0]), tuple(tuple(s) for s in segments[1:]))


def blow_up(v):
    """The multisphere {v0} x prod S_{v_i} of v's central presentation; the
    singleton {v} when v is central."""
    pres = central_presentation(v)
    return pres.multisphere()


def msphere_contains(S, w):
    """Exact membership: prefix equality, then per block a common pure
    direction of squared norm rho."""
    w = tuple(w)
    if len(w) != S.dim:
        return False
    k0 = len(S.v0)
    if any(not (a == b) for a, b in zip(S.v0, w[:k0])):
        return False
    alg = w[0].alg if w else (S.v0[0].alg if S.v0 else None)
    pos = k0
    for b in S.blocks:
        if b.solve_direction(w[pos:pos + b.dim], alg) is None:
            return False
        pos += b.dim
    return True


def reflect_pure(u, d):
    """Reflect the pure quaternion u across the hyperplane orthogonal to d
    (with respect to the norm's bilinear form); preserves the norm exactly."""
    bdd = _pairing(d, d)
    if bdd == 0:
        raise ValueError("reflection direction has norm zero")
    bud = _pairing(u, d)
    return u - d * (2 * bud / bdd)


def _pairing(p, q):
    return ((p + q).norm() - p.norm() - q.norm()) / 2


def sample_sphere_point(block, seed):
    """A pure quaternion w with n(w) = rho exactly: the stored witness
    reflected across a random rational chord; deterministic per seed."""
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    u = block.witness
    alg = u.alg
    for _ in range(64):
        c = [rng.randint(-3, 3) for _ in range(3)]
        if any(c):
            d = alg.quat(0, *c)
            if not (_pairing(d, d) == 0):
                return reflect_pure(u, d)
    raise RuntimeError("failed to draw a usable chord direction")
