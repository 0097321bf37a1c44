"""Complete fans with three rays in a rank-2 lattice.

Weighted projective planes ``P(w0, w1, w2)`` are built on
``N = Z^3 / Z w``; a quotient by ``mu_e`` acting with weights
``(m0, m1, m2)`` refines the lattice by ``(m0, m1, m2)/e``.  Homogeneous
coordinate ``X_i`` corresponds to ray ``v_i``; the torus fixed point where
``X_i != 0`` is the cone spanned by the two other rays.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exactmath import xgcd
from .singularities import (OtherCyclic, QuotSing, SingClass, d_value,
                            milnor_number)

Vec = tuple[int, int]


def det(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def primitive(v: Sequence[int]) -> Vec:
    g = math.gcd(*v)
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return (v[0] // g, v[1] // g)


# --------------------------------------------------------------------------
# integer lattice reductions


def unimodular_reducer(w: Sequence[int]) -> list[list[int]]:
    """A unimodular ``U`` with ``U @ w = (0, ..., 0, g)``, ``g = gcd(w) > 0``.

    Euclid's algorithm carried out with integer row operations, tracked on an
    identity matrix.
    """
    k = len(w)
    v = list(w)
    u = [[int(i == j) for j in range(k)] for i in range(k)]
    while sum(1 for x in v if x) > 1:
        p = min((i for i in range(k) if v[i]), key=lambda i: abs(v[i]))
        for i in range(k):
            if i != p and v[i]:
                q = v[i] // v[p]
                v[i] -= q * v[p]
                u[i] = [a - q * b for a, b in zip(u[i], u[p])]
    p = next(i for i in range(k) if v[i])
    flips = 0
    if p != k - 1:
        u[p], u[-1] = u[-1], u[p]
        v[p], v[-1] = v[-1], v[p]
        flips += 1
    if v[-1] < 0:
        u[-1] = [-a for a in u[-1]]
        flips += 1
    if flips % 2 and k > 1:
        # row 0 maps w to 0, so negating it keeps U w intact and restores det(U) = +1
        u[0] = [-a for a in u[0]]
    return u


def lattice_basis_2d(gens: Sequence[Sequence[int]]) -> tuple[Vec, Vec]:
    """Hermite basis ``((h11, h12), (0, h22))`` of the full-rank lattice spanned by ``gens``."""
    rows = [list(g) for g in gens if any(g)]
    # clear the first coordinate of all but one generator
    while sum(1 for r in rows if r[0]) > 1:
        p = min((r for r in rows if r[0]), key=lambda r: abs(r[0]))
        for r in rows:
            if r is not p and r[0]:
                q = r[0] // p[0]
                r[0] -= q * p[0]
                r[1] -= q * p[1]
    first = [r for r in rows if r[0]]
    if not first:
        raise ValueError("generators do not span a rank-2 lattice")
    top = first[0]
    h22 = 0
    for r in rows:
        if r is not top:
            h22 = math.gcd(h22, r[1])
    if h22 == 0:
        raise ValueError("generators do not span a rank-2 lattice")
    if top[0] < 0:
        top = [-top[0], -top[1]]
    return (top[0], top[1] % h22), (0, h22)


# --------------------------------------------------------------------------
# fans


@dataclass(frozen=True)
class Fan2:
    """Complete fan with three primitive rays, counterclockwise.

    ``weights`` is set for weighted projective planes; ``quotient`` holds
    ``(e, (m0, m1, m2))`` for fans of ``mu_e`` quotients of them.
    """
    rays: tuple[Vec, Vec, Vec]
    weights: Optional[tuple[int, int, int]] = None
    quotient: Optional[tuple[int, tuple[int, int, int]]] = None

    def __post_init__(self):
        if len(self.rays) != 3:
            raise ValueError(f"expected 3 rays, got {len(self.rays)}")
        for v in self.rays:
            if math.gcd(*v) != 1:
                raise ValueError(f"ray {v} is not primitive")
        for i in range(3):
            if det(self.rays[i], self.rays[(i + 1) % 3]) <= 0:
                raise ValueError(f"rays {self.rays} are not a counterclockwise complete fan")

    def cone(self, i: int) -> tuple[Vec, Vec]:
        """The 2-cone at the fixed point ``X_i != 0`` (rays other than ``v_i``)."""
        return self.rays[(i + 1) % 3], self.rays[(i + 2) % 3]

    def relation(self) -> tuple[int, int, int]:
        """The positive primitive relation ``w0 v0 + w1 v1 + w2 v2 = 0``."""
        v0, v1, v2 = self.rays
        w = (det(v1, v2), det(v2, v0), det(v0, v1))
        g = math.gcd(*w)
        return tuple(x // g for x in w)


def cone_singularity(u: Sequence[int], v: Sequence[int]) -> QuotSing:
    """The cyclic quotient singularity of the cone spanned by ``u`` and ``v``.

    Move ``u`` to ``(0, 1)`` by a unimodular map; then ``v`` becomes
    ``(n, -a)`` (after a reflection and a shear fixing ``(0, 1)``) and the
    cone is ``1/n(1, a)``.
    """
    u, v = primitive(u), primitive(v)
    n = abs(det(u, v))
    if n == 0:
        raise ValueError(f"rays {u} and {v} are collinear")
    if n == 1:
        return QuotSing.make(1, 0)
    p, q = u
    _, x, y = xgcd(p, q)
    # rows (q, -p) and (x, y) have determinant 1 and send u to (0, 1)
    vx = q * v[0] - p * v[1]
    vy = x * v[0] + y * v[1]
    if vx < 0:
        vx = -vx
    assert vx == n
    return QuotSing.make(n, (-vy) % n)


def _wps_projection(w: Sequence[int]):
    """Linear map ``Z^3 -> Z^2`` with kernel ``Z w``, oriented so ``v0, v1, v2`` run counterclockwise."""
    u = unimodular_reducer(w)
    sign = 1 if det((u[0][0], u[1][0]), (u[0][1], u[1][1])) > 0 else -1

    def proj(x: Sequence[int]) -> Vec:
        return (sum(u[0][k] * x[k] for k in range(3)),
                sign * sum(u[1][k] * x[k] for k in range(3)))

    return proj


_BASIS = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def wps_fan(w0: int, w1: int, w2: int) -> Fan2:
    """Fan of ``P(w0, w1, w2)``: images of the standard basis in ``Z^3 / Z w``."""
    w = (w0, w1, w2)
    if min(w) < 1:
        raise ValueError(f"weights must be positive: {w}")
    for i in range(3):
        for j in range(i + 1, 3):
            if math.gcd(w[i], w[j]) != 1:
                raise ValueError(f"weights {w} are not pairwise coprime")
    proj = _wps_projection(w)
    # pairwise coprime weights make every image primitive
    return Fan2(tuple(proj(x) for x in _BASIS), weights=w)


def quotient_fan(f: Fan2, e: int, m: Sequence[int]) -> Fan2:
    """Fan of ``Y / mu_e`` for ``mu_e`` acting by ``zeta^(m0, m1, m2)`` on ``Y = P(w)``.

    The lattice becomes ``N = N_Y + Z (m/e)``; rays stay the images of the
    standard basis, rewritten in a basis of ``N``.  The action must be free in
    codimension 1: ``[N : N_Y] = e`` and every ray stays primitive in ``N``.
    """
    if f.weights is None or f.quotient is not None:
        raise ValueError("quotient_fan needs the fan of a weighted projective plane")
    if e < 2:
        raise ValueError(f"group order must be >= 2, got {e}")
    proj = _wps_projection(f.weights)
    if tuple(proj(x) for x in _BASIS) != f.rays:
        raise ValueError("fan rays do not match their weight provenance")
    # e*N is spanned by e*N_Y = e*Z^2 and the image of m
    (h11, h12), (_, h22) = lattice_basis_2d([(e, 0), (0, e), proj(m)])
    index = Fraction(e * e, h11 * h22)
    if index != e:
        raise ValueError(f"lattice index {index} != e = {e}; inconsistent action data")
    rays = []
    for rx, ry in f.rays:
        # e*r = c0*(h11, h12) + c1*(0, h22)
        c0, rem = divmod(e * rx, h11)
        c1, rem2 = divmod(e * ry - c0 * h12, h22)
        assert rem == rem2 == 0
        if math.gcd(c0, c1) != 1:
            raise ValueError(f"mu_{e} with weights {tuple(m)} is not free in codimension 1")
        rays.append((c0, c1))
    return Fan2(tuple(rays), weights=f.weights, quotient=(e, tuple(m)))


def k_squared(f: Fan2) -> Fraction:
    """Anticanonical degree ``K^2 = (D_0 + D_1 + D_2)^2`` from toric intersection numbers.

    With ``delta_i = det(v_i, v_{i+1}) > 0``: ``D_i . D_{i+1} = 1/delta_i`` and
    ``D_i^2 = delta_{i+1} / (delta_{i-1} delta_i)``.
    """
    v = f.rays
    delta = [det(v[i], v[(i + 1) % 3]) for i in range(3)]
    self_int = [Fraction(delta[(i + 1) % 3], delta[i - 1] * delta[i]) for i in range(3)]
    meet = [Fraction(1, delta[i]) for i in range(3)]
    return sum(self_int) + 2 * sum(meet)


def fixed_point_singularities(f: Fan2) -> list[QuotSing]:
    """``[sing at X_0 != 0, sing at X_1 != 0, sing at X_2 != 0]``."""
    return [cone_singularity(*f.cone(i)) for i in range(3)]


@dataclass(frozen=True)
class SurfaceReport:
    """Invariants of the toric surface of a three-ray fan.

    ``singularities`` and ``d_values`` are positional (fixed point ``i``);
    ``valid`` is False when some point is not a T-singularity, in which case
    ``d_values`` and ``noether_ok`` carry no information.
    """
    rays: tuple[Vec, Vec, Vec]
    quot_sings: tuple[QuotSing, QuotSing, QuotSing]
    singularities: tuple[SingClass, SingClass, SingClass]
    d_values: tuple[int, ...]
    k_squared: Fraction
    euler: int = 3
    picard_rank: int = 1
    noether_ok: bool = False
    valid: bool = True
    weights: Optional[tuple[int, int, int]] = None
    quotient: Optional[tuple[int, tuple[int, int, int]]] = None

    @property
    def milnor_total(self) -> int:
        return sum(d - 1 for d in self.d_values)


def surface_report(f: Fan2) -> SurfaceReport:
    qs = tuple(fixed_point_singularities(f))
    classes = tuple(q.classify() for q in qs)
    k2 = k_squared(f)
    valid = not any(isinstance(c, OtherCyclic) for c in classes)
    if valid:
        d_vals = tuple(d_value(c) for c in classes)
        noether = k2 + 3 + sum(milnor_number(c) for c in classes) == 12
    else:
        d_vals, noether = (), False
    return SurfaceReport(rays=f.rays, quot_sings=qs, singularities=classes,
                         d_values=d_vals, k_squared=k2, noether_ok=noether,
                         valid=valid, weights=f.weights, quotient=f.quotient)
