"""Cyclic quotient singularities 1/n(1,a), T-singularities and T-strings.

A T-singularity is either Du Val or of the form ``1/(d n^2)(1, d n a - 1)``
with ``gcd(a, n) = 1``; the latter has Milnor number ``d - 1``.  Strings are
Hirzebruch-Jung expansions (see :mod:`tsing.exactmath`), entries >= 2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional, Sequence, Union

import numpy as np

from .exactmath import (HJString, conjugate_fraction, hj_evaluate, hj_expand,
                        mod_inverse, solve_rational)


# --------------------------------------------------------------------------
# singularity classes


@dataclass(frozen=True, slots=True)
class Smooth:
    def __str__(self) -> str:
        return "smooth"


@dataclass(frozen=True, slots=True)
class DuValA:
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"A_r needs r >= 1, got {self.r}")

    def __str__(self) -> str:
        return f"A_{self.r}"


@dataclass(frozen=True, slots=True)
class DuValD:
    r: int

    def __post_init__(self):
        if self.r < 4:
            raise ValueError(f"D_r needs r >= 4, got {self.r}")

    def __str__(self) -> str:
        return f"D_{self.r}"


@dataclass(frozen=True, slots=True)
class DuValE:
    r: int

    def __post_init__(self):
        if self.r not in (6, 7, 8):
            raise ValueError(f"E_r needs r in {{6,7,8}}, got {self.r}")

    def __str__(self) -> str:
        return f"E_{self.r}"


@dataclass(frozen=True, slots=True)
class Tclass:
    """The T_d-singularity ``1/(d n^2)(1, d n a - 1)`` with ``n >= 2``.

    ``a`` is stored as ``min(a, n - a)``; both give the same singularity.
    """
    d: int
    n: int
    a: int

    def __post_init__(self):
        if self.d < 1 or self.n < 2 or not 0 < self.a < self.n or math.gcd(self.a, self.n) != 1:
            raise ValueError(f"invalid T-class parameters d={self.d}, n={self.n}, a={self.a}")
        if self.a > self.n - self.a:
            object.__setattr__(self, "a", self.n - self.a)

    @property
    def order(self) -> int:
        return self.d * self.n * self.n

    @property
    def weight(self) -> int:
        return self.d * self.n * self.a - 1

    def __str__(self) -> str:
        return f"1/{self.order}(1,{self.weight})"


class OtherCyclic(NamedTuple):
    """A cyclic quotient point that is not a T-singularity (canonical ``a``)."""
    n: int
    a: int

    def __str__(self) -> str:
        return f"1/{self.n}(1,{self.a})"


SingClass = Union[Smooth, DuValA, DuValD, DuValE, Tclass, OtherCyclic]

_KIND_ORDER = {Smooth: 0, DuValA: 1, DuValD: 2, DuValE: 3, Tclass: 4, OtherCyclic: 5}


def sing_key(c: SingClass) -> tuple:
    """Total order on singularity classes, for canonical multisets."""
    if isinstance(c, Tclass):
        return (_KIND_ORDER[Tclass], c.order, c.weight)
    if isinstance(c, OtherCyclic):
        return (_KIND_ORDER[OtherCyclic], c.n, c.a)
    if isinstance(c, Smooth):
        return (0,)
    return (_KIND_ORDER[type(c)], c.r)


def multiset(items: Iterable[SingClass]) -> tuple[SingClass, ...]:
    return tuple(sorted(items, key=sing_key))


def without_smooth(items: Iterable[SingClass]) -> tuple[SingClass, ...]:
    return multiset(c for c in items if not isinstance(c, Smooth))


# --------------------------------------------------------------------------
# cyclic quotient singularities


@dataclass(frozen=True, slots=True)
class QuotSing:
    """Cyclic quotient singularity ``1/n(1,a)``, canonicalised.

    ``1/n(1,a)`` and ``1/n(1,a^-1)`` are the same singularity with the
    coordinates swapped; :meth:`make` keeps the smaller of ``a`` and
    ``a^-1 mod n``.  ``n = 1`` is a smooth point (stored with ``a = 0``).
    """
    n: int
    a: int

    @classmethod
    def make(cls, n: int, a: int) -> "QuotSing":
        if n < 1:
            raise ValueError(f"group order must be >= 1, got {n}")
        if n == 1:
            return cls(1, 0)
        a %= n
        if a == 0 or math.gcd(a, n) != 1:
            raise ValueError(f"1/{n}(1,{a}) is not a cyclic quotient singularity")
        return cls(n, min(a, mod_inverse(a, n)))

    @property
    def is_smooth(self) -> bool:
        return self.n == 1

    def classify(self) -> SingClass:
        return classify(self.n, self.a if self.n > 1 else 0)

    def __str__(self) -> str:
        return "smooth" if self.n == 1 else f"1/{self.n}(1,{self.a})"


def classify(n: int, a: int, a_inv: Optional[int] = None) -> SingClass:
    """Classify ``1/n(1,a)`` as Smooth, A_{n-1}, a T_d-class point, or other.

    Du Val takes precedence: ``A_{d-1} = 1/d(1, d-1)`` is the ``n0 = 1``
    degeneration of the T-form and is reported as ``DuValA``.  Both ``a``
    and its inverse mod ``n`` are tried; pass ``a_inv`` if already known.

    >>> classify(25, 9)
    Tclass(d=1, n=5, a=2)
    >>> classify(20, 9)
    Tclass(d=5, n=2, a=1)
    """
    if n < 1:
        raise ValueError(f"group order must be >= 1, got {n}")
    if n == 1:
        return Smooth()
    if not 0 < a < n:
        raise ValueError(f"need 0 < a < n, got n={n}, a={a}")
    if a == n - 1:
        return DuValA(n - 1)
    if a_inv is None:
        a_inv = mod_inverse(a, n)
    for q in (a, a_inv):
        # For 1/(d m^2)(1, d m b - 1): gcd(d m^2, d m b) = d m, so m is
        # forced to be n / gcd(n, q + 1).
        m = n // math.gcd(n, q + 1)
        if m < 2 or n % (m * m):
            continue
        d = n // (m * m)
        b, r = divmod(q + 1, d * m)
        if r == 0 and 0 < b < m and math.gcd(b, m) == 1:
            return Tclass(d, m, b)
    return OtherCyclic(n, min(a, a_inv))


def milnor_number(c: SingClass) -> int:
    if isinstance(c, Smooth):
        return 0
    if isinstance(c, (DuValA, DuValD, DuValE)):
        return c.r
    if isinstance(c, Tclass):
        return c.d - 1
    raise ValueError(f"{c} is not a T-singularity; no Q-Gorenstein smoothing")


def d_value(c: SingClass) -> int:
    return milnor_number(c) + 1


# --------------------------------------------------------------------------
# T-strings


def _as_string(s: Sequence[int]) -> HJString:
    s = tuple(int(b) for b in s)
    if any(b < 2 for b in s):
        raise ValueError(f"string entries must be >= 2: {list(s)}")
    return s


def classify_string(s: Sequence[int]) -> SingClass:
    s = _as_string(s)
    if not s:
        return Smooth()
    f = hj_evaluate(s)
    return classify(f.numerator, f.denominator)


def t_seed(d: int) -> HJString:
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    return (4,) if d == 1 else (3,) + (2,) * (d - 2) + (3,)


def t_steps(s: HJString) -> tuple[HJString, HJString]:
    """The two extension steps ``[b1+1,...,br,2]`` and ``[2,b1,...,br+1]``."""
    return ((s[0] + 1,) + s[1:] + (2,), (2,) + s[:-1] + (s[-1] + 1,))


def generate_t_strings(d: int, max_len: int) -> set[HJString]:
    """All T_d-strings of length <= max_len, by closing the seed under the steps."""
    seed = t_seed(d)
    if len(seed) > max_len:
        return set()
    found = {seed}
    frontier = [seed]
    while frontier:
        nxt = []
        for s in frontier:
            if len(s) + 1 > max_len:
                continue
            for t in t_steps(s):
                if t not in found:
                    found.add(t)
                    nxt.append(t)
        frontier = nxt
    return found


def is_t_string(s: Sequence[int]) -> Optional[int]:
    """Return d if ``s`` resolves a T_d-singularity (n >= 2), else None."""
    c = classify_string(s)
    return c.d if isinstance(c, Tclass) else None


def conjugate_string(s: Sequence[int]) -> HJString:
    f = hj_evaluate(_as_string(s))
    c = conjugate_fraction(f.numerator, f.denominator)
    return hj_expand(c.numerator, c.denominator)


def are_conjugate(left: Sequence[int], right: Sequence[int]) -> bool:
    if not left or not right:
        return False
    return conjugate_string(left) == _as_string(right)


def s_string(left: Sequence[int], right: Sequence[int], t: int) -> HJString:
    """``[a_r,...,a_1, t+2, b_1,...,b_s]`` for a conjugate pair ``left``, ``right``."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    left, right = _as_string(left), _as_string(right)
    if not are_conjugate(left, right):
        raise ValueError(f"{list(left)} and {list(right)} are not conjugate")
    return left[::-1] + (t + 2,) + right


def lemma_T1_check(left, right, t: int) -> bool:
    return is_t_string(conjugate_string(s_string(left, right, t))) == t + 1


def lemma_T2_check(left, right, t: int, b_extra: int) -> bool:
    """Append ``b_extra`` to the S_t-string, conjugate, re-attach ``b_extra``.

    The conjugate chain ``[d_1,...,d_u]`` is read from the ``b_extra`` end of
    the original chain, so ``d_u`` is the curve adjacent to ``b_extra``.  With
    the opposite reading the resulting string is almost never a T-string.
    """
    if b_extra < 2:
        raise ValueError(f"b_extra must be >= 2, got {b_extra}")
    chain = s_string(left, right, t) + (b_extra,)
    conj = conjugate_string(chain[::-1])
    return is_t_string(conj + (b_extra,)) == t + 1


# --------------------------------------------------------------------------
# resolution chains


def chain_matrix(s: Sequence[int]) -> list[list[int]]:
    """Intersection matrix of the chain: ``E_i^2 = -b_i``, neighbours meet once."""
    r = len(s)
    m = [[0] * r for _ in range(r)]
    for i, b in enumerate(s):
        m[i][i] = -b
        if i + 1 < r:
            m[i][i + 1] = m[i + 1][i] = 1
    return m


def discrepancies(s: Sequence[int]) -> list[Fraction]:
    """Coefficients ``a_i`` in ``K_res = pi^* K + sum a_i E_i``.

    Solves ``sum_j a_j E_i.E_j = K.E_i = b_i - 2`` (adjunction).
    """
    s = _as_string(s)
    if not s:
        return []
    return solve_rational(chain_matrix(s), [b - 2 for b in s])


def boundary_pullback_selfint(s: Sequence[int]) -> Fraction:
    """``F^2`` where ``pi^*(uv=0) = D' + F`` on the minimal resolution.

    The strict transform ``D'`` meets each end curve of the chain once (the
    single curve twice when the chain has length one).
    """
    s = _as_string(s)
    if is_t_string(s) is None:
        raise ValueError(f"{list(s)} is not a T-string")
    r = len(s)
    meet = [0] * r
    meet[0] += 1
    meet[-1] += 1
    m = chain_matrix(s)
    f = solve_rational(m, [-x for x in meet])
    return sum(f[i] * m[i][j] * f[j] for i in range(r) for j in range(r))


def t_fibre_partitions(d: int, n: int, a: int) -> set[tuple[SingClass, ...]]:
    """Singularity multisets of fibres of a Q-Gorenstein deformation of a T_d point.

    For every partition ``e_1 + ... + e_s = d`` yield both
    ``{A_{e_1-1}, ..., A_{e_s-1}}`` and ``{T_{e_1}(n,a), A_{e_2-1}, ...}``,
    with ``A_0`` written as Smooth.
    """
    if n < 2 or math.gcd(a, n) != 1:
        raise ValueError(f"need n >= 2 and gcd(a, n) = 1, got n={n}, a={a}")
    a %= n

    def a_type(e: int) -> SingClass:
        return Smooth() if e == 1 else DuValA(e - 1)

    out = set()
    for part in _partitions(d):
        out.add(multiset(a_type(e) for e in part))
        # the T-point may carry any part of the partition
        for i, e1 in enumerate(part):
            rest = part[:i] + part[i + 1:]
            out.add(multiset([Tclass(e1, n, a)] + [a_type(e) for e in rest]))
    return out


def _partitions(d: int, largest: Optional[int] = None) -> list[tuple[int, ...]]:
    largest = d if largest is None else largest
    if d == 0:
        return [()]
    out = []
    for k in range(min(d, largest), 0, -1):
        out.extend((k,) + p for p in _partitions(d - k, k))
    return out


def t_strings_in_box(max_len: int, max_entry: int) -> dict[HJString, int]:
    """Every string of length <= max_len, entries in [2, max_entry], recognised as T_d.

    Exhaustive scan: every string is screened with the same forced-``n0``
    test :func:`classify` uses, vectorised over the whole level, and every
    string that passes is then confirmed by :func:`classify` itself.  Falls
    back to :func:`t_strings_in_box_exact` when numerators could overflow
    64-bit integers.
    """
    if max_len < 1 or max_entry < 2:
        return {}
    if max_entry ** max_len >= 2 ** 62:
        return t_strings_in_box_exact(max_len, max_entry)
    k = max_entry - 1
    entries = np.arange(2, max_entry + 1, dtype=np.int64)
    found = {}

    def collect(r, n, a, a_inv, code):
        for i in np.flatnonzero(_t_screen(n, a, a_inv)):
            c = classify(int(n[i]), int(a[i]), int(a_inv[i]))
            if type(c) is Tclass:
                found[_decode(int(code[i]), r, k)] = c.d

    # level arrays: n, a, a^-1, K(b_2..b_{r-1}) and the string as base-k digits
    n, a, a_inv = entries.copy(), np.ones(k, np.int64), np.ones(k, np.int64)
    inner, code = np.zeros(k, np.int64), np.arange(k, dtype=np.int64)
    collect(1, n, a, a_inv, code)
    for r in range(2, max_len + 1):
        parts = [(b * n - a, n, b * a_inv - inner, a_inv, (b - 2) * k ** (r - 1) + code)
                 for b in range(2, max_entry + 1)]
        if r == max_len:
            # the last level is screened one leading entry at a time
            for nn, aa, ai, _, cc in parts:
                collect(r, nn, aa, ai, cc)
            break
        n, a, a_inv, inner, code = (np.concatenate(col) for col in zip(*parts))
        collect(r, n, a, a_inv, code)
    return found


def _t_screen(n, a, a_inv):
    """Vectorised forced-``n0`` test of :func:`classify` on both representatives."""
    hit = np.zeros(n.shape, dtype=bool)
    for q in (a, a_inv):
        q1 = q + 1
        m = n // np.gcd(n, q1)
        mm = m * m
        ok = (m >= 2) & (n % mm == 0)
        dm = (n // np.where(ok, mm, 1)) * m
        ok &= q1 % dm == 0
        b = q1 // dm
        ok &= (b > 0) & (b < m) & (np.gcd(b, m) == 1)
        hit |= ok
    return hit


def _decode(code: int, r: int, k: int) -> HJString:
    digits = []
    for _ in range(r):
        code, d = divmod(code, k)
        digits.append(d + 2)
    return tuple(digits)


def t_strings_in_box_exact(max_len: int, max_entry: int) -> dict[HJString, int]:
    """Same as :func:`t_strings_in_box`, calling :func:`classify` on every string.

    Strings grow by prepending an entry ``b``, i.e. left-multiplying the
    continuant matrix by ``[[b, -1], [1, 0]]``; for ``s = [b_1..b_r]`` its
    columns hold ``n = K(b_1..b_r)``, ``a = K(b_2..b_r)`` and
    ``a^-1 = K(b_1..b_{r-1})``.
    """
    found = {}
    entries = range(2, max_entry + 1)
    # (string, n, a, a_inv, K(b_2..b_{r-1}))
    stack = [((b,), b, 1, 1, 0) for b in entries] if max_len >= 1 else []
    while stack:
        s, n, a, a_inv, inner = stack.pop()
        c = classify(n, a, a_inv)
        if isinstance(c, Tclass):
            found[s] = c.d
        if len(s) + 1 < max_len:
            stack.extend(((b,) + s, b * n - a, n, b * a_inv - inner, a_inv) for b in entries)
        elif len(s) + 1 == max_len:
            # last level: classify in place, build the string only on a hit
            for b in entries:
                c = classify(b * n - a, n, b * a_inv - inner)
                if type(c) is Tclass:
                    found[(b,) + s] = c.d
    return found
