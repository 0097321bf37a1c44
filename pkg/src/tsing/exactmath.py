"""Exact integer/rational helpers and Hirzebruch-Jung continued fractions.

Everything here works on Python ints and :class:`fractions.Fraction`, so
nothing overflows and nothing is ever rounded.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

HJString = tuple[int, ...]


def gcd(a: int, b: int) -> int:
    if a == 0 and b == 0:
        raise ValueError("gcd(0, 0) is undefined")
    return math.gcd(a, b)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def mod_inverse(a: int, n: int) -> int:
    """Return ``a'`` in ``[1, n-1]`` with ``a * a' = 1 (mod n)``."""
    if n < 2:
        raise ValueError(f"modulus must be >= 2, got {n}")
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not invertible modulo {n}")
    return pow(a, -1, n)


def _check_pair(n: int, a: int) -> None:
    if n < 2 or not 0 < a < n or math.gcd(a, n) != 1:
        raise ValueError(f"need 0 < a < n with gcd(a, n) = 1, got n={n}, a={a}")


def hj_expand(n: int, a: int) -> HJString:
    """Hirzebruch-Jung expansion ``n/a = b1 - 1/(b2 - 1/(... - 1/br))``.

    Uses the ceiling recurrence ``b = ceil(n/a)``, ``(n, a) <- (a, b*a - n)``.
    Every entry is >= 2.
    """
    _check_pair(n, a)
    out = []
    while a:
        b = -(-n // a)
        out.append(b)
        n, a = a, b * a - n
    return tuple(out)


def hj_evaluate(s: Sequence[int]) -> Fraction:
    """Evaluate a HJ string right to left.  The empty string is rejected."""
    if len(s) == 0:
        raise ValueError("empty HJ string (smooth point) has no fraction")
    if any(b < 2 for b in s):
        raise ValueError(f"HJ string entries must be >= 2: {list(s)}")
    val = Fraction(s[-1])
    for b in reversed(s[:-1]):
        val = b - 1 / val
    return val


def conjugate_fraction(n: int, a: int) -> Fraction:
    """The conjugate ``n/(n-a)`` of ``n/a``; ``2/1`` is self-conjugate."""
    _check_pair(n, a)
    return Fraction(n, n - a)


def solve_rational(matrix: Sequence[Sequence[int | Fraction]],
                   rhs: Sequence[int | Fraction]) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly by Gaussian elimination.

    Raises ValueError on a singular system.
    """
    n = len(matrix)
    rows = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(matrix)]
    for col in range(n):
        piv = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        rows[col], rows[piv] = rows[piv], rows[col]
        p = rows[col][col]
        rows[col] = [v / p for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]
