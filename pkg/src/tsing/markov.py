"""Markov-type equations ``alpha a^2 + beta b^2 + gamma c^2 = lam a b c``.

Solutions form trees under mutation: view the equation as a quadratic in one
variable and swap to the other root (Vieta).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

Triple = tuple[int, int, int]


@dataclass(frozen=True)
class MarkovEquation:
    family_id: int
    coeffs: tuple[int, int, int]
    lam: int
    minimal_solutions: tuple[Triple, ...]

    def __post_init__(self):
        if any(self.lam % c for c in self.coeffs):
            raise ValueError(f"every coefficient must divide lambda: {self.coeffs}, {self.lam}")

    def residual(self, t: Triple) -> int:
        """``lhs - rhs``; zero exactly on solutions."""
        a, b, c = t
        al, be, ga = self.coeffs
        return al * a * a + be * b * b + ga * c * c - self.lam * a * b * c

    def __str__(self) -> str:
        terms = [f"{k}{v}^2" if k != 1 else f"{v}^2" for k, v in zip(self.coeffs, "abc")]
        return f"{' + '.join(terms)} = {self.lam}abc"


EQUATIONS: dict[int, MarkovEquation] = {
    1: MarkovEquation(1, (1, 1, 1), 3, ((1, 1, 1),)),
    2: MarkovEquation(2, (1, 1, 2), 4, ((1, 1, 1),)),
    3: MarkovEquation(3, (1, 2, 3), 6, ((1, 1, 1),)),
    4: MarkovEquation(4, (1, 1, 5), 5, ((1, 2, 1), (2, 1, 1))),
}


def equation(family_id: int) -> MarkovEquation:
    try:
        return EQUATIONS[int(family_id)]
    except (KeyError, ValueError):
        raise ValueError(f"unknown Markov-type equation {family_id!r}; expected 1-4") from None


def is_solution(eq: MarkovEquation, t: Triple) -> bool:
    if any(x <= 0 for x in t):
        return False
    return eq.residual(t) == 0


def mutate(eq: MarkovEquation, t: Triple, pos: int) -> Triple:
    """Replace entry ``pos`` by the other root: ``x -> (lam/coeff) * (product of others) - x``."""
    if pos not in (0, 1, 2):
        raise ValueError(f"position must be 0, 1 or 2, got {pos}")
    others = [t[i] for i in range(3) if i != pos]
    new = eq.lam // eq.coeffs[pos] * others[0] * others[1] - t[pos]
    if new <= 0:
        raise ValueError(f"mutation of {t} at {pos} gives nonpositive entry {new}")
    out = list(t)
    out[pos] = new
    return tuple(out)


def descent_step(eq: MarkovEquation, t: Triple) -> Optional[tuple[int, Triple]]:
    """A mutation that strictly lowers ``a + b + c`` (the steepest one), or None."""
    best = None
    for pos in range(3):
        try:
            s = mutate(eq, t, pos)
        except ValueError:
            continue
        if sum(s) < sum(t) and (best is None or sum(s) < sum(best[1])):
            best = (pos, s)
    return best


def descend(eq: MarkovEquation, t: Triple, max_steps: int = 10_000) -> list[Triple]:
    """Path from ``t`` down to a solution admitting no descent."""
    path = [t]
    for _ in range(max_steps):
        step = descent_step(eq, path[-1])
        if step is None:
            return path
        path.append(step[1])
    raise RuntimeError(f"descent from {t} did not terminate in {max_steps} steps")


def enumerate_solutions(eq: MarkovEquation, bound: int) -> set[Triple]:
    """All ordered solutions with every entry <= bound, by BFS from the minimal ones."""
    seen = {t for t in eq.minimal_solutions if max(t) <= bound}
    queue = deque(seen)
    while queue:
        t = queue.popleft()
        for pos in range(3):
            s = mutate(eq, t, pos)
            if max(s) <= bound and s not in seen:
                seen.add(s)
                queue.append(s)
    return seen


def sorted_solutions(eq: MarkovEquation, bound: int) -> list[Triple]:
    return sorted(enumerate_solutions(eq, bound), key=lambda t: (max(t), t))
