import math

import pytest
from hypothesis import given, strategies as st

from tsing import markov
from tsing.markov import (EQUATIONS, descend, descent_step, enumerate_solutions,
                          equation, is_solution, mutate, sorted_solutions)


def brute_force(eq, bound):
    """Solve for c as a quadratic root for every (a, b) in the box."""
    out = set()
    al, be, ga = eq.coeffs
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            # ga c^2 - lam a b c + (al a^2 + be b^2) = 0
            p, q = eq.lam * a * b, al * a * a + be * b * b
            disc = p * p - 4 * ga * q
            if disc < 0:
                continue
            r = math.isqrt(disc)
            if r * r != disc:
                continue
            for num in (p - r, p + r):
                if num > 0 and num % (2 * ga) == 0 and num // (2 * ga) <= bound:
                    out.add((a, b, num // (2 * ga)))
    return out


@pytest.mark.parametrize("fid", sorted(EQUATIONS))
def test_enumeration_is_complete(fid):
    eq = EQUATIONS[fid]
    assert enumerate_solutions(eq, 150) == brute_force(eq, 150)


def test_examples():
    assert (1, 2, 5) in enumerate_solutions(equation(1), 5)
    assert enumerate_solutions(equation(1), 1) == {(1, 1, 1)}
    assert enumerate_solutions(equation(4), 2) == {(1, 2, 1), (2, 1, 1)}
    assert sorted_solutions(equation(2), 3)[:2] == [(1, 1, 1), (1, 3, 1)]
    assert str(equation(4)) == "a^2 + b^2 + 5c^2 = 5abc"


def test_bad_input():
    with pytest.raises(ValueError):
        equation(5)
    with pytest.raises(ValueError):
        mutate(equation(1), (1, 1, 1), 3)
    with pytest.raises(ValueError):
        markov.MarkovEquation(9, (1, 1, 2), 3, ((1, 1, 1),))
    assert not is_solution(equation(1), (0, 0, 0))
    assert equation(1).residual((1, 1, 3)) == 2


@st.composite
def solution(draw):
    fid = draw(st.sampled_from(sorted(EQUATIONS)))
    eq = EQUATIONS[fid]
    t = draw(st.sampled_from(eq.minimal_solutions))
    for pos in draw(st.lists(st.integers(0, 2), max_size=25)):
        t = mutate(eq, t, pos)
    return eq, t


@given(solution(), st.integers(0, 2))
def test_mutation_involution_and_closure(sol, pos):
    eq, t = sol
    assert is_solution(eq, t)
    s = mutate(eq, t, pos)
    assert is_solution(eq, s)
    assert mutate(eq, s, pos) == t


@given(solution())
def test_descent_reaches_minimal(sol):
    eq, t = sol
    path = descend(eq, t)
    assert path[-1] in eq.minimal_solutions
    assert all(sum(u) > sum(v) for u, v in zip(path, path[1:]))
    assert descent_step(eq, path[-1]) is None


@pytest.mark.parametrize("fid", sorted(EQUATIONS))
def test_symmetries(fid):
    eq = EQUATIONS[fid]
    sols = enumerate_solutions(eq, 10**4)
    # swapping two entries with equal coefficients is a symmetry
    for i, j in [(0, 1), (0, 2), (1, 2)]:
        if eq.coeffs[i] == eq.coeffs[j]:
            for t in sols:
                s = list(t)
                s[i], s[j] = s[j], s[i]
                assert tuple(s) in sols
