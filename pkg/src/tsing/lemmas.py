"""Exhaustive sweeps over the string and Markov lemmas.

Each sweep returns a :class:`Sweep` with the number of cases checked and the
first few counterexamples; ``ok`` means none were found.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from . import markov
from .exactmath import conjugate_fraction, hj_evaluate, hj_expand, mod_inverse
from .singularities import (boundary_pullback_selfint, discrepancies,
                            generate_t_strings, lemma_T1_check, lemma_T2_check,
                            t_strings_in_box)

MAX_EXAMPLES = 5


@dataclass
class Sweep:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, passed: bool, case) -> None:
        self.checked += 1
        if not passed and len(self.failures) < MAX_EXAMPLES:
            self.failures.append(case)


def coprime_pairs(max_n: int):
    for n in range(2, max_n + 1):
        for a in range(1, n):
            if math.gcd(a, n) == 1:
                yield n, a


def t_strings_by_generation(max_len: int, max_entry: int | None = None) -> dict[tuple, int]:
    out = {}
    for d in range(1, max_len + 1):
        for s in generate_t_strings(d, max_len):
            if max_entry is None or max(s) <= max_entry:
                out[s] = d
    return out


def hj_round_trip(max_n: int = 500) -> Sweep:
    sw = Sweep(f"hj round trip, n <= {max_n}")
    for n, a in coprime_pairs(max_n):
        sw.record(hj_evaluate(hj_expand(n, a)) == Fraction(n, a), (n, a))
    return sw


def reversal_duality(max_n: int = 500) -> Sweep:
    sw = Sweep(f"reversed string = n/a^-1, n <= {max_n}")
    for n, a in coprime_pairs(max_n):
        sw.record(hj_expand(n, a)[::-1] == hj_expand(n, mod_inverse(a, n)), (n, a))
    return sw


def conjugate_construction(max_n: int = 200) -> Sweep:
    """``[b1+1, b2..]`` and ``[2, c1..]`` are again conjugate."""
    sw = Sweep(f"conjugate pair construction, n <= {max_n}")
    for n, a in coprime_pairs(max_n):
        b = hj_expand(n, a)
        c = hj_expand(n, n - a)
        b2, c2 = (b[0] + 1,) + b[1:], (2,) + c
        fb, fc = hj_evaluate(b2), hj_evaluate(c2)
        ok = fb.numerator == fc.numerator and fb.denominator + fc.denominator == fb.numerator
        sw.record(ok, (b, c))
    return sw


def t_string_oracle(max_len: int = 7, max_entry: int = 10) -> Sweep:
    """Arithmetic recognition over the whole box == closure of the seeds under the two steps."""
    sw = Sweep(f"T-string recognition vs generation, length <= {max_len}, entries <= {max_entry}")
    recognised = t_strings_in_box(max_len, max_entry)
    generated = t_strings_by_generation(max_len, max_entry)
    sw.checked = sum((max_entry - 1) ** r for r in range(1, max_len + 1))
    for s in sorted(set(recognised) | set(generated)):
        if recognised.get(s) != generated.get(s) and len(sw.failures) < MAX_EXAMPLES:
            sw.failures.append((s, recognised.get(s), generated.get(s)))
    return sw


def boundary_selfint(max_len: int = 7) -> Sweep:
    sw = Sweep(f"F^2 = -1 on T-strings, length <= {max_len}")
    for s in t_strings_by_generation(max_len):
        sw.record(boundary_pullback_selfint(s) == -1, s)
    return sw


def discrepancy_range(max_len: int = 7) -> Sweep:
    """Discrepancies lie in (-1, 0) on T-strings; all-2 chains are crepant."""
    sw = Sweep(f"discrepancies in (-1, 0), length <= {max_len}")
    for s in t_strings_by_generation(max_len):
        sw.record(all(-1 < x < 0 for x in discrepancies(s)), s)
    for r in range(1, max_len + 1):
        sw.record(all(x == 0 for x in discrepancies((2,) * r)), (2,) * r)
    return sw


def sum_identity(max_len: int = 7) -> Sweep:
    sw = Sweep(f"sum of T_d-string entries = 3r + 2 - d, length <= {max_len}")
    for s, d in t_strings_by_generation(max_len).items():
        sw.record(sum(s) == 3 * len(s) + 2 - d, s)
    return sw


def lemma_T(max_n: int = 60, max_t: int = 4, max_b: int = 5) -> Sweep:
    sw = Sweep(f"S_t-string lemmas, n <= {max_n}, t <= {max_t}, b <= {max_b}")
    for n, a in coprime_pairs(max_n):
        left, right = hj_expand(n, a), hj_expand(n, n - a)
        for t in range(max_t + 1):
            sw.record(lemma_T1_check(left, right, t), (left, right, t))
            for b in range(2, max_b + 1):
                sw.record(lemma_T2_check(left, right, t, b), (left, right, t, b))
    return sw


def markov_dynamics(bound: int = 10**6) -> Sweep:
    """Mutation is an involution, stays on the equation, and descent reaches a minimal solution."""
    sw = Sweep(f"Markov mutation/descent, entries <= {bound}")
    for fid, eq in markov.EQUATIONS.items():
        for t in markov.enumerate_solutions(eq, bound):
            for pos in range(3):
                s = markov.mutate(eq, t, pos)
                sw.record(markov.is_solution(eq, s), (fid, t, pos, "closure"))
                sw.record(markov.mutate(eq, s, pos) == t, (fid, t, pos, "involution"))
            path = markov.descend(eq, t)
            sw.record(path[-1] in eq.minimal_solutions, (fid, t, "descent"))
            # along the descent the largest entry never grows
            sw.record(all(max(u) >= max(v) for u, v in zip(path, path[1:])), (fid, t, "monotone"))
    return sw


def conjugate_fraction_involution(max_n: int = 200) -> Sweep:
    sw = Sweep(f"conjugation is an involution, n <= {max_n}")
    for n, a in coprime_pairs(max_n):
        c = conjugate_fraction(n, a)
        sw.record(conjugate_fraction(c.numerator, c.denominator) == Fraction(n, a), (n, a))
    return sw


def all_sweeps(markov_bound: int = 10**6) -> list[Sweep]:
    return [hj_round_trip(), reversal_duality(), conjugate_fraction_involution(),
            conjugate_construction(),
            t_string_oracle(), boundary_selfint(), discrepancy_range(),
            sum_identity(), lemma_T(), markov_dynamics(markov_bound)]
