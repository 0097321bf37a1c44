"""Acceptance criteria, one test each.

Every test records a one-line PASS/FAIL verdict; ``conftest.py`` prints the
verdicts at the end of the pytest run, and running this file directly prints
them as well.
"""
import sys
import time

import pytest

from tsing import classification as cls
from tsing import lemmas

VERDICTS: dict[int, str] = {}


def timed(fn, *args, **kwargs):
    start = time.perf_counter()
    out = fn(*args, **kwargs)
    return out, time.perf_counter() - start


def verdict(number, title, ok, detail):
    VERDICTS[number] = f"{'PASS' if ok else 'FAIL'} criterion {number} ({title}): {detail}"
    return ok


def criterion_1():
    found, secs = timed(cls.enumerate_d_triples)
    table = {(rec.expected_d, rec.expected_k2) for rec in cls.default_tables().families.values()}
    ok = (len(found) == 14 and set(found) == table
          and all(k2 == 12 - sum(d) for d, k2 in found)
          and all(k2 != 7 for _, k2 in found) and secs < 1)
    return verdict(1, "d-triples", ok, f"{len(found)} triples, equal to table: "
                   f"{set(found) == table}, {secs:.3f}s (< 1s)")


def criterion_2():
    checks, secs = timed(cls.verify_theorem_toric, 10**4)
    bad = [c for c in checks if not c.ok]
    families = {c.family for c in checks}
    ok = not bad and len(families) == 14 and secs < 30
    detail = f"{len(checks) - len(bad)}/{len(checks)} surfaces over {len(families)} families, {secs:.2f}s (< 30s)"
    if bad:
        detail += f"; first failure {bad[0].family} {bad[0].triple}: {bad[0].failures}"
    return verdict(2, "toric family sweep to 10^4", ok, detail)


def criterion_3():
    rows = cls.verify_an_table()
    bad = [r.an_number for r in rows if not r.ok]
    return verdict(3, "AN table", not bad and len(rows) == 28,
                   f"{len(rows) - len(bad)}/{len(rows)} rows pass" + (f"; failing {bad}" if bad else ""))


def criterion_4():
    s = cls.sporadic_catalog()
    ok = (s.ok and len(s.entries) == 18 and (s.isolated, s.families) == (20, 1)
          and all(e.k_squared == 9 - e.milnor_total >= 1 for e in s.entries))
    return verdict(4, "sporadic catalog", ok, f"{len(s.entries)} configurations, "
                   f"{s.isolated} isolated + {s.families} family" + (f"; {s.failures}" if s.failures else ""))


def criterion_5():
    sw, secs = timed(lemmas.t_string_oracle, 7, 10)
    ok = sw.ok and secs < 10
    return verdict(5, "T-string oracle equivalence", ok,
                   f"{sw.checked} strings, {len(sw.failures)} disagreements, {secs:.2f}s (< 10s)")


def criterion_6():
    sweeps = [lemmas.boundary_selfint(7), lemmas.discrepancy_range(7), lemmas.lemma_T(60, 4, 5)]
    bad = [(s.name, s.failures) for s in sweeps if not s.ok]
    return verdict(6, "lemma suite", not bad,
                   ", ".join(f"{s.name}: {s.checked}" for s in sweeps) + (f"; {bad}" if bad else ""))


def criterion_7():
    sw = lemmas.markov_dynamics(10**6)
    return verdict(7, "Markov dynamics to 10^6", sw.ok,
                   f"{sw.checked} checks" + (f"; {sw.failures}" if sw.failures else ""))


def criterion_8():
    sweeps = [lemmas.hj_round_trip(500), lemmas.reversal_duality(500)]
    bad = [(s.name, s.failures) for s in sweeps if not s.ok]
    return verdict(8, "round trips", not bad,
                   ", ".join(f"{s.name}: {s.checked}" for s in sweeps) + (f"; {bad}" if bad else ""))


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4,
            criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_acceptance(check):
    ok = check()
    number = CRITERIA.index(check) + 1
    assert ok, VERDICTS[number]


if __name__ == "__main__":
    results = [check() for check in CRITERIA]
    for number in sorted(VERDICTS):
        print(VERDICTS[number])
    sys.exit(0 if all(results) else 1)
