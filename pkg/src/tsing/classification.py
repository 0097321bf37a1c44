"""Toric del Pezzo families with T-singularities and the tables that go with them.

Table data (family records, the Alexeev-Nikulin matching rows, the sporadic
configurations) is read from ``data/tables.json``; everything else here is
recomputed from scratch and compared against it.
"""
from __future__ import annotations

import itertools
import json
import math
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence, Union

from . import markov
from .markov import MarkovEquation, Triple
from .singularities import (DuValA, DuValD, DuValE, QuotSing, SingClass, Smooth,
                            Tclass, OtherCyclic, are_conjugate, classify,
                            d_value, milnor_number, multiset, t_fibre_partitions,
                            without_smooth)
from .toric import (Fan2, SurfaceReport, lattice_basis_2d, quotient_fan,
                    surface_report, wps_fan)

SCHEMA_VERSION = 1


# --------------------------------------------------------------------------
# singularity notation used in the data file


_TOKEN = re.compile(r"^(?:(\d+)x)?(?:([ADE])_(\d+)|1/(\d+)\(1,(\d+)\)|smooth)$")


def parse_singularity(token: str) -> list[SingClass]:
    """Parse ``"A_3"``, ``"D_5"``, ``"1/4(1,1)"``, ``"2xA_1"``, ``"2x1/9(1,2)"``.

    Returns the list of classes (a multiplicity prefix repeats the entry).
    """
    m = _TOKEN.match(token.replace(" ", ""))
    if not m:
        raise ValueError(f"cannot parse singularity {token!r}")
    count = int(m.group(1) or 1)
    if m.group(2):
        kind, r = m.group(2), int(m.group(3))
        c = {"A": DuValA, "D": DuValD, "E": DuValE}[kind](r)
    elif m.group(4):
        c = classify(int(m.group(4)), int(m.group(5)))
    else:
        c = Smooth()
    return [c] * count


def parse_singularities(tokens: Sequence[str]) -> tuple[SingClass, ...]:
    return multiset(c for tok in tokens for c in parse_singularity(tok))


def format_singularities(items: Sequence[SingClass]) -> str:
    items = without_smooth(items)
    if not items:
        return "smooth"
    counts = Counter(items)
    seen, parts = set(), []
    for c in items:
        if c not in seen:
            seen.add(c)
            parts.append(f"{counts[c]}x{c}" if counts[c] > 1 else str(c))
    return ", ".join(parts)


# --------------------------------------------------------------------------
# table records


@dataclass(frozen=True)
class FamilyRecord:
    """One of the 14 families.  ``base`` is the weighted-plane family for quotients."""
    id: str
    equation: MarkovEquation
    base: Optional[str]
    e: int
    m: Optional[tuple[int, int, int]]
    expected_k2: int
    expected_d: tuple[int, int, int]

    @property
    def weight_map(self) -> tuple[int, int, int]:
        """Coefficients ``k`` with ``w = (k0 a^2, k1 b^2, k2 c^2)``."""
        return self.equation.coeffs

    def weights(self, t: Triple) -> tuple[int, int, int]:
        return tuple(k * x * x for k, x in zip(self.weight_map, t))


@dataclass(frozen=True)
class ANRow:
    an_number: str
    x_sings: tuple[SingClass, ...]
    y_family: str
    y_triple: Triple
    y_sings: tuple[SingClass, ...]
    d_column: tuple[int, ...]


@dataclass(frozen=True)
class SporadicEntry:
    label: str
    index: int
    singularities: tuple[SingClass, ...]
    multiplicity_note: Union[int, str]

    @property
    def milnor_total(self) -> int:
        return sum(milnor_number(c) for c in self.singularities)

    @property
    def k_squared(self) -> int:
        return 9 - self.milnor_total


@dataclass
class Tables:
    families: dict[str, FamilyRecord]
    an_rows: list[ANRow]
    sporadic: list[SporadicEntry]
    source: str = "<builtin>"


def load_tables(path: Optional[Union[str, Path]] = None) -> Tables:
    if path is None:
        text = resources.files("tsing").joinpath("data/tables.json").read_text(encoding="utf-8")
        source = "<builtin>"
    else:
        text = Path(path).read_text(encoding="utf-8")
        source = str(path)
    raw = json.loads(text)
    if raw.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported table schema version {raw.get('schema_version')!r}")
    families = {}
    for f in raw["families"]:
        families[f["id"]] = FamilyRecord(
            id=f["id"], equation=markov.equation(f["equation"]), base=f["base"],
            e=f["e"], m=tuple(f["m"]) if f["m"] else None,
            expected_k2=f["k2"], expected_d=tuple(sorted(f["d"])))
    rows = [ANRow(an_number=r["an"], x_sings=parse_singularities(r["x"]),
                  y_family=r["y_family"], y_triple=tuple(r["y_triple"]),
                  y_sings=parse_singularities(r["y"]), d_column=tuple(sorted(r["d"])))
            for r in raw["an_rows"]]
    spor = [SporadicEntry(label=s["label"], index=s["index"],
                          singularities=parse_singularities(s["singularities"]),
                          multiplicity_note=s["surfaces"])
            for s in raw["sporadic"]]
    return Tables(families, rows, spor, source)


_DEFAULT: Optional[Tables] = None


def default_tables() -> Tables:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = load_tables()
    return _DEFAULT


# --------------------------------------------------------------------------
# d-triples


def enumerate_d_triples() -> list[tuple[tuple[int, int, int], int]]:
    """Unordered ``d`` with ``sum(d) <= 11`` and ``(12 - sum d) d0 d1 d2`` a perfect square."""
    out = []
    for d in itertools.combinations_with_replacement(range(1, 10), 3):
        k2 = 12 - sum(d)
        if k2 < 1:
            continue
        x = k2 * d[0] * d[1] * d[2]
        if math.isqrt(x) ** 2 == x:
            out.append((d, k2))
    return out


# --------------------------------------------------------------------------
# family surfaces


def family_fan(rec: FamilyRecord, t: Triple) -> Fan2:
    if not markov.is_solution(rec.equation, t):
        raise ValueError(f"{t} does not solve {rec.equation} (residual {rec.equation.residual(t)})")
    fan = wps_fan(*rec.weights(t))
    if rec.m is not None:
        fan = quotient_fan(fan, rec.e, rec.m)
    return fan


def build_family_surface(rec: FamilyRecord, t: Triple) -> SurfaceReport:
    return surface_report(family_fan(rec, t))


def local_quotient(w: Sequence[int], i: int, e: int = 1,
                   m: Sequence[int] = (0, 0, 0)) -> QuotSing:
    """The singularity of ``P(w)/mu_e`` at the point ``X_i != 0``, from its local group.

    In the chart ``X_i = 1`` with coordinates ``(X_j, X_k)``, the local group is
    generated by ``mu_{w_i}`` with weights ``(w_j, w_k)`` and by ``mu_e``
    composed with the ``C^*`` element that restores ``X_i = 1``.  As a
    subgroup of ``(Z/N)^2``, ``N = e w_i``, it must be cyclic of order ``N``
    and contain ``(1, a)``; the point is then ``1/N(1, a)``.
    """
    j, k = (i + 1) % 3, (i + 2) % 3
    n = e * w[i]
    if n == 1:
        return QuotSing.make(1, 0)
    gens = [(e * w[j], e * w[k]),
            (m[j] * w[i] - m[i] * w[j], m[k] * w[i] - m[i] * w[k]),
            (n, 0), (0, n)]
    (h11, h12), (_, h22) = lattice_basis_2d(gens)
    if h11 != 1 or h22 != n:
        raise ValueError(f"local group at X_{i} is not a small cyclic group of order {n}")
    return QuotSing.make(n, h12)


def predicted_singularities(rec: FamilyRecord, t: Triple) -> tuple[SingClass, SingClass, SingClass]:
    """Positional classes at the three fixed points, via :func:`local_quotient`.

    Independent of the fan construction; used to cross-check it.
    """
    if not markov.is_solution(rec.equation, t):
        raise ValueError(f"{t} does not solve {rec.equation}")
    w = rec.weights(t)
    m = rec.m or (0, 0, 0)
    return tuple(local_quotient(w, i, rec.e, m).classify() for i in range(3))


def _n_of(c: SingClass) -> int:
    return c.n if isinstance(c, Tclass) else 1


@dataclass
class FamilyCheck:
    family: str
    triple: Triple
    failures: list[str] = field(default_factory=list)
    report: Optional[SurfaceReport] = None

    @property
    def ok(self) -> bool:
        return not self.failures


def check_family_surface(rec: FamilyRecord, t: Triple) -> FamilyCheck:
    res = FamilyCheck(rec.id, t)
    fail = res.failures.append
    try:
        rep = build_family_surface(rec, t)
    except ValueError as exc:
        fail(f"construction: {exc}")
        return res
    res.report = rep
    if not rep.valid:
        fail(f"non-T singularity: {[str(c) for c in rep.singularities]}")
        return res
    w = rec.weights(t)
    if tuple(sorted(rep.d_values)) != rec.expected_d:
        fail(f"d-values {sorted(rep.d_values)} != {list(rec.expected_d)}")
    if rep.k_squared != rec.expected_k2:
        fail(f"K^2 {rep.k_squared} != {rec.expected_k2}")
    if rep.k_squared != Fraction(sum(w) ** 2, w[0] * w[1] * w[2] * rec.e):
        fail("intrinsic K^2 disagrees with (sum w)^2 / (prod w * e)")
    if not rep.noether_ok:
        fail("Noether: K^2 + 3 + sum mu != 12")
    # d_i n_i^2 = e w_i, and the Markov identity in the d_i, n_i
    d = rep.d_values
    n = [_n_of(c) for c in rep.singularities]
    orders = [d[i] * n[i] ** 2 for i in range(3)]
    if orders != [rec.e * x for x in w]:
        fail(f"orders {orders} != e*w = {[rec.e * x for x in w]}")
    if math.gcd(*orders) != rec.e:
        fail(f"gcd of d_i n_i^2 is {math.gcd(*orders)}, expected e = {rec.e}")
    prod_d = d[0] * d[1] * d[2]
    if rep.k_squared.denominator != 1:
        fail("K^2 not integral")
    else:
        x = int(rep.k_squared) * prod_d
        lam = math.isqrt(x)
        if lam * lam != x:
            fail(f"sqrt(K^2 d0 d1 d2) = sqrt({x}) not integral")
        elif sum(orders) != lam * n[0] * n[1] * n[2]:
            fail("sum d_i n_i^2 != sqrt(K^2 d0 d1 d2) n0 n1 n2")
    if rec.base is None and any(math.gcd(w[i], w[j]) != 1 for i, j in ((0, 1), (0, 2), (1, 2))):
        fail(f"weights {w} not pairwise coprime")
    predicted = predicted_singularities(rec, t)
    if tuple(predicted) != tuple(rep.singularities):
        fail(f"fan gives {[str(c) for c in rep.singularities]}, local groups give "
             f"{[str(c) for c in predicted]}")
    return res


def verify_theorem_toric(bound: int, tables: Optional[Tables] = None) -> list[FamilyCheck]:
    """Check every family on every base solution with entries <= bound."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    tables = tables or default_tables()
    out = []
    for rec in tables.families.values():
        for t in markov.sorted_solutions(rec.equation, bound):
            out.append(check_family_surface(rec, t))
    return out


# --------------------------------------------------------------------------
# Alexeev-Nikulin matching


def rho_preserving_images(c: SingClass) -> set[tuple[SingClass, ...]]:
    """Singularities a point can deform to while keeping the Euler number.

    Du Val points stay put; a T_d point with n >= 2 either stays or becomes
    ``A_{d-1}``.  Read off from the fibre partitions as those with the same
    total Milnor number.
    """
    if isinstance(c, Tclass):
        mu = milnor_number(c)
        return {without_smooth(p) for p in t_fibre_partitions(c.d, c.n, c.a)
                if sum(milnor_number(x) for x in p) == mu}
    return {without_smooth([c])}


def reachable(y_sings: Sequence[SingClass], x_sings: Sequence[SingClass]) -> bool:
    target = without_smooth(x_sings)
    options = [rho_preserving_images(c) for c in without_smooth(y_sings)]
    for choice in itertools.product(*options):
        if multiset(c for part in choice for c in part) == target:
            return True
    return False


def _padded_d(sings: Sequence[SingClass], size: int = 3) -> tuple[int, ...]:
    ds = [d_value(c) for c in without_smooth(sings)]
    return tuple(sorted(ds + [1] * (size - len(ds))))


@dataclass
class RowCheck:
    an_number: str
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def check_an_row(row: ANRow, tables: Tables) -> RowCheck:
    res = RowCheck(row.an_number)
    fail = res.failures.append
    rec = tables.families.get(row.y_family)
    if rec is None:
        fail(f"unknown family {row.y_family}")
        return res
    try:
        rep = build_family_surface(rec, row.y_triple)
    except ValueError as exc:
        fail(f"construction: {exc}")
        return res
    if without_smooth(rep.singularities) != without_smooth(row.y_sings):
        fail(f"Y has {format_singularities(rep.singularities)}, "
             f"table says {format_singularities(row.y_sings)}")
    if not reachable(row.y_sings, row.x_sings):
        fail("X singularities not reachable by T_d -> A_{d-1} / identity")
    if _padded_d(row.x_sings) != row.d_column:
        fail(f"d-values of X {list(_padded_d(row.x_sings))} != {list(row.d_column)}")
    if rep.valid and tuple(sorted(rep.d_values)) != row.d_column:
        fail(f"d-values of Y {sorted(rep.d_values)} != {list(row.d_column)}")
    mu_x = sum(milnor_number(c) for c in row.x_sings)
    mu_y = sum(milnor_number(c) for c in row.y_sings)
    if mu_x != mu_y:
        fail(f"Milnor totals differ: X {mu_x}, Y {mu_y}")
    if sum(row.d_column) != 12 - rep.k_squared:
        fail(f"d column sums to {sum(row.d_column)}, 12 - K^2 = {12 - rep.k_squared}")
    return res


def verify_an_table(tables: Optional[Tables] = None) -> list[RowCheck]:
    tables = tables or default_tables()
    return [check_an_row(row, tables) for row in tables.an_rows]


# --------------------------------------------------------------------------
# sporadic surfaces


@dataclass
class SporadicSummary:
    entries: list[SporadicEntry]
    failures: list[str]
    isolated: int
    families: int

    @property
    def ok(self) -> bool:
        return not self.failures


def sporadic_catalog(tables: Optional[Tables] = None) -> SporadicSummary:
    tables = tables or default_tables()
    failures = []
    isolated = families = 0
    quarter = classify(4, 1)
    for s in tables.sporadic:
        if s.milnor_total > 8 or s.k_squared < 1:
            failures.append(f"{s.label}: K^2 = {s.k_squared} < 1")
        if s.index == 2 and s.singularities.count(quarter) != 1:
            failures.append(f"{s.label}: index 2 entry needs exactly one 1/4(1,1)")
        if s.index == 1 and not all(isinstance(c, (DuValA, DuValD, DuValE)) for c in s.singularities):
            failures.append(f"{s.label}: Gorenstein entry with a non-Du Val point")
        if isinstance(s.multiplicity_note, int):
            isolated += s.multiplicity_note
        else:
            families += 1
    return SporadicSummary(list(tables.sporadic), failures, isolated, families)


# --------------------------------------------------------------------------
# degenerate fibres of rulings


@dataclass(frozen=True)
class FibreGraph:
    """Dual graph of a candidate degenerate fibre.

    ``chain`` lists self-intersections negated (1 marks a (-1)-curve).  For
    type (II) graphs, ``branch`` is the second chain hanging off
    ``chain[branch_at]``, starting at the curve adjacent to it.
    """
    chain: tuple[int, ...]
    branch: tuple[int, ...] = ()
    branch_at: Optional[int] = None

    def __post_init__(self):
        if not self.chain or any(b < 1 for b in self.chain + self.branch):
            raise ValueError(f"malformed fibre graph {self}")
        if bool(self.branch) != (self.branch_at is not None):
            raise ValueError("branch and branch_at must be given together")
        if self.branch_at is not None and not 0 <= self.branch_at < len(self.chain):
            raise ValueError(f"branch_at {self.branch_at} out of range")


def validate_fibre(g: FibreGraph) -> Optional[str]:
    """Return ``"O"``, ``"I"``, ``"II"`` for the admissible shapes, else None."""
    c = g.chain
    if g.branch_at is None:
        ones = [i for i, b in enumerate(c) if b == 1]
        if len(c) >= 2 and ones == [0, len(c) - 1] and all(b == 2 for b in c[1:-1]):
            return "O"
        if len(ones) != 1:
            return None
        p = ones[0]
        left, right = c[:p][::-1], c[p + 1:]
        if left and right and are_conjugate(left, right):
            return "I"
        return None
    if 1 in c or g.branch[0] != 1 or any(b != 2 for b in g.branch[1:]):
        return None
    p = g.branch_at
    t = len(g.branch) - 1
    left, right = c[:p][::-1], c[p + 1:]
    if c[p] == t + 2 and left and right and are_conjugate(left, right):
        return "II"
    return None


def contracts_to_fibre(g: FibreGraph) -> bool:
    """Blow down (-1)-curves until nothing is left to contract; True iff a single 0-curve remains.

    Works on a general weighted tree; independent of :func:`validate_fibre`.
    """
    nodes = list(g.chain) + list(g.branch)
    weight = {i: -b for i, b in enumerate(nodes)}
    adj = {i: set() for i in weight}
    for i in range(len(g.chain) - 1):
        adj[i].add(i + 1)
        adj[i + 1].add(i)
    if g.branch:
        off = len(g.chain)
        adj[g.branch_at].add(off)
        adj[off].add(g.branch_at)
        for i in range(off, off + len(g.branch) - 1):
            adj[i].add(i + 1)
            adj[i + 1].add(i)
    while len(weight) > 1:
        minus_one = [i for i in weight if weight[i] == -1 and len(adj[i]) <= 2]
        if not minus_one:
            return False
        i = minus_one[0]
        nbrs = adj.pop(i)
        del weight[i]
        for j in nbrs:
            adj[j].discard(i)
            weight[j] += 1
        if len(nbrs) == 2:
            a, b = nbrs
            adj[a].add(b)
            adj[b].add(a)
    (w,) = weight.values()
    return w == 0
