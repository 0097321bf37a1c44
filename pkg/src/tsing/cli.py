"""Command-line front end: ``tsing [--json] [--data PATH] COMMAND ...``.

Commands::

    hj N A                      continued fraction and classification of 1/N(1,A)
    markov FAMILY [--bound B]   solutions of a Markov-type equation (FAMILY in 1..4)
    surface FAMILY a,b,c        toric surface of a family on a base solution
    verify SCOPE [--bound B]    SCOPE in d-triples, toric, an-table, sporadic, lemmas, all

Every command builds a :class:`Report`.  The text rendering prints one
``key=value; key=value`` line per record between ``# command`` / ``# status``
header lines and a ``# summary`` footer.  ``--json`` prints the same content
as line-delimited JSON: one object per record with ``"kind": "record"``,
then one ``"kind": "summary"`` object carrying ``command``, ``status`` and the
summary counts.  Every object carries ``schema_version``, and every value is
a string, so integers of any size appear as decimal strings.

The table file given with ``--data`` has the layout of the bundled
``tsing/data/tables.json``: an integer ``schema_version`` and the arrays
``families``, ``an_rows`` and ``sporadic``.

Exit codes: 0 on success, 1 when a verification check fails, 2 on bad input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence, TextIO

from . import classification as cls
from . import lemmas, markov
from .exactmath import hj_expand, mod_inverse
from .singularities import (OtherCyclic, QuotSing, conjugate_string, d_value,
                            milnor_number)

SCHEMA_VERSION = 1
SCOPES = ("d-triples", "toric", "an-table", "sporadic", "lemmas")


class InputError(Exception):
    """Bad user input; reported on stderr with exit code 2."""


@dataclass
class Report:
    command: str
    status: str = "info"
    records: list[dict[str, str]] = field(default_factory=list)
    summary: dict[str, str] = field(default_factory=dict)

    def add(self, **values) -> None:
        self.records.append({k: _text(v) for k, v in values.items()})

    def set_summary(self, **values) -> None:
        self.summary.update({k: _text(v) for k, v in values.items()})

    @property
    def exit_code(self) -> int:
        return 1 if self.status == "fail" else 0

    def failing(self) -> list[dict[str, str]]:
        return [r for r in self.records if r.get("status") == "fail"]


def _text(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_text(x) for x in v) + "]"
    return str(v)


# --------------------------------------------------------------------------
# rendering


def _line(d: dict[str, str]) -> str:
    for k, v in d.items():
        if "; " in v or "\n" in v:
            raise ValueError(f"value for {k!r} cannot be rendered as text: {v!r}")
    return "; ".join(f"{k}={v}" for k, v in d.items())


def render_text(rep: Report) -> str:
    out = [f"# command: {rep.command}", f"# status: {rep.status}"]
    out += [_line(r) for r in rep.records]
    out.append("# summary: " + _line(rep.summary))
    return "\n".join(out) + "\n"


def render_json(rep: Report) -> str:
    version = str(SCHEMA_VERSION)
    lines = [json.dumps({"schema_version": version, "kind": "record", **r}) for r in rep.records]
    lines.append(json.dumps({"schema_version": version, "kind": "summary",
                             "command": rep.command, "status": rep.status,
                             **rep.summary}))
    return "\n".join(lines) + "\n"


def parse_text_records(text: str) -> list[dict[str, str]]:
    """Inverse of the record lines of :func:`render_text`."""
    out = []
    for line in text.splitlines():
        if not line or line.startswith("#"):
            continue
        out.append(dict(part.split("=", 1) for part in line.split("; ")))
    return out


# --------------------------------------------------------------------------
# commands


def cmd_hj(n: int, a: int) -> Report:
    if n < 2 or not 0 < a < n:
        raise InputError(f"need n >= 2 and 0 < a < n, got n={n}, a={a}")
    try:
        a_inv = mod_inverse(a, n)
    except ValueError:
        raise InputError(f"a={a} is not coprime to n={n}") from None
    s = hj_expand(n, a)
    c = QuotSing.make(n, a).classify()
    smoothable = not isinstance(c, OtherCyclic)
    rep = Report(f"hj {n} {a}")
    rep.add(n=n, a=a, string=s, conjugate=conjugate_string(s),
            dual=f"1/{n}(1,{a_inv})", canonical=str(QuotSing.make(n, a)),
            classification=repr(c) if smoothable else "other",
            milnor=milnor_number(c) if smoothable else "none",
            d=d_value(c) if smoothable else "none")
    rep.set_summary(records=1)
    return rep


def cmd_markov(family: str, bound: int) -> Report:
    try:
        eq = markov.equation(int(family))
    except ValueError:
        raise InputError(f"unknown equation family {family!r}; expected 1, 2, 3 or 4") from None
    if bound < 1:
        raise InputError(f"--bound must be >= 1, got {bound}")
    rep = Report(f"markov {family} --bound {bound}")
    sols = markov.sorted_solutions(eq, bound)
    for t in sols:
        rep.add(triple=t, max=max(t), minimal=t in eq.minimal_solutions)
    rep.set_summary(equation=str(eq), solutions=len(sols))
    return rep


def _parse_triple(text: str) -> markov.Triple:
    try:
        t = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InputError(f"triple must be three comma-separated integers, got {text!r}") from None
    if len(t) != 3 or min(t) < 1:
        raise InputError(f"triple must be three positive integers, got {text!r}")
    return t


def cmd_surface(family_id: str, triple: str, tables: cls.Tables) -> Report:
    rec = tables.families.get(family_id)
    if rec is None:
        raise InputError(f"unknown family {family_id!r}; known: {', '.join(tables.families)}")
    t = _parse_triple(triple)
    if not markov.is_solution(rec.equation, t):
        raise InputError(f"{t} does not solve {rec.equation}: residual "
                         f"{rec.equation.residual(t)}")
    try:
        chk = cls.check_family_surface(rec, t)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    surf = chk.report
    rep = Report(f"surface {family_id} {triple}")
    if surf is None:
        rep.status = "fail"
        rep.set_summary(family=family_id, triple=t, checks="; ".join(chk.failures).replace("; ", " / "))
        return rep
    for i in range(3):
        c = surf.singularities[i]
        rep.add(point=i, ray=surf.rays[i], cone=str(surf.quot_sings[i]),
                singularity=str(c), d=surf.d_values[i] if surf.valid else "none")
    rep.status = "pass" if chk.ok else "fail"
    rep.set_summary(family=family_id, triple=t, weights=surf.weights,
                    e=rec.e, singularities=cls.format_singularities(surf.singularities),
                    k_squared=surf.k_squared, euler=surf.euler, picard_rank=surf.picard_rank,
                    noether=surf.noether_ok,
                    checks="pass" if chk.ok else " / ".join(chk.failures))
    return rep


def _verify_d_triples(rep: Report, tables: cls.Tables, bound: int) -> None:
    found = cls.enumerate_d_triples()
    table = {(rec.expected_d, rec.expected_k2) for rec in tables.families.values()}
    for d, k2 in found:
        ok = (d, k2) in table and k2 == 12 - sum(d) and k2 != 7
        rep.add(scope="d-triples", item=d, status="pass" if ok else "fail", detail=f"K^2={k2}")
    for d, k2 in sorted(table - set(found)):
        rep.add(scope="d-triples", item=d, status="fail", detail="in table, not enumerated")


def _verify_toric(rep: Report, tables: cls.Tables, bound: int) -> None:
    for chk in cls.verify_theorem_toric(bound, tables):
        rep.add(scope="toric", item=f"{chk.family}:{_text(chk.triple)}",
                status="pass" if chk.ok else "fail",
                detail=" / ".join(chk.failures) or "ok")


def _verify_an_table(rep: Report, tables: cls.Tables, bound: int) -> None:
    for chk in cls.verify_an_table(tables):
        rep.add(scope="an-table", item=chk.an_number, status="pass" if chk.ok else "fail",
                detail=" / ".join(chk.failures) or "ok")


def _verify_sporadic(rep: Report, tables: cls.Tables, bound: int) -> None:
    summary = cls.sporadic_catalog(tables)
    bad = {f.split(":")[0] for f in summary.failures}
    for s in summary.entries:
        rep.add(scope="sporadic", item=s.label, status="fail" if s.label in bad else "pass",
                detail=f"K^2={s.k_squared}; surfaces={s.multiplicity_note}".replace("; ", " "))
    counts_ok = (summary.isolated, summary.families) == (20, 1)
    rep.add(scope="sporadic", item="counts", status="pass" if counts_ok else "fail",
            detail=f"isolated={summary.isolated} families={summary.families}")


def _verify_lemmas(rep: Report, tables: cls.Tables, bound: int) -> None:
    for sw in lemmas.all_sweeps(markov_bound=bound):
        detail = f"checked {sw.checked}"
        if sw.failures:
            detail += f" first counterexample {sw.failures[0]}".replace("; ", " ")
        rep.add(scope="lemmas", item=sw.name, status="pass" if sw.ok else "fail", detail=detail)


_VERIFIERS = {"d-triples": _verify_d_triples, "toric": _verify_toric,
              "an-table": _verify_an_table, "sporadic": _verify_sporadic,
              "lemmas": _verify_lemmas}


def cmd_verify(scope: str, bound: int, tables: cls.Tables) -> Report:
    if bound < 1:
        raise InputError(f"--bound must be >= 1, got {bound}")
    scopes = SCOPES if scope == "all" else (scope,)
    rep = Report(f"verify {scope} --bound {bound}")
    for sc in scopes:
        _VERIFIERS[sc](rep, tables, bound)
    counts = {}
    for sc in scopes:
        rows = [r for r in rep.records if r["scope"] == sc]
        passed = sum(r["status"] == "pass" for r in rows)
        counts[sc.replace("-", "_")] = f"{passed}/{len(rows)}"
    rep.status = "fail" if rep.failing() else "pass"
    rep.set_summary(**counts)
    return rep


# --------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tsing", description=__doc__.split("\n\n")[0])
    p.add_argument("--json", action="store_true", help="line-delimited JSON output")
    p.add_argument("--data", metavar="PATH", help="alternate table data file")
    sub = p.add_subparsers(dest="command", required=True)

    hj = sub.add_parser("hj", help="continued fraction and class of 1/N(1,A)")
    hj.add_argument("n", type=int)
    hj.add_argument("a", type=int)

    mk = sub.add_parser("markov", help="enumerate solutions of a Markov-type equation")
    mk.add_argument("family")
    mk.add_argument("--bound", type=int, default=100)

    sf = sub.add_parser("surface", help="toric surface of a family on a base solution")
    sf.add_argument("family")
    sf.add_argument("triple", help="comma-separated, e.g. 1,1,2")

    vf = sub.add_parser("verify", help="re-verify tables and lemmas")
    vf.add_argument("scope", choices=SCOPES + ("all",))
    vf.add_argument("--bound", type=int, default=100)
    return p


def run(args: argparse.Namespace) -> Report:
    if args.command == "hj":
        return cmd_hj(args.n, args.a)
    if args.command == "markov":
        return cmd_markov(args.family, args.bound)
    try:
        tables = cls.load_tables(args.data) if args.data else cls.default_tables()
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot load table data: {exc}") from None
    if args.command == "surface":
        return cmd_surface(args.family, args.triple, tables)
    return cmd_verify(args.scope, args.bound, tables)


def main(argv: Optional[Sequence[str]] = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        rep = run(args)
    except InputError as exc:
        print(f"tsing: error: {exc}", file=stderr)
        return 2
    stdout.write(render_json(rep) if args.json else render_text(rep))
    for r in rep.failing():
        print(f"tsing: FAIL {_line(r)}", file=stderr)
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
