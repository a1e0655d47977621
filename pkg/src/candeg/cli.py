"""Command-line front end over the catalog.

Exit codes: 0 pass, 1 expectation mismatch (or relation violation),
2 input error, 3 unresolvable cohomology.
"""

from __future__ import annotations

import argparse
import enum
import json
import sys
from dataclasses import asdict, dataclass, field, is_dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from . import abgroup, bounds, canmap, cover, genpair
from .catalog import CatalogEntry, evaluate, load_catalog
from .errors import CandegError, UnresolvableCohomology
from .picard import DivisorClass, RationalClass, cohomology

__all__ = ["Delta", "RunReport", "run", "main", "EXIT_OK", "EXIT_MISMATCH", "EXIT_INPUT", "EXIT_COHOMOLOGY"]

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_COHOMOLOGY = 0, 1, 2, 3

ALL_VERBS = ("verify", "invariants", "canonical", "sequence", "bounds")


@dataclass
class Delta:
    key: str
    expected: Any
    computed: Any
    tag: str = ""


@dataclass
class RunReport:
    entry_id: str
    params: dict[str, int]
    computed: dict[str, Any] = field(default_factory=dict)
    checked: list[str] = field(default_factory=list)
    deltas: list[Delta] = field(default_factory=list)
    verdicts: list[bounds.Verdict] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    trace: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def status(self) -> int:
        if self.deltas or self.violations or any(v.status == "fail" for v in self.verdicts):
            return EXIT_MISMATCH
        return EXIT_OK

    def to_dict(self) -> dict:
        return _plain(
            {
                "id": self.entry_id,
                "params": self.params,
                "status": "pass" if self.status == EXIT_OK else "mismatch",
                "computed": self.computed,
                "checked": self.checked,
                "deltas": [asdict(d) for d in self.deltas],
                "verdicts": [asdict(v) for v in self.verdicts],
                "violations": self.violations,
                "trace": self.trace,
                "notes": self.notes,
            }
        )


def _plain(x):
    """JSON-ready copy: tuples to lists, fractions to [num, den], classes to coefficient lists."""
    if isinstance(x, enum.Enum):
        return x.value
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else [x.numerator, x.denominator]
    if isinstance(x, DivisorClass):
        return list(x.coeffs)
    if isinstance(x, RationalClass):
        return [_plain(c) for c in x.coeffs]
    if isinstance(x, Mapping):
        return {(k if isinstance(k, str) else ",".join(map(str, k)) if isinstance(k, tuple) else str(k)): _plain(v)
                for k, v in x.items()}
    if is_dataclass(x):
        return _plain(asdict(x))
    if isinstance(x, Iterable):
        return [_plain(v) for v in x]
    return str(x)


# ---------------------------------------------------------------- covers


def _run_cover(entry: CatalogEntry, verbs, params, report: RunReport, expect) -> None:
    bd: cover.BuildingData = entry.build(params)
    S, G = bd.surface, bd.group
    c = report.computed
    facts = entry.facts

    if "verify" in verbs:
        fund = cover.verify_fundamental(bd)
        dpow = cover.verify_d_power(bd)
        report.violations += [str(v) for v in fund]
        report.violations += [f"d-power relation fails for {chi}" for chi in dpow]
        zero = [chi for chi, L in bd.L.items() if L.is_zero()]
        if zero and not facts.get("connected"):
            report.violations.append(f"L_chi is trivial for {zero}: cover is disconnected")
        c["violations"] = len(fund) + len(dpow)
        sm = cover.smoothness_check(bd)
        c["smooth"] = sm.smooth.value
        if sm.failing_points:
            c["failing_points"] = sm.failing_points
        c["totally_ramified"] = cover.totally_ramified(bd)
        c["L"] = {chi: L for chi, L in sorted(bd.L.items())}

    if {"invariants", "canonical", "bounds"} & set(verbs):
        inv = cover.invariants(bd)
        c.update(K2=inv.K2, pg=inv.pg, q=inv.q, chi=inv.chi, minimal=inv.minimal_general_type.value)
        c["chi_riemann_roch"] = cover.chi_riemann_roch(bd)
        c["adjunction_class"] = inv.adjunction_class
        if c["chi_riemann_roch"] != inv.chi:
            report.violations.append(
                f"chi from cohomology ({inv.chi}) differs from Riemann-Roch ({c['chi_riemann_roch']})"
            )
        if cover.is_simple_cyclic(bd):
            c["simple_adjunction"] = cover.simple_cyclic_adjunction(bd)

    if "canonical" in verbs or "bounds" in verbs:
        dec = canmap.decompose(bd)
        c["contributing"] = dec.contributing
        fr = canmap.factorization(bd, dec, facts)
        c["gamma"] = list(fr.gamma.generators)
        c["quotient_orders"] = fr.quotient.group.orders
        c["quotient_groups"] = fr.quotient_groups
        c["pg_Z"] = fr.pg_Z
        c["quotient_K2"] = fr.quotient_invariants.K2
        c["degree"] = fr.degree
        c["case"] = fr.classification_hint.value
        report.trace += fr.trace
        if fr.pg_Z != dec.pg:
            report.violations.append(f"p_g of the quotient ({fr.pg_Z}) differs from p_g(X) ({dec.pg})")
        if "canonical" in verbs and (dec.contributing or S.pg):
            bl = canmap.base_locus(bd, dec)
            c["fixed_part"] = bl.fixed_part
            c["per_character"] = bl.per_char
            c["isolated_points"] = bl.isolated_point_count
            if bl.note:
                report.notes.append(bl.note)

    if "bounds" in verbs:
        d, case = c.get("degree"), c.get("case")
        if d is not None and d >= 2 and case in ("A", "B") and c["pg"] >= 3 and isinstance(c["K2"], int):
            q_sigma = fr.quotient_invariants.q if case == "B" else 0
            rec = bounds.SurfaceRecord(case, d, c["pg"], c["q"], q_sigma, K2=c["K2"])
            report.verdicts += bounds.check(rec)
        else:
            report.notes.append("bounds not applicable (degree or case undetermined, or degree 1)")

    for key, (value, tag) in expect.items():
        if key == "h0":
            for text, cls_, want in value:
                got = cohomology(S, S.reduce(cls_))[0]
                _compare(report, f"h0({text})", want, got, tag)
            continue
        if key not in c:
            continue
        got = c[key]
        if key == "L":
            for chi, cls_ in value:
                _compare(report, f"L{tuple(chi)}", S.reduce(cls_), bd.L_of(chi), tag)
        elif key == "gamma":
            want = abgroup.generate(G, value)
            _compare(report, key, sorted(want.elements), sorted(abgroup.generate(G, got).elements), tag,
                     shown=(value, got))
        elif key == "contributing":
            _compare(report, key, sorted(value), sorted(got), tag)
        elif key == "simple_adjunction":
            _compare(report, key, S.reduce(value), got, tag)
        else:
            _compare(report, key, value, got, tag)


def _compare(report: RunReport, key, want, got, tag, shown=None) -> None:
    report.checked.append(key)
    if want != got:
        if shown:
            want, got = shown
        report.deltas.append(Delta(key, want, got, tag))


# ---------------------------------------------------------------- pairs


def _run_pair(entry: CatalogEntry, verbs, params, report: RunReport, expect, n: int | None) -> None:
    spec: genpair.GeneratingPairSpec = entry.build(params)
    c = report.computed
    check = genpair.validate_pair(spec)
    c["valid"] = check.ok
    report.violations += list(check.violations)
    report.notes += list(check.warnings)
    lo, hi = entry.data.get("n_range", [3, 50])
    ns = [n] if n is not None else list(range(lo, hi + 1))
    seqs = [genpair.sequence(spec, k) for k in ns] if check.ok else []

    if "sequence" in verbs and seqs:
        c["slope_limit"] = genpair.slope_limit(spec)
        c["sigma_slope_limit"] = genpair.sigma_slope_limit(spec)
        c["degree"], c["case"] = seqs[0].degree, seqs[0].case
        c["rows"] = [asdict(s) for s in seqs]
        failures = []
        for lhs, rhs in expect.get("identities", ([], ""))[0]:
            for s in seqs:
                env = asdict(s) | {"chi": s.chi_X}
                if evaluate(lhs, env) != evaluate(rhs, env):
                    failures.append(f"n={s.n}: {lhs} != {rhs}")
        c["identities"] = failures
        if "samples" in expect:
            bad = []
            for row in expect["samples"][0]:
                s = genpair.sequence(spec, row["n"])
                for k, v in row.items():
                    if getattr(s, k) != v:
                        bad.append(f"n={row['n']}: {k} = {getattr(s, k)}, expected {v}")
            c["samples"] = bad

    if "bounds" in verbs:
        for s in seqs:
            rec = bounds.SurfaceRecord(s.case, s.degree, s.pg, s.q_X, s.q_Sigma, K2=s.K2_X)
            for v in bounds.check(rec):
                if v.status != "inapplicable":
                    report.verdicts.append(bounds.Verdict(f"n={s.n} {v.rule}", v.status, v.citation, v.slack))

    for key, (value, tag) in expect.items():
        if key not in c:
            continue
        if key in ("identities", "samples"):
            report.checked.append(key)
            if c[key]:
                report.deltas.append(Delta(key, "all hold", c[key], tag))
            continue
        _compare(report, key, value, c[key], tag)


# ---------------------------------------------------------------- records


def _run_record(rec: bounds.SurfaceRecord, verbs, report: RunReport, expect) -> None:
    c = report.computed
    c["record"] = asdict(rec)
    verdicts = bounds.check(rec)
    report.verdicts += verdicts
    c["max_degree"] = bounds.max_degree(rec.case, rec.pg, rec.q_X, rec.q_Sigma)
    c["slack"] = {v.rule: v.slack for v in verdicts if v.slack is not None}
    c["verdicts"] = "all-pass" if all(v.status != "fail" for v in verdicts) else "some-fail"
    for key, (value, tag) in expect.items():
        if key == "slack":
            report.checked.append(key)
            for rule, want in value.items():
                if c["slack"].get(rule) != want:
                    report.deltas.append(Delta(f"slack[{rule}]", want, c["slack"].get(rule), tag))
        elif key in c:
            _compare(report, key, value, c[key], tag)


def run(
    entry: CatalogEntry,
    verbs: Iterable[str] = ALL_VERBS,
    params: Mapping[str, int] | None = None,
    n: int | None = None,
) -> RunReport:
    """Run the applicable pipeline for ``entry`` and diff against its expectations."""
    verbs = tuple(verbs)
    unknown = set(verbs) - set(ALL_VERBS)
    if unknown:
        raise ValueError(f"unknown verbs {sorted(unknown)}")
    values = entry.param_values(params)
    report = RunReport(entry.id, values, notes=entry.notes)
    expect = entry.expect(values)
    if entry.kind == "abelian_cover":
        _run_cover(entry, verbs, values, report, expect)
    elif entry.kind == "generating_pair":
        _run_pair(entry, verbs, values, report, expect, n)
    else:
        _run_record(entry.build(values), verbs, report, expect)
    return report


# ---------------------------------------------------------------- output


def _fmt(x) -> str:
    p = _plain(x)
    if isinstance(p, list) and len(p) == 2 and isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    return json.dumps(p) if not isinstance(p, str) else p


def render_text(report: RunReport, expect_mode: str) -> str:
    ok = report.status == EXIT_OK
    lines = [f"{report.entry_id}  {'PASS' if ok else 'MISMATCH'}"
             + (f"  params {report.params}" if report.params else "")]
    skip = {"rows", "per_character", "L", "record"}
    for key, value in report.computed.items():
        if key in skip:
            continue
        if isinstance(value, Fraction):
            value = f"{value.numerator}/{value.denominator}" if value.denominator != 1 else int(value)
        if isinstance(value, RationalClass):
            value = "(" + ", ".join(str(x) for x in value.coeffs) + ")"
        if key in ("identities", "samples") and not value:
            value = "all hold"
        lines.append(f"  {key:18} {_fmt(value) if not isinstance(value, str) else value}")
    if "L" in report.computed:
        lines.append("  character bundles:")
        for chi, L in report.computed["L"].items():
            lines.append(f"    L{chi} = {list(L.coeffs)}")
    if "rows" in report.computed:
        lines.append("     n    p_g  q_X  K2_X  K2_Sigma  d  case")
        for r in report.computed["rows"]:
            lines.append(f"  {r['n']:4} {r['pg']:6} {r['q_X']:4} {r['K2_X']:5} {r['K2_Sigma']:9} "
                         f"{r['degree']:2}  {r['case']}")
    for v in report.verdicts:
        if v.status != "inapplicable":
            lines.append(f"  {v.rule:8} {v.status:5} slack {v.slack}  [{v.citation}]")
    for t in report.trace:
        lines.append(f"  | {t}")
    for msg in report.violations:
        lines.append(f"  violation: {msg}")
    for d in report.deltas:
        lines.append(f"  delta {d.key}: expected {_fmt(d.expected)} ({d.tag}), computed {_fmt(d.computed)}")
    for note in report.notes:
        lines.append(f"  note: {note}")
    return "\n".join(lines)


def _emit(doc_or_text, fmt: str, out) -> None:
    if fmt == "machine":
        out.write(json.dumps(_plain(doc_or_text), sort_keys=True) + "\n")
    else:
        out.write(str(doc_or_text) + "\n")


# ---------------------------------------------------------------- argument parsing


def _parse_params(items: Sequence[str]) -> dict[str, int]:
    out = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep:
            raise argparse.ArgumentTypeError(f"parameter {item!r} is not of the form name=value")
        out[name.strip()] = int(value)
    return out


def _parse_range(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(x) for x in text.split(",")]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "machine"], default=argparse.SUPPRESS)
    common.add_argument("--expect", choices=["strict", "report"], default=argparse.SUPPRESS,
                        help="strict: mismatches give exit 1; report: print them and exit 0")
    common.add_argument("--catalog", default=argparse.SUPPRESS, help="path to a catalog JSON file")

    p = argparse.ArgumentParser(prog="candeg", parents=[common],
                                description="Abelian covers, generating pairs and canonical-degree bounds.")
    sub = p.add_subparsers(dest="command", required=True)

    cat = sub.add_parser("catalog", parents=[common], help="catalog operations")
    cat_sub = cat.add_subparsers(dest="catalog_command", required=True)
    cat_sub.add_parser("list", parents=[common], help="list entries")

    for name, help_ in [("verify", "check the relations and smoothness"),
                        ("invariants", "K^2, p_g, q of the cover"),
                        ("canonical", "canonical map factorisation and base locus"),
                        ("run", "every applicable step")]:
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.add_argument("id")
        sp.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")

    gp = sub.add_parser("genpair", parents=[common], help="sequence from a generating pair")
    gp.add_argument("id")
    gp.add_argument("--n", type=int, default=None, help="single sequence index (default: whole range)")

    b = sub.add_parser("bounds", parents=[common], help="degree bounds")
    b_sub = b.add_subparsers(dest="bounds_command", required=True)
    bc = b_sub.add_parser("check", parents=[common], help="check a catalog record or key=value fields")
    bc.add_argument("target", nargs="+", help="catalog id, or fields such as case=B d=2 pg=9 K2=40")
    be = b_sub.add_parser("enumerate", parents=[common], help="largest p_g for each degree")
    be.add_argument("--case", choices=["A", "B"], required=True)
    be.add_argument("--d", default="2..9", help="degree range, e.g. 4..9 or 4,5,6")
    be.add_argument("--q", type=int, default=0)
    be.add_argument("--q-sigma", type=int, default=0)

    sub.add_parser("regress", parents=[common], help="run every catalog entry")
    return p


def _find(entries, eid) -> CatalogEntry:
    for e in entries:
        if e.id == eid:
            return e
    raise CandegError(f"no catalog entry with id {eid!r}")


def _dispatch(args, out) -> int:
    fmt = args.format
    entries = load_catalog(args.catalog)

    def finish(reports):
        code = EXIT_OK
        for r in reports:
            _emit(r.to_dict() if fmt == "machine" else render_text(r, args.expect), fmt, out)
            code = max(code, r.status)
        return code if args.expect == "strict" else EXIT_OK

    if args.command == "catalog":
        for e in entries:
            if fmt == "machine":
                _emit({"id": e.id, "kind": e.kind, "doc": e.doc, "params": e.params}, fmt, out)
            else:
                _emit(f"{e.id:36} {e.kind:16} {e.doc}", fmt, out)
        return EXIT_OK

    if args.command in ("verify", "invariants", "canonical", "run"):
        entry = _find(entries, args.id)
        verbs = ALL_VERBS if args.command == "run" else (args.command,)
        if args.command == "invariants":
            verbs = ("invariants",)
        return finish([run(entry, verbs, _parse_params(args.param))])

    if args.command == "genpair":
        entry = _find(entries, args.id)
        if entry.kind != "generating_pair":
            raise CandegError(f"{entry.id} is not a generating pair")
        return finish([run(entry, ("verify", "sequence", "bounds"), n=args.n)])

    if args.command == "bounds" and args.bounds_command == "check":
        if len(args.target) == 1 and "=" not in args.target[0]:
            entry = _find(entries, args.target[0])
            return finish([run(entry, ("bounds",))])
        fields = {}
        for item in args.target:
            k, sep, v = item.partition("=")
            if not sep:
                raise CandegError(f"field {item!r} is not of the form key=value")
            fields[k] = v if k == "case" else int(v)
        try:
            rec = bounds.SurfaceRecord(**fields)
        except TypeError as exc:
            raise CandegError(str(exc)) from exc
        report = RunReport("record", {})
        _run_record(rec, ("bounds",), report, {})
        return finish([report])

    if args.command == "bounds" and args.bounds_command == "enumerate":
        rows = bounds.enumerate_feasible(args.case, _parse_range(args.d), args.q, args.q_sigma)
        for r in rows:
            doc = {"d": r.d, "max_pg": r.max_pg, "unbounded": r.unbounded, "stated": r.stated,
                   "discrepancy": r.discrepancy}
            if fmt == "machine":
                _emit(doc, fmt, out)
            else:
                bound = "unbounded" if r.unbounded else ("infeasible" if r.max_pg is None else f"p_g <= {r.max_pg}")
                flag = f"   FLAG: stated p_g <= {r.stated}" if r.discrepancy else ""
                _emit(f"case {args.case}  d = {r.d:3}  {bound}{flag}", fmt, out)
        return EXIT_OK

    if args.command == "regress":
        reports, code = [], EXIT_OK
        for e in entries:
            try:
                reports.append(run(e))
            except UnresolvableCohomology as exc:
                _emit(f"{e.id}: unresolvable cohomology: {exc}", "text", sys.stderr)
                code = max(code, EXIT_COHOMOLOGY)
            except CandegError as exc:
                _emit(f"{e.id}: {exc}", "text", sys.stderr)
                code = max(code, EXIT_INPUT)
        if fmt == "machine":
            status = finish(reports)
        else:
            for r in reports:
                line = f"{r.entry_id:36} {'PASS' if r.status == EXIT_OK else 'MISMATCH'}"
                _emit(line, fmt, out)
                if r.status != EXIT_OK:
                    _emit(render_text(r, args.expect), fmt, out)
            status = max((r.status for r in reports), default=EXIT_OK)
            status = status if args.expect == "strict" else EXIT_OK
        return max(code, status)
    raise CandegError(f"unhandled command {args.command}")


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    for name, default in (("format", "text"), ("expect", "strict"), ("catalog", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return _dispatch(args, out)
    except UnresolvableCohomology as exc:
        print(f"error: unresolvable cohomology: {exc}", file=sys.stderr)
        return EXIT_COHOMOLOGY
    except (CandegError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
