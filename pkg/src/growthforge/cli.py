"""Command-line front end: ``python -m growthforge {growth,construct,estimate}``.

Exit codes: 0 verdict reached, 1 usage error or hypothesis violation,
2 inconclusive (NO_VERDICT).
"""
from __future__ import annotations

import argparse
import json
import math
import re
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import coder, estimator, flexibility
from .growth import (
    DEFAULT_SLACK,
    GrowthError,
    GrowthExpr,
    MIN_HORIZON,
    Relation,
    as_tabulated,
    check_bjp,
    check_lip,
    compare,
    growth_from_dict,
    pi_E,
    pi_P,
)

EXIT_OK, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2

_EXP = r"(?:\^(?P<p>\(?[-\d/.]+\)?))?"
_FACTORS = (
    ("u", re.compile(r"loglog\(n\)" + _EXP + "$")),
    ("s", re.compile(r"log\(n\)" + _EXP + "$")),
    ("t", re.compile(r"n" + _EXP + "$")),
    ("r", re.compile(r"e\^\(?(?P<p>[\d/.]*)\*?n\)?$")),
)


def parse_shorthand(text: str) -> GrowthExpr:
    """``n^2*log(n)``, ``n^(3/2)``, ``e^n``, ``e^(1/2*n)``, ``1`` and products thereof."""
    exps = dict(t=Fraction(0), s=Fraction(0), u=Fraction(0), r=Fraction(0))
    body = text.replace(" ", "").strip("[]")
    for part in re.split(r"\*(?![^(]*\))", body):
        if part == "1":
            continue
        for key, pat in _FACTORS:
            m = pat.match(part)
            if m:
                exps[key] += Fraction((m.group("p") or "1").strip("()"))
                break
        else:
            raise GrowthError(f"cannot parse growth factor {part!r}")
    return GrowthExpr(**exps)


def load_growth(spec: str):
    """A path to a JSON file, inline JSON, or shorthand."""
    path = Path(spec)
    text = path.read_text() if path.is_file() else spec
    text = text.strip()
    if text.startswith("{"):
        return growth_from_dict(json.loads(text))
    return parse_shorthand(text)


def _frac(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational: {text}") from exc


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _write(out: Optional[Path], name: str, text: str) -> None:
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
        (out / name).write_text(text)


def _num(x):
    if x is None:
        return None
    if isinstance(x, Fraction):
        return str(x)
    return "inf" if isinstance(x, float) and math.isinf(x) else float(x)


# ---------------------------------------------------------------------------


def cmd_growth(args) -> int:
    a = load_growth(args.target)
    h = args.horizon
    report = {"target": str(a)}

    def props(x):
        lip = check_lip(x, args.m, None if isinstance(x, GrowthExpr) else h // args.m,
                        slack=args.slack)
        return {
            "bjp": _num(check_bjp(x, None if isinstance(x, GrowthExpr) else h)),
            "lip": "fails LIP" if lip is None else [str(lip[0]), str(lip[1])],
            "pi_E": _num(pi_E(x, None if isinstance(x, GrowthExpr) else h).value),
            "pi_P": _num(pi_P(x, None if isinstance(x, GrowthExpr) else h).value),
        }

    report["a"] = props(a)
    code = EXIT_OK
    if args.other is not None:
        b = load_growth(args.other)
        both_expr = isinstance(a, GrowthExpr) and isinstance(b, GrowthExpr)
        v = compare(a, b, None if both_expr else h, slack=args.slack)
        report["other"] = str(b)
        report["b"] = props(b)
        report["compare"] = v.to_dict()
        if v.relation is Relation.NO_VERDICT:
            code = EXIT_INCONCLUSIVE
    text = _dump(report)
    sys.stdout.write(text)
    _write(args.out, "growth.json", text)
    return code


def _plot_csv(counts: coder.WordCount, target, N: int) -> str:
    tab = as_tabulated(target, N)
    lines = ["n,c,a,ratio"]
    for n in range(1, N + 1):
        lines.append(f"{n},{counts[n]},{float(tab[n]):.12g},"
                     f"{float(Fraction(counts[n]) / Fraction(tab[n])):.12g}")
    return "\n".join(lines) + "\n"


def _construct_translation(args, target) -> int:
    counts = coder.translation_counts(args.horizon)
    v = compare(counts.as_growth(), target, args.horizon, slack=args.slack)
    report = {"target": str(target), "model": "compactified translation",
              "verdict": v.to_dict(),
              "pi_P": _num(pi_P(counts.as_growth()).value),
              "passed": v.relation is Relation.EQUIV}
    sys.stdout.write(_dump(report))
    _write(args.out, "report.json", _dump(report))
    _write(args.out, "counts.csv", coder.counts_to_csv(counts, target))
    _write(args.out, "plot.csv", _plot_csv(counts, target, args.horizon))
    return EXIT_OK if report["passed"] else EXIT_INCONCLUSIVE


def cmd_construct(args) -> int:
    targets = [load_growth(t) for t in args.target]
    N = args.horizon
    k1_max = N if args.k1_max is None else args.k1_max
    if len(targets) == 1 and compare(targets[0], GrowthExpr(1), N).relation is Relation.EQUIV:
        return _construct_translation(args, targets[0])
    try:
        if len(targets) == 1:
            L = args.L or flexibility.choose_L(targets[0], N)
            plan = flexibility.build_sequences(targets[0], L, N, slack=args.slack,
                                               level=args.level)
            counts = coder.count_table(plan, N, k1_max, strict=args.strict)
            rep = coder.verify_syndetic_bounds(plan, counts, N, slack=args.slack)
            plans = [plan]
        else:
            comp = flexibility.build_composite(targets, len(targets), N, slack=args.slack)
            counts = coder.count_table_composite(comp, N, k1_max, strict=args.strict)
            plans = list(comp.stages)
            rep = None
    except flexibility.PlanRejected as exc:
        sys.stderr.write(f"plan rejected: {exc}\n")
        return EXIT_INCONCLUSIVE
    except GrowthError as exc:
        sys.stderr.write(f"hypothesis violated (realisable classes are [n] or [n^2] <= o "
                         f"<= polynomial): {exc}\n")
        return EXIT_USAGE

    top = targets[-1]
    cg = counts.as_growth()
    report = {
        "targets": [str(t) for t in targets],
        "L": [p.L for p in plans],
        "horizon": N,
        "k1_max": k1_max,
        "bjp": _num(check_bjp(cg, N)),
        "fitted_h_pol": _num(pi_P(cg).value),
        "b": [[str(p.b1), str(p.b2)] for p in plans],
    }
    if rep is not None:
        report.update(d1=str(rep.d1), d2=str(rep.d2), trend=rep.trend,
                      verdict=rep.verdict.to_dict(), passed=rep.passed)
        code = EXIT_OK if rep.passed else EXIT_INCONCLUSIVE
    else:
        v = compare(cg, top, N, slack=args.slack)
        report.update(verdict=v.to_dict(), passed=v.relation is Relation.EQUIV)
        code = EXIT_OK if report["passed"] else EXIT_INCONCLUSIVE
    text = _dump(report)
    sys.stdout.write(text)
    _write(args.out, "report.json", text)
    for i, p in enumerate(plans):
        suffix = "" if len(plans) == 1 else f"_{i + 1}"
        _write(args.out, f"plan{suffix}.json", _dump(flexibility.plan_to_dict(p)))
        _write(args.out, f"plan{suffix}.csv", flexibility.plan_to_csv(p))
    _write(args.out, "counts.csv", coder.counts_to_csv(counts, top))
    _write(args.out, "plot.csv", _plot_csv(counts, top, N))
    return code


def cmd_estimate(args) -> int:
    text = Path(args.system).read_text() if Path(args.system).is_file() else args.system
    try:
        system = (estimator.load_system(text) if text.lstrip().startswith("{")
                  else estimator.system_from_dict({"builtin": text}))
    except (GrowthError, KeyError, ValueError) as exc:
        sys.stderr.write(f"bad system: {exc}\n")
        return EXIT_USAGE
    N = args.horizon
    eps = estimator.eps_ladder(system, args.rungs)
    samples = list(estimator.sample_system(system, N, eps))
    if system.name.startswith("translation"):
        centre = (system.P - 1) // 2
        samples.append(estimator.cover_sample(system, estimator.crossing_covers(system, centre), N))
    report = {"system": system.name, "points": system.P, "horizon": N}
    csv = []
    for s in samples:
        report[s.method] = dict(estimator.estimate_class(s).to_dict(), tag=s.tag)
        csv.append(s.to_csv() if not csv else s.to_csv().split("\n", 1)[1])
    out = _dump(report)
    sys.stdout.write(out)
    _write(args.out, "estimate.json", out)
    _write(args.out, "samples.csv", "".join(csv))
    return EXIT_OK


# ---------------------------------------------------------------------------


def _horizon(text: str) -> int:
    v = int(text)
    if v < MIN_HORIZON:
        raise argparse.ArgumentTypeError(f"horizon must be >= {MIN_HORIZON}")
    return v


def _slack(text: str) -> Fraction:
    v = _frac(text)
    if v < 1:
        raise argparse.ArgumentTypeError("slack must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="growthforge", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, horizon):
        sp.add_argument("--horizon", type=_horizon, default=horizon)
        sp.add_argument("--slack", type=_slack, default=DEFAULT_SLACK)
        sp.add_argument("--out", type=Path, default=None, help="output directory")

    g = sub.add_parser("growth", help="compare / BJP / LIP / projections")
    g.add_argument("--target", required=True, help="growth spec: file, JSON or shorthand")
    g.add_argument("--other", help="second growth spec for compare")
    g.add_argument("--m", type=int, default=2, help="LIP multiplier")
    common(g, 256)
    g.set_defaults(func=cmd_growth)

    c = sub.add_parser("construct", help="build a plan, count words, verify")
    c.add_argument("--target", required=True, action="append",
                   help="target class; repeat for a composite chain")
    c.add_argument("--L", type=int, default=None)
    c.add_argument("--k1-max", type=int, default=None)
    c.add_argument("--level", type=_frac, default=None, help="reference ratio d/a")
    c.add_argument("--strict", action="store_true", default=True)
    c.add_argument("--no-strict", dest="strict", action="store_false")
    common(c, 160)
    c.set_defaults(func=cmd_construct)

    e = sub.add_parser("estimate", help="entropy estimates of a finite system")
    e.add_argument("--system", required=True,
                   help="JSON file/text, or builtin name like doubling:1024")
    e.add_argument("--rungs", type=int, default=6)
    common(e, 16)
    e.set_defaults(func=cmd_estimate)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (GrowthError, json.JSONDecodeError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
