"""Command-line surface: generate sequences, isolate roots, run the
verification suites, and emit distribution/eigenfunction reports.

Exit codes: 0 success, 1 verification-suite failure, 2 invalid
arguments, 3 isolation failure.  Rationals cross this boundary as
"num/den" strings, never as floats; JSON payloads carry a top-level
schema version.  Diagnostics go to stderr, the structured payload to
stdout unless --out is given.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Optional

from . import diffop, eigenhyp, eulerian, families, rootlab, zerodist
from .diffop import Family
from .ratpoly import RatPoly

SCHEMA = 1

EXIT_OK = 0
EXIT_SUITE_FAILURE = 1
EXIT_BAD_ARGS = 2
EXIT_ISOLATION = 3


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_BAD_ARGS):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    command: str
    family: str = "xi"
    c: str = "1"
    d: str = "0"
    scaling: str = "paper"
    n: int = 1
    n_list: tuple[int, ...] = ()
    width: str = "1/1099511627776"  # 2**-40
    output: str = "json"
    out_path: Optional[str] = None
    seed: int = 0
    suite: str = "all"
    n_max: int = 12
    aux: bool = False
    coeffs: Optional[str] = None
    coeffs_g: Optional[str] = None
    exponent: float = 0.0
    c1: float = 1.0
    c2: float = 0.0
    xs: str = "0.05,0.1,0.2,0.3,0.4,0.5,0.6"


def _parse_rat(s: str, what: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"invalid rational for {what}: {s!r} ({exc})")


def _parse_poly(s: str) -> RatPoly:
    parts = [p.strip() for p in s.split(",") if p.strip()]
    if not parts:
        raise CliError("empty coefficient list")
    return RatPoly(tuple(_parse_rat(p, "coefficient") for p in parts))


def _parse_family(s: str) -> Family:
    try:
        return Family.parse(s)
    except ValueError as exc:
        raise CliError(str(exc))


def _families(s: str) -> list[Family]:
    if s.strip().lower() == "both":
        return [Family.XI, Family.LAMBDA]
    return [_parse_family(s)]


def _make_spec(cfg: RunConfig, family: Family) -> families.FamilySpec:
    c = _parse_rat(cfg.c, "c")
    d = _parse_rat(cfg.d, "d")
    if c == 0:
        raise CliError("c must be nonzero")
    scaling = cfg.scaling.strip().lower()
    if scaling in (families.PAPER_DEFAULT, families.ALL_ONES):
        policy = scaling
    else:
        policy = tuple(_parse_rat(v, "scaling entry") for v in scaling.split(","))
        if any(v == 0 for v in policy):
            raise CliError("custom scaling values must be nonzero")
    return families.FamilySpec(family, c, d, policy)


def _emit(cfg: RunConfig, payload: dict, csv_rows=None, csv_header=None) -> None:
    if cfg.output == "csv":
        lines = [",".join(csv_header)]
        for row in csv_rows:
            lines.append(",".join(_fmt_csv(v) for v in row))
        text = "\n".join(lines) + "\n"
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if cfg.out_path:
        Path(cfg.out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _fmt_csv(v) -> str:
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


# -- subcommands -----------------------------------------------------------------


def cmd_gen(cfg: RunConfig) -> int:
    fam = _parse_family(cfg.family)
    if cfg.n < 1:
        raise CliError("n must be >= 1")
    if cfg.aux:
        cache = families.aux_family(fam, cfg.n)
        meta = {"aux": True}
    else:
        spec = _make_spec(cfg, fam)
        cache = families.iterate_P(spec, cfg.n)
        meta = {
            "aux": False,
            "c": cfg.c,
            "d": cfg.d,
            "scaling": spec.scaling_json(),
        }
    payload = {
        "schema": SCHEMA,
        "command": "gen",
        "family": fam.value,
        **meta,
        "entries": [p.to_json() for p in cache.polys],
    }
    _emit(cfg, payload)
    return EXIT_OK


def _suite_factorization() -> list[str]:
    failures = []
    if diffop.compose_AB(1) != diffop.make_D(Family.XI):
        failures.append("compose_AB(1) != built-in first-family operator")
    if diffop.compose_AB(2) != diffop.make_D(Family.LAMBDA):
        failures.append("compose_AB(2) != built-in second-family operator")
    x = RatPoly.x()
    for n in range(0, 6):
        op = diffop.compose_AB(n)
        # general displayed form of the composition
        expect = diffop.DiffOp(
            RatPoly((0, 4, -8, 4)),
            2 * RatPoly.linear(1, -1) * RatPoly.linear(2 * n + 5, -3),
            RatPoly.linear((n + 1) * (n + 2), -(3 * n + 2)),
        )
        for m in range(0, 31):
            xm = RatPoly.monomial(m)
            if op.apply(xm) != expect.apply(xm):
                failures.append(f"composition/monomial mismatch n={n} m={m}")
    return failures


def _suite_monomial() -> list[str]:
    failures = []
    for fam in Family:
        op = diffop.make_D(fam)
        for m in range(0, 51):
            cp, cs, cm = diffop.monomial_action(op, m)
            got = op.apply(RatPoly.monomial(m))
            want = RatPoly.monomial(m + 1, cp) + RatPoly.monomial(m, cs)
            if m >= 1:
                want = want + RatPoly.monomial(m - 1, cm)
            if got != want:
                failures.append(f"monomial action mismatch {fam.value} m={m}")
    return failures


def _suite_divergence() -> list[str]:
    failures = []
    for fam in Family:
        if not diffop.divergence_check(fam):
            failures.append(f"divergence identity failed for {fam.value}")
    return failures


def _random_poly(rng: random.Random, max_deg: int) -> RatPoly:
    deg = rng.randint(0, max_deg)
    coeffs = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(deg + 1)]
    if all(c == 0 for c in coeffs):
        coeffs[-1] = Fraction(1)
    return RatPoly(coeffs)


def _suite_selfadjoint(seed: int) -> list[str]:
    failures = []
    rng = random.Random(seed)
    for fam in Family:
        for i in range(50):
            f = _random_poly(rng, 10)
            g = _random_poly(rng, 10)
            if diffop.selfadjoint_defect(f, g, fam) != 0:
                failures.append(f"nonzero self-adjointness defect {fam.value} #{i}")
    return failures


def _suite_closed_form(n_max: int) -> list[str]:
    failures = []
    configs = [
        families.FamilySpec(Family.XI, 1, Fraction(1, 2), families.ALL_ONES),
        families.FamilySpec(Family.LAMBDA, 2, 1, families.PAPER_DEFAULT),
    ]
    for spec in configs:
        for n in range(2, n_max + 1):
            if not families.closed_form_check(spec, n):
                failures.append(
                    f"closed form failed {spec.family.value} n={n}"
                )
    return failures


def _suite_eulerian_oracle() -> list[str]:
    failures = []
    for kind in ("A", "B"):
        table = eulerian.build_table(kind, eulerian.ORACLE_MAX)
        for m in range(eulerian.ORACLE_MAX + 1):
            if table.entry(m) != eulerian.oracle_eulerian(kind, m):
                failures.append(f"Eulerian table mismatch type {kind} m={m}")
    for fam in Family:
        aux = families.aux_family(fam, 8)
        for n in range(1, 9):
            for t in (Fraction(1, 3), Fraction(1, 2), Fraction(3, 4)):
                lhs = eulerian.closed_form_eval(fam, n, t)
                rhs = aux.entry(n).eval_rational(t * t)
                if lhs != rhs:
                    failures.append(
                        f"closed-form eval mismatch {fam.value} n={n} t={t}"
                    )
    return failures


def _suite_thresholds() -> list[str]:
    failures = []
    ratios = [Fraction(k, 12) for k in range(-2, 15)] + [
        Fraction(3, 7),
        Fraction(1, 3),
        Fraction(1),
    ]
    for fam in Family:
        for r in ratios:
            if not rootlab.threshold_check(fam, 1, r):
                failures.append(f"threshold mismatch {fam.value} d/c={r}")
    return failures


def _suite_endpoints(seed: int) -> list[str]:
    failures = []
    rng = random.Random(seed + 1)
    for fam in Family:
        op = diffop.make_D(fam)
        for i in range(25):
            p = _random_poly(rng, 9)
            img = op.apply(p)
            p0, dp0, p1 = p.eval_rational(0), p.derivative().eval_rational(0), p.eval_rational(1)
            if fam is Family.XI:
                ok = img.eval_rational(1) == p1 and img.eval_rational(0) == -6 * dp0 - 5 * p0
            else:
                ok = img.eval_rational(1) == 4 * p1 and img.eval_rational(0) == -6 * dp0 - 8 * p0
            if not ok:
                failures.append(f"endpoint identity failed {fam.value} #{i}")
    return failures


SUITES = {
    "factorization": lambda cfg: _suite_factorization(),
    "monomial": lambda cfg: _suite_monomial(),
    "divergence": lambda cfg: _suite_divergence(),
    "selfadjoint": lambda cfg: _suite_selfadjoint(cfg.seed),
    "closed-form": lambda cfg: _suite_closed_form(cfg.n_max),
    "eulerian-oracle": lambda cfg: _suite_eulerian_oracle(),
    "thresholds": lambda cfg: _suite_thresholds(),
    "endpoints": lambda cfg: _suite_endpoints(cfg.seed),
}


def cmd_verify(cfg: RunConfig) -> int:
    names = list(SUITES) if cfg.suite == "all" else [cfg.suite]
    for name in names:
        if name not in SUITES:
            raise CliError(f"unknown suite {name!r} (have {', '.join(SUITES)})")
    results = {}
    failures = []
    for name in names:
        fails = SUITES[name](cfg)
        results[name] = {"passed": 0 if fails else 1, "failed": len(fails)}
        failures.extend(f"{name}: {msg}" for msg in fails)
        print(f"suite {name}: {'pass' if not fails else 'FAIL'}", file=sys.stderr)
    payload = {
        "schema": SCHEMA,
        "command": "verify",
        "suites": results,
        "failures": failures,
    }
    _emit(cfg, payload)
    return EXIT_OK if not failures else EXIT_SUITE_FAILURE


def cmd_roots(cfg: RunConfig) -> int:
    width = _parse_rat(cfg.width, "width")
    if width <= 0:
        raise CliError("width must be positive")
    if cfg.coeffs:
        poly = _parse_poly(cfg.coeffs)
        source = {"coeffs": poly.to_json()}
    else:
        fam = _parse_family(cfg.family)
        if cfg.aux:
            poly = families.aux_family(fam, cfg.n).entry(cfg.n)
            source = {"family": fam.value, "aux": True, "n": cfg.n}
        else:
            spec = _make_spec(cfg, fam)
            poly = families.iterate_P(spec, cfg.n).entry(cfg.n)
            source = {"family": fam.value, "n": cfg.n, "c": cfg.c, "d": cfg.d}
    if poly.is_zero:
        raise CliError("cannot isolate roots of the zero polynomial")
    try:
        rs = rootlab.isolate(poly, width=width)
    except rootlab.IsolationError as exc:
        raise CliError(str(exc), EXIT_ISOLATION)
    payload = {
        "schema": SCHEMA,
        "command": "roots",
        **source,
        "width": cfg.width,
        "roots": rs.to_json(),
    }
    _emit(cfg, payload)
    return EXIT_OK


def cmd_interlace(cfg: RunConfig) -> int:
    try:
        if cfg.coeffs and cfg.coeffs_g:
            f = _parse_poly(cfg.coeffs)
            g = _parse_poly(cfg.coeffs_g)
            verdicts = [
                rootlab.interlace(rootlab.isolate(f), rootlab.isolate(g)).to_json()
            ]
        else:
            fam = _parse_family(cfg.family)
            spec = _make_spec(cfg, fam)
            verdicts = [
                v.to_json()
                for v in rootlab.consecutive_interlacing(spec, cfg.n_max)
            ]
    except rootlab.IndistinguishableRoots as exc:
        payload = {
            "schema": SCHEMA,
            "command": "interlace",
            "error": "indistinguishable",
            "detail": str(exc),
        }
        _emit(cfg, payload)
        return EXIT_ISOLATION
    except ValueError as exc:
        raise CliError(str(exc))
    payload = {"schema": SCHEMA, "command": "interlace", "verdicts": verdicts}
    _emit(cfg, payload)
    return EXIT_OK


def cmd_dist(cfg: RunConfig) -> int:
    if not cfg.n_list:
        raise CliError("--n requires at least one value")
    width = _parse_rat(cfg.width, "width")
    fams = _families(cfg.family)
    reports = []
    for fam in fams:
        spec = _make_spec(cfg, fam)
        for n in sorted(cfg.n_list):
            try:
                reports.append(zerodist.compare_distribution(spec, n, width=width))
            except rootlab.IsolationError as exc:
                raise CliError(str(exc), EXIT_ISOLATION)
    payload = {
        "schema": SCHEMA,
        "command": "dist",
        "reports": [r.to_json() for r in reports],
    }
    rows = []
    for r in reports:
        for q in r.quantile_errors:
            rows.append((r.family.value, r.n, q.k, q.x_kn, q.predicted, q.abs_err))
    _emit(
        cfg,
        payload,
        csv_rows=rows,
        csv_header=("family", "n", "k", "x_kn", "predicted", "err"),
    )
    return EXIT_OK


def cmd_eigen(cfg: RunConfig) -> int:
    fam = _parse_family(cfg.family)
    try:
        xs = [float(v) for v in cfg.xs.split(",") if v.strip()]
    except ValueError as exc:
        raise CliError(f"invalid --xs: {exc}")
    if not xs:
        raise CliError("--xs requires at least one point")
    rows = []
    entries = []
    for x in xs:
        try:
            val = eigenhyp.eigenfunction(fam, cfg.exponent, cfg.c1, cfg.c2, x)
            res = eigenhyp.eigen_residual(fam, cfg.exponent, cfg.c1, cfg.c2, [x])
        except (ValueError, ArithmeticError) as exc:
            raise CliError(str(exc))
        rows.append((x, val, res))
        entries.append({"x": x, "f": val, "residual": res})
    payload = {
        "schema": SCHEMA,
        "command": "eigen",
        "family": fam.value,
        "exponent": cfg.exponent,
        "eigenvalue": eigenhyp.eigenvalue_for(fam, cfg.exponent),
        "points": entries,
    }
    _emit(cfg, payload, csv_rows=rows, csv_header=("x", "f", "residual"))
    return EXIT_OK


# -- argument parsing ----------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyops",
        description="exact-arithmetic toolkit for the two degree-raising operators",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", dest="out_path", default=None)
        p.add_argument("--output", choices=("json", "csv"), default="json")
        p.add_argument("--seed", type=int, default=0)

    g = sub.add_parser("gen", help="generate a polynomial sequence")
    g.add_argument("--family", required=True)
    g.add_argument("--aux", action="store_true")
    g.add_argument("--c", default="1")
    g.add_argument("--d", default="0")
    g.add_argument("--scaling", default="paper")
    g.add_argument("--n", type=int, required=True)
    common(g)

    v = sub.add_parser("verify", help="run exact verification suites")
    v.add_argument("--suite", default="all")
    v.add_argument("--n-max", dest="n_max", type=int, default=12)
    common(v)

    r = sub.add_parser("roots", help="isolate real roots exactly")
    r.add_argument("--coeffs", default=None, help="comma-separated num/den list")
    r.add_argument("--family", default="xi")
    r.add_argument("--aux", action="store_true")
    r.add_argument("--c", default="1")
    r.add_argument("--d", default="0")
    r.add_argument("--scaling", default="paper")
    r.add_argument("--n", type=int, default=1)
    r.add_argument("--width", default="1/1000000")
    common(r)

    i = sub.add_parser("interlace", help="classify interlacing patterns")
    i.add_argument("--coeffs", default=None)
    i.add_argument("--coeffs-g", dest="coeffs_g", default=None)
    i.add_argument("--family", default="xi")
    i.add_argument("--c", default="1")
    i.add_argument("--d", default="1/2")
    i.add_argument("--scaling", default="paper")
    i.add_argument("--n-max", dest="n_max", type=int, default=10)
    common(i)

    d = sub.add_parser("dist", help="empirical vs limiting zero distribution")
    d.add_argument("--family", default="both")
    d.add_argument("--c", default="1")
    d.add_argument("--d", default="1/2")
    d.add_argument("--scaling", default="paper")
    d.add_argument("--n", required=True, help="comma-separated degree list")
    d.add_argument("--width", default="1/10000000000")
    common(d)

    e = sub.add_parser("eigen", help="eigenfunction values and residuals")
    e.add_argument("--family", required=True)
    e.add_argument("--exponent", type=float, default=0.0)
    e.add_argument("--c1", type=float, default=1.0)
    e.add_argument("--c2", type=float, default=0.0)
    e.add_argument("--xs", default="0.05,0.1,0.2,0.3,0.4,0.5,0.6")
    common(e)

    return parser


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command)
    for field in (
        "family",
        "c",
        "d",
        "scaling",
        "n",
        "width",
        "output",
        "out_path",
        "seed",
        "suite",
        "n_max",
        "aux",
        "coeffs",
        "coeffs_g",
        "exponent",
        "c1",
        "c2",
        "xs",
    ):
        if hasattr(args, field):
            setattr(cfg, field, getattr(args, field))
    if args.command == "dist":
        try:
            cfg.n_list = tuple(int(v) for v in args.n.split(",") if v.strip())
        except ValueError as exc:
            raise CliError(f"invalid --n list: {exc}")
        if any(n < 1 for n in cfg.n_list):
            raise CliError("every n must be >= 1")
    return cfg


COMMANDS = {
    "gen": cmd_gen,
    "verify": cmd_verify,
    "roots": cmd_roots,
    "interlace": cmd_interlace,
    "dist": cmd_dist,
    "eigen": cmd_eigen,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS


if __name__ == "__main__":
    sys.exit(main())
