"""Command-line front end: ``umbral coeffs|verify|classify|sequence|series``.

Exit codes: 0 when everything passes, 1 on a verification failure, 2 on a
usage or parse error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import os
import random
import sys
import time
from fractions import Fraction
from typing import Sequence

from . import classification as cls
from . import core, sequences
from .expr import ExpressionError, evaluate, format_expr, parse_generator
from .report import Report, rational_str
from .series import Series

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_MAX_ORDER = 64
DEFAULT_SEED = 20240613
SUITES = ("thm1", "thm1-alt", "expform", "special", "funceq", "examples", "triangle", "all")
SEQUENCES = ("bell", "stirling1", "stirling2", "lah", "bucchianico", "touchard")
# options whose values may legitimately start with "-"
_VALUE_OPTIONS = ("--a", "--b", "--c", "--f", "--A")


class UsageError(Exception):
    pass


def max_order() -> int:
    raw = os.environ.get("UMBRAL_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"UMBRAL_MAX_ORDER must be an integer, got {raw!r}") from None


def check_order(order: int, what: str = "order"):
    cap = max_order()
    if order > cap:
        raise UsageError(f"{what} {order} exceeds the cap {cap} (UMBRAL_MAX_ORDER)")
    if order < 0:
        raise UsageError(f"{what} must be nonnegative")


def rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from None


# generator selection


def _generator_source(args) -> str | None:
    if args.f is not None and args.preset is not None:
        raise UsageError("give either --f or --preset, not both")
    if args.preset is not None:
        if args.preset not in sequences.PRESETS:
            raise UsageError(f"unknown preset {args.preset!r}; choose from {', '.join(sequences.PRESETS)}")
        return args.preset
    return args.f


def _generator(text: str, order: int) -> tuple[str, Series]:
    try:
        node = parse_generator(text)
        return format_expr(node), evaluate(node, order)
    except ExpressionError as exc:
        raise UsageError(f"bad generator {text!r}: {exc}") from None


def _family_spec(args, order: int) -> cls.FamilySpec:
    a_free = None
    if args.A is not None:
        try:
            from .expr import parse_expression

            a_free = evaluate(parse_expression(args.A), order)
        except ExpressionError as exc:
            raise UsageError(f"bad --A series {args.A!r}: {exc}") from None
    try:
        return cls.FamilySpec(
            args.family,
            args.a if args.a is not None else Fraction(1),
            args.b if args.b is not None or args.family == "linear" else Fraction(1),
            args.c,
            a_free,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# output


def _emit(text: str, args):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _triangle_text(rows: list[list[Fraction]], generator: str, order: int, fmt: str) -> str:
    if fmt == "json":
        payload = {
            "triangle": [[rational_str(v) for v in row] for row in rows],
            "generator": generator,
            "order": order,
        }
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n"] + [f"k={k}" for k in range(len(rows))])
        for n, row in enumerate(rows):
            writer.writerow([n] + [rational_str(v) for v in row] + [""] * (len(rows) - n - 1))
        return buf.getvalue()
    cells = [[rational_str(v) for v in row] for row in rows]
    width = max(len(c) for row in cells for c in row)
    lines = [f"# triangle of {generator}"]
    for n, row in enumerate(cells):
        lines.append(f"{n:>3} | " + " ".join(c.rjust(width) for c in row))
    return "\n".join(lines) + "\n"


def _reports_text(suite: str, params: dict, reports: list[Report], fmt: str, elapsed: float | None) -> str:
    passed = all(reports)
    if fmt == "json":
        payload = {
            "suite": suite,
            "params": params,
            "passed": passed,
            "reports": [r.to_dict() for r in reports],
        }
        if elapsed is not None:
            payload["wall_time_s"] = round(elapsed, 3)
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["name", "passed", "checked", "failure"])
        for r in reports:
            writer.writerow([r.name, r.passed, r.checked, json.dumps(r.failure) if r.failure else ""])
        return buf.getvalue()
    lines = [f"suite {suite}: " + " ".join(f"{k}={v}" for k, v in params.items())]
    lines += [r.summary() for r in reports]
    tail = f"{sum(bool(r) for r in reports)}/{len(reports)} passed"
    if elapsed is not None:
        tail += f" in {elapsed:.2f}s"
    lines.append(("OK " if passed else "FAILED ") + tail)
    return "\n".join(lines) + "\n"


# suites


def _tagged(report: Report, **params) -> Report:
    report.params.update(params)
    return report


def _generators_for(args, order: int, rng: random.Random) -> list[tuple[str, Series]]:
    source = _generator_source(args)
    if source is not None:
        return [_generator(source, order)]
    out = [(name, sequences.preset(name).generator(order)) for name in ("falling", "touchard", "laguerre", "bucchianico")]
    for i in range(3):
        f = core.random_generator(rng, order)
        out.append((f"random[{i}]: {f.format('t', big_o=False)}", f))
    return out


def _suite_staircase(args, engine, n_max: int, deg_max: int, rng) -> list[Report]:
    order = n_max + deg_max
    check_order(order)
    reports = []
    for name, f in _generators_for(args, order, rng):
        phi = core.UmbralOperator(f, order)
        reports.append(_tagged(engine(phi, n_max, deg_max), generator=name))
    return reports


def _suite_special(args, n_max: int, deg_max: int, rng) -> list[Report]:
    check_order(n_max + deg_max)
    if args.family:
        specs = [_family_spec(args, n_max + deg_max)]
    else:
        specs = [cls.random_spec(rng, fam) for fam in cls.Family]
        specs.append(cls.FamilySpec("linear", rng.choice([2, 3, Fraction(1, 2)]), A=cls.exact_polynomial((1, 1))))
        specs.append(cls.FamilySpec("power", rng.choice([1, -2]), Fraction(1, 3), Fraction(1, 2)))
    reports = []
    for spec in specs:
        reports.append(cls.verify_special(spec, n_max, deg_max))
        uv = cls.verify_uv_unitality(cls.special_uv_pair(spec, n_max + deg_max))
        if spec.family is not cls.Family.LINEAR or spec.free_series(0)[0] == 1:
            reports.append(_tagged(uv, **spec.params()))
    return reports


def _suite_funceq(args, order: int, rng) -> list[Report]:
    check_order(order)
    if args.family:
        specs = [_family_spec(args, order)]
    else:
        specs = [cls.random_spec(rng, fam) for fam in cls.Family]
        specs.append(cls.FamilySpec("power", rng.choice([1, 3]), rng.choice([1, -2]), Fraction(1, 2)))
        specs.append(cls.FamilySpec("power", 1, 1, Fraction(-3, 2)))
    return [cls.verify_functional_equation(spec, order) for spec in specs]


def _suite_examples(n_max: int, m_max: int) -> list[Report]:
    check_order(max(n_max + m_max, 10))
    reports = [sequences.verify_preset_triangle(name, 10) for name in sequences.PRESETS]
    reports += [
        sequences.verify_stirling1_products(10),
        sequences.verify_stirling2_partitions(8),
        sequences.verify_bell_numbers(10),
        sequences.verify_stirling_duality(10),
        sequences.verify_falling_factorial_identity(n_max, n_max),
        sequences.verify_spivey(n_max, m_max),
        sequences.verify_laguerre_identity(n_max, m_max),
        sequences.verify_bucchianico(n_max, m_max),
    ]
    return reports


def _suite_classify(rng, count: int = 20, order: int = 12) -> list[Report]:
    report = Report("classifier-round-trip", {"count": count, "order": order})
    for _ in range(count):
        spec = cls.random_spec(rng)
        g = cls.family_generator(spec, order)
        verdict = cls.classify_generator(g)
        report.checked += 1
        if isinstance(verdict, cls.NotInClass) or cls.family_generator(verdict, order) != g:
            return [report.fail(spec=str(spec), verdict=str(verdict))]
    return [report]


def verify_triangle_file(path: str, rows_cap: int) -> Report:
    """Check a ``coeffs --format json`` payload against a fresh Bell triangle."""
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
        rows = [[Fraction(v) for v in row] for row in payload["triangle"]]
        generator = payload["generator"]
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read triangle file {path!r}: {exc}") from None
    n = len(rows) - 1
    check_order(n, "rows")
    if n > rows_cap:
        raise UsageError(f"triangle has {n} rows, above the cap {rows_cap}")
    _, f = _generator(generator, max(n, 1))
    phi = core.UmbralOperator(f, max(n, 1))
    report = Report("triangle-file", {"generator": generator, "rows": n})
    for i, row in enumerate(rows):
        if len(row) != i + 1:
            return report.fail(n=i, reason=f"row has {len(row)} entries, expected {i + 1}")
        for k, v in enumerate(row):
            report.checked += 1
            if v != phi.coeff(i, k):
                return report.fail(n=i, k=k, file=v, expected=phi.coeff(i, k))
    return report


# commands


def cmd_coeffs(args) -> int:
    rows = args.rows
    check_order(rows, "rows")
    source = _generator_source(args) or "identity"
    name, f = _generator(source, max(rows, 1))
    phi = core.UmbralOperator(f, max(rows, 1))
    triangle = [list(phi.triangle[n]) for n in range(rows + 1)]
    _emit(_triangle_text(triangle, name, rows, args.format), args)
    return EXIT_OK


def cmd_series(args) -> int:
    check_order(args.order)
    source = _generator_source(args)
    if source is None:
        raise UsageError("series needs --f or --preset")
    name, f = _generator(source, args.order)
    if args.format == "json":
        text = json.dumps({"generator": name, "order": args.order,
                           "coefficients": [rational_str(c) for c in f.coeffs]}, indent=2) + "\n"
    elif args.format == "csv":
        text = "j,coefficient\n" + "".join(f"{j},{rational_str(c)}\n" for j, c in enumerate(f.coeffs))
    else:
        text = f"{name} = {f}\n"
    _emit(text, args)
    return EXIT_OK


def cmd_classify(args) -> int:
    check_order(args.order)
    source = _generator_source(args)
    if source is None:
        raise UsageError("classify needs --f or --preset")
    name, g = _generator(source, args.order)
    verdict = cls.classify_generator(g)
    if args.format == "json":
        if isinstance(verdict, cls.NotInClass):
            payload = {"generator": name, "order": args.order, "in_class": False, "reason": verdict.reason}
        else:
            payload = {"generator": name, "order": args.order, "in_class": True,
                       **verdict.params(), "closed_form": str(verdict)}
        text = json.dumps(payload, indent=2) + "\n"
    elif isinstance(verdict, cls.NotInClass):
        text = f"{name}: {verdict}\n"
    else:
        params = " ".join(f"{k}={v}" for k, v in verdict.params().items() if k != "family")
        text = f"{name}: {verdict.family.value} {params}\nclosed form: {verdict}\n"
    _emit(text, args)
    return EXIT_OK


def cmd_sequence(args) -> int:
    name = args.name
    if args.row is not None:
        n = args.row
        check_order(n, "row")
        table = {
            "stirling1": sequences.stirling1_signed,
            "stirling2": sequences.stirling2,
            "lah": sequences.lah_signed,
            "bucchianico": sequences.bucchianico_coeff,
            "touchard": sequences.stirling2,
        }
        if name not in table:
            raise UsageError(f"{name} has no triangle rows; use --count")
        values = [table[name](n, k) for k in range(n + 1)]
    else:
        count = args.count
        check_order(count, "count")
        if name != "bell":
            raise UsageError(f"{name} is a triangle; use --row N")
        if count > 16:
            raise UsageError("bell numbers are limited to 16 values")
        values = [sequences.bell_number(i) for i in range(count)]
    strs = [rational_str(v) for v in values]
    if args.format == "json":
        text = json.dumps({"sequence": name, "row": args.row, "values": strs}, indent=2) + "\n"
    elif args.format == "csv":
        text = ",".join(strs) + "\n"
    else:
        text = ", ".join(strs) + "\n"
    _emit(text, args)
    return EXIT_OK


def cmd_verify(args) -> int:
    suite = args.suite
    rng = random.Random(args.seed)
    started = time.perf_counter()
    params: dict = {"seed": args.seed}
    n_max = args.nmax
    deg = args.deg
    reports: list[Report] = []
    run = [suite] if suite != "all" else ["thm1", "thm1-alt", "expform", "special", "funceq", "examples", "classify"]
    if suite == "triangle":
        if not args.triangle:
            raise UsageError("verify triangle needs --triangle FILE")
    for name in run:
        if name in ("thm1", "thm1-alt"):
            n, d = n_max if n_max is not None else 8, deg if deg is not None else 6
            engine = core.verify_staircase if name == "thm1" else core.verify_staircase_at_d
            reports += _suite_staircase(args, engine, n, d, rng)
        elif name == "expform":
            n, d = n_max if n_max is not None else 6, deg if deg is not None else 4
            reports += _suite_staircase(args, core.verify_exponential_form, n, d, rng)
        elif name == "special":
            n, d = n_max if n_max is not None else 8, deg if deg is not None else 6
            reports += _suite_special(args, n, d, rng)
        elif name == "funceq":
            reports += _suite_funceq(args, args.order if args.order is not None else 10, rng)
        elif name == "examples":
            reports += _suite_examples(n_max if n_max is not None else 6, deg if deg is not None else 4)
        elif name == "classify":
            reports += _suite_classify(rng)
        elif name == "triangle":
            reports.append(verify_triangle_file(args.triangle, args.rows_cap))
    for key in ("nmax", "deg", "order", "family", "a", "b", "c", "f", "preset"):
        value = getattr(args, key, None)
        if value is not None:
            params[key] = rational_str(value) if isinstance(value, Fraction) else value
    elapsed = time.perf_counter() - started if args.timing else None
    _emit(_reports_text(suite, params, reports, args.format, elapsed), args)
    return EXIT_OK if all(reports) else EXIT_FAIL


# argument parsing


def _attach_negative_values(argv: Sequence[str]) -> list[str]:
    """Turn ``--a -1/4`` into ``--a=-1/4``; argparse would read ``-1/4`` as a flag."""
    out: list[str] = []
    i = 0
    argv = list(argv)
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_OPTIONS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1] != "--":
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="umbral", description="Exact umbral-calculus computations and identity checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, generator=True):
        if generator:
            p.add_argument("--f", help="generator expression in t, e.g. 'exp(t)-1'")
            p.add_argument("--preset", help="named generator: " + ", ".join(sequences.PRESETS))
        p.add_argument("--format", choices=("table", "csv", "json"), default="table")
        p.add_argument("--out", metavar="FILE", help="write output to FILE instead of stdout")

    p = sub.add_parser("coeffs", help="connection-coefficient triangle of a generator")
    common(p)
    p.add_argument("--rows", type=int, default=8)
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("series", help="print a generator's coefficients")
    common(p)
    p.add_argument("--order", type=int, default=10)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("classify", help="place a generator in one of the four families")
    common(p)
    p.add_argument("--order", type=int, default=12)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sequence", help="named integer sequences and triangle rows")
    common(p, generator=False)
    p.add_argument("name", choices=SEQUENCES)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--row", type=int)
    p.set_defaults(func=cmd_sequence)

    p = sub.add_parser("verify", help="run a verification suite")
    common(p)
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--nmax", type=int)
    p.add_argument("--deg", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--family", choices=[f.value for f in cls.Family])
    p.add_argument("--a", type=rational_arg)
    p.add_argument("--b", type=rational_arg)
    p.add_argument("--c", type=rational_arg)
    p.add_argument("--A", help="free series A(t) for the linear family (default exp(t))")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--triangle", metavar="FILE", help="JSON triangle to check (suite 'triangle')")
    p.add_argument("--rows-cap", type=int, default=64, dest="rows_cap")
    p.add_argument("--timing", action="store_true", help="include wall time (output no longer byte-stable)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    parser = build_parser()
    try:
        args = parser.parse_args(_attach_negative_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"umbral: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
