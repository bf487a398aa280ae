"""Command-line interface: ``qcss <command> ...``.

Exit status is 0 on success, 1 when verification fails or an input file
is malformed, and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from importlib import resources
from pathlib import Path

from . import io
from .analysis import TREND_KINDS, ratio_trend, verify_declared
from .correlation import ENGINES, CorrelationReport, measure_theta_max
from .field import DEFAULT_MAX_ORDER, build_field, is_prime
from .generators import (Permutation, gen_prop1_family, gen_thm41_family, gen_thm41_row_deleted,
                         gen_thm42_family)
from .interleave import interleave_family
from .model import QcssFamily

GOLDEN_FILES = ("prop1_q16_k3.qmat", "thm41_n9.qmat", "thm42_n9.qmat")
ARGMAX_SHOWN = 20


def _num(x: float | None) -> str:
    return "none" if x is None else f"{x:.6f}"


def format_report(report: CorrelationReport) -> str:
    lines = [
        "QREPORT1",
        f"members {report.M}",
        f"flock {report.K}",
        f"length {report.N}",
        f"engine {report.engine}",
        f"measured_max {_num(report.measured_max)}",
        f"declared {_num(report.declared)}",
        f"peak {_num(report.peak)}",
        f"pair_count {report.pair_count}",
        f"bound {_num(report.bound)}",
        f"ratio {_num(report.ratio)}",
        f"argmax_count {len(report.argmax)}",
    ]
    lines += [f"argmax {i} {j} {t}" for i, j, t in report.argmax[:ARGMAX_SHOWN].tolist()]
    lines += [f"histogram {_num(k)} {c}" for k, c in sorted(report.histogram.items())]
    return "\n".join(lines) + "\n"


def _write(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated integer list, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcss", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field-info", help="describe the canonical GF(p^n)")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    gen = sub.add_parser("gen", help="generate a family file")
    gsub = gen.add_subparsers(dest="family", required=True)
    g = gsub.add_parser("prop1", help="character-based sequence family over GF(p^n)")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--flock", type=int, help="interleave into K x (q-1)/K matrices")
    g.add_argument("--output")
    for name in ("thm41", "thm42", "thm41-del"):
        g = gsub.add_parser(name)
        g.add_argument("--len", type=int, required=True, dest="length")
        g.add_argument("--rho", default="identity", help="identity, reversal, or a file")
        if name == "thm41-del":
            g.add_argument("--row", type=int, required=True, help="1-based row to delete")
        g.add_argument("--output")

    p = sub.add_parser("interleave", help="interleave a sequence family into matrices")
    p.add_argument("--input", required=True)
    p.add_argument("--flock", type=int, required=True)
    p.add_argument("--output")

    p = sub.add_parser("analyze", help="measure the maximum periodic correlation")
    p.add_argument("--input", required=True)
    p.add_argument("--engine", choices=ENGINES, default="naive")
    p.add_argument("--report")

    p = sub.add_parser("verify", help="audit a family against its declaration")
    p.add_argument("--input", required=True)
    p.add_argument("--engine", choices=ENGINES, default="auto")

    p = sub.add_parser("trend", help="optimality ratios over a size sweep")
    p.add_argument("--kind", choices=TREND_KINDS, required=True)
    p.add_argument("--points", type=_int_list, required=True)
    p.add_argument("--flocks", type=_int_list, help="per-point K for --kind prop1")
    p.add_argument("--engine", choices=ENGINES, default="auto")

    p = sub.add_parser("export-golden", help="write the bundled example families")
    p.add_argument("--dir", required=True)
    return parser


def _cmd_field_info(args, parser) -> int:
    if not is_prime(args.p):
        parser.error(f"--p {args.p} is not prime")
    if args.n < 1:
        parser.error("--n must be at least 1")
    if args.p**args.n > DEFAULT_MAX_ORDER:
        parser.error(f"--p/--n give q = {args.p**args.n}, above the cap {DEFAULT_MAX_ORDER}")
    ctx = build_field(args.p, args.n)
    counts = [int((ctx.trace == v).sum()) for v in range(ctx.p)]
    print(f"q {ctx.q}")
    print(f"p {ctx.p}")
    print(f"n {ctx.n}")
    print("modulus " + " ".join(map(str, ctx.modulus)))
    print(f"alpha {ctx.alpha}")
    print("trace_counts " + " ".join(map(str, counts)))
    return 0


def _rho(args, parser) -> Permutation:
    try:
        return Permutation.from_spec(args.rho, args.length)
    except (OSError, ValueError) as exc:
        parser.error(f"--rho: {exc}")


def _cmd_gen(args, parser) -> int:
    if args.family == "prop1":
        if not is_prime(args.p):
            parser.error(f"--p {args.p} is not prime")
        if args.n < 1 or args.p**args.n < 4 or args.p**args.n > DEFAULT_MAX_ORDER:
            parser.error(f"--n gives q = {args.p**args.n}; need 4 <= q <= {DEFAULT_MAX_ORDER}")
        fam = gen_prop1_family(build_field(args.p, args.n))
        if args.flock is not None:
            m = fam.period
            if not 1 < args.flock < m or m % args.flock:
                parser.error(f"--flock {args.flock} must be a divisor of {m} strictly between 1 and {m}")
            fam = interleave_family(fam, args.flock)
    else:
        if args.length <= 1 or args.length % 2 == 0:
            parser.error(f"--len {args.length} must be an odd integer > 1")
        rho = _rho(args, parser)
        if args.family == "thm41":
            fam = gen_thm41_family(args.length, rho)
        elif args.family == "thm42":
            if not rho.fixes_zero():
                parser.error("--rho must fix 0 for thm42")
            fam = gen_thm42_family(args.length, rho)
        else:
            if not 1 <= args.row <= args.length:
                parser.error(f"--row {args.row} must lie in [1, {args.length}]")
            fam = gen_thm41_row_deleted(args.length, rho, args.row)
    _write(io.serialize(fam), args.output)
    return 0


def _cmd_interleave(args, parser) -> int:
    fam = io.load(args.input)
    if isinstance(fam, QcssFamily):
        parser.error("--input must be a QSEQ1 sequence family")
    n = fam.period
    if args.flock <= 1 or n % args.flock or n // args.flock <= 1:
        parser.error(f"--flock {args.flock} must divide the period {n} with 1 < K < {n}")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        out = interleave_family(fam, args.flock)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _write(io.serialize(out), args.output)
    return 0


def _cmd_analyze(args, parser) -> int:
    fam = io.load(args.input)
    text = format_report(measure_theta_max(fam, args.engine))
    sys.stdout.write(text)
    if args.report:
        Path(args.report).write_text(text)
    return 0


def _cmd_verify(args, parser) -> int:
    fam = io.load(args.input)
    v = verify_declared(fam, args.engine)
    print(f"measured_max {_num(v.measured)}")
    print(f"declared {_num(v.declared)}")
    print(f"bound {_num(v.bound)}")
    print(f"within_declared {'pass' if v.within_declared else 'fail'}")
    print(f"above_bound {'pass' if v.above_bound else 'fail'}")
    if v.case_structure is not None:
        print("support " + " ".join(_num(s) for s in v.support))
        print("expected_support " + " ".join(_num(s) for s in v.expected))
        print(f"case_structure {'pass' if v.case_structure else 'fail'}")
    if v.table_row is not None:
        print(f"table_row {v.table_row[0]} {'pass' if v.table_row[1] else 'fail'}")
    print(f"verdict {'pass' if v.passed else 'fail'}")
    return 0 if v.passed else 1


def _cmd_trend(args, parser) -> int:
    if args.flocks is not None:
        if args.kind != "prop1":
            parser.error("--flocks only applies to --kind prop1")
        if len(args.flocks) != len(args.points):
            parser.error("--flocks needs one entry per --points value")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        result = ratio_trend(args.kind, args.points, args.flocks, args.engine)
    print(f"kind {result.kind}")
    print("columns size M K N measured bound ratio predicted")
    for r in result.rows:
        print(f"row {r.size} {r.M} {r.K} {r.N} {_num(r.measured)} {_num(r.bound)} "
              f"{_num(r.ratio)} {_num(r.predicted)}")
    print(f"direction {result.direction}")
    for note in result.notes:
        print(f"note {note}")
    return 0


def export_golden(directory: str | Path) -> list[Path]:
    out_dir = Path(directory)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    pkg = resources.files("qcss") / "golden"
    for name in GOLDEN_FILES:
        target = out_dir / name
        target.write_text((pkg / name).read_text())
        written.append(target)
    return written


def _cmd_export_golden(args, parser) -> int:
    for path in export_golden(args.dir):
        print(path)
    return 0


COMMANDS = {
    "field-info": _cmd_field_info,
    "gen": _cmd_gen,
    "interleave": _cmd_interleave,
    "analyze": _cmd_analyze,
    "verify": _cmd_verify,
    "trend": _cmd_trend,
    "export-golden": _cmd_export_golden,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args, parser)
    except io.FormatError as exc:
        print(f"error: {getattr(args, 'input', '')}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
