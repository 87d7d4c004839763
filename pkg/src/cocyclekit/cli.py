"""Command-line surface.

Two families of subcommands: ``finite`` drives covering-model analyses
(growth rates, level sets, tails, cocycle checks) and ``rational`` drives
projective-line dynamics (exceptional sets, backward growth, fibers, the
equidistribution diagnostic).  Every command reads one input file, writes
one deterministic report to stdout or --out, and exits 0 on success, 1 on
input errors, 2 on numeric failures, and 3 when a budget truncated the
result.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .cocycle import check_submultiplicative
from .errors import InputError, NumericFailureError, ParseError, PathError
from .finite import (
    delta_star,
    kappa_backward,
    kappa_minus,
    level_set,
    sigma_construct,
    tail_limit,
)
from .formats import format_scalar, parse_map, parse_model, _parse_scalar
from .projective import ProjectivePoint
from .rational_maps import (
    RationalMap,
    equidistribution_report,
    exceptional_set,
    kappa_backward_analytic,
    preimages,
)
from .reports import Report, emit_report, sha256_digest
from .roots import DEFAULT_TOL


class _Parser(argparse.ArgumentParser):
    # argparse normally exits 2 on usage errors; exit code 2 is reserved
    # for numeric failures here, so route usage problems through InputError
    def error(self, message):
        raise InputError(message)


def _read_input(path: str) -> tuple[str, str]:
    try:
        with open(path, "rb") as handle:
            data = handle.read()
    except OSError as exc:
        raise PathError(f"cannot read {path}: {exc}") from exc
    try:
        return data.decode("utf-8"), sha256_digest(data)
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not UTF-8: {exc}") from exc


def _fraction_arg(text: str, what: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise InputError(f"bad {what} {text!r}: expected a rational like 3/2") from None
    return value


def _fmt_point(x: ProjectivePoint) -> str:
    return "inf" if x.is_infinity else format_scalar(x.z)


def _parse_point(token: str, f: RationalMap) -> ProjectivePoint:
    token = token.strip()
    if token in ("inf", "infinity", "oo"):
        return ProjectivePoint.infinity(f.mode)
    return ProjectivePoint.affine(_parse_scalar(token, f.mode, None))


def _fmt_path(nodes) -> str:
    return " -> ".join(str(n) for n in nodes)


# -- finite family -------------------------------------------------------------


def _cmd_finite_analyze(args) -> tuple[Report, bool]:
    text, digest = _read_input(args.file)
    model, spec = parse_model(text, allow_sources=args.allow_sources)
    delta = _fraction_arg(args.delta, "--delta")
    report = Report("finite analyze", digest)
    report.add("nodes", model.node_count)
    report.add("edges", len(model.edges))
    report.add("delta", delta)
    cert = level_set(model, spec, delta)
    report.add("delta-star", cert.delta_star.display())
    rows = []
    for x in range(model.node_count):
        rate = kappa_minus(model, spec, x)
        rows.append((x, rate.product, rate.length, f"{rate.approx:.10f}"))
    report.set_table(("node", "product", "length", "approx"), rows)
    members = sorted(cert.members)
    report.add("level-set.members", members)
    for x in members:
        (src, _), (_, dst) = cert.invariance_witness[x]
        report.add(f"level-set.witness.{x}", f"in {src}->{x} out {x}->{dst}")
        cycle, path = cert.orbit_witness[x]
        report.add(
            f"level-set.orbit.{x}",
            f"cycle {list(cycle)} path {_fmt_path(path.nodes)}",
        )
    if args.sigma:
        trace = sigma_construct(model, spec, delta)
        report.add("sigma.members", sorted(trace.sigma))
        report.add("sigma.n1", trace.n1)
        report.add(
            "sigma.delta0",
            trace.delta0.display() if trace.delta0 is not None else "none",
        )
        report.add("sigma.residual", sorted(trace.residual))
        for key in sorted(trace.constants):
            report.add(f"sigma.constants.{key}", trace.constants[key])
    return report, False


def _cmd_finite_kappa_minus(args) -> tuple[Report, bool]:
    text, digest = _read_input(args.file)
    model, spec = parse_model(text, allow_sources=args.allow_sources)
    if not (0 <= args.node < model.node_count):
        raise InputError(f"--node {args.node} out of range 0..{model.node_count - 1}")
    if args.max_n < 1:
        raise InputError("--max-n must be at least 1")
    report = Report("finite kappa-minus", digest)
    report.add("node", args.node)
    rate = kappa_minus(model, spec, args.node)
    report.add("kappa-minus", rate.display())
    rows = [(n, kappa_backward(model, spec, args.node, n)) for n in range(1, args.max_n + 1)]
    report.set_table(("n", "kappa_minus_n"), rows)
    return report, False


def _cmd_finite_tail(args) -> tuple[Report, bool]:
    text, digest = _read_input(args.file)
    model, spec = parse_model(text, allow_sources=args.allow_sources)
    if not (0 <= args.node < model.node_count):
        raise InputError(f"--node {args.node} out of range 0..{model.node_count - 1}")
    got = tail_limit(model, spec, args.node)
    report = Report("finite tail", digest)
    report.add("node", args.node)
    report.add("kappa", got.kappa.display())
    report.add("l-min", got.l_min)
    return report, False


def _cmd_finite_check(args) -> tuple[Report, bool]:
    text, digest = _read_input(args.file)
    model, spec = parse_model(text, allow_sources=args.allow_sources)
    if args.depth < 2:
        raise InputError("--depth must be at least 2")
    result = check_submultiplicative(spec, model, args.depth)
    report = Report("finite check-cocycle", digest)
    report.add("depth", result.depth)
    report.add("checked-splits", result.checked_splits)
    report.add("ok", "true" if result.ok else "false")
    report.add("violations", len(result.violations))
    for i, v in enumerate(result.violations[:10]):
        report.add(
            f"violation.{i}",
            f"x={v.start} n={v.n} m={v.m} y={v.midpoint} lhs={v.lhs} rhs={v.rhs} "
            f"path {_fmt_path(v.witness.nodes)}",
        )
    return report, False


# -- rational family -----------------------------------------------------------


def _cmd_rational_exceptional(args) -> tuple[Report, bool]:
    text, digest = _read_input(args.file)
    f = parse_map(text)
    got = exceptional_set(f, tol=args.tol)
    report = Report("rational exceptional", digest)
    report.add("degree", f.degree)
    report.add("mode", f.mode)
    report.add("points", [_fmt_point(a) for a in got.points])
    report.add(
        "cycles",
        [" -> ".join(_fmt_point(a) for a in cycle) for cycle in got.cycle_structure],
    )
    for a, fiber in got.certificates:
        shown = ", ".join(f"({_fmt_point(y)}, {m})" for y, m in fiber.points)
        report.add(f"certificate.{_fmt_point(a)}", f"fiber [{shown}]")
    for a, values in got.growth_check:
        report.add(f"backward-growth.{_fmt_point(a)}", list(values))
    report.add("budget-note", got.budget_note)
    return report, False


def _cmd_rational_backward(args) -> tuple[Report, bool]:
    text, digest = _read_input(args.file)
    f = parse_map(text)
    point = _parse_point(args.point, f)
    est = kappa_backward_analytic(f, point, args.depth, budget=args.budget, tol=args.tol)
    report = Report("rational backward", digest)
    report.add("point", _fmt_point(point))
    report.add("depth", args.depth)
    report.add("budget", args.budget)
    report.add("value", est.value)
    report.add("complete", "true" if est.complete else "false")
    report.add("explored", est.explored)
    report.add("witness", " -> ".join(_fmt_point(y) for y in est.witness))
    return report, not est.complete


def _cmd_rational_fiber(args) -> tuple[Report, bool]:
    text, digest = _read_input(args.file)
    f = parse_map(text)
    point = _parse_point(args.point, f)
    fiber = preimages(f, point, tol=args.tol)
    report = Report("rational fiber", digest)
    report.add("point", _fmt_point(point))
    report.add("degree", f.degree)
    report.set_table(
        ("point", "multiplicity"),
        [(_fmt_point(y), m) for y, m in fiber.points],
    )
    return report, False


def _cmd_rational_equidist(args) -> tuple[Report, bool]:
    text, digest = _read_input(args.file)
    f = parse_map(text)
    seeds = [_parse_point(tok, f) for tok in args.seeds.split(",") if tok.strip()]
    if not seeds:
        raise InputError("--seeds needs at least one point")
    got = equidistribution_report(f, seeds, args.depth, args.cells, tol=args.tol)
    report = Report("rational equidist", digest)
    report.add("depth", got.depth)
    report.add("cells", got.cells)
    report.add("seeds", [_fmt_point(s) for s in got.seeds])
    for i, (mass, conc) in enumerate(zip(got.masses, got.radial_concentration)):
        report.add(f"seed.{i}.mass", mass)
        report.add(f"seed.{i}.radial-concentration", repr(conc))
    for i, n, tv in got.consecutive_tv:
        report.add(f"seed.{i}.tv.depth{n}-{n + 1}", repr(tv))
    report.set_table(
        ("seed_i", "seed_j", "tv"),
        [(i, j, repr(tv)) for i, j, tv in got.pairwise_tv],
    )
    return report, False


# -- dispatch -------------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="cocyclekit", description=__doc__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument(
        "--format", choices=("structured", "csv"), default="structured"
    )
    model_common = argparse.ArgumentParser(add_help=False)
    model_common.add_argument(
        "--allow-sources",
        action="store_true",
        help="accept models with in-degree-0 nodes (non-surjective)",
    )
    map_common = argparse.ArgumentParser(add_help=False)
    map_common.add_argument(
        "--tol", type=float, default=DEFAULT_TOL, help="root clustering tolerance"
    )

    families = parser.add_subparsers(dest="family", required=True)

    finite = families.add_parser("finite", help="covering-model analyses")
    fsub = finite.add_subparsers(dest="command", required=True)
    p = fsub.add_parser("analyze", parents=[common, model_common])
    p.add_argument("file")
    p.add_argument("--delta", required=True, help="level-set threshold, rational")
    p.add_argument("--sigma", action="store_true", help="add the sigma construction")
    p.set_defaults(handler=_cmd_finite_analyze)
    p = fsub.add_parser("kappa-minus", parents=[common, model_common])
    p.add_argument("file")
    p.add_argument("--node", type=int, required=True)
    p.add_argument("--max-n", type=int, default=8)
    p.set_defaults(handler=_cmd_finite_kappa_minus)
    p = fsub.add_parser("tail", parents=[common, model_common])
    p.add_argument("file")
    p.add_argument("--node", type=int, required=True)
    p.set_defaults(handler=_cmd_finite_tail)
    p = fsub.add_parser("check-cocycle", parents=[common, model_common])
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=6)
    p.set_defaults(handler=_cmd_finite_check)

    rational = families.add_parser("rational", help="projective-line dynamics")
    rsub = rational.add_subparsers(dest="command", required=True)
    p = rsub.add_parser("exceptional", parents=[common, map_common])
    p.add_argument("file")
    p.set_defaults(handler=_cmd_rational_exceptional)
    p = rsub.add_parser("backward", parents=[common, map_common])
    p.add_argument("file")
    p.add_argument("--point", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--budget", type=int, default=20000)
    p.set_defaults(handler=_cmd_rational_backward)
    p = rsub.add_parser("fiber", parents=[common, map_common])
    p.add_argument("file")
    p.add_argument("--point", required=True)
    p.set_defaults(handler=_cmd_rational_fiber)
    p = rsub.add_parser("equidist", parents=[common, map_common])
    p.add_argument("file")
    p.add_argument("--seeds", required=True, help="comma-separated seed points")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--cells", type=int, default=24)
    p.set_defaults(handler=_cmd_rational_equidist)
    return parser


def run_command(argv: list[str]) -> int:
    """Execute one subcommand; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        report, partial = args.handler(args)
        payload = emit_report(report, args.format)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except NumericFailureError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    if args.out:
        try:
            with open(args.out, "wb") as handle:
                handle.write(payload)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return 1
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    return 3 if partial else 0


def entry() -> None:
    sys.exit(run_command(sys.argv[1:]))
