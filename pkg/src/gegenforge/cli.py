"""Command-line front end.

Subcommands
-----------
verify        one identity case -> one report (exit 0 converged, 2 not)
sweep         grid of cases -> CSV/JSON rows in lexicographic parameter order
constants     reproduce the fixed table of pi constants and count agreed digits
oracle-check  quadrature vs closed forms for the trig moments and coefficients
expand        partial sum of a weighted-Chebyshev expansion vs its target

Floats serialize with 17 significant digits so every value round-trips
exactly; complex values appear as {"re": ..., "im": ...} in JSON and as
re+imj literals in CSV cells.  GEGENFORGE_MAX_TERMS overrides max_terms.
"""

import argparse
import math
import os
import sys
from dataclasses import dataclass

from .context import Accelerator, DomainError, PoleError, PrecisionContext, QuadratureError
from .expansion import ExpansionKind, ExpansionParams, partial_sum
from .identities import IdentityCase, VerificationReport, verify_identity
from .oracle import (
    TrigMomentKind,
    coeff_by_quadrature,
    target_by_series_check,
    trig_moment_closed,
    trig_moment_quadrature,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_CONVERGED = 2

_REPORT_FIELDS = (
    "identity_id",
    "params",
    "closed_value",
    "series_value",
    "abs_err",
    "rel_err",
    "terms_used",
    "accelerator",
    "converged",
    "runtime_ms",
)
_PARAM_FIELDS = ("lambda", "m", "q", "z_re", "z_im")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors by default; the contract here is 1
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(_fail(message))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return EXIT_USAGE


def _fmt_float(x: float) -> str:
    return format(float(x), ".17g")


def _fmt_value(v) -> str:
    """JSON fragment for a number; complex becomes an {re, im} object."""
    if isinstance(v, complex):
        return '{"re": %s, "im": %s}' % (_fmt_float(v.real), _fmt_float(v.imag))
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v)
    if isinstance(v, int):
        return str(v)
    if v is None:
        return "null"
    return '"%s"' % v


def _csv_value(v) -> str:
    if isinstance(v, complex):
        sign = "+" if v.imag >= 0 else "-"
        return f"{_fmt_float(v.real)}{sign}{_fmt_float(abs(v.imag))}j"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return _fmt_float(v)
    if v is None:
        return ""
    return str(v)


def report_to_json(report: VerificationReport) -> str:
    case = report.case
    z = case.z
    params = {
        "lambda": case.lam,
        "m": case.m,
        "q": case.q,
        "z_re": None if z is None else z.real,
        "z_im": None if z is None else z.imag,
    }
    parts = [
        '"identity_id": "%s"' % case.id,
        '"params": {%s}' % ", ".join(f'"{k}": {_fmt_value(params[k])}' for k in _PARAM_FIELDS),
        '"closed_value": %s' % _fmt_value(report.closed_value),
        '"series_value": %s' % _fmt_value(report.series_value),
        '"abs_err": %s' % _fmt_value(report.abs_err),
        '"rel_err": %s' % _fmt_value(report.rel_err),
        '"terms_used": %d' % report.terms_used,
        '"accelerator": "%s"' % report.accelerator.value,
        '"converged": %s' % ("true" if report.converged else "false"),
        '"runtime_ms": %s' % _fmt_value(report.runtime_ms),
    ]
    return "{" + ", ".join(parts) + "}"


_CSV_HEADER = "identity_id,lambda,m,q,z_re,z_im,closed_value,series_value,abs_err,rel_err,terms_used,accelerator,converged,runtime_ms"


def report_to_csv_row(report: VerificationReport) -> str:
    case = report.case
    z = case.z
    cells = [
        str(case.id),
        _csv_value(case.lam),
        _csv_value(case.m),
        _csv_value(case.q),
        _csv_value(None if z is None else z.real),
        _csv_value(None if z is None else z.imag),
        _csv_value(report.closed_value),
        _csv_value(report.series_value),
        _csv_value(report.abs_err),
        _csv_value(report.rel_err),
        str(report.terms_used),
        report.accelerator.value,
        "true" if report.converged else "false",
        _csv_value(report.runtime_ms),
    ]
    return ",".join(cells)


def _human_value(v) -> str:
    if isinstance(v, complex):
        return f"{v.real:.12g}{'+' if v.imag >= 0 else '-'}{abs(v.imag):.12g}j"
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def report_to_human(report: VerificationReport) -> str:
    mark = "" if report.converged else " !"
    case = report.case
    bits = [f"id={case.id}"]
    if case.lam is not None:
        bits.append(f"lambda={case.lam:g}")
    if case.m is not None:
        bits.append(f"m={case.m}")
    if case.q is not None:
        bits.append(f"q={case.q}")
    if case.z is not None:
        bits.append(f"z={_human_value(case.z)}")
    return (
        f"{' '.join(bits)}: series={_human_value(report.series_value)} "
        f"closed={_human_value(report.closed_value)} rel_err={report.rel_err:.3g} "
        f"terms={report.terms_used} [{report.accelerator.value}]{mark}"
    )


# ---------------------------------------------------------------------------
# argument plumbing
# ---------------------------------------------------------------------------


def _add_ctx_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--working-digits", type=int, default=15)
    p.add_argument("--max-terms", type=int, default=None)
    p.add_argument("--abs-tol", type=float, default=1e-12)
    p.add_argument("--rel-tol", type=float, default=1e-9)
    p.add_argument(
        "--accelerator",
        choices=[a.value for a in Accelerator],
        default=None,
        help="override the identity's default summation mode",
    )
    p.add_argument("--limit-guard", type=float, default=1e-7)


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--output", choices=("json", "csv", "human"), default="human")
    p.add_argument("--json", dest="output", action="store_const", const="json")
    p.add_argument("--out", default=None, help="write to this path instead of stdout")


def _build_ctx(args) -> PrecisionContext:
    max_terms = args.max_terms
    env = os.environ.get("GEGENFORGE_MAX_TERMS")
    if env is not None:
        max_terms = int(env)
    if max_terms is None:
        max_terms = 20_000
    return PrecisionContext(
        working_digits=args.working_digits,
        max_terms=max_terms,
        abs_tol=args.abs_tol,
        rel_tol=args.rel_tol,
        limit_guard=args.limit_guard,
    )


def _build_case(args) -> IdentityCase:
    z = None
    if args.z_re is not None or args.z_im is not None:
        z = complex(args.z_re or 0.0, args.z_im or 0.0)
    return IdentityCase(args.id, lam=args.lam, m=args.m, q=args.q, z=z)


@dataclass
class _Sink:
    path: str | None
    lines: list

    def write(self, line: str) -> None:
        self.lines.append(line)

    def flush(self) -> None:
        text = "\n".join(self.lines) + "\n"
        if self.path is None:
            sys.stdout.write(text)
        else:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(text)


def _emit_reports(reports: list[VerificationReport], args) -> None:
    sink = _Sink(args.out, [])
    if args.output == "json":
        if len(reports) == 1:
            sink.write(report_to_json(reports[0]))
        else:
            sink.write("[")
            for i, rep in enumerate(reports):
                sink.write("  " + report_to_json(rep) + ("," if i + 1 < len(reports) else ""))
            sink.write("]")
    elif args.output == "csv":
        sink.write(_CSV_HEADER)
        for rep in reports:
            sink.write(report_to_csv_row(rep))
    else:
        for rep in reports:
            sink.write(report_to_human(rep))
    sink.flush()


# ---------------------------------------------------------------------------
# range parsing for sweeps
# ---------------------------------------------------------------------------


def _parse_float_range(text: str) -> list[float]:
    """'0.1:0.4:0.1' inclusive range, or 'a,b,c', or a single value."""
    if ":" in text:
        pieces = text.split(":")
        if len(pieces) != 3:
            raise ValueError(f"bad range {text!r}; want start:stop:step")
        start, stop, step = (float(p) for p in pieces)
        if step <= 0:
            raise ValueError("range step must be positive")
        out = []
        k = 0
        while True:
            v = start + k * step
            if v > stop + 1e-12:
                break
            out.append(round(v, 12))
            k += 1
        return out
    return [float(p) for p in text.split(",")]


def _parse_int_range(text: str) -> list[int]:
    """'0..3' inclusive range, or 'a,b,c', or a single value."""
    if ".." in text:
        lo, hi = text.split("..")
        return list(range(int(lo), int(hi) + 1))
    return [int(p) for p in text.split(",")]


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def _cmd_verify(args) -> int:
    ctx = _build_ctx(args)
    case = _build_case(args)
    accel = Accelerator(args.accelerator) if args.accelerator else None
    report = verify_identity(case, ctx, accelerator=accel)
    _emit_reports([report], args)
    return EXIT_OK if report.converged else EXIT_NOT_CONVERGED


def _cmd_sweep(args) -> int:
    ctx = _build_ctx(args)
    lams = _parse_float_range(args.lam) if args.lam is not None else [None]
    ms = _parse_int_range(args.m) if args.m is not None else [None]
    qs = _parse_int_range(args.q) if args.q is not None else [None]
    zs: list[complex | None] = [None]
    if args.z_re is not None:
        zs = [complex(zr, args.z_im or 0.0) for zr in _parse_float_range(args.z_re)]
    grid = sorted(
        {
            (lam, m, q, (z.real, z.imag) if z is not None else None)
            for lam in lams
            for m in ms
            for q in qs
            for z in zs
        },
        key=lambda t: tuple((v is None, v) for v in (t[0], t[1], t[2])) + (t[3] or (0.0, 0.0),),
    )
    if not grid:
        return _fail("empty sweep grid")
    accel = Accelerator(args.accelerator) if args.accelerator else None
    reports = []
    for lam, m, q, zt in grid:
        case = IdentityCase(args.id, lam=lam, m=m, q=q, z=complex(*zt) if zt else None)
        reports.append(verify_identity(case, ctx, accelerator=accel))
    _emit_reports(reports, args)
    return EXIT_OK if all(r.converged for r in reports) else EXIT_NOT_CONVERGED


_CONSTANTS_TABLE = (
    # label, case builder, reference, series scale factor
    ("4/pi", lambda: IdentityCase("EQ47", m=0), 4.0 / math.pi, 1.0),
    ("2/pi", lambda: IdentityCase("EQ48", m=0), 2.0 / math.pi, 1.0),
    ("32/(3 pi^2)", lambda: IdentityCase("EQ411"), 32.0 / (3.0 * math.pi**2), 1.0),
    ("32/pi^2", lambda: IdentityCase("EQ412"), 32.0 / math.pi**2, 1.0),
    ("8/pi^2", lambda: IdentityCase("C15", m=0, q=0), 8.0 / math.pi**2, 1.0),
    # the q-family: (2q+1) * C15(m=0, q) telescopes to 2^(4q+3)/pi^2
    ("2^3/pi^2 (q=0)", lambda: IdentityCase("C15", m=0, q=0), 8.0 / math.pi**2, 1.0),
    ("2^7/pi^2 (q=1)", lambda: IdentityCase("C15", m=0, q=1), 2.0**7 / math.pi**2, 3.0),
    ("2^11/pi^2 (q=2)", lambda: IdentityCase("C15", m=0, q=2), 2.0**11 / math.pi**2, 5.0),
    ("2^15/pi^2 (q=3)", lambda: IdentityCase("C15", m=0, q=3), 2.0**15 / math.pi**2, 7.0),
)


def _agreed_digits(estimate: float, reference: float) -> int:
    if estimate == reference:
        return 17
    rel = abs(estimate - reference) / abs(reference)
    if rel <= 0.0:
        return 17
    return max(0, int(-math.log10(rel)))


def _cmd_constants(args) -> int:
    ctx = _build_ctx(args).with_(
        working_digits=max(30, args.working_digits),
        rel_tol=min(args.rel_tol, 1e-11),
        abs_tol=min(args.abs_tol, 1e-14),
    )
    sink = _Sink(args.out, [])
    rows = []
    for label, build, reference, scale in _CONSTANTS_TABLE:
        report = verify_identity(build(), ctx)
        estimate = report.series_value * scale
        digits = _agreed_digits(estimate, reference)
        rows.append((label, estimate, reference, digits, report.converged))
    failed = [r for r in rows if r[3] < 9]
    if args.output == "json":
        sink.write("[")
        for i, (label, est, ref, digits, conv) in enumerate(rows):
            frag = (
                '{"constant": "%s", "series_estimate": %s, "reference": %s, '
                '"digits_agreed": %d, "converged": %s}'
                % (label, _fmt_float(est), _fmt_float(ref), digits, "true" if conv else "false")
            )
            sink.write("  " + frag + ("," if i + 1 < len(rows) else ""))
        sink.write("]")
    elif args.output == "csv":
        sink.write("constant,series_estimate,reference,digits_agreed,converged")
        for label, est, ref, digits, conv in rows:
            sink.write(f"{label},{_fmt_float(est)},{_fmt_float(ref)},{digits},{str(conv).lower()}")
    else:
        sink.write(f"{'constant':<16} {'series estimate':<22} {'reference':<22} digits")
        for label, est, ref, digits, conv in rows:
            mark = "" if digits >= 9 and conv else " !"
            sink.write(f"{label:<16} {est:<22.17g} {ref:<22.17g} {digits}{mark}")
    sink.flush()
    return EXIT_NOT_CONVERGED if failed else EXIT_OK


def _cmd_oracle_check(args) -> int:
    ctx = _build_ctx(args).with_(rel_tol=1e-13, abs_tol=1e-15)
    sink = _Sink(args.out, [])
    worst_moment = 0.0
    for mu in (-0.4, 0.1, 0.2, 0.45):
        for m in range(6):
            for kind in TrigMomentKind:
                closed = trig_moment_closed(kind, mu, m)
                quad = trig_moment_quadrature(kind, mu, m, ctx)
                rel = abs(quad.value - closed) / abs(closed) if closed else abs(quad.value)
                worst_moment = max(worst_moment, rel)
    worst_coeff = 0.0
    from .expansion import coeff_t_kind, coeff_u_kind

    for lam in (0.25, 0.7, 1.5):
        kinds = (ExpansionKind.U_KIND,) if lam >= 1.0 else tuple(ExpansionKind)
        for kind in kinds:
            for m in range(3):
                for q in range(6):
                    closed = (
                        coeff_u_kind(lam, m, q)
                        if kind is ExpansionKind.U_KIND
                        else coeff_t_kind(lam, m, q)
                    )
                    quad = coeff_by_quadrature(lam, m, m + 2 * q, kind, ctx)
                    rel = abs(quad.value - closed) / max(abs(closed), 1e-300)
                    worst_coeff = max(worst_coeff, rel)
    ok = worst_moment <= 1e-11 and worst_coeff <= 1e-9
    if args.output == "json":
        sink.write(
            '{"trig_moment_worst_rel": %s, "coefficient_worst_rel": %s, "ok": %s}'
            % (_fmt_float(worst_moment), _fmt_float(worst_coeff), "true" if ok else "false")
        )
    else:
        sink.write(f"trig moments  worst rel err: {worst_moment:.3g}  (gate 1e-11)")
        sink.write(f"coefficients  worst rel err: {worst_coeff:.3g}  (gate 1e-9)")
        sink.write("oracle check: " + ("ok" if ok else "FAILED"))
    sink.flush()
    return EXIT_OK if ok else EXIT_NOT_CONVERGED


def _cmd_expand(args) -> int:
    ctx = _build_ctx(args)
    kind = ExpansionKind.U_KIND if args.kind == "u" else ExpansionKind.T_KIND
    params = ExpansionParams(args.lam, args.m, kind)
    n = args.n_terms
    if n + 1 > ctx.max_terms:
        ctx = ctx.with_(max_terms=n + 1)
    result = partial_sum(params, args.x, n, ctx, smoothed=args.cesaro)
    target = target_by_series_check(kind, args.lam, args.m, args.x)
    err = abs(result.value - target)
    sink = _Sink(args.out, [])
    if args.output == "json":
        sink.write(
            '{"kind": "%s", "lambda": %s, "m": %d, "x": %s, "n_terms": %d, '
            '"series_value": %s, "target": %s, "abs_err": %s, "cesaro": %s}'
            % (
                args.kind,
                _fmt_float(args.lam),
                args.m,
                _fmt_float(args.x),
                n,
                _fmt_float(result.value),
                _fmt_float(target),
                _fmt_float(err),
                "true" if args.cesaro else "false",
            )
        )
    else:
        sink.write(
            f"kind={args.kind} lambda={args.lam:g} m={args.m} x={args.x:g} N={n}: "
            f"series={result.value:.12g} target={target:.12g} abs_err={err:.3g}"
        )
    sink.flush()
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = _Parser(prog="gegenforge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="verify one identity case")
    p_verify.add_argument("--id", required=True)
    p_verify.add_argument("--lambda", dest="lam", type=float, default=None)
    p_verify.add_argument("--m", type=int, default=None)
    p_verify.add_argument("--q", type=int, default=None)
    p_verify.add_argument("--z-re", type=float, default=None)
    p_verify.add_argument("--z-im", type=float, default=None)
    _add_ctx_args(p_verify)
    _add_output_args(p_verify)

    p_sweep = sub.add_parser("sweep", help="verify a parameter grid")
    p_sweep.add_argument("--id", required=True)
    p_sweep.add_argument("--lambda", dest="lam", default=None, help="value, list, or start:stop:step")
    p_sweep.add_argument("--m", default=None, help="value, list, or lo..hi")
    p_sweep.add_argument("--q", default=None, help="value, list, or lo..hi")
    p_sweep.add_argument("--z-re", default=None, help="value, list, or start:stop:step")
    p_sweep.add_argument("--z-im", type=float, default=None)
    _add_ctx_args(p_sweep)
    _add_output_args(p_sweep)

    p_const = sub.add_parser("constants", help="reproduce the pi-constants table")
    _add_ctx_args(p_const)
    _add_output_args(p_const)

    p_oracle = sub.add_parser("oracle-check", help="closed forms vs quadrature oracle")
    _add_ctx_args(p_oracle)
    _add_output_args(p_oracle)

    p_expand = sub.add_parser("expand", help="partial sum of an expansion vs its target")
    p_expand.add_argument("--kind", choices=("u", "t"), required=True)
    p_expand.add_argument("--lambda", dest="lam", type=float, required=True)
    p_expand.add_argument("--m", type=int, required=True)
    p_expand.add_argument("--x", type=float, required=True)
    p_expand.add_argument("--n-terms", type=int, default=2000)
    p_expand.add_argument("--cesaro", action="store_true")
    _add_ctx_args(p_expand)
    _add_output_args(p_expand)

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    handlers = {
        "verify": _cmd_verify,
        "sweep": _cmd_sweep,
        "constants": _cmd_constants,
        "oracle-check": _cmd_oracle_check,
        "expand": _cmd_expand,
    }
    try:
        return handlers[args.command](args)
    except (DomainError, PoleError, ValueError) as exc:
        return _fail(str(exc))
    except QuadratureError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED


if __name__ == "__main__":
    raise SystemExit(main())
