"""Command-line interface.

Exit codes: 0 success or true verdict, 1 false verdict, 2 usage error,
3 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import analysis, generators, mpal, quadratic
from .cf import evaluate, simplify, word_matrix
from .errors import MpalError, ParseError
from .word import format_word, parse_word

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_DOMAIN = 0, 1, 2, 3


@dataclass(frozen=True)
class Config:
    depth: int = 200
    digits: int = 20
    window: int = 5
    max_repeat: int = 2
    output: str = "text"

    def __post_init__(self) -> None:
        for name in ("depth", "digits", "window", "max_repeat"):
            if getattr(self, name) < 1 and not (name == "digits" and getattr(self, name) == 0):
                raise MpalError(f"{name} must be positive")
        if self.output not in ("text", "json"):
            raise MpalError("output must be text or json")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # one-line diagnosis, exit 2
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def decimal_string(x: Fraction, digits: int) -> str:
    """``x`` rounded half away from zero to ``digits`` places."""
    scaled = abs(x) * 10**digits
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    whole, frac = divmod(q, 10**digits)
    sign = "-" if x < 0 and q else ""
    return f"{sign}{whole}.{frac:0{digits}d}" if digits else f"{sign}{whole}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = _Parser(prog="mpalkit", description="m-palindromic continued fraction toolkit")
    groups = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    cf_p = groups.add_parser("cf", help="evaluate and simplify continued fractions")
    cf_sub = cf_p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = cf_sub.add_parser("eval", parents=[common])
    p.add_argument("word")
    p.add_argument("--digits", type=_non_negative, default=Config.digits)
    p = cf_sub.add_parser("simplify", parents=[common])
    p.add_argument("word")

    mp = groups.add_parser("mpal", help="m-palindrome checks and density")
    mp_sub = mp.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = mp_sub.add_parser("check", parents=[common])
    p.add_argument("word")
    p.add_argument("--m", type=_positive, default=1)
    p.add_argument("--scan-m", type=_positive, default=None, metavar="MAX")
    p = mp_sub.add_parser("density", parents=[common])
    p.add_argument("--stream", required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--depth", type=_positive, default=Config.depth)
    p.add_argument("--window", type=_positive, default=Config.window)

    p = groups.add_parser("gen", parents=[common], help="print a prefix of a named infinite word")
    p.add_argument("family")
    p.add_argument("--params", default="")
    p.add_argument("--len", dest="length", type=_non_negative, required=True)

    qp = groups.add_parser("quad", help="eventually periodic continued fractions")
    q_sub = qp.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = q_sub.add_parser("solve", parents=[common])
    p.add_argument("word", help='eventually periodic word "U|W"')
    p.add_argument("--digits", type=_non_negative, default=Config.digits)
    p = q_sub.add_parser("burger", parents=[common])
    p.add_argument("word", help="period W")
    p.add_argument("--max-repeat", type=_positive, default=Config.max_repeat)

    ap = groups.add_parser("audit", help="finite-depth audits")
    a_sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)
    p = a_sub.add_parser("schmidt", parents=[common])
    p.add_argument("--stream", required=True)
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--w", type=_fraction, default=Fraction(8, 5))
    p.add_argument("--depth", type=_positive, default=Config.depth)
    p = a_sub.add_parser("stammer", parents=[common])
    p.add_argument("--stream", required=True)
    p.add_argument("--depth", type=_positive, default=Config.depth)
    p.add_argument("--max-period", type=_positive, required=True)
    p.add_argument("--offset-ratio", type=_fraction, default=None)
    p.add_argument("--top", type=_positive, default=10, help="evidence rows to print")
    return parser


def _emit(out, payload: dict, text: str, as_json: bool) -> None:
    if as_json:
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text + ("" if text.endswith("\n") else "\n"))


def _cf(args, out) -> int:
    w = parse_word(args.word)
    if args.command == "eval":
        x = evaluate(w)
        payload = {
            "word": list(w),
            "p": str(x.numerator),
            "q": str(x.denominator),
            "decimal": decimal_string(x, args.digits),
        }
        _emit(out, payload, f"{x.numerator}/{x.denominator}\n~ {payload['decimal']}", args.json)
    else:
        s = simplify(w)
        x = evaluate(s)
        payload = {"word": list(s), "p": str(x.numerator), "q": str(x.denominator)}
        _emit(out, payload, format_word(s), args.json)
    return EXIT_OK


def _mpal(args, out) -> int:
    if args.command == "check":
        w = parse_word(args.word)
        cert = mpal.certify(w, args.m)
        payload = {"word": list(w), "m": args.m, "m_palindrome": cert is not None}
        if cert is not None:
            lines = [f"{args.m}-palindrome: {cert}"]
            payload["certificate"] = {
                "p_i": str(cert.p_i),
                "q_i": str(cert.q_i),
                "p_prev": str(cert.p_prev),
            }
        else:
            mat = word_matrix(w)
            lines = [f"not a {args.m}-palindrome: {args.m}*{mat.c} != {mat.b}"]
        if args.scan_m:
            found = mpal.scan_m(w, args.scan_m)
            payload["scan_m"] = {"max": args.scan_m, "found": found}
            lines.append(f"m <= {args.scan_m} making it m-palindromic: {found or 'none'}")
        _emit(out, payload, "\n".join(lines), args.json)
        return EXIT_OK if cert is not None else EXIT_FALSE

    stream = generators.stream_from_spec(args.stream)
    report = mpal.mpal_prefixes(stream, args.m, args.depth, window=args.window)
    payload = report.to_dict()
    payload["stream"] = args.stream
    try:
        est = mpal.density_estimate(report, args.window)
        payload["density_estimate"] = str(est)
        est_text = f"{est} ~ {decimal_string(est, 10)}"
    except MpalError as exc:
        payload["density_estimate"] = None
        est_text = f"unavailable ({exc})"
    lines = [
        f"stream: {args.stream}  m={args.m}  audited depth={args.depth}",
        f"m-palindromic prefix lengths: {report.prefix_lengths}",
        f"density estimate (max of last {args.window} ratios, finite depth): {est_text}",
    ]
    _emit(out, payload, "\n".join(lines), args.json)
    return EXIT_OK


def _gen(args, out) -> int:
    spec = args.family if not args.params else f"{args.family}:{args.params}"
    stream = generators.stream_from_spec(spec)
    prefix = stream.prefix(args.length)
    _emit(out, {"family": spec, "length": args.length, "word": list(prefix)}, format_word(prefix), args.json)
    return EXIT_OK


def _quad(args, out) -> int:
    if args.command == "solve":
        e = quadratic.EventuallyPeriodicWord.parse(args.word).canonical()
        x = quadratic.periodic_value(e)
        a, b, c = x.polynomial
        reduced = quadratic.is_reduced(x)
        conj = x.conjugate()
        payload = {
            "word": str(e),
            "P": str(x.P),
            "D": str(x.D),
            "Q": str(x.Q),
            "value": str(x),
            "decimal": x.decimal(args.digits),
            "polynomial": [str(a), str(b), str(c)],
            "reduced": reduced,
            "conjugate": str(conj),
        }
        lines = [
            f"word: {e}",
            f"value: {x} ~ {x.decimal(args.digits)}",
            f"P={x.P} D={x.D} Q={x.Q}",
            f"{quadratic.poly_str(a, b, c)}, reduced={str(reduced).lower()}",
            f"conjugate: {conj} ~ {conj.decimal(args.digits)}",
        ]
        _emit(out, payload, "\n".join(lines), args.json)
        return EXIT_OK

    w = parse_word(args.word)
    verdict = quadratic.burger_split(w, args.max_repeat)
    payload = verdict.to_dict()
    payload["period"] = list(w)
    text = f"verdict: {verdict.kind.value} (rotations of W^j, j <= {args.max_repeat})"
    if verdict.parts:
        text += "\nwitness: " + " | ".join(format_word(part) for part in verdict.parts)
    _emit(out, payload, text, args.json)
    return EXIT_OK if verdict.kind is not quadratic.Split.NONE else EXIT_FALSE


def _audit(args, out) -> int:
    stream = generators.stream_from_spec(args.stream)
    if args.command == "schmidt":
        audit = analysis.schmidt_audit(stream, args.m, args.w, args.depth)
        payload = audit.to_dict()
        payload["stream"] = args.stream
        lines = [
            f"stream: {args.stream}  m={args.m}  w={args.w}  audited depth={args.depth}",
            f"enclosure depth: {audit.enclosure_depth}",
            f"{'index':>6} {'schmidt':>8} {'goal':>5} {'approx':>7}",
        ]
        for r in audit.records:
            lines.append(f"{r.index:>6} {str(r.schmidt_ok):>8} {str(r.goal_ok):>5} {str(r.approx_ok):>7}")
        lines.append(f"records: {len(audit.records)}  all certified: {audit.all_schmidt}  i0: {audit.i0}")
        _emit(out, payload, "\n".join(lines), args.json)
        return EXIT_OK if audit.all_schmidt else EXIT_FALSE

    if args.offset_ratio is None:
        evidence = analysis.initial_exponent_scan(stream, args.depth, args.max_period)
    else:
        evidence = analysis.offset_exponent_scan(stream, args.depth, args.max_period, args.offset_ratio)
    shown = evidence[: args.top]
    payload = {
        "stream": args.stream,
        "depth": args.depth,
        "max_period": args.max_period,
        "offset_ratio": None if args.offset_ratio is None else str(args.offset_ratio),
        "evidence": [e.to_dict() for e in shown],
        "note": "finite-depth evidence at audited depth",
    }
    lines = [f"stream: {args.stream}  audited depth={args.depth}  max period={args.max_period}"]
    lines += [f"|V|={len(e.V):>5} |U|={len(e.U):>5} w={e.w}" for e in shown]
    _emit(out, payload, "\n".join(lines), args.json)
    return EXIT_OK


_HANDLERS = {"cf": _cf, "mpal": _mpal, "gen": _gen, "quad": _quad, "audit": _audit}


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    try:
        return _HANDLERS[args.group](args, out)
    except ParseError as exc:
        err.write(f"mpalkit: error: {exc}\n")
        return EXIT_USAGE
    except MpalError as exc:
        err.write(f"mpalkit: {exc}\n")
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())
