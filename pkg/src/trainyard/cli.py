"""Command-line surface: every operation behind a stable text/JSON face.

Output format is chosen by the TRAINYARD_FORMAT environment variable
("text", the default, or "json"); horizons default to TRAINYARD_HORIZON
(64 when unset) and can be overridden per call with -n.  Rod-set
arguments are literals like "[1,-2^3]" — quote them, since "-" starts
an option on most shells — or "@file" / "@file:3" to read the first
(or third) non-comment line of a plain-text file of literals.

Exit codes: 0 success, 1 domain error (reported to stderr), 2 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .counts import (
    ArithmeticRods,
    DEFAULT_ENUMERATION_CAP,
    RodSource,
    TrainsOf,
    binomial_count,
    discrepancies,
    enumerate_trains,
    source_to_json,
    train_counts,
)
from .expansion import (
    Expansion,
    compose,
    dual,
    expand,
    expand_minimal,
    rodset_from_counts,
    solve_Q,
    solve_R,
)
from .rodset import RodSet, format_rodset, parse_rodset
from .series import cyclotomic, poly_divexact, poly_mul, poly_text
from .structure import (
    borwein_classify,
    detect_period,
    lucas_check,
    lucas_two_shapes,
    scan_one_expansions,
    scan_two_expansions,
)


class _CliError(ValueError):
    """Domain-level failure raised by CLI plumbing (file handling etc.)."""


def _read_rodset_file(arg: str) -> str:
    """Resolve "@path" or "@path:N" to the N-th non-comment line."""
    path, _, selector = arg[1:].partition(":")
    index = 1
    if selector:
        if not selector.isdigit() or int(selector) < 1:
            raise _CliError(f"bad line selector in {arg!r}: expected @file or @file:N")
        index = int(selector)
    try:
        with open(path, "r", encoding="utf-8") as handle:
            lines = [
                line.strip()
                for line in handle
                if line.strip() and not line.lstrip().startswith("#")
            ]
    except OSError as exc:
        raise _CliError(f"cannot read rod-set file {path!r}: {exc}") from exc
    if len(lines) < index:
        raise _CliError(f"{path!r} has {len(lines)} rod-set lines; wanted line {index}")
    return lines[index - 1]


def _rodset_arg(text: str) -> RodSet:
    if text.startswith("@"):
        text = _read_rodset_file(text)
    return parse_rodset(text)


def _sign_arg(text: str):
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError(f"sign must be + or -, not {text!r}")


def _int_csv(text: str) -> list[int]:
    try:
        return [int(tok.strip()) for tok in text.split(",")]
    except ValueError:
        raise _CliError(f"expected a comma-separated integer list, got {text!r}")


def _horizon(args: argparse.Namespace) -> int:
    if getattr(args, "n", None) is not None:
        value = args.n
    else:
        raw = os.environ.get("TRAINYARD_HORIZON", "64")
        try:
            value = int(raw)
        except ValueError:
            raise _CliError(f"TRAINYARD_HORIZON must be an integer, not {raw!r}")
    if value < 1:
        raise _CliError("horizon must be at least 1")
    return value


def _format() -> str:
    value = os.environ.get("TRAINYARD_FORMAT", "text")
    if value not in ("text", "json"):
        raise _CliError(f"TRAINYARD_FORMAT must be 'text' or 'json', not {value!r}")
    return value


def _emit_json(obj) -> int:
    print(json.dumps(obj))
    return 0


def _render_source(src: RodSource) -> str:
    if isinstance(src, RodSet):
        return format_rodset(src)
    if isinstance(src, ArithmeticRods):
        return f"arith({src.first},{src.step},{'+' if src.sign == 1 else '-'})"
    if isinstance(src, TrainsOf):
        return f"trains({format_rodset(src.base)},{'+' if src.sign == 1 else '-'})"
    return "counts:" + ",".join(str(m) for m in src.mults)


def _finite_word(flag: bool | None) -> str:
    return {True: "true", False: "false", None: "undecided"}[flag]


# ---------------------------------------------------------------------------
# Subcommand handlers


def _cmd_counts(args) -> int:
    chosen = [
        arg for arg in (args.rodset, args.arith, args.trains) if arg is not None
    ]
    if len(chosen) != 1:
        raise _CliError("give exactly one of RODSET, --arith or --trains")
    if args.arith is not None:
        fields = args.arith.split(",")
        if len(fields) != 3:
            raise _CliError("--arith takes FIRST,STEP,SIGN (e.g. 1,2,+)")
        source: RodSource = ArithmeticRods(
            int(fields[0]), int(fields[1]), _sign_arg(fields[2])
        )
    elif args.trains is not None:
        raw = args.trains
        sign = 1
        if raw.startswith("-"):
            sign, raw = -1, raw[1:]
        source = TrainsOf(_rodset_arg(raw), sign)
    else:
        source = _rodset_arg(args.rodset)
    n = _horizon(args)
    values = train_counts(source, n)
    if _format() == "json":
        return _emit_json({"start": 0, "values": values})
    print(",".join(str(v) for v in values))
    return 0


def _cmd_discrep(args) -> int:
    n = _horizon(args)
    values = discrepancies(_rodset_arg(args.r), _rodset_arg(args.s), n)
    if _format() == "json":
        return _emit_json({"start": 1, "values": values})
    print(",".join(str(v) for v in values))
    return 0


def _emit_expansion(exp: Expansion, show: str) -> int:
    if _format() == "json":
        return _emit_json(exp.to_json())
    shown = exp.r if show == "R" else exp.q
    print(f"{show}={_render_source(shown)}")
    verdict = exp.r_finite if show == "R" else exp.q_finite
    print(f"finite={_finite_word(verdict)}")
    return 0


def _cmd_expand(args) -> int:
    exp = expand(_rodset_arg(args.r), _rodset_arg(args.q), _horizon(args))
    if _format() == "json":
        return _emit_json(exp.to_json())
    print(f"S={_render_source(exp.s)}")
    return 0


def _cmd_solveq(args) -> int:
    exp = solve_Q(_rodset_arg(args.r), _rodset_arg(args.s), _horizon(args))
    return _emit_expansion(exp, "Q")


def _cmd_solver(args) -> int:
    exp = solve_R(_rodset_arg(args.q), _rodset_arg(args.s), _horizon(args))
    return _emit_expansion(exp, "R")


def _cmd_dual(args) -> int:
    result = dual(_rodset_arg(args.q), _horizon(args))
    if _format() == "json":
        return _emit_json(source_to_json(result))
    print(_render_source(result))
    return 0


def _cmd_compose(args) -> int:
    result = compose(_rodset_arg(args.q1), _rodset_arg(args.q2))
    if _format() == "json":
        return _emit_json({"kind": "finite", "rods": format_rodset(result)})
    print(format_rodset(result))
    return 0


def _cmd_fromseq(args) -> int:
    result = rodset_from_counts(_int_csv(args.values))
    if _format() == "json":
        return _emit_json({"kind": "finite", "rods": format_rodset(result)})
    print(format_rodset(result))
    return 0


def _cmd_expandmin(args) -> int:
    q, s = expand_minimal(_rodset_arg(args.r))
    if _format() == "json":
        return _emit_json({"Q": format_rodset(q), "S": format_rodset(s)})
    print(f"Q={format_rodset(q)}")
    print(f"S={format_rodset(s)}")
    return 0


def _cmd_period(args) -> int:
    report = detect_period(_rodset_arg(args.r))
    if _format() == "json":
        return _emit_json(
            {
                "periodic": report.periodic,
                "period": report.least_period,
                "factors": list(report.cyclotomic_factors),
                "Q": format_rodset(report.q_to_period) if report.periodic else None,
            }
        )
    if report.periodic:
        factors = ",".join(str(d) for d in report.cyclotomic_factors)
        print(
            f"periodic p={report.least_period} factors={factors} "
            f"Q={format_rodset(report.q_to_period)}"
        )
    else:
        print("not periodic")
    return 0


def _cmd_scan1(args) -> int:
    hits = scan_one_expansions(_rodset_arg(args.r), args.bound)
    if _format() == "json":
        return _emit_json([{"a": a, "mult": m} for a, m in hits])
    if not hits:
        print("none")
    for a, m in hits:
        print(f"a={a} mult={m}")
    return 0


def _hit_json(hit) -> dict:
    return {
        "a": hit.a,
        "b": hit.b,
        "alpha": hit.alpha,
        "S": format_rodset(hit.s),
        "Q": format_rodset(hit.q),
    }


def _emit_hits(hits) -> int:
    if _format() == "json":
        return _emit_json([_hit_json(h) for h in hits])
    if not hits:
        print("none")
    for h in hits:
        print(
            f"a={h.a} b={h.b} alpha={h.alpha} "
            f"S={format_rodset(h.s)} Q={format_rodset(h.q)}"
        )
    return 0


def _cmd_scan2(args) -> int:
    hits = scan_two_expansions(
        _rodset_arg(args.r), args.bound, include_trivial=args.include_trivial
    )
    return _emit_hits(hits)


def _cmd_lucas(args) -> int:
    report = lucas_check(args.s, args.t, args.sign, _horizon(args))
    if _format() == "json":
        return _emit_json(
            {
                "s": report.s,
                "t": report.t,
                "sign": report.sign,
                "horizon": report.horizon,
                "passed": report.passed,
                "mod_check": report.mod_check,
                "divisibility_check": report.divisibility_check,
                "failure": report.failure,
            }
        )
    print("pass" if report.passed else f"fail: {report.failure}")
    return 0


def _cmd_lucas_shapes(args) -> int:
    hits = lucas_two_shapes(
        args.s,
        args.t,
        args.sign,
        args.kind,
        a_min=args.a_min,
        a_max=args.a_max,
        a=args.a,
        d=args.d,
        k_max=args.k_max,
    )
    return _emit_hits(hits)


def _cmd_borwein(args) -> int:
    table = borwein_classify(args.bound)
    if _format() == "json":
        return _emit_json(
            {
                "bound": table.bound,
                "classes": {
                    label: [list(pair) for pair in pairs]
                    for label, pairs in table.classes.items()
                },
                "unclassified": [list(entry) for entry in table.unclassified],
            }
        )
    for label, pairs in table.classes.items():
        print(f"{label}: {len(pairs)} hits")
    if table.unclassified:
        print(f"unclassified: {len(table.unclassified)}")
    return 0


def _train_token(rod: tuple, rods: RodSet) -> str:
    length, color, sign = rod
    text = f"{'-' if sign < 0 else ''}{length}"
    if abs(rods.mult(length)) >= 2:
        text += f"#{color}"
    return text


def _cmd_enumerate(args) -> int:
    rods = _rodset_arg(args.r)
    result = enumerate_trains(rods, args.n, cap=args.cap, collect=args.list)
    trains = None
    if args.list:
        trains = [
            "+".join(_train_token(rod, rods) for rod in train) if train else "e"
            for train in result.trains
        ]
    if _format() == "json":
        obj = {"n": args.n, "net": result.net, "total": result.total}
        if trains is not None:
            obj["trains"] = trains
        return _emit_json(obj)
    print(f"net={result.net} total={result.total}")
    if trains is not None:
        for line in trains:
            print(line)
    return 0


def _cmd_binom(args) -> int:
    value = binomial_count(_rodset_arg(args.r), args.n)
    if _format() == "json":
        return _emit_json({"value": value})
    print(value)
    return 0


def _cmd_poly(args) -> int:
    p1, p2 = _int_csv(args.p1), _int_csv(args.p2)
    if args.op == "mul":
        result = poly_mul(p1, p2)
        if _format() == "json":
            return _emit_json({"coefficients": result})
        print(poly_text(result))
        return 0
    quotient = poly_divexact(p1, p2)
    if _format() == "json":
        return _emit_json({"quotient": quotient})
    print("not divisible" if quotient is None else poly_text(quotient))
    return 0


def _cmd_cyclo(args) -> int:
    if args.d < 1:
        raise _CliError("cyclotomic order must be at least 1")
    coeffs = cyclotomic(args.d)
    if _format() == "json":
        return _emit_json({"d": args.d, "coefficients": coeffs})
    print(poly_text(coeffs))
    return 0


# ---------------------------------------------------------------------------
# Parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trainyard",
        description="Exact net-train-count algebra on signed rod sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_text):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(handler=handler)
        return p

    p = add("counts", _cmd_counts, "net train counts F(0..N)")
    p.add_argument("rodset", nargs="?", help='rod-set literal, e.g. "[1,-2]"')
    p.add_argument("--arith", metavar="A,D,SIGN", help="arithmetic rods a, a+d, a+2d, ...")
    p.add_argument("--trains", metavar="RODSET", help="rods = trains of RODSET (prefix - to negate)")
    p.add_argument("-n", type=int, help="largest length (default: horizon)")

    p = add("discrep", _cmd_discrep, "discrepancies D(1..N) of R against S's recursion")
    p.add_argument("r")
    p.add_argument("s")
    p.add_argument("-n", type=int)

    p = add("expand", _cmd_expand, "S with R -> Q -> S")
    p.add_argument("r")
    p.add_argument("q")
    p.add_argument("-n", type=int)

    p = add("solveq", _cmd_solveq, "Q with R -> Q -> S, with finiteness verdict")
    p.add_argument("r")
    p.add_argument("s")
    p.add_argument("-n", type=int)

    p = add("solver", _cmd_solver, "R with R -> Q -> S")
    p.add_argument("q")
    p.add_argument("s")
    p.add_argument("-n", type=int)

    p = add("dual", _cmd_dual, "dual rod set Q* (inverts 1 + C(x,Q))")
    p.add_argument("q")
    p.add_argument("-n", type=int)

    p = add("compose", _cmd_compose, "Q of the composite expansion")
    p.add_argument("q1")
    p.add_argument("q2")

    p = add("fromseq", _cmd_fromseq, "rod set whose train counts match a sequence")
    p.add_argument("values", metavar="V0,V1,...", help="count sequence, starting 1")

    p = add("expandmin", _cmd_expandmin, "expand away the minimal-length rods")
    p.add_argument("r")

    p = add("period", _cmd_period, "exact periodicity of n -> F(n,R)")
    p.add_argument("r")

    p = add("scan1", _cmd_scan1, "one-rod expansion targets [a^m]")
    p.add_argument("r")
    p.add_argument("-b", "--bound", type=int, required=True)

    p = add("scan2", _cmd_scan2, "two-rod expansion targets [a^ma, b^mb]")
    p.add_argument("r")
    p.add_argument("-b", "--bound", type=int, required=True)
    p.add_argument("--include-trivial", action="store_true", help="keep the empty-Q self-expansion")

    p = add("lucas", _cmd_lucas, "Lucas-family checks for R = [1^(±s), 2^t]")
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)
    p.add_argument("sign", type=_sign_arg)
    p.add_argument("-n", type=int)

    p = add("lucas-shapes", _cmd_lucas_shapes, "closed-form two-rod expansions of Lucas rod sets")
    p.add_argument("s", type=int)
    p.add_argument("t", type=int)
    p.add_argument("sign", type=_sign_arg)
    p.add_argument("--kind", choices=("adjacent", "skip", "multiple"), required=True)
    p.add_argument("--a-min", type=int, default=2)
    p.add_argument("--a-max", type=int, default=4)
    p.add_argument("--a", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--k-max", type=int, default=1)

    p = add("borwein", _cmd_borwein, "classify trinomials 1 ∓ x^a ∓ x^b")
    p.add_argument("-b", "--bound", type=int, required=True)

    p = add("enumerate", _cmd_enumerate, "brute-force train enumeration")
    p.add_argument("r")
    p.add_argument("n", type=int)
    p.add_argument("--list", action="store_true", help="print each train")
    p.add_argument("--cap", type=int, default=DEFAULT_ENUMERATION_CAP)

    p = add("binom", _cmd_binom, "binomial-sum count for 1- or 2-length rod sets")
    p.add_argument("r")
    p.add_argument("n", type=int)

    p = add("poly", _cmd_poly, "exact polynomial arithmetic (ascending coefficient CSV)")
    # Let coefficient lists that start with a negative number ("-1,1")
    # parse as positionals rather than options.
    p._negative_number_matcher = re.compile(r"^-\d+(?:,-?\d+)*$")
    p.add_argument("op", choices=("mul", "div"))
    p.add_argument("p1")
    p.add_argument("p2")

    p = add("cyclo", _cmd_cyclo, "cyclotomic polynomial of order d")
    p.add_argument("d", type=int)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        # Every domain error in the package is a ValueError subclass.
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
