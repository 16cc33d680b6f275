"""Command-line front end.

Subcommands: zeta-germ, zeta-res, beta, classify, ts, oracle, compare.
Outputs are deterministic (identical inputs give byte-identical output).
Exit codes: 0 success, 1 malformed input, 2 unsupported computation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .brieskorn import classify
from .errors import ArczetaError, InputError, UnsupportedComputationError
from .jets import germ_to_str, jet_beta, parse_germ, zeta_direct
from .oracle import JET_SPACE_CAP, count_jets_with_order
from .ring import (
    DEFAULT_ORDER,
    ZetaSeries,
    format_poly,
    format_series,
)
from .vpoly import run_script, script_from_json
from .zeta import (
    compare_invariants,
    dl_naive,
    dl_sign,
    germ_invariants,
    resolution_from_json,
    Distinguished,
    ts_convolve,
)

_SIGN_OF = {"plus": 1, "minus": -1}

TS_CAVEAT = (
    "note: the convolution identity assumes both summand germs are positive "
    "or both are negative"
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; malformed input is exit 1
    def error(self, message):
        raise InputError(message)


def _json_dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _add_common(p: argparse.ArgumentParser, *, sign: bool = False):
    p.add_argument("--order", type=int, default=DEFAULT_ORDER,
                   help="truncation order (default %(default)s)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", metavar="FILE", default=None,
                   help="write the output to FILE instead of stdout")
    if sign:
        p.add_argument("--sign", choices=("naive", "plus", "minus"),
                       default="naive")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="arczeta", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("zeta-germ", help="zeta series of a germ, by jets")
    p.add_argument("--germ", required=True)
    _add_common(p, sign=True)

    p = sub.add_parser("zeta-res", help="zeta series from a resolution file")
    p.add_argument("--file", required=True)
    _add_common(p, sign=True)

    p = sub.add_parser("beta", help="run a beta script file")
    p.add_argument("--script", required=True)
    _add_common(p)

    p = sub.add_parser("classify", help="Brieskorn classification report")
    p.add_argument("--germ")
    p.add_argument("--series-file", action="append", default=[],
                   metavar="FILE",
                   help="three files: naive, plus, minus series")
    _add_common(p)

    p = sub.add_parser("ts", help="convolve the zeta series of two germs")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    _add_common(p)

    p = sub.add_parser("oracle", help="compare F_q jet counts with beta")
    p.add_argument("--germ", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", required=True, help="comma-separated primes")
    _add_common(p)

    p = sub.add_parser("compare", help="compare the invariants of two germs")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    _add_common(p)

    return parser


def _series_payload(z: ZetaSeries, extra: dict) -> dict:
    payload = dict(extra)
    payload["order"] = z.order
    payload["series"] = z.to_json_dict()
    return payload


def _cmd_zeta_germ(args) -> tuple[str, dict]:
    germ = parse_germ(args.germ)
    z = zeta_direct(germ, args.order, args.sign)
    text = format_series(z) + "\n"
    payload = _series_payload(
        z, {"germ": germ_to_str(germ), "variant": args.sign}
    )
    return text, payload


def _cmd_zeta_res(args) -> tuple[str, dict]:
    with open(args.file, "r", encoding="utf-8") as fh:
        datum = resolution_from_json(fh.read())
    if args.sign == "naive":
        z = dl_naive(datum, args.order)
    else:
        z = dl_sign(datum, _SIGN_OF[args.sign], args.order)
    text = format_series(z) + "\n"
    payload = _series_payload(z, {"file": args.file, "variant": args.sign})
    return text, payload


def _cmd_beta(args) -> tuple[str, dict]:
    with open(args.script, "r", encoding="utf-8") as fh:
        script = script_from_json(fh.read())
    values = run_script(script)
    lines = [f"{name} = {format_poly(beta)}" for name, beta in values.items()]
    text = "\n".join(lines) + "\n"
    payload = {"betas": {name: format_poly(b) for name, b in values.items()}}
    return text, payload


def _load_series_file(path: str) -> ZetaSeries:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise InputError(f"bad series file {path}: {exc}") from exc
    return ZetaSeries.from_json_dict(data)


def _cmd_classify(args) -> tuple[str, dict]:
    if args.germ and args.series_file:
        raise InputError("give either --germ or --series-file, not both")
    if args.germ:
        germ = parse_germ(args.germ)
        inv = germ_invariants(germ, args.order)
        z, zp, zm = inv.naive, inv.plus, inv.minus
    elif len(args.series_file) == 3:
        z, zp, zm = (_load_series_file(p) for p in args.series_file)
    else:
        raise InputError("classify needs --germ or exactly three --series-file")
    report = classify(z, zp, zm)
    payload = report.to_json_dict()
    lines = [
        f"p = {report.p}",
        f"q = {report.q}",
        f"eps_p = {report.eps_p.value}",
        f"eps_q = {report.eps_q.value}",
        f"status = {report.status.value}",
    ]
    lines.extend(f"note: {n}" for n in report.notes)
    return "\n".join(lines) + "\n", payload


def _cmd_ts(args) -> tuple[str, dict]:
    left = parse_germ(args.left)
    right = parse_germ(args.right)
    zf = zeta_direct(left, args.order)
    zg = zeta_direct(right, args.order)
    z = ts_convolve(zf, zg)
    text = format_series(z) + "\n" + TS_CAVEAT + "\n"
    payload = _series_payload(
        z,
        {
            "left": germ_to_str(left),
            "right": germ_to_str(right),
            "notes": [TS_CAVEAT],
        },
    )
    return text, payload


def _cmd_oracle(args) -> tuple[str, dict]:
    germ = parse_germ(args.germ)
    try:
        qs = [int(part) for part in args.q.split(",") if part]
    except ValueError as exc:
        raise InputError(f"bad q list {args.q!r}") from exc
    if not qs:
        raise InputError("no q values given")
    for q in qs:
        if q ** (germ.dim * args.n) > JET_SPACE_CAP:
            raise UnsupportedComputationError(
                f"jet space size q^(d*n) = {q}^{germ.dim * args.n} exceeds "
                f"the cap {JET_SPACE_CAP}; choose a smaller q or n"
            )
    beta = jet_beta(germ, args.n)
    rows = []
    for q in qs:
        count = count_jets_with_order(germ, args.n, q)
        expected = beta.evaluate(q)
        ok = expected == count
        rows.append({"q": q, "count": count, "beta": int(expected),
                     "ok": bool(ok)})
    lines = [
        f"q={row['q']}: jets={row['count']} beta={row['beta']} "
        + ("PASS" if row["ok"] else "FAIL")
        for row in rows
    ]
    text = "\n".join(lines) + "\n"
    payload = {
        "germ": germ_to_str(germ),
        "n": args.n,
        "beta": format_poly(beta),
        "results": rows,
    }
    return text, payload


def _cmd_compare(args) -> tuple[str, dict]:
    left = parse_germ(args.left)
    right = parse_germ(args.right)
    result = compare_invariants(
        germ_invariants(left, args.order), germ_invariants(right, args.order)
    )
    if isinstance(result, Distinguished):
        text = (
            f"distinguished at T^{result.index} in the {result.series} series: "
            f"left = {format_poly(result.left)}, right = {format_poly(result.right)}\n"
        )
        payload = {
            "distinguished": True,
            "series": result.series,
            "index": result.index,
            "left": format_poly(result.left),
            "right": format_poly(result.right),
        }
    else:
        text = f"not distinguished up to order {result.order}\n"
        payload = {"distinguished": False, "order": result.order}
    payload = {
        "left": germ_to_str(left),
        "right": germ_to_str(right),
        **payload,
    }
    return text, payload


_COMMANDS = {
    "zeta-germ": _cmd_zeta_germ,
    "zeta-res": _cmd_zeta_res,
    "beta": _cmd_beta,
    "classify": _cmd_classify,
    "ts": _cmd_ts,
    "oracle": _cmd_oracle,
    "compare": _cmd_compare,
}


def _emit(args, text: str, payload: dict) -> None:
    output = _json_dumps(payload) if args.format == "json" else text
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(output)
    else:
        sys.stdout.write(output)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "order", 1) < 1:
            raise InputError("--order must be a positive integer")
        text, payload = _COMMANDS[args.command](args)
    except UnsupportedComputationError as exc:
        sys.stderr.write(f"unsupported: {exc}\n")
        return 2
    except (InputError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except ArczetaError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    _emit(args, text, payload)
    return 0


if __name__ == "__main__":
    sys.exit(main())
