"""Command-line entry point: ``flexenc {encode,certify,plan,sweep,selftest}``.

Exit codes: 0 success (a failed certification is still a successful
answer), 1 self-test failure, 2 malformed input, 3 a family that is not
even where an encoder was requested.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time
from typing import Callable

from .curves import HESSIAN, WEIERSTRASS, curve_from_json
from .errors import FlexencError, NotEven, SpecError
from .families import (
    BUILTIN_NAMES,
    EncoderPlan,
    builtin_family,
    certify_even,
    encode,
    family_from_json,
    farashahi_encode,
    icart_encode,
    message_to_parameter,
    pencil_encode,
)
from .field import make_field, parse_int, random_prime
from .geometry import run_geometry_suite, suite_passed
from .poly import poly_to_json

log = logging.getLogger("flexenc")

EXIT_OK, EXIT_SELFTEST, EXIT_SPEC, EXIT_NOT_EVEN = 0, 1, 2, 3
_CLOSED_FORMS = {"icart": (WEIERSTRASS, icart_encode), "farashahi": (HESSIAN, farashahi_encode),
                 "pencil": (HESSIAN, pencil_encode)}


class _NotEvenExit(Exception):
    def __init__(self, exc: NotEven):
        self.exc = exc


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path} is not valid JSON: {exc}") from None


def _load_curve(args):
    if not args.curve:
        raise SpecError("--curve is required")
    return curve_from_json(_load_json(args.curve))


def _require_encoding(curve):
    if not curve.field.is_encoding:
        raise SpecError(f"encoding needs p = 2 mod 3, got p = {curve.field.p}")


def _family(curve, ref: str):
    """A builtin name or a family spec file path."""
    if ref in BUILTIN_NAMES:
        return builtin_family(ref, curve)
    return family_from_json(_load_json(ref), name=ref)


def _witness_json(exc: NotEven):
    return poly_to_json(exc.witness) if exc.witness is not None else []


def _encoder(curve, method: str) -> Callable:
    """Map a method name to t0 -> ProjectivePoint."""
    _require_encoding(curve)
    if method in _CLOSED_FORMS:
        model, fn = _CLOSED_FORMS[method]
        if curve.model != model:
            raise SpecError(f"method {method!r} needs a {model} curve, got {curve.model}")
        if method == "icart":
            builtin_family("icart", curve)  # a != 0 check
        return lambda t: fn(curve, t)
    if method.startswith("plan:"):
        plan = EncoderPlan.from_json(_load_json(method[5:]), curve)
        return lambda t: encode(plan, t)
    ref = method[7:] if method.startswith("family:") else method
    if not method.startswith("family:") and ref not in BUILTIN_NAMES:
        raise SpecError(f"unknown method {method!r}")
    try:
        plan = certify_even(curve, _family(curve, ref))
    except NotEven as exc:
        raise _NotEvenExit(exc) from None
    return lambda t: encode(plan, t)


def cmd_encode(args) -> int:
    curve = _load_curve(args)
    if (args.t is None) == (args.message is None):
        raise SpecError("give exactly one of --t or --message")
    if args.message is not None:
        text = args.message[2:] if args.message.lower().startswith("0x") else args.message
        try:
            data = bytes.fromhex(text)
        except ValueError:
            raise SpecError(f"--message must be hex, got {args.message!r}") from None
        t0 = message_to_parameter(data, curve.field)
    else:
        t0 = curve.field(parse_int(args.t))
    point = _encoder(curve, args.method)(t0)
    _emit(point.to_json(curve.model))
    return EXIT_OK


def cmd_certify(args) -> int:
    curve = _load_curve(args)
    if not args.family:
        raise SpecError("--family is required")
    try:
        plan = certify_even(curve, _family(curve, args.family))
    except NotEven as exc:
        _emit({"even": False, "witness": _witness_json(exc)})
        return EXIT_OK
    _emit(plan.to_json())
    return EXIT_OK


def cmd_plan(args) -> int:
    curve = _load_curve(args)
    ref = args.family or args.method
    if not ref:
        raise SpecError("--method or --family is required")
    if ref.startswith("family:"):
        ref = ref[7:]
    try:
        plan = certify_even(curve, _family(curve, ref))
    except NotEven as exc:
        raise _NotEvenExit(exc) from None
    _emit(plan.to_json())
    return EXIT_OK


def cmd_sweep(args) -> int:
    curve = _load_curve(args)
    p = curve.field.p
    lo = parse_int(args.lo) if args.lo is not None else 0
    hi = parse_int(args.hi) if args.hi is not None else p - 1
    if lo > hi:
        raise SpecError(f"--from {lo} exceeds --to {hi}")
    fn = _encoder(curve, args.method)
    failures, points = 0, set()
    start = time.perf_counter()
    for t in range(lo, hi + 1):
        P = fn(t)
        if not curve.on_curve(P):
            failures += 1
        points.add(P.normalized().coords())
    log.info("sweep of %d parameters took %.3fs", hi - lo + 1, time.perf_counter() - start)
    _emit({"count": hi - lo + 1, "on_curve_failures": failures, "distinct_points": len(points)})
    return EXIT_OK


def cmd_selftest(args) -> int:
    if args.p is not None:
        fields = [make_field(args.p)]
    else:
        rng = random.Random(args.seed)
        fields = [make_field(random_prime(64, 1, rng)) for _ in range(2)]
    for F in fields:
        if F.capability != "geometry":
            raise SpecError(f"the geometry self-test needs p = 1 mod 3, got p = {F.p}")
    reports = {str(F.p): run_geometry_suite(F, args.trials, args.seed) for F in fields}
    ok = all(suite_passed(r) for r in reports.values())
    _emit({"passed": ok, "fields": reports})
    return EXIT_OK if ok else EXIT_SELFTEST


def _emit(obj):
    print(json.dumps(obj))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flexenc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log timings to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, method=False, family=False):
        sp.add_argument("--curve", metavar="PATH", help="curve spec JSON")
        if method:
            sp.add_argument("--method", required=True,
                            help="icart | farashahi | pencil | octic | family:PATH | plan:PATH")
        if family:
            sp.add_argument("--family", metavar="PATH|NAME", help="family spec JSON or builtin name")
        sp.add_argument("--json", action="store_true", default=True, help="JSON output (the default)")

    sp = sub.add_parser("encode", help="encode one parameter or message")
    common(sp, method=True)
    sp.add_argument("--t", help="parameter (decimal or 0x-hex)")
    sp.add_argument("--message", metavar="HEX", help="message bytes as hex")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("certify", help="decide whether a family is even")
    common(sp, family=True)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser("plan", help="export a compiled encoder plan")
    common(sp, family=True)
    sp.add_argument("--method", help="builtin family name or family:PATH")
    sp.set_defaults(func=cmd_plan)

    sp = sub.add_parser("sweep", help="encode a parameter range and check every output")
    common(sp, method=True)
    sp.add_argument("--from", dest="lo", help="first parameter (default 0)")
    sp.add_argument("--to", dest="hi", help="last parameter (default p-1)")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("selftest", help="run the flex-tangent geometry checks")
    sp.add_argument("--p", help="prime = 1 mod 3 (default: two random 64-bit primes)")
    sp.add_argument("--trials", type=int, default=20)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true", default=True, help="JSON output (the default)")
    sp.set_defaults(func=cmd_selftest)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except _NotEvenExit as exc:
        _emit({"even": False, "witness": _witness_json(exc.exc)})
        print(f"flexenc: {exc.exc}", file=sys.stderr)
        return EXIT_NOT_EVEN
    except (FlexencError, ValueError) as exc:
        print(json.dumps({"error": str(exc)}), file=sys.stderr)
        return EXIT_SPEC


if __name__ == "__main__":
    sys.exit(main())
