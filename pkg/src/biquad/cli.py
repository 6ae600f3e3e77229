"""Command-line interface."""

import argparse
import logging
import sys

from . import codec
from .arith import pell_fundamental_unit
from .biquadratic import classify_field, require_integral
from .config import DEFAULT_POOL_HEIGHT
from .errors import (
    DomainError,
    PreconditionError,
    SearchExhausted,
    VerificationError,
    WrongClassError,
)
from .quadratic import moser_s_field, moser_s_ring, moser_table, shortest_minus_one
from .sos import decompose_4, decompose_any, pythagoras_evidence, sos_verify, sum_squares
from .survey import run_survey, write_csv

logger = logging.getLogger("biquad")

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_CAPABILITY = 3


def cmd_classify(args) -> int:
    K = classify_field(*args.radicands)
    if args.json:
        report = {
            "field": codec.field_to_json(K),
            "r3": K.r3,
            "basis": [codec.elem_to_json(b, with_field=False)["coords"] for b in K.basis_elements()],
            "imaginary_subfields": [-D for D in K.imaginary_subfields],
        }
        print(codec.dumps(report))
        return EXIT_OK
    print(f"{K}  class {K.class_tag.value}")
    print(f"radicands: {K.r1}, {K.r2}, {K.r3}")
    print("subfields: " + ", ".join(f"Q(√{r})" for r in K.radicands))
    print("integral basis:")
    for i, b in enumerate(K.basis_elements(), start=1):
        print(f"  B{i} = {b}")
    return EXIT_OK


def cmd_unit(args) -> int:
    unit = pell_fundamental_unit(args.D)
    if args.json:
        print(
            codec.dumps(
                {
                    "D": str(unit.D),
                    "t": str(unit.t),
                    "u": str(unit.u),
                    "halved": unit.halved,
                    "norm": str(unit.norm),
                }
            )
        )
    else:
        print(f"{unit}, norm {unit.norm}")
    return EXIT_OK


def _parse_coords(text: str) -> list[int]:
    try:
        coords = [int(part) for part in text.split(",")]
    except ValueError:
        raise DomainError(f"coordinates must be integers, got {text!r}") from None
    if len(coords) != 4:
        raise DomainError(f"expected 4 coordinates, got {len(coords)}")
    return coords


def cmd_decompose(args) -> int:
    K = classify_field(*args.field)
    alpha = K.from_integral(_parse_coords(args.coords))
    require_integral(alpha)
    if args.times_four:
        rep = decompose_4(alpha)
        lhs = f"4({alpha})"
    else:
        if not K.is_class_i:
            raise WrongClassError(
                f"field class {K.class_tag.value} requires --times-four"
            )
        rep = decompose_any(alpha)
        lhs = None
    if not sos_verify(rep):
        raise VerificationError(f"decomposition of {alpha} failed to verify")
    if args.json:
        print(codec.dumps(codec.rep_to_json(rep)))
    else:
        print(codec.pretty(rep, lhs))
    return EXIT_OK


def cmd_verify(args) -> int:
    with open(args.json_file, encoding="utf-8") as reader:
        rep = codec.rep_from_json(codec.loads(reader.read()))
    if sos_verify(rep):
        print(f"ok: {len(rep)} squares sum to {rep.target}")
        return EXIT_OK
    residual = rep.target - sum_squares(rep.terms, rep.field)
    print(f"failed: residual {residual}")
    if residual.is_zero():
        print("failed: a term is not an algebraic integer")
    return EXIT_VERIFY


def cmd_survey(args) -> int:
    result = run_survey(args.rmax, args.samples, args.seed, args.workers)
    with open(args.out, "w", newline="", encoding="utf-8") as writer:
        write_csv(result.rows, writer)
    flagged = sum(row.discrepancy_flag for row in result.rows)
    print(f"{len(result.rows)} fields written to {args.out}, {flagged} with discrepancies")
    for r1, r2, reason in result.failures:
        print(f"failed: ({r1}, {r2}): {reason}")
    return EXIT_OK if result.ok else EXIT_VERIFY


def cmd_s_number(args) -> int:
    witness = shortest_minus_one(args.D)
    squares = " + ".join(f"({t})²" for t in witness)
    print(f"field level: {moser_s_field(args.D)}")
    print(f"ring level (classifier): {moser_s_ring(args.D)}")
    print(f"ring level (oracle): {len(witness)}: -1 = {squares}")
    return EXIT_OK


def cmd_moser(args) -> int:
    rows = moser_table(args.dmax)
    for row in rows:
        print(row)
    for relation in ("improvement", "excess"):
        found = [str(row.D) for row in rows if row.relation == relation]
        print(f"{relation}: {', '.join(found) if found else 'none'}")
    return EXIT_OK


def cmd_evidence(args) -> int:
    K = classify_field(*args.field)
    report = pythagoras_evidence(
        K,
        samples=args.samples,
        target_height=args.target_height,
        pool_height=args.pool_height,
        seed=args.seed,
        multiplier=args.multiplier,
    )
    print(report)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="biquad", description="sums of squares in complex biquadratic fields"
    )
    parser.add_argument("-v", "--verbose", action="count", default=0)
    commands = parser.add_subparsers(dest="command", required=True)

    p = commands.add_parser("classify", help="integral basis and class of a field")
    p.add_argument("--radicands", nargs=2, type=int, required=True, metavar=("R1", "R2"))
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = commands.add_parser("unit", help="fundamental unit of Q(sqrt(D))")
    p.add_argument("D", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_unit)

    p = commands.add_parser("decompose", help="write an integer as a sum of squares")
    p.add_argument("--field", nargs=2, type=int, required=True, metavar=("R1", "R2"))
    p.add_argument("--coords", required=True, help="x1,x2,x3,x4 (use --coords=-1,... for negatives)")
    p.add_argument("--times-four", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = commands.add_parser("verify", help="re-verify a serialized representation")
    p.add_argument("--json-file", required=True)
    p.set_defaults(func=cmd_verify)

    p = commands.add_parser("survey", help="survey fields with small radicands")
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=4)
    p.set_defaults(func=cmd_survey)

    p = commands.add_parser("s-number", help="levels of Q(sqrt(-D)) and its integers")
    p.add_argument("D", type=int)
    p.set_defaults(func=cmd_s_number)

    p = commands.add_parser("moser", help="classifier against oracle for D <= dmax")
    p.add_argument("--dmax", type=int, default=30)
    p.set_defaults(func=cmd_moser)

    p = commands.add_parser("evidence", help="minimal lengths for sampled beta or 4*beta")
    p.add_argument("--field", nargs=2, type=int, default=[-3, 5], metavar=("R1", "R2"))
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--target-height", type=int, default=6)
    p.add_argument("--pool-height", type=int, default=DEFAULT_POOL_HEIGHT)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--multiplier", type=int, choices=(1, 4), default=4)
    p.set_defaults(func=cmd_evidence)

    return parser


# mccole: main
def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except WrongClassError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY
    except VerificationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (DomainError, PreconditionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SearchExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPABILITY


# mccole: /main


if __name__ == "__main__":
    sys.exit(main())
