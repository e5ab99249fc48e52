import argparse
import sys

from maffkit.codec import encode_matrix, encode_quotient
from maffkit.config import acceptance_cases, default_config, load_tolerance
from maffkit.errors import MaffkitError, ParseError
from maffkit.functor import phi_aff
from maffkit.kreinext import FRIEDRICHS_UNBOUNDED, positive_extensions
from maffkit.loaders import load_homomorphism, load_matrix, load_quotient
from maffkit.logger import setup_logging
from maffkit.quotient import (
    canonicalize,
    characteristic_projection,
    quotient_adjoint,
    quotient_equals,
    quotient_extends,
    quotient_kaufman,
    quotient_new,
    quotient_product,
    quotient_sum,
)
from maffkit.verify import suite_names
from maffkit.verify.pipeline import run_verify
from maffkit.writer import emit_json

BINARY_OPS = ("sum", "product", "equals", "extends")
UNARY_OPS = ("dagger", "adjoint", "chi")


def canonical_json(t, tol):
    c = canonicalize(t, tol)
    return {"A": encode_matrix(c.M), "B": encode_matrix(c.E)}


def _load_operand(path, tol, log):
    t = load_quotient(path, log)
    return quotient_new(t.A, t.B, tol)


def _parse_dims(text):
    try:
        dims = [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("dims must be a comma-separated list of integers (got %r)" % text)
    if not dims or min(dims) < 1:
        raise argparse.ArgumentTypeError("dims must be positive integers (got %r)" % text)
    return dims


def build_parser():
    cfg = default_config()
    p = argparse.ArgumentParser(prog="maffkit", description="Quotient operators, Krein extensions and the affiliated functor on C^n.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, level):
        sp.add_argument("--log-level", default=level, help="DEBUG, INFO, WARNING, ERROR")
        sp.add_argument("--tol", default=None, help="Tolerance JSON file (default: $MAFFKIT_TOL or built-in).")

    op = sub.add_parser("op", help="Quotient operations on JSON operands.")
    op.add_argument("name", choices=BINARY_OPS + UNARY_OPS)
    op.add_argument("operands", nargs="+", help="Quotient JSON files.")
    common(op, "WARNING")

    kr = sub.add_parser("krein", help="Krein-von Neumann and Friedrichs extensions of a positive quotient.")
    kr.add_argument("operand", help="Quotient JSON file.")
    kr.add_argument("--witness", default=None, help="Matrix JSON file: a PSD total extension.")
    kr.add_argument("--max-iter", type=int, default=cfg["max_iter"], help="Iteration budget for the initial extension search.")
    common(kr, "WARNING")

    ph = sub.add_parser("phi", help="Image of a quotient under the affiliated extension of a homomorphism.")
    ph.add_argument("hom", help="Homomorphism JSON file.")
    ph.add_argument("operand", help="Quotient JSON file.")
    common(ph, "WARNING")

    ve = sub.add_parser("verify", help="Run the seeded property suites.")
    ve.add_argument("--suite", default="all", help="Suite name or 'all' (%s)." % ", ".join(suite_names()))
    ve.add_argument("--seed", type=int, default=cfg["seed"], help="Master seed (default: %d)." % cfg["seed"])
    ve.add_argument("--cases", type=int, default=cfg["cases"], help="Cases per suite (default: %d)." % cfg["cases"])
    ve.add_argument("--dims", type=_parse_dims, default=cfg["dims"], help="Comma-separated dimensions (default: 2..8).")
    ve.add_argument("--samples", type=int, default=cfg["samples"], help="Numerical-range samples per operator.")
    ve.add_argument("--output", default=None, help="Directory for report.json, checks.csv and report.md.")
    ve.add_argument(
        "--acceptance",
        action="store_true",
        help="Full acceptance counts: %d cases per dimension (%s), %d samples; overrides --cases and --samples."
        % (
            cfg["acceptance_per_dim"],
            ", ".join("%s: %d" % kv for kv in cfg["acceptance_overrides"].items()),
            cfg["acceptance_samples"],
        ),
    )
    common(ve, "INFO")
    return p


def cmd_op(args, tol, log):
    need = 2 if args.name in BINARY_OPS else 1
    if len(args.operands) != need:
        raise ParseError("'%s' takes %d operand(s), got %d" % (args.name, need, len(args.operands)))
    ts = [_load_operand(path, tol, log) for path in args.operands]

    if args.name == "sum":
        return canonical_json(quotient_sum(ts[0], ts[1], tol), tol)
    if args.name == "product":
        return canonical_json(quotient_product(ts[0], ts[1], tol), tol)
    if args.name == "equals":
        return {"equal": quotient_equals(ts[0], ts[1], tol)}
    if args.name == "extends":
        return {"extends": quotient_extends(ts[0], ts[1], tol)}
    if args.name == "dagger":
        return canonical_json(quotient_kaufman(ts[0], tol)[0], tol)
    if args.name == "adjoint":
        return canonical_json(quotient_adjoint(ts[0], tol), tol)
    return encode_matrix(characteristic_projection(ts[0], tol))


def cmd_krein(args, tol, log):
    s = _load_operand(args.operand, tol, log)
    w = load_matrix(args.witness, log) if args.witness else None
    ext = positive_extensions(s, witness=w, tol=tol, max_iter=args.max_iter)
    if ext.friedrichs == FRIEDRICHS_UNBOUNDED:
        log.info("K_max has eigenvalue 1; Friedrichs extension is unbounded")
        friedrichs = "unbounded"
    else:
        friedrichs = canonical_json(ext.friedrichs, tol)
    return {
        "krein_vn": canonical_json(ext.krein_vn, tol),
        "friedrichs": friedrichs,
        "k_min": encode_matrix(ext.bounds.K_min),
        "k_max": encode_matrix(ext.bounds.K_max),
    }


def cmd_phi(args, tol, log):
    phi = load_homomorphism(args.hom, log)
    t = _load_operand(args.operand, tol, log)
    return canonical_json(phi_aff(phi, t, tol), tol)


def cmd_verify(args, tol, log):
    if args.suite != "all" and args.suite not in suite_names():
        log.error("Unknown suite '%s' (choose from: all, %s)", args.suite, ", ".join(suite_names()))
        return 2
    cases, samples = args.cases, args.samples
    if args.acceptance:
        cfg = default_config()
        cases = acceptance_cases(suite_names(), args.dims, cfg)
        samples = cfg["acceptance_samples"]
    report, code = run_verify(
        suite=args.suite,
        seed=args.seed,
        cases=cases,
        dims=args.dims,
        tol=tol,
        output=args.output,
        log=log,
        samples=samples,
    )
    emit_json(report)
    return code


COMMANDS = {"op": cmd_op, "krein": cmd_krein, "phi": cmd_phi}


def main(argv=None):
    args = build_parser().parse_args(argv)
    log = setup_logging(args.log_level, stream=sys.stderr)

    try:
        tol = load_tolerance(args.tol)
        if args.command == "verify":
            return cmd_verify(args, tol, log)
        emit_json(COMMANDS[args.command](args, tol, log))
        return 0
    except MaffkitError as e:
        log.error("%s: %s", type(e).__name__, str(e))
        return e.exit_code
