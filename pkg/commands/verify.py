from models import config
from models.data import load_wcnf
from models.oracle import TARGET_MUFL, TARGETS, verify_reduction
from models.reduction_mufl import ReductionParams
from models.utils import format_rational, parse_rational
from commands.common import emit_document, print_lines, start_run


def register_verify_command(subparsers, common):
    """Register `verify`: exhaustive check of one reduction on one WCNF file"""
    parser = subparsers.add_parser("verify", parents=[common],
                                   help="Exhaustively verify the reduction claims on a small instance")
    parser.add_argument("input", help="WCNF file")
    parser.add_argument("--target", choices=TARGETS, default=TARGET_MUFL, help="Target problem (default: mufl)")
    parser.add_argument("--c", default=config.DEFAULT_C, help=f"Constant c in (1, 2) as p/q (default: {config.DEFAULT_C})")
    parser.add_argument("--size-cap", type=int, default=config.DEFAULT_SIZE_CAP,
                        help=f"Largest number of solutions to enumerate (default: {config.DEFAULT_SIZE_CAP})")
    parser.set_defaults(handler=run_verify)


def run_verify(args) -> int:
    params = ReductionParams(parse_rational(args.c))
    manifest = start_run(args, 'verify', [args.input], target=args.target, c=format_rational(params.c),
                         size_cap=args.size_cap)
    sat = load_wcnf(args.input)
    report = verify_reduction(sat, params.c, args.target, args.size_cap, args.tol)
    print_lines(report.summary_lines())
    emit_document(args, manifest, report.to_dict())
    return 0 if report.ok else 1
