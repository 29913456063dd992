from models import config
from models.data import instance_to_document, load_wcnf
from models.oracle import TARGET_DKM, TARGET_MUFL, TARGETS
from models.metrics import log_warning
from models.reduction_dkm import build_dkm
from models.reduction_mufl import ReductionParams, build_mufl
from models.utils import format_rational, parse_rational
from commands.common import emit_document, start_run


def register_reduce_command(subparsers, common):
    """Register `reduce`: WCNF -> MUFL or DKM instance document"""
    parser = subparsers.add_parser("reduce", parents=[common],
                                   help="Map a weighted 2-CNF file to a MUFL or DKM instance")
    parser.add_argument("input", help="WCNF file")
    parser.add_argument("--target", choices=TARGETS, default=TARGET_MUFL, help="Target problem (default: mufl)")
    parser.add_argument("--c", default=config.DEFAULT_C, help=f"Constant c in (1, 2) as p/q (default: {config.DEFAULT_C})")
    parser.set_defaults(handler=run_reduce)


def run_reduce(args) -> int:
    params = ReductionParams(parse_rational(args.c))
    manifest = start_run(args, 'reduce', [args.input], target=args.target, c=format_rational(params.c))
    sat = load_wcnf(args.input)
    if args.log:
        log_warning("reduce writes no trajectory; --log ignored")

    if args.target == TARGET_DKM:
        instance = build_dkm(sat, params.c)
    else:
        instance = build_mufl(sat, params)
    emit_document(args, manifest, instance_to_document(instance))
    return 0
