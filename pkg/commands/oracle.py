from models import config
from models.oracle import TARGETS, run_campaign
from models.reduction_mufl import ReductionParams
from models.utils import format_rational, parse_rational
from commands.common import emit_document, print_lines, start_run


def _targets(text):
    return tuple(part.strip() for part in text.split(',') if part.strip())


def register_oracle_command(subparsers, common):
    """Register `oracle`: seeded campaign of exhaustive verifications"""
    parser = subparsers.add_parser("oracle", parents=[common],
                                   help="Verify both reductions on a seeded family of random instances")
    parser.add_argument("--count", type=int, default=config.CAMPAIGN_INSTANCES,
                        help=f"Number of random SAT instances (default: {config.CAMPAIGN_INSTANCES})")
    parser.add_argument("--targets", type=_targets, default=TARGETS,
                        help="Comma-separated targets (default: mufl,dkm)")
    parser.add_argument("--c", default=config.DEFAULT_C, help=f"Constant c in (1, 2) as p/q (default: {config.DEFAULT_C})")
    parser.add_argument("--max-variables", type=int, default=config.CAMPAIGN_MAX_VARIABLES,
                        help=f"Largest N (default: {config.CAMPAIGN_MAX_VARIABLES})")
    parser.add_argument("--min-clauses", type=int, default=config.CAMPAIGN_MIN_CLAUSES,
                        help=f"Smallest M (default: {config.CAMPAIGN_MIN_CLAUSES})")
    parser.add_argument("--max-clauses", type=int, default=config.CAMPAIGN_MAX_CLAUSES,
                        help=f"Largest M (default: {config.CAMPAIGN_MAX_CLAUSES})")
    parser.add_argument("--w-cap", type=int, default=config.CAMPAIGN_WEIGHT_CAP,
                        help=f"Largest clause weight (default: {config.CAMPAIGN_WEIGHT_CAP})")
    parser.add_argument("--workers", type=int, default=config.CAMPAIGN_WORKERS,
                        help=f"Worker threads (default: {config.CAMPAIGN_WORKERS})")
    parser.add_argument("--size-cap", type=int, default=config.DEFAULT_SIZE_CAP,
                        help=f"Largest number of solutions to enumerate (default: {config.DEFAULT_SIZE_CAP})")
    parser.set_defaults(handler=run_oracle)


def run_oracle(args) -> int:
    params = ReductionParams(parse_rational(args.c))
    manifest = start_run(args, 'oracle', [], c=format_rational(params.c), count=args.count,
                         targets=list(args.targets), max_variables=args.max_variables,
                         min_clauses=args.min_clauses, max_clauses=args.max_clauses, w_cap=args.w_cap,
                         size_cap=args.size_cap)
    result = run_campaign(
        count=args.count,
        seed=args.seed,
        targets=args.targets,
        c=params.c,
        workers=args.workers,
        size_cap=args.size_cap,
        tol=args.tol,
        max_variables=args.max_variables,
        min_clauses=args.min_clauses,
        max_clauses=args.max_clauses,
        w_cap=args.w_cap,
    )
    print_lines(result.summary_lines())
    for index, message in sorted(result.stats.errors.items()):
        print_lines([f"error\trun {index}\t{message}"])
    for report in result.stats.reports:
        if report is not None and not report.ok:
            print_lines(report.summary_lines())
    emit_document(args, manifest, result.to_dict())
    return 0 if result.ok else 1
