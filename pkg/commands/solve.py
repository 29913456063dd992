import random

from models.data import load_problem_input, save_trajectory_log
from models.dkm import DkmInstance, DkmSwapProblem
from models.errors import ValidationError
from models.mufl import MuflInstance, MuflSwapProblem
from models.sat import Assignment, SatFlipProblem, SatInstance
from models.search import PIVOT_ALIASES, SearchConfig, is_local_optimum, local_search
from models.solution import SolutionSet
from models.utils import format_rational
from commands.common import emit_document, print_lines, require_log_target, start_run, write_manifest

START_RANDOM = 'random'
START_ALL_OPEN = 'all-open'


def register_solve_command(subparsers, common):
    """Register `solve`: local search on a WCNF file or an instance document"""
    parser = subparsers.add_parser("solve", parents=[common],
                                   help="Run SAT/Flip, MUFL/Swap or DKM/Swap local search")
    parser.add_argument("input", help="WCNF file (SAT/Flip) or instance JSON (dispatched on kind)")
    parser.add_argument("--pivot", choices=sorted(PIVOT_ALIASES), default='best',
                        help="Pivot rule (default: best)")
    parser.add_argument("--start", default=START_RANDOM,
                        help="'random', 'all-open' (MUFL only), a bit string such as 01 (SAT) "
                             "or comma-separated labels such as x1,~x2 (default: random)")
    parser.add_argument("--max-steps", type=int, default=None, help="Step budget (default: unbounded)")
    parser.set_defaults(handler=run_solve)


def build_problem(source):
    if isinstance(source, SatInstance):
        return SatFlipProblem(source)
    if isinstance(source, MuflInstance):
        return MuflSwapProblem(source)
    if isinstance(source, DkmInstance):
        return DkmSwapProblem(source)
    raise ValidationError(f"Cannot search on {type(source).__name__}")


def resolve_start(problem, text: str, seed: int):
    """Turn a --start value into a solution of the problem"""
    if text == START_RANDOM:
        return problem.random_solution(random.Random(seed))
    if text == START_ALL_OPEN:
        if not isinstance(problem, MuflSwapProblem):
            raise ValidationError(f"'{START_ALL_OPEN}' start is only defined for MUFL/Swap")
        return problem.all_open()
    if isinstance(problem, SatFlipProblem):
        assignment = Assignment.from_bits(text)
        problem.instance.require_assignment(assignment)
        return assignment
    labels = [label.strip() for label in text.split(',') if label.strip()]
    if isinstance(problem, MuflSwapProblem):
        positions = [problem.instance.facility_position(label) for label in labels]
    else:
        positions = [problem.instance.position(label) for label in labels]
    if len(set(positions)) != len(positions):
        raise ValidationError(f"Start lists a label twice: {text!r}")
    return SolutionSet.of(positions)


def run_solve(args) -> int:
    cfg = SearchConfig(pivot_rule=args.pivot, max_steps=args.max_steps, seed=args.seed)
    manifest = start_run(args, 'solve', [args.input], pivot=cfg.pivot_rule, start=args.start,
                         max_steps=args.max_steps)
    require_log_target(args, 'solve')
    problem = build_problem(load_problem_input(args.input))
    start = resolve_start(problem, args.start, args.seed)

    trajectory = local_search(problem, start, cfg)
    optimal = is_local_optimum(problem, trajectory.final)
    print_lines([
        f"problem\t{problem.name}",
        f"start\t{problem.describe(trajectory.start)}\t{format_rational(trajectory.start_cost)}",
        f"final\t{problem.describe(trajectory.final)}",
        f"cost\t{format_rational(trajectory.final_cost)}",
        f"steps\t{len(trajectory.steps)}",
        f"terminated\t{trajectory.terminated}",
        f"local_optimum\t{str(optimal).lower()}",
    ])

    if args.log:
        save_trajectory_log(args.log, trajectory.log_lines())
        write_manifest(manifest, args.log)
    if args.out:
        emit_document(args, manifest, {
            'problem': problem.name,
            'start': problem.describe(trajectory.start),
            'final': problem.describe(trajectory.final),
            'cost': format_rational(trajectory.final_cost),
            'steps': len(trajectory.steps),
            'terminated': trajectory.terminated,
            'local_optimum': optimal,
        })
    return 0
