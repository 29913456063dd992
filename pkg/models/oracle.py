"""
Brute-force ground truth on small instances: enumerate every feasible solution,
find all local optima exactly and check each claim of the reductions.
"""
import itertools
import random
import threading
import time
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from models import config
from models.cache import CostCache
from models.dkm import DkmInstance, DkmSwapProblem
from models.embedding import dimension_lower_bound, embed_squared_euclidean
from models.errors import CapacityError, EmbeddingError, ValidationError
from models.metrics import log_campaign, log_enumeration, log_violation
from models.mufl import MuflInstance, MuflSwapProblem, validate_metric
from models.reduction_dkm import build_dkm, improving_move_dkm, predicted_cost_reasonable_dkm
from models.reduction_mufl import (
    ReductionParams,
    build_mufl,
    improving_move_mufl,
    is_reasonable,
    map_solution_mufl,
    predicted_cost_reasonable,
    reasonable_solutions,
)
from models.sat import SatFlipProblem, SatInstance, random_sat_instance, sat_cost, serialize_wcnf
from models.search import PIVOT_RULES, LocalSearchProblem, SearchConfig, fixpoints, is_local_optimum
from models.solution import priced
from models.utils import format_rational

TARGET_MUFL = 'mufl'
TARGET_DKM = 'dkm'
TARGETS = (TARGET_MUFL, TARGET_DKM)

CLAIM_REASONABLE = 'local-optima-reasonable'
CLAIM_CORRESPONDENCE = 'local-optima-correspond'
CLAIM_CLOSED_FORM = 'closed-form-cost'
CLAIM_ORDER_REVERSAL = 'order-reversal'
CLAIM_COUNTER_MOVE = 'counter-move'
CLAIM_METRIC = 'metric'
CLAIM_EMBEDDABLE = 'embeddable'
CLAIM_DIMENSION = 'dimension-bound'
CLAIM_ENGINE = 'engine-fixpoints'


@dataclass
class Violation:
    claim: str
    witness: str
    detail: str = ''

    def to_dict(self):
        return {'claim': self.claim, 'witness': self.witness, 'detail': self.detail}


@dataclass
class OracleReport:
    """Counts and claim violations of one exhaustive verification run"""
    target: str
    instance: Dict
    solutions_scanned: int = 0
    local_optima: int = 0
    reasonable_local_optima: int = 0
    reasonable_solutions: int = 0
    claims_checked: List[str] = field(default_factory=list)
    violations: List[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add_violation(self, claim, witness, detail=''):
        self.violations.append(Violation(claim, witness, detail))
        log_violation(claim, witness)

    def to_dict(self):
        return {
            'target': self.target,
            'instance': dict(self.instance),
            'solutions_scanned': self.solutions_scanned,
            'local_optima': self.local_optima,
            'reasonable_local_optima': self.reasonable_local_optima,
            'reasonable_solutions': self.reasonable_solutions,
            'claims_checked': list(self.claims_checked),
            'violations': [violation.to_dict() for violation in self.violations],
        }

    def summary_lines(self) -> List[str]:
        status = 'OK' if self.ok else f"{len(self.violations)} VIOLATIONS"
        lines = [
            f"target\t{self.target}",
            f"instance\tN={self.instance.get('N')} M={self.instance.get('M')} W={self.instance.get('W')}",
            f"solutions scanned\t{self.solutions_scanned}",
            f"local optima\t{self.local_optima} ({self.reasonable_local_optima} reasonable)",
            f"claims\t{', '.join(self.claims_checked)}",
            f"status\t{status}",
        ]
        lines.extend(f"violation\t{v.claim}\t{v.witness}\t{v.detail}" for v in self.violations)
        return lines


def enumerate_local_optima(problem: LocalSearchProblem, size_cap: int = config.DEFAULT_SIZE_CAP,
                           cache: Optional[CostCache] = None) -> list:
    """Every feasible solution without a strictly improving neighbor"""
    count = problem.solution_count()
    if count > size_cap:
        raise CapacityError(f"{problem.name} has {count} feasible solutions, cap is {size_cap}")
    cache = cache or CostCache(problem.cost)
    optima = [priced(solution, cache.cost(solution)) for solution in problem.all_solutions()
              if is_local_optimum(problem, solution, cache)]
    log_enumeration(problem.name, count, len(optima))
    return optima


def _instance_summary(sat: SatInstance, c) -> Dict:
    return {
        'N': sat.num_variables,
        'M': sat.M,
        'W': sat.W,
        'c': format_rational(c),
        'wcnf': serialize_wcnf(sat),
    }


def verify_reduction(sat: SatInstance, c=None, target: str = TARGET_MUFL,
                     size_cap: int = config.DEFAULT_SIZE_CAP, tol: float = config.DEFAULT_TOL) -> OracleReport:
    """Build the reduced instance and check every claim on it"""
    if target not in TARGETS:
        raise ValidationError(f"Unknown target {target!r}, expected one of {', '.join(TARGETS)}")
    params = ReductionParams() if c is None else ReductionParams(c)
    if target == TARGET_MUFL:
        instance = build_mufl(sat, params)
    else:
        instance = build_dkm(sat, params.c)
    return verify_instance(sat, instance, params.c, size_cap, tol)


def verify_instance(sat: SatInstance, instance, c, size_cap: int = config.DEFAULT_SIZE_CAP,
                    tol: float = config.DEFAULT_TOL) -> OracleReport:
    """
    Check on an already built instance:
    local optima are reasonable, map to SAT/Flip local optima, reasonable costs match
    the closed form, cost order reverses weight order, and every unreasonable solution
    loses to its targeted counter-move. Small instances also run local search from every
    start under both pivot rules and must end exactly at the oracle's optima. MUFL
    instances must be metric; K-means tables must embed with enough dimensions.
    """
    params = ReductionParams(c)
    N = sat.num_variables
    if isinstance(instance, MuflInstance):
        target, problem = TARGET_MUFL, MuflSwapProblem(instance)
        predict = lambda O: predicted_cost_reasonable(sat, params, O)
        counter_move = lambda O: improving_move_mufl(O, N)
    elif isinstance(instance, DkmInstance):
        target, problem = TARGET_DKM, DkmSwapProblem(instance)
        predict = lambda O: predicted_cost_reasonable_dkm(sat, params.c, O)
        counter_move = lambda O: _dkm_counter_move(sat, O)
    else:
        raise ValidationError(f"Cannot verify instance of type {type(instance).__name__}")

    report = OracleReport(target=target, instance=_instance_summary(sat, params.c))
    cache = CostCache(problem.cost)
    sat_problem = SatFlipProblem(sat)
    sat_cache = CostCache(sat_problem.cost)

    optima = enumerate_local_optima(problem, size_cap, cache)
    report.solutions_scanned = problem.solution_count()
    report.local_optima = len(optima)

    report.claims_checked.extend([CLAIM_REASONABLE, CLAIM_CORRESPONDENCE])
    for solution in optima:
        if is_reasonable(solution, N):
            report.reasonable_local_optima += 1
        else:
            report.add_violation(CLAIM_REASONABLE, problem.describe(solution),
                                 f"cost {format_rational(cache.cost(solution))}")
        assignment = map_solution_mufl(solution, N)
        if not is_local_optimum(sat_problem, assignment, sat_cache):
            report.add_violation(CLAIM_CORRESPONDENCE, problem.describe(solution),
                                 f"assignment {assignment.to_bits()} has an improving flip")

    report.claims_checked.append(CLAIM_CLOSED_FORM)
    reasonable = list(reasonable_solutions(N))
    report.reasonable_solutions = len(reasonable)
    for solution in reasonable:
        direct, predicted = cache.cost(solution), predict(solution)
        if direct != predicted:
            report.add_violation(CLAIM_CLOSED_FORM, problem.describe(solution),
                                 f"direct {format_rational(direct)} != closed form {format_rational(predicted)}")

    report.claims_checked.append(CLAIM_ORDER_REVERSAL)
    weights = [sat_cost(sat, map_solution_mufl(solution, N)) for solution in reasonable]
    costs = [cache.cost(solution) for solution in reasonable]
    for i, j in itertools.permutations(range(len(reasonable)), 2):
        if (weights[i] < weights[j]) != (costs[i] > costs[j]):
            report.add_violation(CLAIM_ORDER_REVERSAL,
                                 f"{problem.describe(reasonable[i])} vs {problem.describe(reasonable[j])}",
                                 f"weights {weights[i]}/{weights[j]}, costs "
                                 f"{format_rational(costs[i])}/{format_rational(costs[j])}")

    report.claims_checked.append(CLAIM_COUNTER_MOVE)
    for solution in problem.all_solutions():
        if is_reasonable(solution, N):
            continue
        found = counter_move(solution)
        if found is None or not problem.improves(cache.cost(found[1]), cache.cost(solution)):
            move = found[0] if found else 'none'
            report.add_violation(CLAIM_COUNTER_MOVE, problem.describe(solution), f"move {move} does not improve")

    if report.solutions_scanned <= config.ENGINE_CHECK_CAP:
        _check_engine(report, problem, optima, cache)

    if target == TARGET_MUFL:
        _check_metric(report, instance)
    else:
        _check_embedding(report, instance, sat, tol)
    return report


def _dkm_counter_move(sat, solution):
    found = improving_move_dkm(sat, solution)
    return (found.move, found.neighbor) if found else None


def _check_engine(report: OracleReport, problem: LocalSearchProblem, optima, cache: CostCache):
    report.claims_checked.append(CLAIM_ENGINE)
    expected = set(optima)
    for rule in PIVOT_RULES:
        reached = fixpoints(problem, problem.all_solutions(), SearchConfig(rule), cache)
        for solution in sorted(reached ^ expected, key=lambda s: s.sorted_members()):
            side = 'not found by the oracle' if solution in reached else 'never reached by local search'
            report.add_violation(CLAIM_ENGINE, problem.describe(solution), f"{rule}: {side}")


def _check_metric(report: OracleReport, instance: MuflInstance):
    report.claims_checked.append(CLAIM_METRIC)
    metric = validate_metric(instance)
    if not metric.ok:
        witness = metric.triangle[0] if metric.triangle else metric.to_dict()
        report.add_violation(CLAIM_METRIC, str(witness), 'distance table is not a metric')


def _check_embedding(report: OracleReport, instance: DkmInstance, sat: SatInstance, tol: float):
    report.claims_checked.extend([CLAIM_EMBEDDABLE, CLAIM_DIMENSION])
    try:
        embedded = embed_squared_euclidean(instance.distances, tol)
    except EmbeddingError as e:
        report.add_violation(CLAIM_EMBEDDABLE, 'distance table', e.message)
        return
    bound = dimension_lower_bound(sat.num_variables, sat.M)
    if embedded.dimension < bound:
        report.add_violation(CLAIM_DIMENSION, f"dimension {embedded.dimension}", f"below bound {bound}")


# =============================================================================
# Seeded campaigns
# =============================================================================

def random_family(count: int, seed: int, max_variables: int = config.CAMPAIGN_MAX_VARIABLES,
                  min_clauses: int = config.CAMPAIGN_MIN_CLAUSES, max_clauses: int = config.CAMPAIGN_MAX_CLAUSES,
                  w_cap: int = config.CAMPAIGN_WEIGHT_CAP) -> List[SatInstance]:
    """Deterministic random instances with 2..max_variables variables"""
    if max_variables < 2 or min_clauses < 2 or max_clauses < min_clauses:
        raise ValidationError("Campaign needs max_variables >= 2 and 2 <= min_clauses <= max_clauses")
    rng = random.Random(seed)
    family = []
    for _ in range(count):
        num_variables = rng.randint(2, max_variables)
        num_clauses = rng.randint(min_clauses, max_clauses)
        family.append(random_sat_instance(rng, num_variables, num_clauses, w_cap))
    return family


class CampaignStats:
    """Thread-safe aggregate over many oracle reports"""

    def __init__(self, size: int):
        self.lock = threading.Lock()
        self.reports: List[Optional[OracleReport]] = [None] * size
        self.errors: Dict[int, str] = {}
        self.solutions_scanned = 0
        self.local_optima = 0
        self.violations = 0

    def record(self, index: int, report: OracleReport):
        with self.lock:
            self.reports[index] = report
            self.solutions_scanned += report.solutions_scanned
            self.local_optima += report.local_optima
            self.violations += len(report.violations)

    def record_error(self, index: int, message: str):
        with self.lock:
            self.errors[index] = message

    @property
    def ok(self) -> bool:
        return self.violations == 0 and not self.errors


@dataclass
class CampaignResult:
    seed: int
    targets: Sequence[str]
    stats: CampaignStats
    elapsed: float

    @property
    def ok(self) -> bool:
        return self.stats.ok

    def to_dict(self):
        return {
            'seed': self.seed,
            'targets': list(self.targets),
            'runs': len(self.stats.reports),
            'solutions_scanned': self.stats.solutions_scanned,
            'local_optima': self.stats.local_optima,
            'violations': self.stats.violations,
            'errors': {str(k): v for k, v in sorted(self.stats.errors.items())},
            'reports': [report.to_dict() for report in self.stats.reports if report is not None],
        }

    def summary_lines(self) -> List[str]:
        status = 'OK' if self.ok else f"{self.stats.violations} VIOLATIONS, {len(self.stats.errors)} ERRORS"
        return [
            f"campaign seed\t{self.seed}",
            f"runs\t{len(self.stats.reports)} ({', '.join(self.targets)})",
            f"solutions scanned\t{self.stats.solutions_scanned}",
            f"local optima\t{self.stats.local_optima}",
            f"status\t{status}",
        ]


def run_campaign(count: int = config.CAMPAIGN_INSTANCES, seed: int = config.DEFAULT_SEED,
                 targets: Sequence[str] = TARGETS, c=None, workers: int = config.CAMPAIGN_WORKERS,
                 size_cap: int = config.DEFAULT_SIZE_CAP, tol: float = config.DEFAULT_TOL,
                 **family_options) -> CampaignResult:
    """Verify every (instance, target) pair of a seeded random family on worker threads"""
    for target in targets:
        if target not in TARGETS:
            raise ValidationError(f"Unknown target {target!r}")
    family = random_family(count, seed, **family_options)
    jobs = [(sat, target) for sat in family for target in targets]
    stats = CampaignStats(len(jobs))
    next_job = iter(range(len(jobs)))
    job_lock = threading.Lock()

    def worker():
        while True:
            with job_lock:
                index = next(next_job, None)
            if index is None:
                return
            sat, target = jobs[index]
            try:
                stats.record(index, verify_reduction(sat, c, target, size_cap, tol))
            except Exception as e:
                stats.record_error(index, f"{type(e).__name__}: {e}")

    started = time.time()
    threads = [threading.Thread(target=worker, daemon=True) for _ in range(max(1, workers))]
    for thread in threads:
        thread.start()
    for thread in threads:
        thread.join()
    elapsed = time.time() - started
    log_campaign(len(jobs), stats.violations, len(stats.errors), elapsed)
    return CampaignResult(seed=seed, targets=tuple(targets), stats=stats, elapsed=elapsed)
