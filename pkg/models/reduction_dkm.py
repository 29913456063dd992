"""
Max 2-SAT -> Discrete K-Means instance map with eps-scaled distances and K = N.
Shares site order, solution positions and reasonableness with the MUFL reduction.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from models.dkm import DkmInstance
from models.errors import ValidationError
from models.reduction_mufl import (
    ReductionParams,
    clause_position,
    is_reasonable,
    literal_clause_table,
    literal_position,
    map_solution_mufl,
    site_labels,
)
from models.sat import Assignment, Literal, SatInstance, falsified_weight
from models.solution import SolutionSet
from models.utils import format_rational
from models import fields


CASE_CLAUSE_UNCOVERED = 'clause-center-uncovered'
CASE_CLAUSE_HALF_COVERED = 'clause-center-half-covered'
CASE_CLAUSE_COVERED = 'clause-center-covered'
CASE_DOUBLE_LITERAL = 'double-literal'


def epsilon_for(num_variables: int, num_clauses: int) -> Fraction:
    return Fraction(1, 4 * num_variables + 2 * num_clauses)


@dataclass(frozen=True)
class DkmReductionParams:
    c: Fraction
    eps: Fraction

    def __post_init__(self):
        object.__setattr__(self, 'c', ReductionParams(self.c).c)
        if self.eps <= 0:
            raise ValidationError(f"eps must be positive, got {self.eps}")

    @classmethod
    def for_instance(cls, sat: SatInstance, c=None) -> 'DkmReductionParams':
        """eps is always derived from the instance"""
        base = ReductionParams() if c is None else ReductionParams(c)
        return cls(base.c, epsilon_for(sat.num_variables, sat.M))


@dataclass(frozen=True)
class CounterMove:
    """A neighbor that strictly beats an unreasonable solution, tagged with its proof case"""
    case: str
    move: str
    neighbor: SolutionSet


def build_dkm(sat: SatInstance, c=None) -> DkmInstance:
    sat.require_reducible()
    params = DkmReductionParams.for_instance(sat, c)
    W = Fraction(sat.W)
    eps = params.eps
    table = literal_clause_table(
        sat,
        pair=Fraction(1),
        contains=lambda w: 1 + eps * (Fraction(3, 2) + w / (2 * W)),
        opposes=lambda w: 1 + eps * (Fraction(3, 2) + params.c * w / (2 * W)),
        other=1 + 2 * eps,
    )
    labels = [str(label) for label in site_labels(sat.num_variables, sat.M)]
    return DkmInstance(
        sites=tuple(labels),
        K=sat.num_variables,
        distances=tuple(tuple(row) for row in table),
        meta={
            fields.META_C: format_rational(params.c),
            fields.META_EPS: format_rational(eps),
            fields.META_W: sat.W,
            fields.META_N: sat.num_variables,
            fields.META_M: sat.M,
        },
    )


def map_solution_dkm(solution: SolutionSet, num_variables: int, K: int) -> Assignment:
    """x_n true iff x_n is a center; clause points contribute nothing"""
    if len(solution) != K:
        raise ValidationError(f"A K-means solution needs exactly K={K} centers, got {len(solution)}")
    return map_solution_mufl(solution, num_variables)


def predicted_cost_reasonable_dkm(sat: SatInstance, c, solution: SolutionSet) -> Fraction:
    """N + M(1 + 3eps/2) + (eps/2W) sum w + (eps/2W)(c-1) sum of falsified weights"""
    params = DkmReductionParams.for_instance(sat, c)
    if not is_reasonable(solution, sat.num_variables):
        raise ValidationError("Closed-form cost applies to reasonable solutions only")
    eps, W = params.eps, Fraction(sat.W)
    assignment = map_solution_mufl(solution, sat.num_variables)
    return (sat.num_variables + sat.M * (1 + eps * Fraction(3, 2)) + eps / (2 * W) * sat.total_weight
            + eps / (2 * W) * (params.c - 1) * falsified_weight(sat, assignment))


def adjacent_points(sat: SatInstance, inst: DkmInstance, m: int) -> List[int]:
    """Positions strictly closer than 1 + 2eps to clause point b_m (its literals and their negations)"""
    threshold = 1 + 2 * epsilon_for(sat.num_variables, sat.M)
    q = clause_position(sat.num_variables, m)
    return [p for p in range(len(inst.sites)) if p != q and inst.distances[p][q] < threshold]


def improving_move_dkm(sat: SatInstance, solution: SolutionSet) -> Optional[CounterMove]:
    """
    The exchange that beats an unreasonable K = N solution. With a clause point b_m
    among the centers: trade it for the literal of an unrepresented clause variable
    that occurs in b_m, or for x_n of a missing variable when both clause variables
    are represented. Without clause points some variable o has both literals as
    centers; trade one of them for x_n.
    """
    N = sat.num_variables
    if is_reasonable(solution, N):
        return None
    represented = {position // 2 + 1 for position in solution.members if position < 2 * N}
    missing = [n for n in range(1, N + 1) if n not in represented]
    if not missing:
        return None
    x_missing = literal_position(Literal(missing[0]))

    for m, clause in enumerate(sat.clauses, start=1):
        q = clause_position(N, m)
        if q not in solution:
            continue
        unrepresented = [literal for literal in clause.literals if literal.variable_index not in represented]
        if unrepresented:
            case = CASE_CLAUSE_UNCOVERED if len(unrepresented) == 2 else CASE_CLAUSE_HALF_COVERED
            target = literal_position(unrepresented[0])
            return CounterMove(case, f"swap b{m}->{unrepresented[0]}", solution.swapped(q, target))
        return CounterMove(CASE_CLAUSE_COVERED, f"swap b{m}->x{missing[0]}", solution.swapped(q, x_missing))

    for o in range(1, N + 1):
        positive = literal_position(Literal(o))
        if positive in solution and positive + 1 in solution:
            return CounterMove(CASE_DOUBLE_LITERAL, f"swap x{o}->x{missing[0]}", solution.swapped(positive, x_missing))
    return None
