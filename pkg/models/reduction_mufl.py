"""
Max 2-SAT -> MUFL instance map, the solution map back to assignments,
reasonable solutions and their closed-form cost.

Site order is x1, ~x1, ..., xN, ~xN, b1, ..., bM. Facilities are the 2N literal
sites, so the facility position of literal (n, negated) is 2(n-1) + negated, and
the same positions index literal points of the K-means instance.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Tuple

from models.config import DEFAULT_C
from models.errors import ValidationError
from models.mufl import MuflInstance
from models.sat import Assignment, Literal, SatInstance, falsified_weight
from models.solution import SolutionSet
from models.utils import format_rational, parse_rational
from models import fields

POSITIVE_LITERAL = 'positive_literal'
NEGATIVE_LITERAL = 'negative_literal'
CLAUSE = 'clause'

OPENING_COST = Fraction(2)


@dataclass(frozen=True)
class SiteLabel:
    role: str
    index: int

    def __post_init__(self):
        if self.role not in (POSITIVE_LITERAL, NEGATIVE_LITERAL, CLAUSE):
            raise ValidationError(f"Unknown site role {self.role!r}")
        if self.index < 1:
            raise ValidationError(f"Site index must be >= 1, got {self.index}")

    def __str__(self):
        if self.role == POSITIVE_LITERAL:
            return f"x{self.index}"
        if self.role == NEGATIVE_LITERAL:
            return f"~x{self.index}"
        return f"b{self.index}"


@dataclass(frozen=True)
class ReductionParams:
    c: Fraction = parse_rational(DEFAULT_C)

    def __post_init__(self):
        c = parse_rational(self.c)
        if not 1 < c < 2:
            raise ValidationError(f"c must lie strictly inside (1, 2), got {format_rational(c)}")
        object.__setattr__(self, 'c', c)


def site_labels(num_variables: int, num_clauses: int) -> List[SiteLabel]:
    labels = []
    for n in range(1, num_variables + 1):
        labels.append(SiteLabel(POSITIVE_LITERAL, n))
        labels.append(SiteLabel(NEGATIVE_LITERAL, n))
    labels.extend(SiteLabel(CLAUSE, m) for m in range(1, num_clauses + 1))
    return labels


def literal_position(literal: Literal) -> int:
    return 2 * (literal.variable_index - 1) + int(literal.negated)


def clause_position(num_variables: int, m: int) -> int:
    """Site position of clause point b_m (1-based m)"""
    return 2 * num_variables + m - 1


def literal_clause_table(sat: SatInstance, pair: Fraction, contains: Callable[[int], Fraction],
                         opposes: Callable[[int], Fraction], other: Fraction) -> List[List[Fraction]]:
    """
    Five-case distance table over literal and clause sites:
    0 on the diagonal, `pair` between x_n and ~x_n, contains(w) between a literal and a
    clause holding it, opposes(w) between a literal and a clause holding its negation,
    `other` everywhere else.
    """
    labels = site_labels(sat.num_variables, sat.M)
    size = len(labels)
    table = [[other] * size for _ in range(size)]
    for i in range(size):
        table[i][i] = Fraction(0)
    for n in range(1, sat.num_variables + 1):
        positive = literal_position(Literal(n))
        table[positive][positive + 1] = table[positive + 1][positive] = Fraction(pair)
    for m, clause in enumerate(sat.clauses, start=1):
        q = clause_position(sat.num_variables, m)
        for literal in clause.literals:
            p = literal_position(literal)
            table[p][q] = table[q][p] = contains(clause.weight)
            p_bar = literal_position(literal.negation())
            table[p_bar][q] = table[q][p_bar] = opposes(clause.weight)
    return table


def build_mufl(sat: SatInstance, params: Optional[ReductionParams] = None) -> MuflInstance:
    """Clients at every literal and clause, facilities at literals, opening cost 2"""
    params = params or ReductionParams()
    sat.require_reducible()
    W = Fraction(sat.W)
    c = params.c
    table = literal_clause_table(
        sat,
        pair=Fraction(1),
        contains=lambda w: 1 + w / W,
        opposes=lambda w: 1 + c * w / W,
        other=Fraction(2),
    )
    labels = [str(label) for label in site_labels(sat.num_variables, sat.M)]
    return MuflInstance(
        sites=tuple(labels),
        facilities=tuple(range(2 * sat.num_variables)),
        opening_costs=(OPENING_COST,) * (2 * sat.num_variables),
        distances=tuple(tuple(row) for row in table),
        meta={
            fields.META_C: format_rational(c),
            fields.META_W: sat.W,
            fields.META_N: sat.num_variables,
            fields.META_M: sat.M,
        },
    )


def map_solution_mufl(solution: SolutionSet, num_variables: int) -> Assignment:
    """x_n is true iff the positive literal site x_n is in the solution"""
    return Assignment(tuple(literal_position(Literal(n)) in solution for n in range(1, num_variables + 1)))


def is_reasonable(solution: SolutionSet, num_variables: int) -> bool:
    """Exactly one of x_n, ~x_n per variable and nothing else"""
    members = solution.members
    if len(members) != num_variables:
        return False
    if any(position >= 2 * num_variables for position in members):
        return False
    return len({position // 2 for position in members}) == num_variables


def reasonable_preimage(assignment: Assignment) -> SolutionSet:
    """The unique reasonable solution mapping to the assignment"""
    return SolutionSet.of(literal_position(Literal(n, not value))
                          for n, value in enumerate(assignment.values, start=1))


def reasonable_solutions(num_variables: int):
    """All 2^N reasonable solutions, in assignment order"""
    for mask in range(2 ** num_variables):
        yield SolutionSet.of(2 * n + (0 if mask >> n & 1 else 1) for n in range(num_variables))


def predicted_cost_reasonable(sat: SatInstance, params: Optional[ReductionParams], solution: SolutionSet) -> Fraction:
    """3N + M + (1/W) sum w + ((c-1)/W) sum of falsified weights"""
    params = params or ReductionParams()
    if not is_reasonable(solution, sat.num_variables):
        raise ValidationError("Closed-form cost applies to reasonable solutions only")
    W = Fraction(sat.W)
    assignment = map_solution_mufl(solution, sat.num_variables)
    return (3 * sat.num_variables + sat.M + sat.total_weight / W
            + (params.c - 1) / W * falsified_weight(sat, assignment))


def improving_move_mufl(solution: SolutionSet, num_variables: int) -> Optional[Tuple[str, SolutionSet]]:
    """
    The neighbor that beats an unreasonable solution: close x_n when both x_n and ~x_n
    are open, otherwise open x_n for a variable with neither. None if reasonable.
    """
    if is_reasonable(solution, num_variables):
        return None
    for n in range(1, num_variables + 1):
        positive = literal_position(Literal(n))
        if positive in solution and positive + 1 in solution:
            return f"close x{n}", solution.closed(positive)
    for n in range(1, num_variables + 1):
        positive = literal_position(Literal(n))
        if positive not in solution and positive + 1 not in solution:
            return f"open x{n}", solution.opened(positive)
    return None
