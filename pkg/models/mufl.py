"""
Metric Uncapacitated Facility Location: instances, the cost phi_FL and the
single-swap neighborhood (open / close / exchange).
"""
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import List, Optional, Tuple

import numpy as np

from models.errors import ValidationError
from models.search import LocalSearchProblem
from models.solution import SolutionSet
from models.utils import integer_table


@dataclass(frozen=True)
class MuflInstance:
    sites: Tuple[str, ...]
    facilities: Tuple[int, ...]
    opening_costs: Tuple[Fraction, ...]
    distances: Tuple[Tuple[Fraction, ...], ...]
    clients: Optional[Tuple[int, ...]] = None
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.sites)
        object.__setattr__(self, 'sites', tuple(self.sites))
        object.__setattr__(self, 'facilities', tuple(self.facilities))
        object.__setattr__(self, 'opening_costs', tuple(Fraction(v) for v in self.opening_costs))
        object.__setattr__(self, 'distances', tuple(tuple(Fraction(v) for v in row) for row in self.distances))
        clients = tuple(range(n)) if self.clients is None else tuple(self.clients)
        object.__setattr__(self, 'clients', clients)

        if len(set(self.sites)) != n:
            raise ValidationError("Site labels must be unique")
        if not self.facilities:
            raise ValidationError("A facility location instance needs at least one facility")
        for index in self.facilities + clients:
            if not 0 <= index < n:
                raise ValidationError(f"Site index {index} out of range for {n} sites")
        if len(self.opening_costs) != len(self.facilities):
            raise ValidationError(
                f"{len(self.opening_costs)} opening costs for {len(self.facilities)} facilities")
        if len(self.distances) != n or any(len(row) != n for row in self.distances):
            raise ValidationError(f"Distance table must be {n}x{n}")

    @property
    def facility_labels(self) -> List[str]:
        return [self.sites[i] for i in self.facilities]

    @property
    def client_labels(self) -> List[str]:
        return [self.sites[i] for i in self.clients]

    def facility_position(self, label: str) -> int:
        try:
            return self.facility_labels.index(label)
        except ValueError:
            raise ValidationError(f"Unknown facility {label!r}")

    def distance(self, p: str, q: str) -> Fraction:
        return self.distances[self.sites.index(p)][self.sites.index(q)]

    @cached_property
    def scaled(self):
        """(client x facility integer service table, integer opening costs, scale)"""
        service = [[self.distances[c][f] for f in self.facilities] for c in self.clients]
        if not service:
            service = np.zeros((0, len(self.facilities)), dtype=np.int64)
            _, opening, scale = integer_table([[0]], self.opening_costs)
            return service, opening, scale
        return integer_table(service, self.opening_costs)


def _members(inst: MuflInstance, solution) -> Tuple[int, ...]:
    members = solution.sorted_members() if isinstance(solution, SolutionSet) else tuple(sorted(solution))
    for position in members:
        if not 0 <= position < len(inst.facilities):
            raise ValidationError(f"Facility position {position} out of range for {len(inst.facilities)} facilities")
    return members


def phi_fl(inst: MuflInstance, solution) -> Fraction:
    """Service cost plus opening cost; +infinity for the empty set"""
    members = _members(inst, solution)
    if not members:
        return math.inf
    service, opening, scale = inst.scaled
    columns = list(members)
    total = service[:, columns].min(axis=1).sum() if service.shape[0] else 0
    total = int(total) + sum(opening[i] for i in columns)
    return Fraction(total, scale)


def swap_moves_mufl(inst: MuflInstance, solution: SolutionSet) -> List[Tuple[str, SolutionSet]]:
    """Closes, then opens, then exchanges, each in index order; never the empty set"""
    members = _members(inst, solution)
    if not members:
        raise ValidationError("Swap neighborhood is defined for nonempty solutions only")
    labels = inst.facility_labels
    closed = [i for i in range(len(inst.facilities)) if i not in solution]
    moves = []
    if len(members) > 1:
        moves.extend((f"close {labels[i]}", solution.closed(i)) for i in members)
    moves.extend((f"open {labels[j]}", solution.opened(j)) for j in closed)
    for i in members:
        moves.extend((f"swap {labels[i]}->{labels[j]}", solution.swapped(i, j)) for j in closed)
    return moves


def swap_neighbors_mufl(inst: MuflInstance, solution: SolutionSet) -> List[SolutionSet]:
    return [neighbor for _move, neighbor in swap_moves_mufl(inst, solution)]


@dataclass
class MetricReport:
    """Everything that keeps a distance table from being a metric; empty means valid"""
    nonzero_diagonal: List[str] = field(default_factory=list)
    negative: List[Tuple[str, str]] = field(default_factory=list)
    asymmetric: List[Tuple[str, str]] = field(default_factory=list)
    triangle: List[Tuple[str, str, str]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.nonzero_diagonal or self.negative or self.asymmetric or self.triangle)

    def to_dict(self):
        return {
            'nonzero_diagonal': list(self.nonzero_diagonal),
            'negative': [list(pair) for pair in self.negative],
            'asymmetric': [list(pair) for pair in self.asymmetric],
            'triangle': [list(triple) for triple in self.triangle],
        }


def validate_metric(inst: MuflInstance) -> MetricReport:
    """Report nonzero diagonals, negative or asymmetric entries and violated triples (p, q, r)"""
    report = MetricReport()
    sites = inst.sites
    n = len(sites)
    if n == 0:
        return report
    table, _, _ = integer_table(inst.distances)

    report.nonzero_diagonal = [sites[i] for i in range(n) if table[i, i] != 0]
    report.negative = [(sites[i], sites[j]) for i, j in np.argwhere(np.asarray(table < 0, dtype=bool))]
    report.asymmetric = [(sites[i], sites[j]) for i, j in np.argwhere(np.asarray(table != table.T, dtype=bool))
                         if i < j]

    # violated[p, q, r] is d(p, r) > d(p, q) + d(q, r)
    violated = np.asarray(table[:, None, :] > table[:, :, None] + table[None, :, :], dtype=bool)
    for p, q, r in np.argwhere(violated):
        if p < r and q != p and q != r:
            report.triangle.append((sites[p], sites[q], sites[r]))
    return report


class MuflSwapProblem(LocalSearchProblem):
    """MUFL/Swap over nonempty facility sets"""
    name = 'MUFL/Swap'
    maximize = False

    def __init__(self, instance: MuflInstance):
        self.instance = instance

    def cost(self, solution: SolutionSet) -> Fraction:
        return phi_fl(self.instance, solution)

    def moves(self, solution: SolutionSet):
        return swap_moves_mufl(self.instance, solution)

    def is_feasible(self, solution) -> bool:
        return (isinstance(solution, SolutionSet) and len(solution) > 0
                and all(0 <= i < len(self.instance.facilities) for i in solution.members))

    def random_solution(self, rng) -> SolutionSet:
        count = len(self.instance.facilities)
        while True:
            members = [i for i in range(count) if rng.random() < 0.5]
            if members:
                return SolutionSet.of(members)

    def all_open(self) -> SolutionSet:
        return SolutionSet.of(range(len(self.instance.facilities)))

    def all_solutions(self):
        count = len(self.instance.facilities)
        for mask in range(1, 2 ** count):
            yield SolutionSet.of(i for i in range(count) if mask >> i & 1)

    def solution_count(self) -> int:
        return 2 ** len(self.instance.facilities) - 1

    def describe(self, solution: SolutionSet) -> str:
        labels = self.instance.facility_labels
        return '{' + ','.join(labels[i] for i in solution) + '}'
