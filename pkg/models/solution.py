from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, Optional


@dataclass(frozen=True)
class SolutionSet:
    """Open facilities (MUFL) or chosen centers (DKM), by position in the instance's list"""
    members: FrozenSet[int]
    cost: Optional[Fraction] = field(default=None, compare=False)

    @classmethod
    def of(cls, members: Iterable[int]) -> 'SolutionSet':
        return cls(frozenset(members))

    def with_cost(self, cost) -> 'SolutionSet':
        return SolutionSet(self.members, cost)

    def opened(self, position: int) -> 'SolutionSet':
        return SolutionSet(self.members | {position})

    def closed(self, position: int) -> 'SolutionSet':
        return SolutionSet(self.members - {position})

    def swapped(self, out: int, into: int) -> 'SolutionSet':
        return SolutionSet((self.members - {out}) | {into})

    def sorted_members(self):
        return tuple(sorted(self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, position):
        return position in self.members

    def __iter__(self):
        return iter(self.sorted_members())


def priced(solution, cost):
    """Attach an exact cost to set solutions; assignments pass through unchanged"""
    if isinstance(solution, SolutionSet):
        return solution.with_cost(cost)
    return solution
