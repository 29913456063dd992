"""
Discrete K-Means over an abstract squared-distance table: the cost phi_KM and
the swap-only neighborhood.
"""
import itertools
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
class DkmInstance:
    sites: Tuple[str, ...]
    K: int
    distances: Tuple[Tuple[Fraction, ...], ...]
    coords: Optional[Tuple[Tuple[float, ...], ...]] = field(default=None, compare=False, hash=False)
    meta: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        n = len(self.sites)
        object.__setattr__(self, 'sites', tuple(self.sites))
        object.__setattr__(self, 'distances', tuple(tuple(Fraction(v) for v in row) for row in self.distances))
        if self.coords is not None:
            try:
                coords = tuple(tuple(float(x) for x in point) for point in self.coords)
            except (TypeError, ValueError):
                raise ValidationError("Coordinates must be numbers")
            object.__setattr__(self, 'coords', coords)

        if len(set(self.sites)) != n:
            raise ValidationError("Point labels must be unique")
        if not 1 <= self.K <= n:
            raise ValidationError(f"K must lie in [1, {n}], got {self.K}")
        if len(self.distances) != n or any(len(row) != n for row in self.distances):
            raise ValidationError(f"Distance table must be {n}x{n}")
        for i in range(n):
            if self.distances[i][i] != 0:
                raise ValidationError(f"d({self.sites[i]}, {self.sites[i]}) must be 0")
            for j in range(i):
                if self.distances[i][j] != self.distances[j][i]:
                    raise ValidationError(f"Distance table is not symmetric at ({self.sites[i]}, {self.sites[j]})")
        if self.coords is not None and len(self.coords) != n:
            raise ValidationError(f"{len(self.coords)} coordinate vectors for {n} points")

    def position(self, label: str) -> int:
        try:
            return self.sites.index(label)
        except ValueError:
            raise ValidationError(f"Unknown point {label!r}")

    def with_coords(self, coords) -> 'DkmInstance':
        return DkmInstance(self.sites, self.K, self.distances, tuple(map(tuple, coords)), dict(self.meta))

    @cached_property
    def scaled(self):
        """(integer table, scale)"""
        table, _, scale = integer_table(self.distances)
        return table, scale


def _members(inst: DkmInstance, solution) -> Tuple[int, ...]:
    members = solution.sorted_members() if isinstance(solution, SolutionSet) else tuple(sorted(set(solution)))
    if len(members) != inst.K:
        raise ValidationError(f"A K-means solution needs exactly K={inst.K} centers, got {len(members)}")
    for position in members:
        if not 0 <= position < len(inst.sites):
            raise ValidationError(f"Point position {position} out of range for {len(inst.sites)} points")
    return members


def phi_km(inst: DkmInstance, solution) -> Fraction:
    """Sum over all points of the smallest table distance to a center"""
    members = _members(inst, solution)
    table, scale = inst.scaled
    return Fraction(int(table[:, list(members)].min(axis=1).sum()), scale)


def phi_km_from_coordinates(inst: DkmInstance, solution) -> float:
    """Float cost evaluated on the embedded coordinates instead of the table"""
    if inst.coords is None:
        raise ValidationError("Instance carries no coordinates")
    members = _members(inst, solution)
    points = np.array(inst.coords, dtype=float).reshape(len(inst.sites), -1)
    centers = points[list(members)]
    squared = ((points[:, None, :] - centers[None, :, :]) ** 2).sum(axis=2)
    return float(squared.min(axis=1).sum())


def coordinate_error(inst: DkmInstance, coords) -> float:
    """Largest |‖p - q‖² - d(p, q)| over all pairs"""
    points = np.array(coords, dtype=float).reshape(len(inst.sites), -1)
    squared = ((points[:, None, :] - points[None, :, :]) ** 2).sum(axis=2)
    table = np.array(inst.distances, dtype=float)
    return float(np.abs(squared - table).max()) if len(inst.sites) else 0.0


def swap_moves_dkm(inst: DkmInstance, solution: SolutionSet) -> List[Tuple[str, SolutionSet]]:
    """Exchanges only, outgoing center then incoming point in index order"""
    members = _members(inst, solution)
    outside = [j for j in range(len(inst.sites)) if j not in solution]
    labels = inst.sites
    return [(f"swap {labels[i]}->{labels[j]}", solution.swapped(i, j)) for i in members for j in outside]


def swap_neighbors_dkm(inst: DkmInstance, solution: SolutionSet) -> List[SolutionSet]:
    return [neighbor for _move, neighbor in swap_moves_dkm(inst, solution)]


class DkmSwapProblem(LocalSearchProblem):
    """DKM/Swap over K-subsets of the points"""
    name = 'DKM/Swap'
    maximize = False

    def __init__(self, instance: DkmInstance):
        self.instance = instance

    def cost(self, solution: SolutionSet) -> Fraction:
        return phi_km(self.instance, solution)

    def moves(self, solution: SolutionSet):
        return swap_moves_dkm(self.instance, solution)

    def is_feasible(self, solution) -> bool:
        return (isinstance(solution, SolutionSet) and len(solution) == self.instance.K
                and all(0 <= i < len(self.instance.sites) for i in solution.members))

    def random_solution(self, rng) -> SolutionSet:
        return SolutionSet.of(rng.sample(range(len(self.instance.sites)), self.instance.K))

    def all_solutions(self):
        for members in itertools.combinations(range(len(self.instance.sites)), self.instance.K):
            yield SolutionSet.of(members)

    def solution_count(self) -> int:
        return math.comb(len(self.instance.sites), self.instance.K)

    def describe(self, solution: SolutionSet) -> str:
        return '{' + ','.join(self.instance.sites[i] for i in solution) + '}'
