"""
Generic local-search driver over any (solution, neighborhood, cost) triple.
Problems plug in by subclassing LocalSearchProblem.
"""
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, List, Optional, Tuple

from models.cache import CostCache
from models.errors import ValidationError
from models.metrics import log_neighbors_scanned, log_search_step, log_search_finished
from models.solution import priced
from models.utils import format_rational

PIVOT_BEST = 'best_improvement'
PIVOT_FIRST = 'first_improvement'
PIVOT_RULES = (PIVOT_BEST, PIVOT_FIRST)
PIVOT_ALIASES = {'best': PIVOT_BEST, 'first': PIVOT_FIRST}

TERMINATED_LOCAL_OPTIMUM = 'local_optimum'
TERMINATED_STEP_BUDGET = 'step_budget'


class LocalSearchProblem(ABC):
    """A PLS problem instance: feasible solutions, a cost and an ordered neighborhood"""
    name = 'problem'
    maximize = False

    @abstractmethod
    def cost(self, solution):
        """Exact objective value of a feasible solution"""

    @abstractmethod
    def moves(self, solution) -> List[Tuple[str, Any]]:
        """(move description, neighbor) pairs in the problem's fixed scan order"""

    @abstractmethod
    def is_feasible(self, solution) -> bool:
        """True if the solution belongs to the feasible set"""

    @abstractmethod
    def random_solution(self, rng):
        """A uniformly drawn feasible solution"""

    @abstractmethod
    def all_solutions(self) -> Iterator[Any]:
        """Every feasible solution, in a deterministic order"""

    @abstractmethod
    def solution_count(self) -> int:
        """Number of feasible solutions"""

    def describe(self, solution) -> str:
        return str(solution)

    def improves(self, candidate, current) -> bool:
        """Strict improvement under the problem's direction"""
        if self.maximize:
            return candidate > current
        return candidate < current

    def require_feasible(self, solution):
        if not self.is_feasible(solution):
            raise ValidationError(f"Infeasible solution for {self.name}: {self.describe(solution)}")


@dataclass(frozen=True)
class SearchConfig:
    """Pivot rule, optional step budget and seed for randomized starts"""
    pivot_rule: str = PIVOT_BEST
    max_steps: Optional[int] = None
    seed: int = 0

    def __post_init__(self):
        rule = PIVOT_ALIASES.get(self.pivot_rule, self.pivot_rule)
        if rule not in PIVOT_RULES:
            raise ValidationError(f"Unknown pivot rule: {self.pivot_rule!r}")
        object.__setattr__(self, 'pivot_rule', rule)
        if self.max_steps is not None and self.max_steps < 0:
            raise ValidationError(f"max_steps must be >= 0, got {self.max_steps}")
        if not 0 <= self.seed < 2 ** 64:
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


@dataclass(frozen=True)
class Step:
    index: int
    solution: Any
    cost: Any
    move: str


@dataclass
class Trajectory:
    """Accepted moves of one run, from start to termination"""
    start: Any
    start_cost: Any
    steps: List[Step] = field(default_factory=list)
    terminated: str = TERMINATED_LOCAL_OPTIMUM

    @property
    def final(self):
        return self.steps[-1].solution if self.steps else self.start

    @property
    def final_cost(self):
        return self.steps[-1].cost if self.steps else self.start_cost

    @property
    def costs(self):
        return [self.start_cost] + [step.cost for step in self.steps]

    def log_lines(self) -> List[str]:
        """Tab-separated `step, cost, move` lines; line 0 is the start"""
        lines = [f"0\t{format_rational(self.start_cost)}\tstart"]
        for step in self.steps:
            lines.append(f"{step.index}\t{format_rational(step.cost)}\t{step.move}")
        return lines


def _scan(problem: LocalSearchProblem, solution, current_cost, pivot_rule, cache: CostCache):
    """Return (move, neighbor, cost) of the chosen improving neighbor, or None"""
    best = None
    scanned = 0
    for move, neighbor in problem.moves(solution):
        scanned += 1
        cost = cache.cost(neighbor)
        if not problem.improves(cost, current_cost):
            continue
        if pivot_rule == PIVOT_FIRST:
            best = (move, neighbor, cost)
            break
        # Ties keep the earlier (lower-index) move
        if best is None or problem.improves(cost, best[2]):
            best = (move, neighbor, cost)
    log_neighbors_scanned(scanned)
    if best is None:
        return None
    move, neighbor, cost = best
    return move, priced(neighbor, cost), cost


def local_search(problem: LocalSearchProblem, start, cfg: Optional[SearchConfig] = None,
                 cache: Optional[CostCache] = None) -> Trajectory:
    """Move to strictly better neighbors until none exists or the step budget runs out"""
    cfg = cfg or SearchConfig()
    problem.require_feasible(start)
    cache = cache or CostCache(problem.cost)

    current_cost = cache.cost(start)
    current = start = priced(start, current_cost)
    trajectory = Trajectory(start=start, start_cost=current_cost)

    while True:
        if cfg.max_steps is not None and len(trajectory.steps) >= cfg.max_steps:
            # A budget that runs out exactly at an optimum still reports the optimum
            if _scan(problem, current, current_cost, PIVOT_FIRST, cache) is None:
                break
            trajectory.terminated = TERMINATED_STEP_BUDGET
            break
        chosen = _scan(problem, current, current_cost, cfg.pivot_rule, cache)
        if chosen is None:
            break
        move, current, current_cost = chosen
        step = Step(index=len(trajectory.steps) + 1, solution=current, cost=current_cost, move=move)
        trajectory.steps.append(step)
        log_search_step(problem.name, step.index, format_rational(current_cost), move)

    log_search_finished(problem.name, len(trajectory.steps), format_rational(trajectory.final_cost),
                        trajectory.terminated)
    return trajectory


def is_local_optimum(problem: LocalSearchProblem, solution, cache: Optional[CostCache] = None) -> bool:
    """True iff no neighbor strictly improves the objective"""
    problem.require_feasible(solution)
    cache = cache or CostCache(problem.cost)
    return _scan(problem, solution, cache.cost(solution), PIVOT_FIRST, cache) is None


def fixpoints(problem: LocalSearchProblem, starts: Iterable, cfg: Optional[SearchConfig] = None,
              cache: Optional[CostCache] = None) -> set:
    """
    Final solutions of local_search from every given start.

    Without a step budget a run's next move depends only on the current solution,
    so each solution is scanned once and runs share their tails.
    """
    cfg = cfg or SearchConfig()
    cache = cache or CostCache(problem.cost)
    if cfg.max_steps is not None:
        return {local_search(problem, start, cfg, cache).final for start in starts}

    final = {}
    ends = set()
    for start in starts:
        problem.require_feasible(start)
        path = []
        current = start
        while current not in final:
            path.append(current)
            chosen = _scan(problem, current, cache.cost(current), cfg.pivot_rule, cache)
            if chosen is None:
                final[current] = priced(current, cache.cost(current))
                break
            current = chosen[1]
        end = final[current]
        for solution in path:
            final[solution] = end
        ends.add(end)
    return ends
