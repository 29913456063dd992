from fractions import Fraction
from typing import Callable, Dict, Hashable, Union

from models.metrics import log_cost_evaluation

Cost = Union[Fraction, int, float]


class CostCache:
    """Memoizes solution costs for one problem instance"""

    def __init__(self, evaluate: Callable[[Hashable], Cost]):
        self._evaluate = evaluate
        self._cache: Dict[Hashable, Cost] = {}

    def cost(self, key: Hashable) -> Cost:
        """Return the cached cost, evaluating and storing it on a miss"""
        if key in self._cache:
            log_cost_evaluation(source='cache')
            return self._cache[key]
        value = self._evaluate(key)
        self._cache[key] = value
        log_cost_evaluation(source='computed')
        return value
