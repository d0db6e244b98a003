"""Budgeted iterative-deepening search over move sequences.

The search is generic: callers supply the successor generator, the goal
test and a hashable key for each state. Round k explores every move list of
length at most k, and the successor generator is told k so it can widen its
candidate set as the rounds grow. Within a round a state is only expanded
again when it is reached with more depth left than before.
"""

import logging
from typing import Callable, Dict, Generic, Hashable, Iterable, List, Optional, Tuple, TypeVar

from errors import BudgetExceeded

log = logging.getLogger(__name__)

S = TypeVar("S")
M = TypeVar("M")


class Budget:
    """Counts search states against a limit shared by one reduction."""

    def __init__(self, limit: int, where: str = "reduction"):
        if limit < 1:
            raise ValueError(f"budget must be positive, got {limit}")
        self.limit = limit
        self.spent = 0
        self.where = where

    @property
    def remaining(self) -> int:
        return self.limit - self.spent

    def spend(self, n: int = 1) -> None:
        self.spent += n
        if self.spent > self.limit:
            raise BudgetExceeded(self.limit, self.spent, self.where)

    def carve(self, cap: int, where: str) -> "Budget":
        """A sub-budget of at most cap states; its spending is charged back with `settle`."""
        return Budget(max(1, min(cap, self.remaining)), where)

    def settle(self, child: "Budget") -> None:
        self.spend(min(child.spent, child.limit))


class DeepeningSearch(Generic[S, M]):
    def __init__(
        self,
        successors: Callable[[S, int], Iterable[Tuple[M, S]]],
        is_goal: Callable[[S], bool],
        key: Callable[[S], Hashable],
        budget: Budget,
        max_depth: int = 8,
    ):
        self.successors = successors
        self.is_goal = is_goal
        self.key = key
        self.budget = budget
        self.max_depth = max_depth
        self._round = 0

    def run(self, start: S) -> Optional[Tuple[List[M], S]]:
        """Shortest-depth move list reaching a goal, with the goal state.

        Returns None when max_depth is reached; raises BudgetExceeded when the
        budget runs out first.
        """
        if self.is_goal(start):
            return [], start
        for depth in range(1, self.max_depth + 1):
            log.debug(f"deepening to depth {depth} ({self.budget.spent}/{self.budget.limit} states)")
            self._round = depth
            seen: Dict[Hashable, int] = {self.key(start): depth}
            found = self._dls(start, depth, seen, [])
            if found is not None:
                return found
        return None

    def _dls(self, state: S, depth: int, seen: Dict[Hashable, int], path: List[M]) -> Optional[Tuple[List[M], S]]:
        for move, child in self.successors(state, self._round):
            self.budget.spend(1)
            if self.is_goal(child):
                return path + [move], child
            if depth == 1:
                continue
            k = self.key(child)
            if seen.get(k, 0) >= depth - 1:
                continue
            seen[k] = depth - 1
            found = self._dls(child, depth - 1, seen, path + [move])
            if found is not None:
                return found
        return None
