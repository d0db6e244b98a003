"""Constrained descent in the e-component.

After the other components of the pair are (1, 0), the e-component (c, d)
satisfies c = 1 and d = 0 modulo eta. Only two moves keep the other
components fixed:

  Lower(t)  with t arbitrary:          c <- c + t*d
  kernel(s) = Upper(kernel_lift(e, s)): d <- d + eta*s*c

The state is kept as (c, delta) with d = eta*delta, so the congruences
hold by construction. The potential |N(c)| + |N(delta)| must strictly drop
at every greedy step; when neither division step lowers it, an
iterative-deepening search over both families looks for a way out. Its
entries come from l1 balls around the rounded quotient and around 0 whose
radius is the current round, so round k tries every move list of length at
most k with entries at distance at most k.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Optional, Tuple

import cyclo
from cyclo import CycloInt, euclid_divmod, exact_div, l1_shell, l1_shell_size, rounded_quotient
from errors import BudgetExceeded, NoSmallRemainder
from ge2.deepening import Budget, DeepeningSearch
from ge_types import ElemKind

log = logging.getLogger(__name__)

# states allotted to one stall search, before the caller falls back
STALL_SEARCH_CAP = 20000
STALL_SEARCH_MAX_DEPTH = 6
# widest entry shell the stall search builds
MAX_SHELL = 20000


class DescentStalled(Exception):
    """The constrained descent found no potential-lowering continuation."""

    def __init__(self, message: str, moves: Iterable["EMove"] = ()):
        super().__init__(message)
        self.moves = list(moves)


@dataclass(frozen=True)
class EMove:
    """LOWER: c += value*d.  UPPER: d += eta*value*c (a kernel-lifted upper op)."""
    kind: ElemKind
    value: CycloInt


def _potential(c: CycloInt, delta: CycloInt) -> int:
    return abs(cyclo.norm(c)) + abs(cyclo.norm(delta))


class ConstrainedDescent:
    def __init__(self, eta: CycloInt, budget: Budget):
        self.eta = eta
        self.e = eta.d
        self.budget = budget
        self.moves: List[EMove] = []

    # -- moves ------------------------------------------------------------

    def _lower(self, c: CycloInt, delta: CycloInt, t: CycloInt) -> CycloInt:
        return c + t * self.eta * delta

    def _kernel(self, c: CycloInt, delta: CycloInt, s: CycloInt) -> CycloInt:
        return delta + s * c

    def _push(self, kind: ElemKind, value: CycloInt) -> None:
        if not value.is_zero():
            self.moves.append(EMove(kind, value))

    # -- driver -----------------------------------------------------------

    def run(self, c: CycloInt, d: CycloInt) -> List[EMove]:
        delta = exact_div(d, self.eta)
        gamma = exact_div(c - 1, self.eta)
        if delta is None or gamma is None:
            raise AssertionError(f"e-component ({c!r}, {d!r}) breaks the congruences modulo {self.eta!r}")

        while True:
            self.budget.spend(1)
            if cyclo.is_unit(c):
                if not delta.is_zero():
                    s = -delta * cyclo.inverse(c)
                    self._push(ElemKind.UPPER, s)
                    delta = self._kernel(c, delta, s)
                self._finish_unit(c)
                return self.moves
            if cyclo.is_unit(delta):
                gamma = exact_div(c - 1, self.eta)
                t = -gamma * cyclo.inverse(delta)
                self._push(ElemKind.LOWER, t)
                c = self._lower(c, delta, t)
                assert c == 1
                self._push(ElemKind.UPPER, -delta)
                return self.moves

            step = self._greedy_step(c, delta)
            if step is None:
                c, delta = self._escape(c, delta)
                continue
            kind, value, c, delta = step
            self._push(kind, value)

    def _greedy_step(self, c: CycloInt, delta: CycloInt) -> Optional[Tuple[ElemKind, CycloInt, CycloInt, CycloInt]]:
        current = _potential(c, delta)
        candidates = []
        try:
            q, _ = euclid_divmod(delta, c, nearest=True)
            nd = self._kernel(c, delta, -q)
            candidates.append((_potential(c, nd), ElemKind.UPPER, -q, c, nd))
        except NoSmallRemainder:
            pass
        if not delta.is_zero():
            try:
                q, _ = euclid_divmod(c, self.eta * delta, nearest=True)
                nc = self._lower(c, delta, -q)
                candidates.append((_potential(nc, delta), ElemKind.LOWER, -q, nc, delta))
            except NoSmallRemainder:
                pass
        if not candidates:
            return None
        best = min(candidates, key=lambda item: item[0])
        if best[0] >= current:
            return None
        return best[1], best[2], best[3], best[4]

    def _finish_unit(self, c: CycloInt) -> None:
        if c == 1:
            return
        two = exact_div(CycloInt.from_int(self.e, 2), self.eta)
        if c == -1 and two is not None:
            # (-1, 0) -> (-1, -2) -> (1, -2) -> (1, 0)
            self._push(ElemKind.UPPER, two)
            self._push(ElemKind.LOWER, CycloInt.from_int(self.e, -1))
            self._push(ElemKind.UPPER, two)
            return
        head = exact_div(cyclo.inverse(c) - 1, self.eta)
        tail = exact_div(c - 1, self.eta)
        assert head is not None and tail is not None
        self._push(ElemKind.UPPER, head)
        self._push(ElemKind.LOWER, CycloInt.from_int(self.e, 1))
        self._push(ElemKind.UPPER, tail)

    # -- stall search -----------------------------------------------------

    def _ball(self, centre: CycloInt, radius: int) -> Iterator[CycloInt]:
        """centre + v for |v|_1 <= radius, nearest shells first."""
        for r in range(radius + 1):
            if l1_shell_size(centre.phi, r) > MAX_SHELL:
                return
            for row in l1_shell(centre.phi, r):
                yield centre + CycloInt(self.e, (int(c) for c in row))

    def _entries(self, centre: CycloInt, radius: int) -> Iterator[CycloInt]:
        seen = set()
        for s in itertools.chain(self._ball(centre, radius), self._ball(CycloInt(self.e), radius)):
            if not s.is_zero() and s not in seen:
                seen.add(s)
                yield s

    def _successors(self, state: Tuple[CycloInt, CycloInt], depth: int):
        # the entry ball grows with the deepening round
        c, delta = state
        if not c.is_zero():
            for s in self._entries(-rounded_quotient(delta, c), depth):
                yield EMove(ElemKind.UPPER, s), (c, self._kernel(c, delta, s))
        if not delta.is_zero():
            for t in self._entries(-rounded_quotient(c, self.eta * delta), depth):
                yield EMove(ElemKind.LOWER, t), (self._lower(c, delta, t), delta)

    def _escape(self, c: CycloInt, delta: CycloInt) -> Tuple[CycloInt, CycloInt]:
        stuck = _potential(c, delta)
        log.debug(f"constrained descent stalled at potential {stuck} in Z[zeta_{self.e}]")

        def is_goal(state):
            sc, sd = state
            return _potential(sc, sd) < stuck or cyclo.is_unit(sc) or cyclo.is_unit(sd)

        local = self.budget.carve(STALL_SEARCH_CAP, f"stall search in Z[zeta_{self.e}]")
        search = DeepeningSearch(self._successors, is_goal, lambda s: (s[0].coeffs, s[1].coeffs), local,
                                 max_depth=STALL_SEARCH_MAX_DEPTH)
        try:
            found = search.run((c, delta))
        except BudgetExceeded:
            found = None
        finally:
            self.budget.settle(local)
        if found is None:
            raise DescentStalled(f"no escape from potential {stuck} in Z[zeta_{self.e}]", self.moves)
        path, (c, delta) = found
        for move in path:
            self._push(move.kind, move.value)
        return c, delta


def constrained_descent(eta: CycloInt, c: CycloInt, d: CycloInt, budget: Budget) -> List[EMove]:
    """Moves taking the e-component (c, d) to (1, 0) under the eta constraint.

    Raises:
        DescentStalled: if the stall search cannot continue; carries the moves made so far
        BudgetExceeded: if the shared budget runs out
    """
    return ConstrainedDescent(eta, budget).run(c, d)
