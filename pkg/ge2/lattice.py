"""Global best-first descent over O(D) through the complex embeddings.

Every root of every Phi_d (d in D) gives one embedding sigma of O(D). The
potential of a pair is

    P(a, b) = sum over sigma of log(|sigma a|^2 + |sigma b|^2)

which is zero at (1, 0) and nonnegative on unimodular pairs. Lower(t)
candidates sit around the t that makes sigma(a + b*t) vanish: -sigma(a)/sigma(b)
is interpolated on the components where b survives and rounded. A state's
candidates are that centre plus integer offsets on l1 shells of growing
radius, together with the same shells around 0; Upper candidates are
symmetric. States are expanded best-first on their floating point
potential. Each state hands out its candidates a few at a time, and asks
for the next shell only after a penalty, so the radius around every state
keeps growing while the search lasts. The visited set is keyed by the exact
pair; floats only order the search.
"""

import heapq
import itertools
import logging
import math
from functools import lru_cache
from typing import Any, List, Optional, Tuple

import numpy as np

from cyclo import l1_shell, l1_shell_size, primitive_roots, scaled_floats
from errors import BudgetExceeded
from ge2.deepening import Budget
from ge2.words import ElemOp, UmPair, apply_op, lower, unit_finish, upper
from ge_types import ElemKind
from odring import ODElement, ODRing

log = logging.getLogger(__name__)

# candidates released per request to one state
CHUNK = 8
# potential charged for each shell a state widens to
RADIUS_PENALTY = 1.0
MAX_RADIUS = 6
# widest shell a state may ask for
MAX_SHELL = 20000
_TINY = 1e-12
_LOG2 = math.log(2)


@lru_cache(maxsize=None)
def _roots(D: Tuple[int, ...]) -> np.ndarray:
    return np.concatenate([primitive_roots(d) for d in D])


@lru_cache(maxsize=None)
def _embedding(D: Tuple[int, ...]) -> np.ndarray:
    roots = _roots(D)
    return np.vander(roots, N=len(roots), increasing=True)


def _sigma(ring: ODRing, *elements: ODElement) -> Tuple[List[np.ndarray], int]:
    vectors = [x.rep.padded(ring.N) for x in elements]
    arrays, shift = scaled_floats(*vectors)
    V = _embedding(ring.D)
    return [V @ v for v in arrays], shift


def potential(ring: ODRing, pair: UmPair) -> float:
    (sa, sb), shift = _sigma(ring, pair.first, pair.second)
    total = np.sum(np.log(np.abs(sa) ** 2 + np.abs(sb) ** 2 + 1e-300))
    return float(total) + 2 * ring.N * shift * _LOG2


class _Node:
    __slots__ = ("pair", "parent", "op", "score")

    def __init__(self, pair: UmPair, parent: Optional["_Node"], op: Optional[ElemOp], score: float):
        self.pair = pair
        self.parent = parent
        self.op = op
        self.score = score

    def path(self) -> List[ElemOp]:
        ops = []
        node = self
        while node.parent is not None:
            ops.append(node.op)
            node = node.parent
        return ops[::-1]


class LatticeDescent:
    def __init__(self, ring: ODRing, budget: Budget):
        self.ring = ring
        self.budget = budget
        self._heap: List[Tuple[float, int, _Node, Optional[ElemKind], Any]] = []
        self._seq = itertools.count()

    # -- finishing --------------------------------------------------------

    def _maybe_unit(self, x: ODElement) -> bool:
        if x.is_zero():
            return False
        (sx,), shift = _sigma(self.ring, x)
        logs = np.log(np.abs(sx) + 1e-300) + shift * _LOG2
        start = 0
        for d in self.ring.D:
            n = len(primitive_roots(d))
            if abs(float(np.sum(logs[start:start + n]))) > 0.5:
                return False
            start += n
        return self.ring.is_unit(x)

    def finish(self, pair: UmPair) -> Optional[List[ElemOp]]:
        ring = self.ring
        a, b = pair.first, pair.second
        if a == ring.one() and b.is_zero():
            return []
        if self._maybe_unit(a):
            head = [upper(-b * ring.inverse(a))] if not b.is_zero() else []
            return head + unit_finish(ring, a)
        if self._maybe_unit(b):
            return [lower((ring.one() - a) * ring.inverse(b)), upper(-b)]
        return None

    # -- candidates -------------------------------------------------------

    def _centre(self, num: np.ndarray, den: np.ndarray, den_elem: ODElement) -> Optional[np.ndarray]:
        """Rounded interpolation of -num/den on the components where den_elem survives."""
        ring = self.ring
        sub_D = tuple(d for d in ring.D if not ring.project(den_elem, d).is_zero())
        if not sub_D:
            return None
        mask = np.concatenate([np.full(len(primitive_roots(d)), d in sub_D) for d in ring.D])
        target = -num[mask] / np.where(np.abs(den[mask]) > _TINY, den[mask], _TINY)
        coeffs = np.linalg.solve(_embedding(sub_D), target).real
        if not np.all(np.isfinite(coeffs)):
            return None
        return np.rint(coeffs)

    def candidates(self, pair: UmPair, radius: int = 1) -> List[Tuple[float, ElemKind, Tuple[int, ...]]]:
        """Entries on the l1 shell of the given radius around the rounded optimum and around 0.

        Radius 1 also carries the centre itself. Each entry comes with the
        float potential of the pair it leads to, and the list is sorted on it.
        """
        ring = self.ring
        (sa, sb), shift = _sigma(ring, pair.first, pair.second)
        V = _embedding(ring.D)
        offset = 2 * ring.N * shift * _LOG2
        shells = (0, 1) if radius == 1 else (radius,)
        scored: List[Tuple[float, ElemKind, Tuple[int, ...]]] = []
        for kind, num, den, den_elem in (
            (ElemKind.LOWER, sa, sb, pair.second),
            (ElemKind.UPPER, sb, sa, pair.first),
        ):
            centre = self._centre(num, den, den_elem)
            if centre is None:
                continue
            blocks = [centre[None, :] + l1_shell(len(centre), r) for r in shells]
            blocks.append(l1_shell(ring.N, radius).astype(float))
            for rows in blocks:
                if not len(rows):
                    continue
                T = rows @ V[:, :rows.shape[1]].T
                moved = num[None, :] + T * den[None, :]
                score = np.sum(np.log(np.abs(moved) ** 2 + np.abs(den)[None, :] ** 2 + 1e-300), axis=1) + offset
                for row, s in zip(rows, score):
                    entry = tuple(int(c) for c in row)
                    if any(entry):
                        scored.append((float(s), kind, entry))
        scored.sort(key=lambda item: item[0])
        return scored

    # -- driver -----------------------------------------------------------

    def _push(self, priority: float, node: _Node, kind: Optional[ElemKind], payload: Any) -> None:
        heapq.heappush(self._heap, (priority, next(self._seq), node, kind, payload))

    def _expand(self, node: _Node, radius: int, start: int) -> None:
        """Release the next CHUNK candidates of node and queue the request for more."""
        found = self.candidates(node.pair, radius)
        for score, kind, entry in found[start:start + CHUNK]:
            self._push(score, node, kind, entry)
        rest = start + CHUNK
        if rest < len(found):
            self._push(found[rest][0], node, None, (radius, rest))
        elif radius < MAX_RADIUS and l1_shell_size(self.ring.N, radius + 1) <= MAX_SHELL:
            self._push(node.score + RADIUS_PENALTY * radius, node, None, (radius + 1, 0))

    def run(self, pair: UmPair) -> List[ElemOp]:
        tail = self.finish(pair)
        if tail is not None:
            return tail
        seen = {(pair.first.rep.coeffs, pair.second.rep.coeffs)}
        self._expand(_Node(pair, None, None, potential(self.ring, pair)), 1, 0)
        while self._heap:
            score, _, node, kind, payload = heapq.heappop(self._heap)
            if kind is None:
                self._expand(node, *payload)
                continue
            self.budget.spend(1)
            op = ElemOp(kind, self.ring.element(payload))
            child = apply_op(node.pair, op)
            key = (child.first.rep.coeffs, child.second.rep.coeffs)
            if key in seen:
                continue
            seen.add(key)
            leaf = _Node(child, node, op, score)
            tail = self.finish(child)
            if tail is not None:
                log.debug(f"lattice descent over {self.ring!r} done after {len(seen)} states")
                return leaf.path() + tail
            self._expand(leaf, 1, 0)
        raise BudgetExceeded(self.budget.limit, self.budget.spent, f"lattice descent over {self.ring!r}")


def lattice_descent(ring: ODRing, pair: UmPair, budget: Budget) -> List[ElemOp]:
    """Ops taking a unimodular pair over O(D) to (1, 0).

    Raises:
        BudgetExceeded: if the budget runs out before the pair reaches a unit
    """
    return LatticeDescent(ring, budget).run(pair)
