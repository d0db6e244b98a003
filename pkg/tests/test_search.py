import pytest

from cyclo import CycloInt
from errors import BudgetExceeded
from ge2 import Budget, DeepeningSearch, UmPair, apply_to_pair, constrained_descent, lattice_descent, potential, random_um_pair
from ge2.descent import EMove
from ge2.lattice import LatticeDescent
from ge_types import ElemKind
from odring import od_ring


class TestBudget:

    def test_spend(self):
        budget = Budget(3)
        budget.spend(3)
        assert budget.remaining == 0
        with pytest.raises(BudgetExceeded):
            budget.spend()

    def test_carve_and_settle(self):
        budget = Budget(100)
        budget.spend(40)
        child = budget.carve(1000, "child")
        assert child.limit == 60
        child.spend(10)
        budget.settle(child)
        assert budget.spent == 50

    def test_positive_limit(self):
        with pytest.raises(ValueError):
            Budget(0)


class TestDeepeningSearch:

    def successors(self, state, depth):
        yield "+1", state + 1
        yield "*2", state * 2

    def test_shortest_path(self):
        search = DeepeningSearch(self.successors, lambda s: s == 10, lambda s: s, Budget(10000))
        moves, state = search.run(1)
        assert state == 10
        assert len(moves) == 4

    def test_start_is_goal(self):
        search = DeepeningSearch(self.successors, lambda s: s == 1, lambda s: s, Budget(10))
        assert search.run(1) == ([], 1)

    def test_depth_limit(self):
        search = DeepeningSearch(self.successors, lambda s: s == 10 ** 6, lambda s: s, Budget(10 ** 6), max_depth=3)
        assert search.run(1) is None

    def test_budget(self):
        search = DeepeningSearch(self.successors, lambda s: s == 10 ** 6, lambda s: s, Budget(20), max_depth=30)
        with pytest.raises(BudgetExceeded):
            search.run(1)

    def test_moves_widen_with_the_round(self):
        def widening(state, round_):
            for k in range(1, round_ + 1):
                yield f"+{k}", state + k

        search = DeepeningSearch(widening, lambda s: s == 9, lambda s: s, Budget(10000))
        assert search.run(0) == (["+3", "+3", "+3"], 9)

    def test_revisits_with_more_depth_left(self):
        def moves(state, round_):
            yield "+1", state + 1
            yield "+2", state + 2

        search = DeepeningSearch(moves, lambda s: s == 6, lambda s: s, Budget(10000))
        path, state = search.run(0)
        assert state == 6 and len(path) == 3


def replay(eta, c, d, moves):
    for move in moves:
        if move.kind is ElemKind.LOWER:
            c = c + move.value * d
        else:
            d = d + eta * move.value * c
    return c, d


class TestConstrainedDescent:

    def test_integers(self):
        eta = CycloInt.from_int(1, -2)
        c, d = CycloInt.from_int(1, 7), CycloInt.from_int(1, 10)
        moves = constrained_descent(eta, c, d, Budget(1000))
        assert replay(eta, c, d, moves) == (1, 0)

    def test_minus_one(self):
        eta = CycloInt.from_int(1, 2)
        moves = constrained_descent(eta, CycloInt.from_int(1, -1), CycloInt.from_int(1, 0), Budget(100))
        assert len(moves) == 3
        assert replay(eta, CycloInt.from_int(1, -1), CycloInt.from_int(1, 0), moves) == (1, 0)

    def test_gaussian_unit_eta(self):
        eta = CycloInt(4, (0, 1))
        c, d = CycloInt(4, (3, 2)), CycloInt(4, (1, 1))
        moves = constrained_descent(eta, c, d, Budget(10000))
        assert all(isinstance(m, EMove) for m in moves)
        assert replay(eta, c, d, moves) == (1, 0)

    def test_eisenstein_fallback_eta(self):
        eta = CycloInt(6, (-2, -2))
        c, d = CycloInt(6, (1, -6)), eta * CycloInt(6, (1, 1))
        moves = constrained_descent(eta, c, d, Budget(10000))
        assert replay(eta, c, d, moves) == (1, 0)

    def test_eisenstein_one_step_starts(self):
        eta = CycloInt(6, (-2, -2))
        for s in ([1, 0], [0, 1]):
            for t in ([1, 0], [0, 1]):
                c, d = CycloInt.from_int(6, 1), eta * CycloInt(6, s)
                c = c + CycloInt(6, t) * d
                d = d + eta * CycloInt(6, s) * c
                moves = constrained_descent(eta, c, d, Budget(10 ** 5))
                assert replay(eta, c, d, moves) == (1, 0)


class TestLatticeDescent:

    def test_reaches_unit_pair(self):
        ring = od_ring((1, 2, 3, 6))
        pair = random_um_pair(ring, 3, 4, 1)
        ops = lattice_descent(ring, pair, Budget(10 ** 6))
        assert apply_to_pair(pair, ops) == UmPair.unit(ring)

    def test_candidates_on_wider_shells(self):
        ring = od_ring((1, 2, 3, 6))
        pair = random_um_pair(ring, 5, 6, 1)
        search = LatticeDescent(ring, Budget(10))
        near, far = search.candidates(pair, 1), search.candidates(pair, 2)
        assert near and far
        assert [s for s, _, _ in far] == sorted(s for s, _, _ in far)
        assert all(any(entry) for _, _, entry in near + far)

    def test_finish_on_unit_first_entry(self):
        ring = od_ring((1, 2, 3, 6))
        pair = UmPair(ring.element([-1]), ring.element([2, 1]))
        ops = LatticeDescent(ring, Budget(10)).finish(pair)
        assert apply_to_pair(pair, ops) == UmPair.unit(ring)

    def test_several_seeds(self):
        ring = od_ring((1, 2, 3, 6))
        for seed in range(4):
            pair = random_um_pair(ring, seed, 4, 1)
            ops = lattice_descent(ring, pair, Budget(10 ** 6))
            assert apply_to_pair(pair, ops) == UmPair.unit(ring)

    def test_potential_vanishes_at_unit_pair(self):
        ring = od_ring((1, 2, 3, 4, 6))
        assert abs(potential(ring, UmPair.unit(ring))) < 1e-9
        pair = UmPair(ring.element([3, 1]), ring.element([1]))
        assert potential(ring, pair) > 0
