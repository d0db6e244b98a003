import numpy as np
import pytest

from cyclo import CycloInt
from errors import NotAUnit, RingMismatch
from ge_types import CaseKind
from intpoly import IntPoly
from odring import ODRing, classify_eta, group_ring, nonempty_subsets, od_ring, ramified_prime


class TestODRing:

    def setup_method(self):
        self.ring = od_ring((1, 2))

    def test_degree(self):
        assert self.ring.N == 2
        assert od_ring((1, 2, 3, 4, 6)).N == 8
        assert group_ring(12).D == (1, 2, 3, 4, 6, 12)

    def test_shared_instance(self):
        assert od_ring([2, 1, 2]) is self.ring

    def test_multiply(self):
        x = self.ring.element([2, 1])
        assert (x * x).rep == IntPoly([5, 4])

    def test_projections(self):
        x = self.ring.element([2, 1])
        assert self.ring.project(x, 1) == 3
        assert self.ring.project(x, 2) == 1

    def test_project_is_a_ring_map(self):
        ring = od_ring((1, 2, 3, 4, 6))
        rng = np.random.Generator(np.random.PCG64(17))
        for _ in range(30):
            x, y = ring.random_element(rng, 4), ring.random_element(rng, 4)
            for d in ring.D:
                assert ring.project(x * y, d) == ring.project(x, d) * ring.project(y, d)
                assert ring.project(x + y, d) == ring.project(x, d) + ring.project(y, d)
            assert ring.project(ring.one(), 3) == 1

    def test_project_sub_and_lift(self):
        ring = od_ring((1, 2, 4))
        x = ring.element([1, 2, 3])
        sub = ring.project_sub(x, (1, 2))
        assert sub.ring == od_ring((1, 2))
        assert ring.project(x, 1) == od_ring((1, 2)).project(sub, 1)
        lifted = ring.lift_from_sub((1, 2), sub)
        assert ring.project_sub(lifted, (1, 2)) == sub

    def test_lift_from_wrong_ring(self):
        with pytest.raises(RingMismatch):
            self.ring.lift_from_sub((1,), self.ring.one())

    def test_bad_subset(self):
        with pytest.raises(ValueError):
            self.ring.project_sub(self.ring.one(), (3,))

    def test_empty_D(self):
        with pytest.raises(ValueError):
            ODRing(())


class TestEtaAndKernel:

    def test_eta_examples(self):
        ring = od_ring((1, 2))
        assert ring.eta(1) == 2
        assert ring.eta(2) == -2
        assert od_ring((1, 4)).eta(4) == CycloInt(4, (-1, 1))

    def test_kernel_lift(self):
        ring = od_ring((1, 2, 3, 4, 6))
        for e in ring.D:
            y = CycloInt(e, (1, 2))
            z = ring.kernel_lift(e, y)
            assert ring.project(z, e) == ring.eta(e) * y
            assert ring.project_sub(z, [d for d in ring.D if d != e]).is_zero()

    def test_kernel_lift_wrong_conductor(self):
        with pytest.raises(RingMismatch):
            od_ring((1, 2)).kernel_lift(1, CycloInt.from_int(2, 1))

    def test_eta_needs_two_components(self):
        with pytest.raises(ValueError):
            od_ring((3,)).eta(3)


class TestUnimodular:

    def setup_method(self):
        self.ring = od_ring((1, 2))

    def test_certificate(self):
        a, b = self.ring.element([2, 1]), self.ring.element([1, 1])
        ok, cert = self.ring.is_unimodular(a, b)
        assert ok
        x, y = cert
        assert a * x + b * y == 1

    def test_not_unimodular(self):
        ok, cert = self.ring.is_unimodular(self.ring.element([1, -1]), self.ring.element([1, 1]))
        assert not ok
        assert cert is None

    def test_units(self):
        X = self.ring.x()
        assert self.ring.is_unit(X)
        assert self.ring.inverse(X) * X == 1
        assert not self.ring.is_unit(self.ring.element([1, 1]))
        with pytest.raises(NotAUnit):
            self.ring.inverse(self.ring.element(2))


class TestCases:

    def test_ramified_prime(self):
        assert ramified_prime(4) == CycloInt(4, (1, -1))
        assert ramified_prime(6) == CycloInt(6, (1, 1))

    def test_classify_eta(self):
        assert classify_eta(1, CycloInt.from_int(1, 1)).kind is CaseKind.UNIT
        assert classify_eta(2, CycloInt.from_int(2, -3)).kind is CaseKind.PLUS_MINUS_3
        assert classify_eta(3, CycloInt(3, (0, -2))).kind is CaseKind.TWO_IDEAL
        tag = classify_eta(4, CycloInt(4, (-2, 0)))
        assert tag.kind is CaseKind.ONE_MINUS_ZETA_POW and tag.k == 2
        assert tag.label() == "OneMinusZetaPow(2)"
        assert classify_eta(1, CycloInt.from_int(1, 6)).kind is CaseKind.FALLBACK

    def test_euclidean_pair_attempt(self):
        ring = od_ring((1, 5))
        assert ring.classify_case(5).kind is CaseKind.EUCLIDEAN_PAIR_ATTEMPT

    def test_select_pivot(self):
        assert od_ring((1, 2, 3, 4, 6)).select_pivot() == 4
        assert od_ring((1, 2, 3, 6)).select_pivot() == 6
        assert od_ring((2, 3, 6)).select_pivot() == 3
        assert od_ring((1, 2)).select_pivot() == 2
        assert group_ring(10).select_pivot() == 10

    def test_subsets_order(self):
        subs = nonempty_subsets((3, 1, 2))
        assert subs == [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]


def test_json():
    ring = od_ring((1, 2))
    x = ring.element([2, 1])
    assert ring.element_to_json(x) == {"rep": [2, 1]}
    assert ring.element_from_json({"rep": [2, 1]}) == x
    assert ring.element_from_json(3) == ring.element(3)
    assert ring.spec() == {"type": "od", "D": [1, 2]}
