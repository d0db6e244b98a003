import pytest

from errors import NotInvertible, NotMonic, NotUnimodular, SpecError, TooLarge
from finitering import (
    FiniteRing,
    det_n,
    e2_orbit,
    enumerate_um2,
    evaluate_n,
    factor_gln_finite,
    identity_n,
    random_gln,
    reduce_pair_finite,
    sr1_pivot,
)
from ge2 import Mat2, UmPair, evaluate, factor_sl2, verify


def matrix(ring, rows):
    return [[ring.element(v) for v in row] for row in rows]


class TestFiniteRing:

    def setup_method(self):
        # F_2[X]/(X^2 + 1), a local ring with (1 + X)^2 = 0
        self.ring = FiniteRing([1, 0, 1], 2)

    def test_nilpotent(self):
        y = self.ring.element([1, 1])
        assert y * y == 0
        assert not self.ring.is_unit(y)
        assert self.ring.is_unit(self.ring.element([0, 1]))

    def test_index_order(self):
        assert [list(x.coeffs) for x in self.ring.elements()] == [[0, 0], [1, 0], [0, 1], [1, 1]]
        for idx in range(self.ring.size):
            assert self.ring.index_of(self.ring.from_index(idx)) == idx

    def test_integers_mod_four(self):
        Z4 = FiniteRing([0, 1], 4)
        three = Z4.element(3)
        assert Z4.inverse(three) == three
        assert not Z4.is_unit(Z4.element(2))

    def test_bad_specs(self):
        with pytest.raises(NotMonic):
            FiniteRing([1, 2], 3)
        with pytest.raises(SpecError):
            FiniteRing([0, 1], 1)
        with pytest.raises(SpecError):
            FiniteRing([5], 3)

    def test_json(self):
        x = self.ring.element([1, 1])
        assert self.ring.element_to_json(x) == {"rep": [1, 1]}
        assert self.ring.element_from_json({"rep": [3, 1]}) == x
        assert self.ring.spec() == {"type": "finite", "f": [1, 0, 1], "m": 2}


class TestPivot:

    def test_examples(self):
        ring = FiniteRing([1, 0, 1], 2)
        assert sr1_pivot(ring.element([1, 1]), ring.element([0, 1])) == 1
        Z4 = FiniteRing([0, 1], 4)
        assert sr1_pivot(Z4.element(2), Z4.element(1)) == 1
        assert sr1_pivot(Z4.element(3), Z4.element(2)) == 0

    def test_not_unimodular(self):
        Z4 = FiniteRing([0, 1], 4)
        with pytest.raises(NotUnimodular):
            sr1_pivot(Z4.element(2), Z4.element(2))

    def test_reduce_every_pair(self):
        ring = FiniteRing([1, 0, 1], 3)
        for pair in enumerate_um2(ring):
            assert verify(reduce_pair_finite(ring, pair), pair, UmPair.unit(ring))


class TestOracles:

    def test_um2_sizes(self):
        assert len(enumerate_um2(FiniteRing([0, 1], 2))) == 3
        assert len(enumerate_um2(FiniteRing([0, 1], 4))) == 12
        assert len(enumerate_um2(FiniteRing([1, 0, 1], 2))) == 12

    @pytest.mark.parametrize("f, m", [([0, 1], 2), ([0, 1], 3), ([0, 1], 4), ([0, 1], 6), ([1, 0, 1], 2), ([1, 1, 1], 2), ([0, 0, 1], 3)])
    def test_orbit_is_all_of_um2(self, f, m):
        ring = FiniteRing(f, m)
        assert e2_orbit(ring, UmPair.unit(ring)) == enumerate_um2(ring)

    def test_zero_pair_orbit(self):
        ring = FiniteRing([0, 1], 4)
        zero = UmPair(ring.zero(), ring.zero())
        assert e2_orbit(ring, zero) == {zero}

    def test_guard(self):
        ring = FiniteRing([0, 1], 5000)
        with pytest.raises(TooLarge):
            enumerate_um2(ring)
        with pytest.raises(TooLarge):
            e2_orbit(ring, UmPair.unit(ring))


class TestFactorGLn:

    def test_identity(self):
        ring = FiniteRing([0, 1], 4)
        diag, word = factor_gln_finite(ring, identity_n(ring, 3))
        assert word == []
        assert diag == [ring.one()] * 3

    def test_scalar_unit(self):
        ring = FiniteRing([0, 1], 4)
        M = matrix(ring, [[3, 0], [0, 3]])
        diag, word = factor_gln_finite(ring, M)
        assert diag == [ring.one(), ring.one()]
        assert evaluate_n(ring, 2, word) == M

    def test_determinant_kept_in_diag(self):
        ring = FiniteRing([1, 0, 1], 3)
        M = matrix(ring, [[2, 0], [0, 1]])
        diag, word = factor_gln_finite(ring, M)
        assert diag[0] == det_n(ring, M) == 2
        assert diag[1] == 1

    def test_random_round_trip(self):
        ring = FiniteRing([1, 1, 1], 2)
        for seed in range(5):
            M = random_gln(ring, 3, seed, 12)
            diag, word = factor_gln_finite(ring, M)
            assert diag == [ring.one()] * 3
            assert evaluate_n(ring, 3, word) == M

    def test_not_invertible(self):
        ring = FiniteRing([0, 1], 4)
        with pytest.raises(NotInvertible):
            factor_gln_finite(ring, matrix(ring, [[2, 0], [0, 1]]))


def test_factor_sl2_over_finite_ring():
    ring = FiniteRing([0, 1], 4)
    M = Mat2(ring.element(3), ring.element(2), ring.element(0), ring.element(3))
    assert evaluate(factor_sl2(ring, M)) == M
