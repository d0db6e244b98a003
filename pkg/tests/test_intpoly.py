import pytest
from sympy import totient as sympy_totient

from errors import NotMonic
from intpoly import IntPoly, NEG_INF_DEGREE, cyclotomic, divisors, product, totient


def test_arith_examples():
    assert IntPoly([1]) + IntPoly([0, 1]) == IntPoly([1, 1])
    assert IntPoly([-1, 1]) * IntPoly([1, 1]) == IntPoly([-1, 0, 1])
    assert IntPoly([-1, 0, 1])(2) == 3


def test_canonical_form():
    assert IntPoly([3, 0, 0]).coeffs == (3,)
    assert IntPoly([0, 0]).coeffs == ()
    assert IntPoly().degree == NEG_INF_DEGREE
    assert (IntPoly([1, 1]) - IntPoly([1, 1])).is_zero()


def test_divmod_monic_examples():
    assert IntPoly([-1, 0, 1]).divmod_monic(IntPoly([-1, 1])) == (IntPoly([1, 1]), IntPoly())
    assert IntPoly([0, 0, 0, 1]).divmod_monic(IntPoly([1, 0, 1])) == (IntPoly([0, 1]), IntPoly([0, -1]))
    assert IntPoly([5]).divmod_monic(IntPoly([-1, 1])) == (IntPoly(), IntPoly([5]))


def test_divmod_rejects_non_monic():
    with pytest.raises(NotMonic):
        IntPoly([1, 2, 3]).divmod_monic(IntPoly([1, 2]))


def test_divmod_identity_on_seeded_inputs():
    import numpy as np
    rng = np.random.Generator(np.random.PCG64(11))
    for _ in range(200):
        a = IntPoly(int(c) for c in rng.integers(-20, 21, size=int(rng.integers(0, 9))))
        b = IntPoly([int(c) for c in rng.integers(-5, 6, size=int(rng.integers(0, 4)))] + [1])
        q, r = a.divmod_monic(b)
        assert q * b + r == a
        assert r.degree < b.degree


def test_cyclotomic_examples():
    assert cyclotomic(1) == IntPoly([-1, 1])
    assert cyclotomic(6) == IntPoly([1, -1, 1])
    assert cyclotomic(12) == IntPoly([1, 0, -1, 0, 1])


def test_cyclotomic_products_and_degrees():
    for n in range(1, 65):
        assert product(cyclotomic(d) for d in divisors(n)) == IntPoly.monomial(n) - 1
        assert totient(n) == int(sympy_totient(n))
        assert cyclotomic(n).is_monic()


def test_divisors():
    assert divisors(1) == [1]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert divisors(24) == [1, 2, 3, 4, 6, 8, 12, 24]


def test_json():
    p = IntPoly([-1, 0, 1])
    assert p.to_json() == [-1, 0, 1]
    assert IntPoly.from_json([-1, 0, 1]) == p
