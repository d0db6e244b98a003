"""
Exact polynomials over Z, cyclotomic polynomials and divisor helpers.

Coefficients are stored little-endian (index i is the coefficient of X^i) with
no trailing zeros, so the zero polynomial is the empty tuple.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple, Union

from sympy import divisors as _sympy_divisors

from errors import NotMonic

NEG_INF_DEGREE = -math.inf


def _strip(coeffs: Iterable[int]) -> Tuple[int, ...]:
    out = [int(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


class IntPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        self.coeffs: Tuple[int, ...] = _strip(coeffs)

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def x(cls) -> "IntPoly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> Union[int, float]:
        """len(coeffs) - 1, or -inf for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF_DEGREE

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def padded(self, n: int) -> List[int]:
        """Coefficient list of exactly n entries (the polynomial must fit)."""
        if len(self.coeffs) > n:
            raise ValueError(f"polynomial of degree {self.degree} does not fit in {n} coefficients")
        return list(self.coeffs) + [0] * (n - len(self.coeffs))

    def __add__(self, other: "IntPoly") -> "IntPoly":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly(self.coefficient(i) + other.coefficient(i) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "IntPoly":
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: "IntPoly") -> "IntPoly":
        return _coerce(other) - self

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __call__(self, x: int) -> int:
        """Horner evaluation at an integer."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod_monic(self, b: "IntPoly") -> Tuple["IntPoly", "IntPoly"]:
        """Return (q, r) with self = q*b + r and deg r < deg b.

        Raises:
            NotMonic: if b is zero or its leading coefficient is not 1
        """
        if b.is_zero() or not b.is_monic():
            raise NotMonic(f"divisor {b!r} is not monic")
        r = list(self.coeffs)
        db = len(b.coeffs) - 1
        if len(r) - 1 < db:
            return IntPoly(), IntPoly(r)
        q = [0] * (len(r) - db)
        for k in range(len(r) - 1, db - 1, -1):
            c = r[k]
            if c == 0:
                continue
            q[k - db] = c
            for j, bc in enumerate(b.coeffs):
                r[k - db + j] -= c * bc
        return IntPoly(q), IntPoly(r[:db])

    def __mod__(self, b: "IntPoly") -> "IntPoly":
        return self.divmod_monic(b)[1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = IntPoly.constant(other)
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("IntPoly", self.coeffs))

    def __repr__(self) -> str:
        return f"IntPoly({list(self.coeffs)})"

    def to_json(self) -> List[int]:
        return list(self.coeffs)

    @classmethod
    def from_json(cls, obj: Sequence[int]) -> "IntPoly":
        return cls(obj)


def _coerce(value: Union[IntPoly, int]) -> IntPoly:
    if isinstance(value, IntPoly):
        return value
    if isinstance(value, int):
        return IntPoly.constant(value)
    return NotImplemented


def product(polys: Iterable[IntPoly]) -> IntPoly:
    acc = IntPoly.constant(1)
    for p in polys:
        acc = acc * p
    return acc


@lru_cache(maxsize=None)
def cyclotomic(d: int) -> IntPoly:
    """Phi_d by exact division of X^d - 1 by the Phi_e with e | d, e < d."""
    if d < 1:
        raise ValueError(f"cyclotomic index must be positive, got {d}")
    x_d = IntPoly.monomial(d) - IntPoly.constant(1)
    q, r = x_d.divmod_monic(product(cyclotomic(e) for e in divisors(d) if e < d))
    assert r.is_zero()
    return q


def divisors(n: int) -> List[int]:
    if n < 1:
        raise ValueError(f"divisors needs a positive integer, got {n}")
    return [int(k) for k in _sympy_divisors(n)]


def totient(d: int) -> int:
    return len(cyclotomic(d).coeffs) - 1
