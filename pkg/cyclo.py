"""
Cyclotomic integers Z[zeta_d] in the power basis modulo Phi_d.

Exact arithmetic lives on integer coefficient vectors. Norms and inverses go
through sympy (resultant and extended Euclid over QQ); numpy embeddings are
only used to order candidate remainders and never decide equality.
"""

from __future__ import annotations

import itertools
import logging
from fractions import Fraction
from functools import lru_cache
from math import comb, gcd
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np
from sympy import QQ, ZZ, Poly, Symbol

from errors import NoSmallRemainder, NotAUnit, RingMismatch, SpecError
from intpoly import IntPoly, cyclotomic, totient

log = logging.getLogger(__name__)

_X = Symbol("x")

# Norm-Euclidean conductors, closed under d <-> 2d for odd d, plus 13.
SUPPORTED_CONDUCTORS = frozenset({
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 18, 20, 22, 24, 26, 30,
})

# Full {-1,0,1}^n offset cube up to this many candidates, sparse offsets beyond.
_CUBE_LIMIT = 3 ** 10
_SPARSE_WEIGHT = 4
# Float-ranked candidates whose exact norms are compared, at least.
_EXACT_CHECKS = 16
# log-norm window around the float best; everything inside it is checked exactly
_TIE_TOL = 1e-6


class CycloInt:
    """An element of Z[zeta_d], stored as phi(d) power-basis coefficients."""

    __slots__ = ("d", "coeffs")

    def __init__(self, d: int, coeffs: Iterable[int] = ()):
        if d < 1:
            raise ValueError(f"conductor must be positive, got {d}")
        self.d = d
        phi = cyclotomic(d)
        n = len(phi.coeffs) - 1
        p = IntPoly(coeffs)
        if len(p.coeffs) > n:
            p = p % phi
        self.coeffs: Tuple[int, ...] = tuple(p.padded(n))

    @classmethod
    def from_poly(cls, d: int, p: IntPoly) -> "CycloInt":
        return cls(d, p.coeffs)

    @classmethod
    def from_int(cls, d: int, c: int) -> "CycloInt":
        return cls(d, (c,))

    @classmethod
    def zeta(cls, d: int) -> "CycloInt":
        return cls(d, (0, 1))

    @property
    def phi(self) -> int:
        return len(self.coeffs)

    def poly(self) -> IntPoly:
        return IntPoly(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def _coerce(self, other: Union["CycloInt", int]) -> "CycloInt":
        if isinstance(other, int):
            return CycloInt.from_int(self.d, other)
        if not isinstance(other, CycloInt):
            raise TypeError(f"cannot combine CycloInt with {type(other).__name__}")
        if other.d != self.d:
            raise RingMismatch(f"conductors differ: {self.d} vs {other.d}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return CycloInt(self.d, (a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloInt(self.d, (-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return CycloInt.from_poly(self.d, self.poly() * other.poly())

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return inverse(self) ** (-k)
        acc = CycloInt.from_int(self.d, 1)
        base = self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = CycloInt.from_int(self.d, other)
        return isinstance(other, CycloInt) and self.d == other.d and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(("CycloInt", self.d, self.coeffs))

    def __repr__(self) -> str:
        return f"CycloInt(d={self.d}, {list(self.coeffs)})"

    def to_json(self) -> Dict[str, Any]:
        return {"d": self.d, "coeffs": list(self.coeffs)}

    @classmethod
    def from_json(cls, obj: Dict[str, Any]) -> "CycloInt":
        try:
            return cls(int(obj["d"]), [int(c) for c in obj["coeffs"]])
        except (KeyError, TypeError, ValueError) as e:
            raise SpecError(f"bad cyclotomic integer {obj!r}: {e}")


# ---------------------------------------------------------------------------
# sympy bridges

@lru_cache(maxsize=None)
def _phi_poly(d: int, field: bool) -> Poly:
    return Poly(list(reversed(cyclotomic(d).coeffs)), _X, domain=QQ if field else ZZ)


def _to_poly(coeffs: Sequence[int], field: bool) -> Poly:
    body = list(reversed(coeffs)) or [0]
    return Poly(body, _X, domain=QQ if field else ZZ)


def _fraction_coeffs(p: Poly, n: int) -> List[Fraction]:
    desc = p.all_coeffs()
    out = [Fraction(int(c.p), int(c.q)) for c in reversed(desc)]
    return (out + [Fraction(0)] * n)[:n]


@lru_cache(maxsize=65536)
def _norm(d: int, coeffs: Tuple[int, ...]) -> int:
    nz = IntPoly(coeffs)
    if nz.is_zero():
        return 0
    n = len(coeffs)
    if len(nz.coeffs) == 1:
        return nz.coeffs[0] ** n
    if n == 2:
        # Phi_d = X^2 + p*X + q, so N(a + b*zeta) = a^2 - p*a*b + q*b^2
        q, p = cyclotomic(d).coeffs[:2]
        a, b = coeffs
        return a * a - p * a * b + q * b * b
    return int(_phi_poly(d, False).resultant(_to_poly(nz.coeffs, False)))


def norm(x: CycloInt) -> int:
    """Field norm of x, as Res(Phi_d, f) = product of f over the roots of Phi_d."""
    return _norm(x.d, x.coeffs)


def is_unit(x: CycloInt) -> bool:
    return abs(norm(x)) == 1


def _quadratic_quotient(a: CycloInt, b: CycloInt) -> List[Fraction]:
    """a / b for phi(d) <= 2, through the conjugate of b."""
    if b.phi == 1:
        return [Fraction(a.coeffs[0], b.coeffs[0])]
    p = cyclotomic(b.d).coeffs[1]
    conj = CycloInt(b.d, (b.coeffs[0] - p * b.coeffs[1], -b.coeffs[1]))
    n = norm(b)
    return [Fraction(c, n) for c in (a * conj).coeffs]


def _rational_inverse(x: CycloInt) -> List[Fraction]:
    if x.phi <= 2:
        return _quadratic_quotient(CycloInt.from_int(x.d, 1), x)
    inv = _to_poly(x.coeffs, True).invert(_phi_poly(x.d, True))
    return _fraction_coeffs(inv, x.phi)


def _rational_quotient(a: CycloInt, b: CycloInt) -> List[Fraction]:
    """Coefficients of a / b in Q(zeta_d)."""
    if b.phi <= 2:
        return _quadratic_quotient(a, b)
    inv = _to_poly(b.coeffs, True).invert(_phi_poly(b.d, True))
    q = (_to_poly(a.coeffs, True) * inv).rem(_phi_poly(b.d, True))
    return _fraction_coeffs(q, b.phi)


def inverse(x: CycloInt) -> CycloInt:
    if not is_unit(x):
        raise NotAUnit(f"{x!r} has norm {norm(x)}")
    coeffs = _rational_inverse(x)
    assert all(c.denominator == 1 for c in coeffs)
    return CycloInt(x.d, (int(c) for c in coeffs))


def exact_div(a: CycloInt, b: CycloInt) -> Optional[CycloInt]:
    """a / b when it lies in Z[zeta_d], else None."""
    if a.d != b.d:
        raise RingMismatch(f"conductors differ: {a.d} vs {b.d}")
    if b.is_zero():
        return None
    if a.is_zero():
        return CycloInt(a.d)
    q = _rational_quotient(a, b)
    if any(c.denominator != 1 for c in q):
        return None
    return CycloInt(a.d, (int(c) for c in q))


# ---------------------------------------------------------------------------
# embeddings and division

@lru_cache(maxsize=None)
def primitive_roots(d: int) -> np.ndarray:
    ks = [k for k in range(1, d + 1) if gcd(k, d) == 1]
    return np.exp(2j * np.pi * np.array(ks, dtype=float) / d)


@lru_cache(maxsize=None)
def _vandermonde(d: int) -> np.ndarray:
    roots = primitive_roots(d)
    return np.vander(roots, N=len(roots), increasing=True)


def scaled_floats(*vectors: Sequence[int]) -> Tuple[List[np.ndarray], int]:
    """Convert integer vectors to floats sharing one power-of-two scale.

    Returns the arrays and the shift s such that value ~= array * 2**s.
    """
    bits = max((abs(c).bit_length() for v in vectors for c in v), default=0)
    shift = max(0, bits - 1000)
    arrays = [np.array([float(c >> shift) if shift else float(c) for c in v], dtype=float)
              for v in vectors]
    return arrays, shift


def embed(x: CycloInt) -> List[complex]:
    """Values of x at the primitive d-th roots of unity, in increasing k."""
    (vec,), shift = scaled_floats(x.coeffs)
    values = _vandermonde(x.d) @ vec * (2.0 ** shift)
    return [complex(v) for v in values]


@lru_cache(maxsize=None)
def _offsets(n: int) -> np.ndarray:
    if 3 ** n <= _CUBE_LIMIT:
        rows = list(itertools.product((-1, 0, 1), repeat=n))
    else:
        rows = [tuple([0] * n)]
        for w in range(1, _SPARSE_WEIGHT + 1):
            for idx in itertools.combinations(range(n), w):
                for signs in itertools.product((-1, 1), repeat=w):
                    row = [0] * n
                    for i, s in zip(idx, signs):
                        row[i] = s
                    rows.append(tuple(row))
    return np.array(rows, dtype=np.int64)


@lru_cache(maxsize=None)
def l1_shell(n: int, r: int) -> np.ndarray:
    """All integer vectors of length n with l1 norm exactly r, one per row."""
    if n == 0:
        return np.zeros((1 if r == 0 else 0, 0), dtype=np.int64)
    rows = []
    for head in range(-r, r + 1):
        for tail in l1_shell(n - 1, r - abs(head)):
            rows.append((head, *tail))
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


def l1_shell_size(n: int, r: int) -> int:
    if r == 0:
        return 1
    return sum(2 ** k * comb(n, k) * comb(r - 1, k - 1) for k in range(1, min(n, r) + 1))


def _ranked_offsets(r0: CycloInt, b: CycloInt) -> Tuple[np.ndarray, np.ndarray]:
    """Offsets delta ordered by the advisory log-norm of r0 - delta*b, with those log-norms."""
    offsets = _offsets(r0.phi)
    V = _vandermonde(b.d)
    (fr, fb), _ = scaled_floats(r0.coeffs, b.coeffs)
    sigma_r, sigma_b = V @ fr, V @ fb
    sigma_delta = offsets.astype(float) @ V.T
    cand = sigma_r[None, :] - sigma_delta * sigma_b[None, :]
    lognorm = np.sum(np.log(np.maximum(np.abs(cand), 1e-300)), axis=1)
    order = np.argsort(lognorm, kind="stable")
    return offsets[order], lognorm[order]


def rounded_quotient(a: CycloInt, b: CycloInt) -> CycloInt:
    """Coordinate-wise rounding (ties to even) of a/b; no norm guarantee."""
    return CycloInt(a.d, (round(c) for c in _rational_quotient(a, b)))


def euclid_divmod(a: CycloInt, b: CycloInt, nearest: bool = False) -> Tuple[CycloInt, CycloInt]:
    """Division with remainder of smaller norm in Z[zeta_d].

    q starts as the coordinate-wise rounding (ties to even) of the exact
    quotient a/b; if that remainder is too large the {-1,0,1} neighbourhood
    of q is ranked by advisory norm. Exact norms are compared over the best
    _EXACT_CHECKS candidates and every candidate whose advisory log-norm is
    within _TIE_TOL of the first, so the remainder has the least norm in that
    neighbourhood. With nearest=True the neighbourhood
    is searched even when q already qualifies.

    Raises:
        NoSmallRemainder: if no candidate has |N(r)| < |N(b)|
    """
    if a.d != b.d:
        raise RingMismatch(f"conductors differ: {a.d} vs {b.d}")
    if b.is_zero():
        raise ZeroDivisionError("division by zero in Z[zeta_d]")
    nb = abs(norm(b))
    q0 = rounded_quotient(a, b)
    r0 = a - q0 * b
    n0 = abs(norm(r0))
    if n0 == 0 or (n0 < nb and not nearest):
        return q0, r0

    best: Optional[Tuple[int, CycloInt, CycloInt]] = None
    checked = 0
    offsets, lognorms = _ranked_offsets(r0, b)
    for delta, lognorm in zip(offsets, lognorms):
        if checked >= _EXACT_CHECKS and best is not None and lognorm > lognorms[0] + _TIE_TOL:
            break
        dq = CycloInt(a.d, (int(c) for c in delta))
        q, r = q0 + dq, r0 - dq * b
        nr = abs(norm(r))
        checked += 1
        if nr < nb and (best is None or nr < best[0]):
            best = (nr, q, r)
    if best is None:
        log.debug(f"no small remainder for d={a.d}: |N(b)|={nb}, tried {checked} offsets")
        raise NoSmallRemainder(f"no remainder below |N(b)|={nb} in Z[zeta_{a.d}]")
    return best[1], best[2]


def eval_cyclotomic_at(d: int, e: int) -> CycloInt:
    """Phi_d(zeta_e) as an element of Z[zeta_e]."""
    return CycloInt.from_poly(e, cyclotomic(d))


class CycloRing:
    """Z[zeta_d] as a ring object for the generic word machinery."""

    kind = "cyclo"

    def __init__(self, d: int):
        if d < 1:
            raise ValueError(f"conductor must be positive, got {d}")
        self.d = d
        self.phi = totient(d)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CycloRing) and other.d == self.d

    def __hash__(self) -> int:
        return hash(("CycloRing", self.d))

    def __repr__(self) -> str:
        return f"CycloRing({self.d})"

    def zero(self) -> CycloInt:
        return CycloInt(self.d)

    def one(self) -> CycloInt:
        return CycloInt.from_int(self.d, 1)

    def element(self, coeffs: Iterable[int]) -> CycloInt:
        return CycloInt(self.d, coeffs)

    def contains(self, x: Any) -> bool:
        return isinstance(x, CycloInt) and x.d == self.d

    def is_unit(self, x: CycloInt) -> bool:
        return is_unit(x)

    def inverse(self, x: CycloInt) -> CycloInt:
        return inverse(x)

    def random_element(self, rng: np.random.Generator, bound: int) -> CycloInt:
        return CycloInt(self.d, (int(c) for c in rng.integers(-bound, bound + 1, size=self.phi)))

    def spec(self) -> Dict[str, Any]:
        return {"type": "cyclo", "d": self.d}

    def element_to_json(self, x: CycloInt) -> Dict[str, Any]:
        return x.to_json()

    def element_from_json(self, obj: Any) -> CycloInt:
        if isinstance(obj, int):
            return CycloInt.from_int(self.d, obj)
        if isinstance(obj, list):
            return CycloInt(self.d, [int(c) for c in obj])
        x = CycloInt.from_json({"d": self.d, **obj}) if isinstance(obj, dict) else None
        if x is None or x.d != self.d:
            raise SpecError(f"element {obj!r} does not belong to Z[zeta_{self.d}]")
        return x
