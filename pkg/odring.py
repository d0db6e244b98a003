"""
The rings O(D) = Z[X] / prod_{d in D} Phi_d.

An element is its canonical remainder modulo the product of the cyclotomic
polynomials. Projections to Z[zeta_d] and to sub-rings O(D') reduce that
remainder further. The module also holds eta_e, kernel lifts, the HNF
unimodularity certificate, and the case classification driving reduction.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

import cyclo
from cyclo import CycloInt, SUPPORTED_CONDUCTORS, eval_cyclotomic_at, exact_div
from errors import NotAUnit, RingMismatch, SpecError
from ge_types import CaseKind
from intpoly import IntPoly, cyclotomic, divisors, product
from linalg.hnf import solve

log = logging.getLogger(__name__)

SMALL_CONDUCTORS = (1, 2, 3, 4, 6)


class ODRing:
    """O(D) for a nonempty set D of positive integers."""

    kind = "od"

    def __init__(self, D: Iterable[int]):
        D = tuple(sorted(set(int(d) for d in D)))
        if not D or D[0] < 1:
            raise ValueError(f"D must be a nonempty set of positive integers, got {D}")
        self.D: Tuple[int, ...] = D
        self.modulus: IntPoly = product(cyclotomic(d) for d in D)
        self.N: int = len(self.modulus.coeffs) - 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ODRing) and other.D == self.D

    def __hash__(self) -> int:
        return hash(("ODRing", self.D))

    def __repr__(self) -> str:
        return f"ODRing({list(self.D)})"

    # -- elements ---------------------------------------------------------

    def element(self, rep: Union[IntPoly, Iterable[int], int]) -> "ODElement":
        if isinstance(rep, int):
            rep = IntPoly.constant(rep)
        elif not isinstance(rep, IntPoly):
            rep = IntPoly(rep)
        return ODElement(self, rep % self.modulus)

    def zero(self) -> "ODElement":
        return ODElement(self, IntPoly())

    def one(self) -> "ODElement":
        return self.element(1)

    def x(self) -> "ODElement":
        return self.element(IntPoly.x())

    def contains(self, x: Any) -> bool:
        return isinstance(x, ODElement) and x.ring == self

    def lift_cyclo(self, y: CycloInt) -> "ODElement":
        """Any element of O(D) whose component at y.d is y."""
        return self.element(y.poly())

    def random_element(self, rng: np.random.Generator, bound: int) -> "ODElement":
        return self.element([int(c) for c in rng.integers(-bound, bound + 1, size=self.N)])

    # -- projections ------------------------------------------------------

    def project(self, x: "ODElement", d: int) -> CycloInt:
        if d not in self.D:
            raise ValueError(f"{d} is not in D={list(self.D)}")
        self._check(x)
        return CycloInt.from_poly(d, x.rep)

    def project_sub(self, x: "ODElement", sub_D: Iterable[int]) -> "ODElement":
        sub = od_ring(self._subset(sub_D))
        self._check(x)
        return sub.element(x.rep)

    def lift_from_sub(self, sub_D: Iterable[int], x: "ODElement") -> "ODElement":
        """The canonical section O(D') -> O(D): reuse the representative."""
        sub = od_ring(self._subset(sub_D))
        if x.ring != sub:
            raise RingMismatch(f"{x!r} is not an element of {sub!r}")
        return ODElement(self, x.rep)

    def without(self, e: int) -> "ODRing":
        return od_ring(d for d in self.D if d != e)

    def _subset(self, sub_D: Iterable[int]) -> Tuple[int, ...]:
        sub = tuple(sorted(set(sub_D)))
        if not sub or not set(sub) <= set(self.D):
            raise ValueError(f"{list(sub)} is not a nonempty subset of D={list(self.D)}")
        return sub

    def _check(self, x: "ODElement") -> None:
        if not isinstance(x, ODElement) or x.ring != self:
            raise RingMismatch(f"{x!r} is not an element of {self!r}")

    # -- eta and kernel ---------------------------------------------------

    def eta(self, e: int) -> CycloInt:
        """prod of Phi_d(zeta_e) over d in D \\ {e}."""
        self._require_pair(e)
        acc = CycloInt.from_int(e, 1)
        for d in self.D:
            if d != e:
                acc = acc * eval_cyclotomic_at(d, e)
        return acc

    def kernel_lift(self, e: int, y: CycloInt) -> "ODElement":
        """z with project_sub(z, D \\ {e}) = 0 and project(z, e) = eta_e * y."""
        self._require_pair(e)
        if y.d != e:
            raise RingMismatch(f"kernel lift at {e} needs an element of Z[zeta_{e}], got conductor {y.d}")
        cofactor = product(cyclotomic(d) for d in self.D if d != e)
        return self.element(y.poly() * cofactor)

    def _require_pair(self, e: int) -> None:
        if len(self.D) < 2:
            raise ValueError(f"needs |D| >= 2, got D={list(self.D)}")
        if e not in self.D:
            raise ValueError(f"{e} is not in D={list(self.D)}")

    # -- linear algebra ---------------------------------------------------

    def mult_matrix(self, x: "ODElement") -> List[List[int]]:
        """N x N matrix of multiplication by x in the power basis."""
        cols = []
        basis_image = x.rep
        for _ in range(self.N):
            cols.append(basis_image.padded(self.N))
            basis_image = (basis_image * IntPoly.x()) % self.modulus
        return [[cols[j][i] for j in range(self.N)] for i in range(self.N)]

    def is_unimodular(self, a: "ODElement", b: "ODElement") -> Tuple[bool, Optional[Tuple["ODElement", "ODElement"]]]:
        """Decide aO(D) + bO(D) = O(D); on success return (x, y) with ax + by = 1."""
        self._check(a)
        self._check(b)
        Ma, Mb = self.mult_matrix(a), self.mult_matrix(b)
        stacked = [Ma[i] + Mb[i] for i in range(self.N)]
        e1 = [1] + [0] * (self.N - 1)
        z = solve(stacked, e1)
        if z is None:
            return False, None
        x, y = self.element(z[:self.N]), self.element(z[self.N:])
        assert a * x + b * y == self.one()
        return True, (x, y)

    def is_unit(self, x: "ODElement") -> bool:
        self._check(x)
        return all(cyclo.is_unit(self.project(x, d)) for d in self.D)

    def inverse(self, x: "ODElement") -> "ODElement":
        if not self.is_unit(x):
            raise NotAUnit(f"{x!r} is not a unit of {self!r}")
        z = solve(self.mult_matrix(x), [1] + [0] * (self.N - 1))
        assert z is not None
        inv = self.element(z)
        assert inv * x == self.one()
        return inv

    # -- case analysis ----------------------------------------------------

    def classify_case(self, e: int) -> "CaseTag":
        return classify_eta(e, self.eta(e))

    def select_pivot(self) -> int:
        """The component eliminated last when reducing over O(D).

        The largest member outside {1,2,3,4,6}; otherwise the largest member
        whose case tag is not Fallback; otherwise max(D).
        """
        if len(self.D) < 2:
            return self.D[0]
        outside = [d for d in self.D if d not in SMALL_CONDUCTORS]
        if outside:
            return max(outside)
        for e in sorted(self.D, reverse=True):
            if self.classify_case(e).kind is not CaseKind.FALLBACK:
                return e
        return max(self.D)

    # -- JSON -------------------------------------------------------------

    def spec(self) -> Dict[str, Any]:
        return {"type": "od", "D": list(self.D)}

    def element_to_json(self, x: "ODElement") -> Dict[str, Any]:
        return {"rep": list(x.rep.coeffs)}

    def element_from_json(self, obj: Any) -> "ODElement":
        if isinstance(obj, int):
            return self.element(obj)
        if isinstance(obj, list):
            return self.element([int(c) for c in obj])
        if isinstance(obj, dict) and "rep" in obj:
            try:
                return self.element([int(c) for c in obj["rep"]])
            except (TypeError, ValueError) as e:
                raise SpecError(f"bad representative {obj['rep']!r}: {e}")
        raise SpecError(f"cannot read an element of {self!r} from {obj!r}")


@lru_cache(maxsize=None)
def _od_ring(D: Tuple[int, ...]) -> ODRing:
    return ODRing(D)


def od_ring(D: Iterable[int]) -> ODRing:
    """Shared ODRing instance for D."""
    return _od_ring(tuple(sorted(set(D))))


def group_ring(n: int) -> ODRing:
    """Z[C_n] = O(divisors(n))."""
    return od_ring(divisors(n))


class ODElement:
    __slots__ = ("ring", "rep")

    def __init__(self, ring: ODRing, rep: IntPoly):
        self.ring = ring
        self.rep = rep

    def _coerce(self, other: Union["ODElement", int]) -> "ODElement":
        if isinstance(other, int):
            return self.ring.element(other)
        if not isinstance(other, ODElement):
            raise TypeError(f"cannot combine ODElement with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        return ODElement(self.ring, self.rep + other.rep)

    __radd__ = __add__

    def __neg__(self):
        return ODElement(self.ring, -self.rep)

    def __sub__(self, other):
        other = self._coerce(other)
        return ODElement(self.ring, self.rep - other.rep)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return ODElement(self.ring, (self.rep * other.rep) % self.ring.modulus)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = self.ring.element(other)
        return isinstance(other, ODElement) and self.ring == other.ring and self.rep == other.rep

    def __hash__(self) -> int:
        return hash((self.ring.D, self.rep.coeffs))

    def __repr__(self) -> str:
        return f"ODElement(D={list(self.ring.D)}, rep={list(self.rep.coeffs)})"


# ---------------------------------------------------------------------------
# case tags

@dataclass(frozen=True)
class CaseTag:
    kind: CaseKind
    eta: CycloInt
    k: Optional[int] = None

    def label(self) -> str:
        if self.kind is CaseKind.ONE_MINUS_ZETA_POW:
            return f"{self.kind.value}({self.k})"
        return self.kind.value

    def to_json(self) -> Dict[str, Any]:
        return {"tag": self.kind.value, "k": self.k, "eta": self.eta.to_json()}


def ramified_prime(e: int) -> CycloInt:
    """Generator of the prime above e's prime divisor used by OneMinusZetaPow.

    1 - zeta_e for e in {3, 4}. For e = 6, 1 - zeta_6 is a unit, so the
    ramified prime above 3 is taken as 1 + zeta_6 (an associate of 1 - zeta_3).
    """
    if e == 6:
        return CycloInt(6, (1, 1))
    return CycloInt(e, (1, -1))


def _is_unit_multiple(eta: CycloInt, base: CycloInt) -> bool:
    q = exact_div(eta, base)
    return q is not None and cyclo.is_unit(q)


def classify_eta(e: int, eta: CycloInt) -> CaseTag:
    """Tag the reduction case for component e with witness eta."""
    if cyclo.is_unit(eta):
        return CaseTag(CaseKind.UNIT, eta)
    if e in (1, 2) and eta.coeffs[0] in (3, -3):
        return CaseTag(CaseKind.PLUS_MINUS_3, eta)
    if e in (1, 2, 3, 6) and _is_unit_multiple(eta, CycloInt.from_int(e, 2)):
        return CaseTag(CaseKind.TWO_IDEAL, eta)
    if e in (3, 4, 6):
        pi = ramified_prime(e)
        for k in (1, 2):
            if _is_unit_multiple(eta, pi ** k):
                return CaseTag(CaseKind.ONE_MINUS_ZETA_POW, eta, k)
    if e not in SMALL_CONDUCTORS and e in SUPPORTED_CONDUCTORS:
        return CaseTag(CaseKind.EUCLIDEAN_PAIR_ATTEMPT, eta)
    return CaseTag(CaseKind.FALLBACK, eta)


def nonempty_subsets(D: Sequence[int]) -> List[Tuple[int, ...]]:
    """All nonempty subsets of D in canonical order (size, then tuple)."""
    D = sorted(set(D))
    return [s for r in range(1, len(D) + 1) for s in combinations(D, r)]
