"""
Finite quotients Z[X]/(f, m).

Every finite ring is semilocal, so it has stable rank 1: whenever (a, c) is
unimodular, some t makes a + t*c a unit. The pivot search below finds t by
scanning the ring in index order. The pivot drives pair reduction and n x n
Gaussian elimination over the ring. The brute-force Um2 enumeration and
E2-orbit closure serve as ground truth for small rings.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from itertools import permutations
from typing import Any, Dict, Iterable, Iterator, List, Optional, Sequence, Set, Tuple, Union

import numpy as np

from errors import (
    NotAUnit,
    NotInvertible,
    NotMonic,
    NotUnimodular,
    RingMismatch,
    SpecError,
    TooLarge,
    VerificationFailed,
)
from ge2.words import ElemWord, UmPair, lower, normalize, unit_finish, upper, verify, whitehead_word
from ge_types import ORACLE_GUARD, ElemKind
from intpoly import IntPoly
from linalg.hnf import solve_mod

log = logging.getLogger(__name__)

Matrix = List[List["FiniteRingElement"]]


class FiniteRing:
    """Z[X]/(f, m) for monic f of degree k >= 1 and m >= 2."""

    kind = "finite"

    def __init__(self, f: Union[IntPoly, Sequence[int]], m: int):
        f = f if isinstance(f, IntPoly) else IntPoly(f)
        if f.is_zero() or f.degree < 1:
            raise SpecError(f"f must have degree >= 1, got {list(f.coeffs)}")
        if not f.is_monic():
            raise NotMonic(f"f = {list(f.coeffs)} is not monic")
        if m < 2:
            raise SpecError(f"modulus must be >= 2, got {m}")
        self.f = f
        self.m = int(m)
        self.k = int(f.degree)
        self.size = self.m ** self.k
        self._ideals: Dict[int, List[int]] = {}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteRing) and other.f == self.f and other.m == self.m

    def __hash__(self) -> int:
        return hash(("FiniteRing", self.f.coeffs, self.m))

    def __repr__(self) -> str:
        return f"FiniteRing(f={list(self.f.coeffs)}, m={self.m})"

    # -- elements ---------------------------------------------------------

    def element(self, rep: Union[IntPoly, Iterable[int], int]) -> "FiniteRingElement":
        if isinstance(rep, int):
            rep = IntPoly.constant(rep)
        elif not isinstance(rep, IntPoly):
            rep = IntPoly(rep)
        reduced = rep % self.f
        return FiniteRingElement(self, tuple(c % self.m for c in reduced.padded(self.k)))

    def zero(self) -> "FiniteRingElement":
        return FiniteRingElement(self, (0,) * self.k)

    def one(self) -> "FiniteRingElement":
        return self.element(1)

    def contains(self, x: Any) -> bool:
        return isinstance(x, FiniteRingElement) and x.ring == self

    def from_index(self, idx: int) -> "FiniteRingElement":
        coeffs = []
        for _ in range(self.k):
            idx, c = divmod(idx, self.m)
            coeffs.append(c)
        return FiniteRingElement(self, tuple(coeffs))

    def index_of(self, x: "FiniteRingElement") -> int:
        idx = 0
        for c in reversed(x.coeffs):
            idx = idx * self.m + c
        return idx

    def elements(self) -> Iterator["FiniteRingElement"]:
        """All elements by index sum(c_i * m^i): 0, 1, ..., then X, 1 + X, ..."""
        for idx in range(self.size):
            yield self.from_index(idx)

    def random_element(self, rng: np.random.Generator, bound: int) -> "FiniteRingElement":
        return self.element([int(c) for c in rng.integers(-bound, bound + 1, size=self.k)])

    # -- units ------------------------------------------------------------

    def mult_matrix(self, x: "FiniteRingElement") -> List[List[int]]:
        cols = []
        image = x
        X = self.element(IntPoly.x())
        for _ in range(self.k):
            cols.append(list(image.coeffs))
            image = image * X
        return [[cols[j][i] for j in range(self.k)] for i in range(self.k)]

    def _e1(self) -> List[int]:
        return [1] + [0] * (self.k - 1)

    def is_unit(self, x: "FiniteRingElement") -> bool:
        return solve_mod(self.mult_matrix(x), self._e1(), self.m) is not None

    def inverse(self, x: "FiniteRingElement") -> "FiniteRingElement":
        v = solve_mod(self.mult_matrix(x), self._e1(), self.m)
        if v is None:
            raise NotAUnit(f"{x!r} is not a unit of {self!r}")
        inv = self.element(v)
        assert inv * x == self.one()
        return inv

    def bezout(self, row: Sequence["FiniteRingElement"]) -> Optional[List["FiniteRingElement"]]:
        """w with sum(row[j] * w[j]) = 1, or None if the row is not unimodular."""
        blocks = [self.mult_matrix(x) for x in row]
        stacked = [sum((b[i] for b in blocks), []) for i in range(self.k)]
        z = solve_mod(stacked, self._e1(), self.m)
        if z is None:
            return None
        return [self.element(z[j * self.k:(j + 1) * self.k]) for j in range(len(row))]

    # -- oracle tables ----------------------------------------------------

    def _guard(self) -> None:
        if self.size > ORACLE_GUARD:
            raise TooLarge(f"{self!r} has {self.size} elements, above the oracle guard of {ORACLE_GUARD}")

    def ideal(self, idx: int) -> List[int]:
        """Indices of the principal ideal generated by element idx."""
        if idx not in self._ideals:
            x = self.from_index(idx)
            self._ideals[idx] = sorted({self.index_of(x * y) for y in self.elements()})
        return self._ideals[idx]

    # -- JSON -------------------------------------------------------------

    def spec(self) -> Dict[str, Any]:
        return {"type": "finite", "f": list(self.f.coeffs), "m": self.m}

    def element_to_json(self, x: "FiniteRingElement") -> Dict[str, Any]:
        return {"rep": list(x.coeffs)}

    def element_from_json(self, obj: Any) -> "FiniteRingElement":
        if isinstance(obj, int):
            return self.element(obj)
        if isinstance(obj, dict) and "rep" in obj:
            obj = obj["rep"]
        if isinstance(obj, list):
            try:
                return self.element([int(c) for c in obj])
            except (TypeError, ValueError) as e:
                raise SpecError(f"bad representative {obj!r}: {e}")
        raise SpecError(f"cannot read an element of {self!r} from {obj!r}")


class FiniteRingElement:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: FiniteRing, coeffs: Tuple[int, ...]):
        self.ring = ring
        self.coeffs = coeffs

    def _coerce(self, other) -> "FiniteRingElement":
        if isinstance(other, int):
            return self.ring.element(other)
        if not isinstance(other, FiniteRingElement):
            raise TypeError(f"cannot combine FiniteRingElement with {type(other).__name__}")
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
        return other

    def __add__(self, other):
        other = self._coerce(other)
        m = self.ring.m
        return FiniteRingElement(self.ring, tuple((a + b) % m for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        m = self.ring.m
        return FiniteRingElement(self.ring, tuple((-a) % m for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return self.ring.element(IntPoly(self.coeffs) * IntPoly(other.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int):
            other = self.ring.element(other)
        return isinstance(other, FiniteRingElement) and self.ring == other.ring and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.ring.m, self.ring.f.coeffs, self.coeffs))

    def __repr__(self) -> str:
        return f"FiniteRingElement({list(self.coeffs)} mod m={self.ring.m})"


# ---------------------------------------------------------------------------
# stable-rank-1 pivots and pair reduction

def sr1_pivot(a: FiniteRingElement, c: FiniteRingElement) -> FiniteRingElement:
    """First t in index order with a + t*c a unit.

    Raises:
        NotUnimodular: if aR + cR != R
    """
    ring = a.ring
    if ring.bezout([a, c]) is None:
        raise NotUnimodular(f"({a!r}, {c!r}) is not unimodular over {ring!r}")
    for t in ring.elements():
        if ring.is_unit(a + t * c):
            return t
    raise AssertionError(f"no stable-rank-1 pivot for ({a!r}, {c!r}) over {ring!r}")


def reduce_pair_finite(ring: FiniteRing, pair: UmPair) -> ElemWord:
    """Word taking a unimodular pair over a finite ring to (1, 0)."""
    a, b = pair.first, pair.second
    t = sr1_pivot(a, b)
    u = a + b * t
    ops = [lower(t), upper(-b * ring.inverse(u))] + unit_finish(ring, u)
    word = ElemWord(ring, normalize(ring, ops))
    if not verify(word, pair, UmPair.unit(ring)):
        raise VerificationFailed(f"pivot reduction over {ring!r} does not reach (1, 0)")
    return word


# ---------------------------------------------------------------------------
# n x n elementary factorization

@dataclass(frozen=True)
class ElemN:
    """The n x n elementary matrix I + entry * E_ij (i != j)."""
    i: int
    j: int
    entry: FiniteRingElement

    def inverse(self) -> "ElemN":
        return ElemN(self.i, self.j, -self.entry)


def identity_n(ring: FiniteRing, n: int) -> Matrix:
    return [[ring.one() if r == c else ring.zero() for c in range(n)] for r in range(n)]


def _add_column(A: Matrix, src: int, dst: int, t: FiniteRingElement) -> None:
    # right multiplication by I + t*E_{src,dst}: column dst += t * column src
    for row in A:
        row[dst] = row[dst] + row[src] * t


def evaluate_n(ring: FiniteRing, n: int, ops: Iterable[ElemN]) -> Matrix:
    A = identity_n(ring, n)
    for op in ops:
        _add_column(A, op.i, op.j, op.entry)
    return A


def det_n(ring: FiniteRing, A: Matrix) -> FiniteRingElement:
    """Leibniz expansion."""
    n = len(A)
    total = ring.zero()
    for perm in permutations(range(n)):
        inversions = sum(1 for x in range(n) for y in range(x + 1, n) if perm[x] > perm[y])
        term = ring.one()
        for r in range(n):
            term = term * A[r][perm[r]]
        total = total - term if inversions % 2 else total + term
    return total


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    return [[sum((A[r][k] * B[k][c] for k in range(n)), A[0][0].ring.zero()) for c in range(n)] for r in range(n)]


def _embed_2x2(word: ElemWord, p: int, q: int) -> List[ElemN]:
    ops = []
    for op in word:
        if op.kind is ElemKind.UPPER:
            ops.append(ElemN(p, q, op.entry))
        else:
            ops.append(ElemN(q, p, op.entry))
    return ops


def factor_gln_finite(ring: FiniteRing, M: Matrix) -> Tuple[List[FiniteRingElement], List[ElemN]]:
    """(diag, word) with M = diag(diag) * evaluate_n(word); diag = (det M, 1, ..., 1).

    Raises:
        NotInvertible: if det(M) is not a unit
    """
    n = len(M)
    if n < 2 or any(len(row) != n for row in M):
        raise ValueError(f"need a square matrix with n >= 2, got {n} rows")
    det = det_n(ring, M)
    if not ring.is_unit(det):
        raise NotInvertible(f"det = {det!r} is not a unit of {ring!r}")

    A = [list(row) for row in M]
    ops: List[ElemN] = []

    def col_op(src: int, dst: int, t: FiniteRingElement) -> None:
        if t.is_zero():
            return
        _add_column(A, src, dst, t)
        ops.append(ElemN(src, dst, t))

    for r in range(n):
        row = A[r][r:]
        if not ring.is_unit(row[0]):
            w = ring.bezout(row)
            assert w is not None, f"row {r} of the trailing block is not unimodular"
            s = sum((w[j] * row[j] for j in range(1, len(row))), ring.zero())
            t = sr1_pivot(row[0], s)
            for j in range(1, len(row)):
                col_op(r + j, r, t * w[j])
        u_inv = ring.inverse(A[r][r])
        for j in range(r + 1, n):
            col_op(r, j, -A[r][j] * u_inv)

    for i in range(n - 1, 0, -1):
        inv = ring.inverse(A[i][i])
        for r in range(i):
            col_op(i, r, -A[i][r] * inv)

    units = [A[i][i] for i in range(n)]
    # diag(u_0..u_{n-1}) = diag(det, 1, ..., 1) * prod_i diag_{(i-1, i)}(q_i^-1, q_i), q_i = u_i * ... * u_{n-1}
    folded: List[ElemN] = []
    q = ring.one()
    suffix = [ring.one()] * (n + 1)
    for i in range(n - 1, -1, -1):
        q = q * units[i]
        suffix[i] = q
    for i in range(1, n):
        folded.extend(_embed_2x2(whitehead_word(ring, ring.inverse(suffix[i])), i - 1, i))

    word = folded + [op.inverse() for op in reversed(ops)]
    diag = [det] + [ring.one()] * (n - 1)
    D = [[diag[r] if r == c else ring.zero() for c in range(n)] for r in range(n)]
    if _matmul(D, evaluate_n(ring, n, word)) != [list(row) for row in M]:
        raise VerificationFailed(f"elimination over {ring!r} does not reproduce the input")
    log.debug(f"factored a {n}x{n} matrix over {ring!r} into {len(word)} elementary ops")
    return diag, word


def random_gln(ring: FiniteRing, n: int, seed: int, length: int) -> Matrix:
    """Seeded product of `length` elementary n x n matrices (PCG64)."""
    rng = np.random.Generator(np.random.PCG64(seed))
    ops = []
    for _ in range(length):
        i, j = (int(v) for v in rng.choice(n, size=2, replace=False))
        ops.append(ElemN(i, j, ring.from_index(int(rng.integers(0, ring.size)))))
    return evaluate_n(ring, n, ops)


# ---------------------------------------------------------------------------
# brute-force oracles

def _ideal_sum_is_whole(ring: FiniteRing, a: int, b: int, one_minus: List[int]) -> bool:
    other = set(ring.ideal(b))
    return any(one_minus[y] in other for y in ring.ideal(a))


def enumerate_um2(ring: FiniteRing) -> Set[UmPair]:
    """Every unimodular pair over the ring.

    Raises:
        TooLarge: above the oracle guard
    """
    ring._guard()
    one = ring.one()
    one_minus = [ring.index_of(one - x) for x in ring.elements()]
    out = set()
    for a in range(ring.size):
        for b in range(ring.size):
            if _ideal_sum_is_whole(ring, a, b, one_minus):
                out.add(UmPair(ring.from_index(a), ring.from_index(b)))
    return out


def e2_orbit(ring: FiniteRing, start: UmPair) -> Set[UmPair]:
    """Closure of start under every Lower(t) and Upper(s), by BFS.

    Raises:
        TooLarge: above the oracle guard
    """
    ring._guard()
    elems = list(ring.elements())
    first, second = ring.index_of(start.first), ring.index_of(start.second)
    seen = {(first, second)}
    queue = deque([(first, second)])
    while queue:
        a, b = queue.popleft()
        # Lower(t) adds b*t to a; Upper(s) adds a*s to b
        moves = [(ring.index_of(elems[a] + elems[y]), b) for y in ring.ideal(b)]
        moves += [(a, ring.index_of(elems[b] + elems[y])) for y in ring.ideal(a)]
        for state in moves:
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return {UmPair(elems[a], elems[b]) for a, b in seen}
