"""Elementary words over a ring and the operations that check them.

Lower(t) = [[1,0],[t,1]] and Upper(s) = [[1,s],[0,1]]. A pair is the top row
of a matrix acted on from the right, so Lower(t) sends (a, b) to
(a + b*t, b) and Upper(s) sends (a, b) to (a, b + a*s).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, List

import numpy as np

from errors import NotAUnit, RingMismatch
from ge_types import ElemKind


@dataclass(frozen=True)
class ElemOp:
    kind: ElemKind
    entry: Any

    def inverse(self) -> "ElemOp":
        return ElemOp(self.kind, -self.entry)


def lower(t: Any) -> ElemOp:
    return ElemOp(ElemKind.LOWER, t)


def upper(s: Any) -> ElemOp:
    return ElemOp(ElemKind.UPPER, s)


@dataclass(frozen=True)
class ElemWord:
    ring: Any
    ops: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            if not self.ring.contains(op.entry):
                raise RingMismatch(f"entry {op.entry!r} does not belong to {self.ring!r}")

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __add__(self, other: "ElemWord") -> "ElemWord":
        if other.ring != self.ring:
            raise RingMismatch(f"{self.ring!r} vs {other.ring!r}")
        return ElemWord(self.ring, self.ops + other.ops)


@dataclass(frozen=True)
class Mat2:
    a: Any
    b: Any
    c: Any
    d: Any

    @classmethod
    def identity(cls, ring) -> "Mat2":
        return cls(ring.one(), ring.zero(), ring.zero(), ring.one())

    @classmethod
    def of(cls, op: ElemOp, ring) -> "Mat2":
        one, zero = ring.one(), ring.zero()
        if op.kind is ElemKind.LOWER:
            return cls(one, zero, op.entry, one)
        return cls(one, op.entry, zero, one)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def det(self):
        return self.a * self.d - self.b * self.c

    def rows(self) -> List[List[Any]]:
        return [[self.a, self.b], [self.c, self.d]]


@dataclass(frozen=True)
class UmPair:
    first: Any
    second: Any

    @classmethod
    def unit(cls, ring) -> "UmPair":
        return cls(ring.one(), ring.zero())


def apply_op(pair: UmPair, op: ElemOp) -> UmPair:
    if op.kind is ElemKind.LOWER:
        return UmPair(pair.first + pair.second * op.entry, pair.second)
    return UmPair(pair.first, pair.second + pair.first * op.entry)


def apply_to_pair(pair: UmPair, word: Iterable[ElemOp]) -> UmPair:
    for op in word:
        pair = apply_op(pair, op)
    return pair


def evaluate(word: ElemWord) -> Mat2:
    """Ordered product of the word's matrices; identity for the empty word."""
    # right action of each op on a matrix is a column operation
    m = Mat2.identity(word.ring)
    for op in word.ops:
        if op.kind is ElemKind.LOWER:
            m = Mat2(m.a + m.b * op.entry, m.b, m.c + m.d * op.entry, m.d)
        else:
            m = Mat2(m.a, m.b + m.a * op.entry, m.c, m.d + m.c * op.entry)
    return m


def inverse(word: ElemWord) -> ElemWord:
    return ElemWord(word.ring, [op.inverse() for op in reversed(word.ops)])


def normalize(ring, ops: Iterable[ElemOp]) -> List[ElemOp]:
    """Merge adjacent ops of one kind and drop zero entries, until stable."""
    zero = ring.zero()
    stack: List[ElemOp] = []
    for op in ops:
        if op.entry == zero:
            continue
        if stack and stack[-1].kind is op.kind:
            merged = stack.pop().entry + op.entry
            if merged != zero:
                stack.append(ElemOp(op.kind, merged))
        else:
            stack.append(op)
    return stack


def verify(word: ElemWord, start: UmPair, end: UmPair) -> bool:
    try:
        return apply_to_pair(start, word.ops) == end
    except (RingMismatch, TypeError):
        return False


def unit_finish(ring, u) -> List[ElemOp]:
    """Ops taking (u, 0) to (1, 0) for a unit u."""
    if u == ring.one():
        return []
    inv = ring.inverse(u)
    return normalize(ring, [upper(inv - ring.one()), lower(ring.one()), upper(u - ring.one())])


def whitehead_word(ring, u) -> ElemWord:
    """A word evaluating to diag(u, u^-1).

    Raises:
        NotAUnit: if u is not a unit of ring
    """
    if not ring.is_unit(u):
        raise NotAUnit(f"{u!r} is not a unit of {ring!r}")
    inv = ring.inverse(u)
    one = ring.one()
    ops = [upper(u), lower(-inv), upper(u), upper(-one), lower(one), upper(-one)]
    return ElemWord(ring, normalize(ring, ops))


def random_word(ring, seed: int, length: int, bound: int) -> ElemWord:
    """Seeded word on numpy's PCG64 generator; kinds and entries drawn alike."""
    if length < 0 or bound < 1:
        raise ValueError(f"need length >= 0 and bound >= 1, got {length}, {bound}")
    rng = np.random.Generator(np.random.PCG64(seed))
    ops = []
    for _ in range(length):
        kind = ElemKind.LOWER if rng.integers(0, 2) == 0 else ElemKind.UPPER
        ops.append(ElemOp(kind, ring.random_element(rng, bound)))
    return ElemWord(ring, ops)


def random_um_pair(ring, seed: int, length: int, bound: int) -> UmPair:
    return apply_to_pair(UmPair.unit(ring), random_word(ring, seed, length, bound))


def random_sl2(ring, seed: int, length: int, bound: int) -> Mat2:
    return evaluate(random_word(ring, seed, length, bound))
