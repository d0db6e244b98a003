import logging
from typing import List

import cyclo
from cyclo import CycloRing, euclid_divmod
from errors import NotUnimodular, RingMismatch
from ge2.words import ElemOp, ElemWord, UmPair, apply_op, lower, normalize, unit_finish, upper

log = logging.getLogger(__name__)


def euclid_ops(ring: CycloRing, pair: UmPair) -> List[ElemOp]:
    """Euclid on the pair in Z[zeta_d], finishing on a unit.

    Each step divides the larger-norm entry by the other one. Once either
    entry is a unit the other is cleared and the unit is normalized to 1.
    """
    ops: List[ElemOp] = []
    one = ring.one()
    while True:
        a, b = pair.first, pair.second
        if a == one and b.is_zero():
            return ops
        if ring.is_unit(a):
            tail = [upper(-b * ring.inverse(a))] if not b.is_zero() else []
            tail += unit_finish(ring, a)
            ops.extend(tail)
            return ops
        if ring.is_unit(b):
            tail = [lower((one - a) * ring.inverse(b)), upper(-b)]
            ops.extend(tail)
            return ops
        if a.is_zero() or b.is_zero():
            raise NotUnimodular(f"({a!r}, {b!r}) ends on a non-unit gcd")
        if abs(cyclo.norm(b)) >= abs(cyclo.norm(a)):
            q, _ = euclid_divmod(b, a)
            op = upper(-q)
        else:
            q, _ = euclid_divmod(a, b)
            op = lower(-q)
        log.debug(f"euclid step over Z[zeta_{ring.d}]: {op.kind.value}({list(op.entry.coeffs)})")
        ops.append(op)
        pair = apply_op(pair, op)


def reduce_pair_euclidean(ring: CycloRing, pair: UmPair) -> ElemWord:
    """Word taking a unimodular pair over Z[zeta_d] to (1, 0).

    Raises:
        NotUnimodular: if the pair generates a proper ideal
        NoSmallRemainder: if a division step fails (conductor outside the supported list)
    """
    if not (ring.contains(pair.first) and ring.contains(pair.second)):
        raise RingMismatch(f"pair is not over {ring!r}")
    ops = euclid_ops(ring, pair)
    return ElemWord(ring, normalize(ring, ops))
