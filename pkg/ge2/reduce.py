"""Pair reduction over O(D) and SL2 factorization.

reduce_pair_od works bottom-up: with e the pivot of D, the pair is first
reduced over O(D \\ {e}) and that word is lifted through the canonical
section, leaving (1, 0) on every component but e. The e-component is then
finished with moves that cannot disturb the others. Nodes tagged Fallback
take the same route, relying on the deepening search inside the constrained
descent; a descent that still stalls hands its current pair to the global
lattice descent.
Every returned word is checked against the input before it leaves.
"""

import logging
from typing import List, Optional

from cyclo import CycloRing
from errors import DetNotOne, NoSmallRemainder, NotUnimodular, RingMismatch, VerificationFailed
from ge2.deepening import Budget
from ge2.descent import DescentStalled, EMove, constrained_descent
from ge2.euclid import euclid_ops, reduce_pair_euclidean
from ge2.lattice import lattice_descent
from ge2.words import (
    ElemOp,
    ElemWord,
    Mat2,
    UmPair,
    apply_op,
    apply_to_pair,
    evaluate,
    inverse,
    lower,
    normalize,
    upper,
    verify,
)
from ge_types import DEFAULT_BUDGET, CaseKind, ElemKind, ReductionStats
from odring import ODRing

log = logging.getLogger(__name__)


def _lift_ops(ring: ODRing, sub: ODRing, ops: List[ElemOp]) -> List[ElemOp]:
    return [ElemOp(op.kind, ring.lift_from_sub(sub.D, op.entry)) for op in ops]


def _singleton(ring: ODRing, pair: UmPair, budget: Budget, stats: ReductionStats) -> List[ElemOp]:
    d = ring.D[0]
    cring = CycloRing(d)
    cpair = UmPair(ring.project(pair.first, d), ring.project(pair.second, d))
    try:
        return [ElemOp(op.kind, ring.lift_cyclo(op.entry)) for op in euclid_ops(cring, cpair)]
    except NoSmallRemainder as e:
        log.info(f"Z[zeta_{d}] division failed ({e}); using the lattice descent")
        stats.record_fallback(ring.D, f"no small remainder in Z[zeta_{d}]")
        return lattice_descent(ring, pair, budget)


def _e_ops(ring: ODRing, e: int, moves: List[EMove]) -> List[ElemOp]:
    ops = []
    for move in moves:
        if move.kind is ElemKind.LOWER:
            ops.append(lower(ring.lift_cyclo(move.value)))
        else:
            ops.append(upper(ring.kernel_lift(e, move.value)))
    return ops


def _check_rest(ring: ODRing, e: int, pair: UmPair) -> None:
    rest = ring.without(e)
    a, b = ring.project_sub(pair.first, rest.D), ring.project_sub(pair.second, rest.D)
    assert a == rest.one() and b.is_zero(), f"components outside {e} moved off (1, 0) over {ring!r}"


def _reduce_od(ring: ODRing, pair: UmPair, budget: Budget, stats: ReductionStats) -> List[ElemOp]:
    if len(ring.D) == 1:
        return _singleton(ring, pair, budget, stats)

    e = ring.select_pivot()
    tag = ring.classify_case(e)
    if tag.kind is CaseKind.FALLBACK:
        log.info(f"{ring!r} pivot {e} is tagged Fallback; searching the e-component")
        stats.record_fallback(ring.D, f"Fallback at e={e}")

    sub = ring.without(e)
    sub_pair = UmPair(ring.project_sub(pair.first, sub.D), ring.project_sub(pair.second, sub.D))
    ops = _lift_ops(ring, sub, _reduce_od(sub, sub_pair, budget, stats))
    lifted = apply_to_pair(pair, ops)
    _check_rest(ring, e, lifted)

    c, d = ring.project(lifted.first, e), ring.project(lifted.second, e)
    try:
        moves = constrained_descent(tag.eta, c, d, budget)
    except DescentStalled as err:
        partial = _e_ops(ring, e, err.moves)
        state = apply_to_pair(lifted, partial)
        log.info(f"constrained descent over {ring!r} at e={e} gave up ({err}); using the lattice descent")
        stats.record_fallback(ring.D, f"{tag.label()} at e={e}: {err}")
        return ops + partial + lattice_descent(ring, state, budget)

    tail = _e_ops(ring, e, moves)
    state = lifted
    for op in tail:
        state = apply_op(state, op)
        _check_rest(ring, e, state)
    log.debug(f"{ring!r}: {len(ops)} lifted ops, {len(tail)} ops at e={e} ({tag.label()})")
    return ops + tail


def _checked(ring, pair: UmPair, ops: List[ElemOp]) -> ElemWord:
    word = ElemWord(ring, normalize(ring, ops))
    if not verify(word, pair, UmPair.unit(ring)):
        raise VerificationFailed(f"reduction word over {ring!r} does not take the pair to (1, 0)")
    return word


def reduce_pair_od(ring: ODRing, pair: UmPair, budget: int = DEFAULT_BUDGET,
                   stats: Optional[ReductionStats] = None) -> ElemWord:
    """Word taking a unimodular pair over O(D) to (1, 0).

    Raises:
        NotUnimodular: if the pair generates a proper ideal
        BudgetExceeded: if the search budget runs out; retry with a larger one
        VerificationFailed: if the assembled word fails its certificate check
    """
    if not (ring.contains(pair.first) and ring.contains(pair.second)):
        raise RingMismatch(f"pair is not over {ring!r}")
    ok, _ = ring.is_unimodular(pair.first, pair.second)
    if not ok:
        raise NotUnimodular(f"({pair.first!r}, {pair.second!r}) is not unimodular over {ring!r}")
    stats = stats if stats is not None else ReductionStats()
    meter = Budget(budget, f"reduction over {ring!r}")
    try:
        ops = _reduce_od(ring, pair, meter, stats)
    finally:
        stats.states += meter.spent
    return _checked(ring, pair, ops)


def reduce_pair(ring, pair: UmPair, budget: int = DEFAULT_BUDGET,
                stats: Optional[ReductionStats] = None) -> ElemWord:
    """Reduce a pair over any supported ring kind."""
    if ring.kind == "cyclo":
        return _checked(ring, pair, list(reduce_pair_euclidean(ring, pair).ops))
    if ring.kind == "od":
        return reduce_pair_od(ring, pair, budget, stats)
    if ring.kind == "finite":
        import finitering
        return finitering.reduce_pair_finite(ring, pair)
    raise RingMismatch(f"no reducer for ring kind {ring.kind!r}")


def factor_sl2(ring, M: Mat2, budget: int = DEFAULT_BUDGET,
               stats: Optional[ReductionStats] = None) -> ElemWord:
    """Word w with evaluate(w) = M, for det(M) = 1.

    Raises:
        DetNotOne: if det(M) != 1
        BudgetExceeded: propagated from the top-row reduction
    """
    if M.det() != ring.one():
        raise DetNotOne(f"det = {M.det()!r}")
    w1 = reduce_pair(ring, UmPair(M.a, M.b), budget, stats)
    N = M @ evaluate(w1)
    assert N.a == ring.one() and N.b == ring.zero() and N.d == ring.one()
    w2 = ElemWord(ring, [lower(-N.c)])
    word = ElemWord(ring, normalize(ring, inverse(w1 + w2).ops))
    if evaluate(word) != M:
        raise VerificationFailed(f"factorization over {ring!r} does not evaluate to the input")
    return word
