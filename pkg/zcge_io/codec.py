"""JSON codecs for ring specs, pairs, words and matrices.

Ring specs:
  {"type": "od", "D": [1, 2, 3]}
  {"type": "group_ring", "n": 12}
  {"type": "cyclo", "d": 5}
  {"type": "finite", "f": [-1, 0, 1], "m": 2}
Elements use each ring's own encoding; pairs are two-element arrays, words
are arrays of {"kind": "L"|"U", "entry": ...}, n x n words over finite rings
are arrays of {"i", "j", "entry"}.
"""

from typing import Any, Dict, List

from cyclo import CycloRing
from errors import NotMonic, SpecError
from ge2.words import ElemOp, ElemWord, Mat2, UmPair
from ge_types import ElemKind, RingKind
from odring import group_ring, od_ring


def _positive_int(value: Any, name: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise SpecError(f"{name} must be a positive integer, got {value!r}")
    return value


def parse_ring(spec: Any):
    if not isinstance(spec, dict) or "type" not in spec:
        raise SpecError(f"ring spec must be an object with a 'type', got {spec!r}")
    try:
        kind = RingKind(spec["type"])
    except ValueError:
        raise SpecError(f"unknown ring type {spec['type']!r}")

    if kind is RingKind.OD:
        D = spec.get("D")
        if not isinstance(D, list) or not D:
            raise SpecError(f"'D' must be a nonempty list, got {D!r}")
        return od_ring(_positive_int(d, "member of D") for d in D)
    if kind is RingKind.GROUP_RING:
        return group_ring(_positive_int(spec.get("n"), "n"))
    if kind is RingKind.CYCLO:
        return CycloRing(_positive_int(spec.get("d"), "d"))

    import finitering
    f, m = spec.get("f"), spec.get("m")
    if not isinstance(f, list) or not all(isinstance(c, int) for c in f):
        raise SpecError(f"'f' must be a list of integers, got {f!r}")
    if not isinstance(m, int):
        raise SpecError(f"'m' must be an integer, got {m!r}")
    try:
        return finitering.FiniteRing(f, m)
    except NotMonic as e:
        raise SpecError(str(e))


def pair_to_json(ring, pair: UmPair) -> List[Any]:
    return [ring.element_to_json(pair.first), ring.element_to_json(pair.second)]


def pair_from_json(ring, obj: Any) -> UmPair:
    if isinstance(obj, dict) and "first" in obj and "second" in obj:
        obj = [obj["first"], obj["second"]]
    if not isinstance(obj, list) or len(obj) != 2:
        raise SpecError(f"a pair must be a two-element array, got {obj!r}")
    return UmPair(ring.element_from_json(obj[0]), ring.element_from_json(obj[1]))


def word_to_json(ring, word) -> List[Dict[str, Any]]:
    out = []
    for op in word:
        if isinstance(op, ElemOp):
            out.append({"kind": op.kind.value, "entry": ring.element_to_json(op.entry)})
        else:
            out.append({"i": op.i, "j": op.j, "entry": ring.element_to_json(op.entry)})
    return out


def word_from_json(ring, obj: Any) -> ElemWord:
    if not isinstance(obj, list):
        raise SpecError(f"a word must be an array, got {obj!r}")
    ops = []
    for item in obj:
        if not isinstance(item, dict) or "kind" not in item or "entry" not in item:
            raise SpecError(f"word entries need 'kind' and 'entry', got {item!r}")
        try:
            kind = ElemKind(item["kind"])
        except ValueError:
            raise SpecError(f"kind must be 'L' or 'U', got {item['kind']!r}")
        ops.append(ElemOp(kind, ring.element_from_json(item["entry"])))
    return ElemWord(ring, ops)


def square_from_json(ring, obj: Any) -> List[List[Any]]:
    if not isinstance(obj, list) or not obj or any(not isinstance(r, list) or len(r) != len(obj) for r in obj):
        raise SpecError(f"a matrix must be a square array of rows, got {obj!r}")
    return [[ring.element_from_json(x) for x in row] for row in obj]


def mat2_from_json(ring, obj: Any) -> Mat2:
    rows = square_from_json(ring, obj)
    if len(rows) != 2:
        raise SpecError(f"expected a 2x2 matrix, got {len(rows)}x{len(rows)}")
    return Mat2(rows[0][0], rows[0][1], rows[1][0], rows[1][1])


def matrix_to_json(ring, M) -> List[List[Any]]:
    rows = M.rows() if isinstance(M, Mat2) else M
    return [[ring.element_to_json(x) for x in row] for row in rows]
