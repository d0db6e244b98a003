"""Elementary words, pair reduction and SL2 factorization."""

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
    random_sl2,
    random_um_pair,
    random_word,
    unit_finish,
    upper,
    verify,
    whitehead_word,
)
from ge2.euclid import reduce_pair_euclidean
from ge2.deepening import Budget, DeepeningSearch
from ge2.descent import DescentStalled, constrained_descent
from ge2.lattice import lattice_descent, potential
from ge2.reduce import factor_sl2, reduce_pair, reduce_pair_od

__all__ = [
    "Budget",
    "DeepeningSearch",
    "DescentStalled",
    "ElemOp",
    "ElemWord",
    "Mat2",
    "UmPair",
    "apply_op",
    "apply_to_pair",
    "constrained_descent",
    "evaluate",
    "factor_sl2",
    "inverse",
    "lattice_descent",
    "lower",
    "normalize",
    "potential",
    "random_sl2",
    "random_um_pair",
    "random_word",
    "reduce_pair",
    "reduce_pair_euclidean",
    "reduce_pair_od",
    "unit_finish",
    "upper",
    "verify",
    "whitehead_word",
]
