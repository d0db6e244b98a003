import os
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple


DEFAULT_BUDGET = int(os.environ.get("ZCGE_BUDGET", 10**6))
DEFAULT_WORKERS = int(os.environ.get("ZCGE_WORKERS", 4))
DEFAULT_DEMO_JOBS = 25
DEMO_WORD_LENGTH = 20
DEMO_BOUND = 3
ORACLE_GUARD = 4096


class ElemKind(str, Enum):
    LOWER = "L"
    UPPER = "U"


class CaseKind(str, Enum):
    UNIT = "Unit"
    PLUS_MINUS_3 = "PlusMinus3"
    TWO_IDEAL = "TwoIdeal"
    ONE_MINUS_ZETA_POW = "OneMinusZetaPow"
    EUCLIDEAN_PAIR_ATTEMPT = "EuclideanPairAttempt"
    FALLBACK = "Fallback"


class RingKind(str, Enum):
    CYCLO = "cyclo"
    OD = "od"
    GROUP_RING = "group_ring"
    FINITE = "finite"


class Command(str, Enum):
    REDUCE = "reduce"
    FACTOR = "factor"
    VERIFY = "verify"
    CLASSIFY = "classify"
    GEN = "gen"
    DEMO = "demo"


@dataclass
class JobSpec:
    command: Command
    ring: Dict[str, Any]
    payload: Any = None
    seed: int = 0
    budget: int = DEFAULT_BUDGET
    bound: int = DEMO_BOUND


@dataclass
class ReductionStats:
    """Counters shared by one or more reductions."""
    fallback_activations: int = 0
    fallback_reasons: List[Tuple[Tuple[int, ...], str]] = field(default_factory=list)
    states: int = 0

    def record_fallback(self, D: Tuple[int, ...], reason: str) -> None:
        self.fallback_activations += 1
        self.fallback_reasons.append((tuple(D), reason))

    @property
    def fallback_used(self) -> bool:
        return self.fallback_activations > 0


@dataclass
class SubsetReport:
    D: Tuple[int, ...]
    jobs: int = 0
    reductions_verified: int = 0
    factorizations_verified: int = 0
    max_word_length: int = 0
    fallback_activations: int = 0
    failures: List[Dict[str, Any]] = field(default_factory=list)
    budget_failures: int = 0
    error: Optional[str] = None
