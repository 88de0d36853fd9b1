from cq.checks import (
    CHECKERS,
    CQ_IMPLICATIONS,
    DependenceTests,
    REPORTED_IMPLICATIONS,
    check,
    check_cpld,
    check_crcq,
    check_ercpld,
    check_licq,
    check_nnamcq,
    check_prcpld,
    check_rcpld,
    check_rcrcq,
    replay_witness,
)
from cq.kernels import Dependence, Reduction, caratheodory_reduce, positive_linear_dependent
from cq.multipliers import Multiplier, MultiplierSearch, enumerate_multipliers
from cq.sequences import (
    RankConstancy,
    Scan,
    ScanStatus,
    Subgradients,
    VectorFamily,
    directions,
    rank_constancy,
)

__all__ = [
    "CHECKERS",
    "CQ_IMPLICATIONS",
    "REPORTED_IMPLICATIONS",
    "Dependence",
    "DependenceTests",
    "Multiplier",
    "MultiplierSearch",
    "RankConstancy",
    "Reduction",
    "Scan",
    "ScanStatus",
    "Subgradients",
    "VectorFamily",
    "caratheodory_reduce",
    "check",
    "check_cpld",
    "check_crcq",
    "check_ercpld",
    "check_licq",
    "check_nnamcq",
    "check_prcpld",
    "check_rcpld",
    "check_rcrcq",
    "directions",
    "enumerate_multipliers",
    "positive_linear_dependent",
    "rank_constancy",
    "replay_witness",
]
