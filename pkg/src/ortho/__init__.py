from ortho.checks import (
    ORTHO_CHECKERS,
    check_mpec_prcpld,
    check_mpec_rcpld,
    check_mpsc_rcpld,
    check_mpvc_prcpld,
    check_mpvc_rcpld,
    check_ortho,
)
from ortho.cones import SIGN_TABLES, omega_nc, pattern_generators
from ortho.index_sets import OrthoIndexSets, as_program, classify, omega, to_generic

__all__ = [
    "ORTHO_CHECKERS",
    "SIGN_TABLES",
    "OrthoIndexSets",
    "as_program",
    "check_mpec_prcpld",
    "check_mpec_rcpld",
    "check_mpsc_rcpld",
    "check_mpvc_prcpld",
    "check_mpvc_rcpld",
    "check_ortho",
    "classify",
    "omega",
    "omega_nc",
    "pattern_generators",
    "to_generic",
]
