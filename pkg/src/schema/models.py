from enum import StrEnum, auto


class Verdict(StrEnum):
    FAILS_WITNESSED = "FAILS_WITNESSED"
    HOLDS_SAMPLED = "HOLDS_SAMPLED"
    INCONCLUSIVE = "INCONCLUSIVE"

    @property
    def exit_code(self) -> int:
        return {Verdict.HOLDS_SAMPLED: 0, Verdict.FAILS_WITNESSED: 1, Verdict.INCONCLUSIVE: 2}[self]


class CqName(StrEnum):
    """Constraint qualifications with a checker."""

    LICQ = auto()
    NNAMCQ = auto()
    CRCQ = auto()
    RCRCQ = auto()
    CPLD = auto()
    ERCPLD = auto()
    RCPLD = auto()
    PRCPLD = auto()


class OrthoCqName(StrEnum):
    """Specialized checkers for ortho-disjunctive programs."""

    MPEC_RCPLD = "mpec-rcpld"
    MPEC_PRCPLD = "mpec-prcpld"
    MPVC_RCPLD = "mpvc-rcpld"
    MPVC_PRCPLD = "mpvc-prcpld"
    MPSC_RCPLD = "mpsc-rcpld"


class WitnessKind(StrEnum):
    # a family changes rank along a sequence
    RANK = auto()
    # a degenerate multiplier whose family stays independent along a sequence
    MULTIPLIER = auto()
    # an exact nonzero solution at the point itself (LICQ, NNAMCQ)
    CERTIFICATE = auto()


class NormalConeKind(StrEnum):
    REGULAR = auto()
    LIMITING = auto()


AnyCqName = CqName | OrthoCqName
