from schema.models import AnyCqName, CqName, NormalConeKind, OrthoCqName, Verdict, WitnessKind
from schema.schema import (
    SCHEMA_VERSION,
    BranchRecord,
    CheckInput,
    CheckResult,
    CqReport,
    ErrorBoundEstimate,
    ErrorBoundInput,
    FamilyRecord,
    MStatCertificate,
    MStatInput,
    MStatReport,
    MultiplierCandidate,
    NormalConeInput,
    NormalConeReport,
    ProfileEntry,
    ProgramInput,
    Rational,
    RationalVector,
    RunConfig,
    SampleRecord,
    SequenceScheme,
    SequenceWitness,
    ServiceMetadata,
    StratumRecord,
    SubsystemVerdict,
    Witness,
)

__all__ = [
    "SCHEMA_VERSION",
    "AnyCqName",
    "CqName",
    "OrthoCqName",
    "Verdict",
    "WitnessKind",
    "NormalConeKind",
    "Rational",
    "RationalVector",
    "SequenceScheme",
    "RunConfig",
    "BranchRecord",
    "MultiplierCandidate",
    "FamilyRecord",
    "SequenceWitness",
    "Witness",
    "SubsystemVerdict",
    "CqReport",
    "MStatCertificate",
    "MStatReport",
    "StratumRecord",
    "NormalConeReport",
    "SampleRecord",
    "ProfileEntry",
    "ErrorBoundEstimate",
    "ServiceMetadata",
    "ProgramInput",
    "CheckInput",
    "CheckResult",
    "NormalConeInput",
    "MStatInput",
    "ErrorBoundInput",
]
