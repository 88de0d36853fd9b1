from fractions import Fraction
from typing import Annotated, Any

from pydantic import (
    BaseModel,
    Field,
    PlainSerializer,
    PlainValidator,
    WithJsonSchema,
    field_validator,
    model_validator,
)

from core.linalg import format_rational, format_vector, to_fraction
from core.settings import NormKind, OutputFormat, settings
from schema.models import NormalConeKind, Verdict, WitnessKind

SCHEMA_VERSION = 1


def _to_rational(value: Any) -> Fraction:
    try:
        return to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational number: {value!r}") from e


Rational = Annotated[
    Fraction,
    PlainValidator(_to_rational),
    PlainSerializer(format_rational, return_type=str),
    WithJsonSchema({"type": "string", "examples": ["1/2", "-3"]}),
]
RationalVector = list[Rational]


class SequenceScheme(BaseModel):
    """Sequences x̄ + r_j·d used to probe "for all sequences x^k → x̄"."""

    radius0: Rational = Field(
        description="Largest radius r_0; r_j = r_0·2^-j.",
        default=Fraction(1, 100),
    )
    levels: int = Field(description="Index J of the smallest radius.", default=20, ge=1)
    directions: int = Field(
        description="Random directions added to the coordinate axes.", default=64, ge=0
    )
    seed: int = Field(description="Seed of the direction generator.", default=0)

    @field_validator("radius0")
    @classmethod
    def positive_radius(cls, v: Fraction) -> Fraction:
        if v <= 0:
            raise ValueError("radius0 must be positive")
        return v

    def radii(self) -> list[Fraction]:
        return [self.radius0 / 2**j for j in range(self.levels + 1)]


class RunConfig(BaseModel):
    """Tolerances, sampling scheme and output options of one run."""

    rank_tol: float = Field(description="Relative rank threshold for float data.", gt=0)
    feas_tol: float = Field(description="Feasibility tolerance.", gt=0)
    feas_tol_float: float = Field(description="Feasibility tolerance for float data.", gt=0)
    lp_tol: float = Field(description="Residual bound for certificate equations.", gt=0)
    radius0: Rational
    levels: int = Field(ge=1)
    directions: int = Field(ge=0)
    seed: int
    dependence_start: int = Field(
        description="Dependence must hold for every radius index from here on.", ge=0
    )
    witness_window: int = Field(
        description="Trailing radii that must all be independent for a witness.", ge=1
    )
    candidate_cap: int = Field(description="Upper bound on enumerated branches.", ge=1)
    norm: NormKind = NormKind.L1
    output_format: OutputFormat = OutputFormat.TEXT
    eb_starts: int = Field(default=8, ge=1)
    eb_max_iter: int = Field(default=200, ge=1)

    @model_validator(mode="after")
    def check_windows(self) -> "RunConfig":
        if self.witness_window > self.levels + 1:
            raise ValueError("witness_window cannot exceed levels + 1")
        if self.dependence_start > self.levels:
            raise ValueError("dependence_start cannot exceed levels")
        return self

    @classmethod
    def from_settings(cls, **overrides: Any) -> "RunConfig":
        """Defaults from ``settings``; ``None`` overrides are ignored."""
        values = {name: getattr(settings, name.upper()) for name in cls.model_fields}
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls.model_validate(values)

    @property
    def scheme(self) -> SequenceScheme:
        return SequenceScheme(
            radius0=self.radius0, levels=self.levels, directions=self.directions, seed=self.seed
        )


class BranchRecord(BaseModel):
    """Generators (A^I, A^E) selected for one block."""

    rays: list[RationalVector] = []
    lines: list[RationalVector] = []


class MultiplierCandidate(BaseModel):
    """A nonzero solution of the degenerate multiplier equation."""

    g_indices: list[int] = Field(description="Active inequalities used, zero-based.", default=[])
    lambda_g: list[Rational] = []
    h_indices: list[int] = Field(description="Equalities used, zero-based.", default=[])
    lambda_h: list[Rational] = []
    eta: list[RationalVector] = Field(description="η̄_i per block.", default=[])
    branch: list[BranchRecord] = Field(description="Generators per block.", default=[])


class FamilyRecord(BaseModel):
    """The vectors whose rank is tracked along sequences."""

    g_indices: list[int] = []
    h_indices: list[int] = []
    generators: list[list[RationalVector]] = Field(
        description="β vectors per block; the family holds ∇Φ_i(x)ᵀβ.", default=[]
    )

    @property
    def size(self) -> int:
        return len(self.g_indices) + len(self.h_indices) + sum(len(b) for b in self.generators)


class SequenceWitness(BaseModel):
    direction: RationalVector
    radii: list[Rational] = Field(description="Radii at which the failure was observed.")
    ranks: list[int]
    family_size: int
    center_rank: int | None = None


class Witness(BaseModel):
    kind: WitnessKind
    family: FamilyRecord | None = None
    candidate: MultiplierCandidate | None = None
    sequence: SequenceWitness | None = None
    certificate: list[Rational] | None = Field(
        description="Exact nonzero coefficients solving the equation at the point.",
        default=None,
    )
    partition: list[int] | None = Field(
        description="Piece chosen per block when the failure is in a subsystem.", default=None
    )


class SubsystemVerdict(BaseModel):
    partition: list[int]
    verdict: Verdict


class CqReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    cq: str
    verdict: Verdict
    point: RationalVector
    witness: Witness | None = None
    scheme: SequenceScheme
    candidates: int = Field(description="Multiplier candidates found.", default=0)
    families: int = Field(description="Distinct families tested along sequences.", default=0)
    subsystems: list[SubsystemVerdict] = []
    notes: list[str] = []

    def pretty_repr(self) -> str:
        lines = [f"{self.cq}: {self.verdict}"]
        w = self.witness
        if w is not None:
            if w.partition is not None:
                lines.append(f"  subsystem pieces: {[r + 1 for r in w.partition]}")
            if w.candidate is not None:
                c = w.candidate
                if c.lambda_h:
                    lines.append(f"  lambda_h: {format_vector(c.lambda_h)} on {c.h_indices}")
                if c.lambda_g:
                    lines.append(f"  lambda_g: {format_vector(c.lambda_g)} on {c.g_indices}")
                for i, eta in enumerate(c.eta):
                    lines.append(f"  eta[{i + 1}]: {format_vector(eta)}")
            if w.certificate is not None:
                lines.append(f"  certificate: {format_vector(w.certificate)}")
            if w.sequence is not None:
                s = w.sequence
                lines.append(
                    f"  direction {format_vector(s.direction)}: ranks {s.ranks} "
                    f"of {s.family_size} at radii {format_rational(s.radii[0])} .. "
                    f"{format_rational(s.radii[-1])}"
                )
        for sub in self.subsystems:
            lines.append(f"  subsystem {[r + 1 for r in sub.partition]}: {sub.verdict}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


class MStatCertificate(BaseModel):
    g_indices: list[int] = []
    lambda_g: list[Rational] = []
    h_indices: list[int] = []
    lambda_h: list[Rational] = []
    eta: list[RationalVector] = []
    strata: list[BranchRecord] = Field(description="Stratum cone used per block.", default=[])
    residual: float = Field(description="Norm of the stationarity equation.", default=0.0)


class MStatReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    point: RationalVector
    stationary: bool
    certificates: list[MStatCertificate] = []
    notes: list[str] = []

    def pretty_repr(self) -> str:
        if not self.stationary:
            return "not M-stationary"
        lines = ["M-stationary"]
        for c in self.certificates:
            if c.lambda_g:
                lines.append(f"  lambda_g: {format_vector(c.lambda_g)} on {c.g_indices}")
            if c.lambda_h:
                lines.append(f"  lambda_h: {format_vector(c.lambda_h)}")
            lines.extend(f"  eta[{i + 1}]: {format_vector(e)}" for i, e in enumerate(c.eta))
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


class StratumRecord(BaseModel):
    point: RationalVector
    rays: list[RationalVector]
    lines: list[RationalVector]
    pieces: list[int]


class NormalConeReport(BaseModel):
    schema_version: int = SCHEMA_VERSION
    kind: NormalConeKind
    block: int
    point: RationalVector = Field(description="Φ_i(x̄), where the cone is taken.")
    rays: list[RationalVector]
    lines: list[RationalVector]
    strata: list[StratumRecord] = []

    def pretty_repr(self) -> str:
        where = format_vector(self.point)
        lines = [f"{self.kind} normal cone of block {self.block + 1} at {where}"]
        lines.append("  rays: " + (", ".join(format_vector(r) for r in self.rays) or "none"))
        lines.append("  lines: " + (", ".join(format_vector(v) for v in self.lines) or "none"))
        for s in self.strata:
            rays = ", ".join(format_vector(r) for r in s.rays)
            span = ", ".join(format_vector(v) for v in s.lines)
            parts = [f"cone{{{rays}}}" if rays else "", f"span{{{span}}}" if span else ""]
            cone = " + ".join(p for p in parts if p)
            lines.append(f"  stratum near {format_vector(s.point)}: {cone or '{0}'}")
        return "\n".join(lines)


class SampleRecord(BaseModel):
    point: list[float]
    g_plus: float
    h_norm: float
    gamma_dists: list[float]
    residual: float
    distance: float
    ratio: float | None = None
    partition: list[int] = []
    partition_gap: float = Field(
        description="Gap between the nearest-partition and full set distances.", default=0.0
    )


class ProfileEntry(BaseModel):
    radius: float
    kappa_hat: float | None
    used: int = Field(description="Samples with a nonnegligible residual.")


class ErrorBoundEstimate(BaseModel):
    schema_version: int = SCHEMA_VERSION
    label: str = "empirical"
    point: RationalVector
    radius: float
    samples: int
    seed: int
    norm: NormKind
    kappa_hat: float | None = Field(
        description="Largest distance-to-residual ratio over the samples.", default=None
    )
    worst_sample: SampleRecord | None = None
    profile: list[ProfileEntry] = []
    monotone: bool | None = Field(
        description="Whether kappa_hat at ε/2 stays within 10% of kappa_hat at ε.", default=None
    )
    records: list[SampleRecord] = Field(default=[], exclude=True)

    def pretty_repr(self) -> str:
        kappa = "n/a" if self.kappa_hat is None else f"{self.kappa_hat:.6g}"
        lines = [f"kappa_hat ({self.label}, {self.norm}): {kappa}"]
        lines.append(f"  radius {self.radius:g}, {self.samples} samples, seed {self.seed}")
        for p in self.profile:
            k = "n/a" if p.kappa_hat is None else f"{p.kappa_hat:.6g}"
            lines.append(f"  eps {p.radius:g}: {k} over {p.used} samples")
        if self.monotone is False:
            lines.append("  note: kappa_hat grows as the radius shrinks")
        return "\n".join(lines)


class ServiceMetadata(BaseModel):
    """Metadata about the verification service."""

    version: str = Field(description="Package version.", examples=["0.1.0"])
    cqs: list[str] = Field(description="Constraint qualifications with a checker.")
    default_scheme: SequenceScheme = Field(description="Sampling scheme used by default.")


class ProgramInput(BaseModel):
    """A program file and a point."""

    program: str = Field(
        description="Program in the TOML program format.",
        examples=['vars = ["x1", "x2"]\n[[blocks]]\nmap = ["x1", "x2"]\nset = "omega_E"\n'],
    )
    point: RationalVector = Field(description="Point as rational strings.", examples=[["0", "0"]])


class CheckInput(ProgramInput):
    cqs: list[str] = Field(description="Checkers to run.", default=["rcpld"], min_length=1)
    radius0: Rational | None = None
    levels: int | None = None
    directions: int | None = None
    seed: int | None = None
    cap: int | None = None

    def overrides(self) -> dict[str, Any]:
        return {
            "radius0": self.radius0,
            "levels": self.levels,
            "directions": self.directions,
            "seed": self.seed,
            "candidate_cap": self.cap,
        }


class CheckResult(BaseModel):
    reports: list[CqReport]
    exit_code: int


class NormalConeInput(ProgramInput):
    block: int = Field(description="Zero-based block index.", default=0, ge=0)
    kind: NormalConeKind = NormalConeKind.LIMITING


class MStatInput(ProgramInput):
    all: bool = Field(description="Return every branch-distinct certificate.", default=False)


class ErrorBoundInput(ProgramInput):
    eps: Rational = Field(description="Sampling radius ε.", default=Fraction(1, 10))
    samples: int = Field(default=1000, ge=1)
    seed: int | None = None
