from enum import StrEnum
from fractions import Fraction
from typing import Annotated, Any

from dotenv import find_dotenv
from pydantic import BeforeValidator, Field, SecretStr, computed_field
from pydantic_settings import BaseSettings, SettingsConfigDict


class NormKind(StrEnum):
    L1 = "l1"
    L2 = "l2"
    LINF = "linf"


class OutputFormat(StrEnum):
    TEXT = "text"
    JSON = "json"


def check_str_is_rational(x: Any) -> str:
    """Accept anything ``Fraction`` can read and keep it as its canonical string."""
    try:
        value = Fraction(str(x).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"not a rational literal: {x!r}") from e
    if value <= 0:
        raise ValueError(f"expected a positive rational, got {x!r}")
    return str(value)


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_file=find_dotenv(),
        env_file_encoding="utf-8",
        env_prefix="MPDC_",
        env_ignore_empty=True,
        extra="ignore",
        validate_default=False,
    )
    MODE: str | None = None

    HOST: str = "0.0.0.0"
    PORT: int = 8080

    AUTH_SECRET: SecretStr | None = None

    LOG_LEVEL: str = "WARNING"

    # Tolerances
    RANK_TOL: float = Field(default=1e-8, description="Relative threshold of the float rank test")
    FEAS_TOL: float = Field(default=1e-9, description="Feasibility tolerance for rational data")
    FEAS_TOL_FLOAT: float = Field(default=1e-7, description="Feasibility tolerance otherwise")
    LP_TOL: float = Field(default=1e-9, description="Residual bound for certificate equations")

    # Sequence scheme
    RADIUS0: Annotated[str, BeforeValidator(check_str_is_rational)] = "1/100"
    LEVELS: int = 20
    DIRECTIONS: int = 64
    SEED: int = 0
    DEPENDENCE_START: int = 5
    WITNESS_WINDOW: int = 8
    CANDIDATE_CAP: int = 10_000

    NORM: NormKind = NormKind.L1
    OUTPUT_FORMAT: OutputFormat = OutputFormat.TEXT

    # Error-bound harness
    EB_STARTS: int = 8
    EB_MAX_ITER: int = 200

    def model_post_init(self, __context: Any) -> None:
        for name in ("RANK_TOL", "FEAS_TOL", "FEAS_TOL_FLOAT", "LP_TOL"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.LEVELS < 1:
            raise ValueError("LEVELS must be at least 1")
        if self.DIRECTIONS < 0:
            raise ValueError("DIRECTIONS must be nonnegative")
        if not 1 <= self.WITNESS_WINDOW <= self.LEVELS + 1:
            raise ValueError("WITNESS_WINDOW must lie in [1, LEVELS + 1]")
        if not 0 <= self.DEPENDENCE_START <= self.LEVELS:
            raise ValueError("DEPENDENCE_START must lie in [0, LEVELS]")
        if self.CANDIDATE_CAP < 1:
            raise ValueError("CANDIDATE_CAP must be positive")

    @computed_field
    @property
    def BASE_URL(self) -> str:
        return f"http://{self.HOST}:{self.PORT}"

    def is_dev(self) -> bool:
        return self.MODE == "dev"


settings = Settings()
