from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class ToleranceSettings(BaseSettings):
    """Numerical tolerances."""

    DISTRIBUTION: float = Field(default=1e-12, gt=0, description="Distribution normalization tolerance")
    FACTORIZATION: float = Field(default=1e-12, gt=0, description="Relative tolerance of the product factorization test")
    CLUSTER: float = Field(default=1e-8, gt=0, description="Relative gap separating eigenvalue clusters")
    RANK: float = Field(default=1e-10, gt=0, description="Relative pivot threshold for numerical rank")
    VERIFY: float = Field(default=1e-9, gt=0, description="Default tolerance of theorem verification")

    model_config = SettingsConfigDict(
        env_prefix="HODGESEQ_TOL_",
        case_sensitive=True,
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )


class Settings(BaseSettings):
    """Application settings."""

    LOG_LEVEL: str = Field(default="INFO", description="Logging level")

    CELL_BUDGET: int = Field(
        default=200_000,
        gt=0,
        description="Maximum number of cells stored in a single dimension"
    )
    DENSE_LIMIT: int = Field(
        default=4096,
        gt=0,
        description="Largest cochain space handed to the dense symmetric eigensolver"
    )
    BASE_VERTEX: int = Field(default=0, ge=0, description="Default base vertex of the f(eta) eigenbasis")
    FLOAT_DIGITS: int = Field(default=17, ge=1, description="Significant digits of floats in CSV/JSON output")
    CONFIG_DIR: str = Field(default="files", description="Directory holding example complex and weight descriptions")

    tol: ToleranceSettings = Field(default_factory=ToleranceSettings)

    model_config = SettingsConfigDict(
        env_prefix="HODGESEQ_",
        case_sensitive=True,
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )

    def with_overrides(self, **overrides) -> "Settings":
        """Return a copy with top-level or ``tol_*`` fields replaced.

        ``None`` values are ignored so CLI flags that were not given keep
        the configured value.
        """
        top = {}
        tol = {}
        for key, value in overrides.items():
            if value is None:
                continue
            if key.startswith("tol_"):
                tol[key[4:].upper()] = value
            else:
                top[key.upper()] = value
        updated = self.model_copy(update=top)
        if tol:
            updated.tol = self.tol.model_copy(update=tol)
        return updated


# Global settings instance
settings = Settings()
