"""Aggregated experiment rows."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

RESULT_COLUMNS = (
    "scheme",
    "L",
    "T",
    "K",
    "qx",
    "qy",
    "mean_throughput",
    "ci95_lo",
    "ci95_hi",
    "runs",
    "seed",
    "feasible",
)


class ResultsRow(BaseModel):
    """Monte Carlo estimate of one (scheme, L, T, position) cell."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    scheme: str
    layers: int = Field(alias="L")
    slots: int = Field(alias="T")
    num_users: int = Field(alias="K")
    qx: float
    qy: float
    mean_throughput: float
    ci95_lo: float
    ci95_hi: float
    runs: int
    seed: int
    feasible: bool = True

    @model_validator(mode="after")
    def validate_interval(self):
        if not self.ci95_lo <= self.mean_throughput <= self.ci95_hi:
            raise ValueError(
                f"CI [{self.ci95_lo}, {self.ci95_hi}] does not contain the mean {self.mean_throughput}"
            )
        return self

    def as_record(self) -> dict:
        return self.model_dump(by_alias=True)


class ResultsTable(BaseModel):
    rows: list[ResultsRow] = Field(default_factory=list)

    def __len__(self) -> int:
        return len(self.rows)
