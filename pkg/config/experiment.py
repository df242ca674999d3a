"""Experiment configuration file (JSON) and its conversion to runtime models."""

import json
from pathlib import Path
from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from config.log_setup import get_logger
from models.geometry import Area, BerModel, Point2D, RadioParams
from models.placement import PsoParams
from models.scenario import (
    DEADLINE_RULE,
    ClusterSpec,
    FairnessSpec,
    LayoutKind,
    MonteCarloParams,
    ReceptionModel,
    Scenario,
    ScenarioSpec,
    default_clusters,
)
from models.scheduling import SchemeKind
from services.channel.link import db_to_linear
from services.errors import ConfigError
from services.harness.scenarios import generate_scenario

logger = get_logger(__name__)


class ScenarioSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    layout: LayoutKind = LayoutKind.UNIFORM
    count: Optional[int] = Field(default=None, ge=1)
    users: list[Point2D] = Field(default_factory=list)
    clusters: list[ClusterSpec] = Field(default_factory=default_clusters)
    seed: Optional[int] = Field(default=None, ge=0)
    area: Area = Field(default_factory=Area)
    h: float = Field(default=200.0, gt=0)

    def to_spec(self) -> ScenarioSpec:
        return ScenarioSpec(
            layout=self.layout,
            count=self.count,
            users=self.users,
            clusters=self.clusters,
            seed=self.seed,
        )


class RadioSection(BaseModel):
    """Radio parameters; `_db` keys are in decibels."""

    model_config = ConfigDict(extra="forbid")

    pt: float = Field(default=0.025, gt=0)
    beta0_db: float = -70.0
    sigma2_db: float = -150.0
    n_bits: int = Field(default=10, ge=1)
    ber_model: BerModel = BerModel.PAPER_Q2_SQRT_GAMMA

    def to_radio(self) -> RadioParams:
        return RadioParams(
            beta0=db_to_linear(self.beta0_db),
            pt=self.pt,
            sigma2=db_to_linear(self.sigma2_db),
            n_bits=self.n_bits,
            ber_model=self.ber_model,
        )


class CodingSection(BaseModel):
    model_config = ConfigDict(extra="forbid", populate_by_name=True)

    layers: int = Field(default=4, ge=1, alias="L")
    slots: int = Field(default=10, ge=1, alias="T")


class SimulationSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    reception: ReceptionModel = "generic"
    q: Optional[Point2D] = None
    placement: Literal["fixed", "pso", "grid"] = "fixed"


class OutputSection(BaseModel):
    model_config = ConfigDict(extra="forbid")

    dir: Optional[str] = None
    stem: str = "results"
    format: Optional[Literal["csv", "json"]] = None


class ExperimentConfig(BaseModel):
    """Everything needed to reproduce one run."""

    model_config = ConfigDict(extra="forbid")

    scenario: ScenarioSection = Field(default_factory=ScenarioSection)
    radio: RadioSection = Field(default_factory=RadioSection)
    coding: CodingSection = Field(default_factory=CodingSection)
    fairness: FairnessSpec = Field(default_factory=FairnessSpec)
    pso: PsoParams = Field(default_factory=PsoParams)
    monte_carlo: MonteCarloParams = Field(default_factory=MonteCarloParams)
    simulation: SimulationSection = Field(default_factory=SimulationSection)
    schemes: list[SchemeKind] = Field(
        default_factory=lambda: [
            SchemeKind.UARNC,
            SchemeKind.UARNC_FIXED,
            SchemeKind.RNC,
            SchemeKind.ARQ,
            SchemeKind.RRS,
        ]
    )
    grid_step_m: float = Field(default=50.0, gt=0)
    output: OutputSection = Field(default_factory=OutputSection)

    @model_validator(mode="after")
    def validate_experiment(self):
        if self.coding.slots < self.coding.layers:
            raise ValueError(
                f"{DEADLINE_RULE} violated: T={self.coding.slots} < L={self.coding.layers}"
            )
        if self.fairness.l_min > self.coding.layers:
            raise ValueError(
                f"fairness.l_min={self.fairness.l_min} exceeds L={self.coding.layers}"
            )
        if not self.schemes:
            raise ValueError("At least one scheme is required")
        # Building the layout spec checks cluster counts and explicit user lists
        self.scenario.to_spec()
        return self

    def template(self) -> Scenario:
        """Scenario with a placeholder user at the area center."""
        return Scenario(
            users=[self.scenario.area.center],
            area=self.scenario.area,
            h=self.scenario.h,
            radio=self.radio.to_radio(),
            layers=self.coding.layers,
            slots=self.coding.slots,
            fairness=self.fairness,
        )

    def to_scenario(self) -> Scenario:
        """Concrete scenario; random layouts draw from the master seed's scenario stream."""
        return generate_scenario(
            self.scenario.to_spec(), self.template(), self.monte_carlo.master_seed
        )

    def with_overrides(
        self, seed: Optional[int] = None, runs: Optional[int] = None
    ) -> "ExperimentConfig":
        """Validated copy with command-line overrides applied."""
        data = self.model_dump(mode="json", by_alias=True)
        if seed is not None:
            data["monte_carlo"]["master_seed"] = seed
        if runs is not None:
            data["monte_carlo"]["runs"] = runs
        return ExperimentConfig.model_validate(data)

    def resolved(self) -> dict:
        return self.model_dump(mode="json", by_alias=True)


def _describe(exc: ValidationError) -> str:
    parts = []
    for error in exc.errors():
        loc = ".".join(str(part) for part in error["loc"]) or "<root>"
        parts.append(f"{loc}: {error['msg']}")
    return "; ".join(parts)


def load_config(path: Optional[Union[str, Path]]) -> ExperimentConfig:
    """Parse and validate an experiment file; None or an empty file yields the defaults."""
    if path is None:
        return ExperimentConfig()
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"{path}: cannot read config ({e.strerror or e})") from e

    if not text.strip():
        logger.info("Config %s is empty, using defaults", path)
        return ExperimentConfig()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}:{e.lineno}:{e.colno}: {e.msg}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"{path}: top level must be a JSON object")

    try:
        config = ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise ConfigError(f"{path}: {_describe(e)}") from e
    logger.debug("Loaded config %s", path)
    return config
