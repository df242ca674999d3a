"""Experiment description: scenario, layouts, fairness and Monte Carlo parameters."""

from enum import Enum
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from .geometry import Area, Point2D, RadioParams

DEADLINE_RULE = "Deadline T (T ≥ L)"
DEFAULT_USER_COUNT = 20


class FairnessSpec(BaseModel):
    """Every user must decode the first `l_min` layers with probability >= `p_th`."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    l_min: int = Field(default=1, ge=1)
    p_th: float = Field(default=0.9, ge=0.0, le=1.0)


class Scenario(BaseModel):
    """Immutable experiment description."""

    model_config = ConfigDict(frozen=True)

    users: list[Point2D]
    area: Area = Field(default_factory=Area)
    h: float = Field(default=200.0, gt=0)
    radio: RadioParams = Field(default_factory=RadioParams)
    layers: int = Field(default=4, ge=1)
    slots: int = Field(default=10, ge=1)
    fairness: FairnessSpec = Field(default_factory=FairnessSpec)

    @model_validator(mode="after")
    def validate_scenario(self):
        if not self.users:
            raise ValueError("Scenario needs at least one user (K >= 1)")
        if self.slots < self.layers:
            raise ValueError(
                f"{DEADLINE_RULE} violated: T={self.slots} < L={self.layers}"
            )
        if self.fairness.l_min > self.layers:
            raise ValueError(
                f"fairness.l_min={self.fairness.l_min} exceeds L={self.layers}"
            )
        for i, user in enumerate(self.users):
            if not self.area.contains(user):
                raise ValueError(f"User {i} at ({user.x}, {user.y}) lies outside the area")
        return self

    @property
    def num_users(self) -> int:
        return len(self.users)

    def with_coding(
        self, layers: Optional[int] = None, slots: Optional[int] = None
    ) -> "Scenario":
        """Validated copy with a different (L, T)."""
        data = self.model_dump()
        if layers is not None:
            data["layers"] = layers
        if slots is not None:
            data["slots"] = slots
        return Scenario.model_validate(data)


class LayoutKind(str, Enum):
    EXPLICIT = "explicit"
    UNIFORM = "uniform"
    CLUSTERS = "clusters"


class ClusterSpec(BaseModel):
    """Gaussian hotspot; sigma=0 places every member exactly on the center."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    center: Point2D
    sigma: float = Field(default=60.0, ge=0.0)
    count: int = Field(ge=1)


def default_clusters() -> list[ClusterSpec]:
    # 3 hotspots, 20 users total
    return [
        ClusterSpec(center=Point2D(x=-300.0, y=250.0), sigma=60.0, count=7),
        ClusterSpec(center=Point2D(x=250.0, y=300.0), sigma=60.0, count=7),
        ClusterSpec(center=Point2D(x=200.0, y=-300.0), sigma=60.0, count=6),
    ]


class ScenarioSpec(BaseModel):
    """How user positions are produced."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    layout: LayoutKind = LayoutKind.UNIFORM
    count: Optional[int] = Field(default=None, ge=1)
    users: list[Point2D] = Field(default_factory=list)
    clusters: list[ClusterSpec] = Field(default_factory=default_clusters)
    seed: Optional[int] = Field(default=None, ge=0)

    @model_validator(mode="after")
    def validate_layout(self):
        if self.layout is LayoutKind.EXPLICIT and not self.users:
            raise ValueError("Explicit layout requires a non-empty user list")
        if self.layout is LayoutKind.CLUSTERS:
            if not self.clusters:
                raise ValueError("Clustered layout requires at least one cluster")
            total = sum(c.count for c in self.clusters)
            if self.count is not None and self.count != total:
                raise ValueError(
                    f"Cluster counts sum to {total} but count={self.count}"
                )
        return self

    @property
    def num_users(self) -> int:
        if self.layout is LayoutKind.EXPLICIT:
            return len(self.users)
        if self.layout is LayoutKind.CLUSTERS:
            return sum(c.count for c in self.clusters)
        return self.count or DEFAULT_USER_COUNT


class MonteCarloParams(BaseModel):
    """Replication count and the master seed all substreams derive from."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    runs: int = Field(default=200, ge=1)
    master_seed: int = Field(default=0, ge=0, lt=2**64)


ReceptionModel = Literal["generic", "explicit"]
