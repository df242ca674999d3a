"""Particle swarm state and placement results."""

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from .geometry import Area, Point2D


class PsoParams(BaseModel):
    """Swarm coefficients; `vmax=None` means 20% of the longest side of `bounds`."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    w: float = 0.729
    c1: float = Field(default=1.4955, ge=0.0)
    c2: float = Field(default=1.4955, ge=0.0)
    sizepop: int = Field(default=100, ge=1)
    maxg: int = Field(default=400, ge=1)
    vmax: Optional[float] = Field(default=None, gt=0.0)
    bounds: Optional[Area] = None
    random_inertia: bool = False
    init_velocity: Literal["random", "zero"] = "random"
    stall_iterations: Optional[int] = Field(default=None, ge=1)
    stall_tolerance: float = Field(default=1e-6, ge=0.0)
    log_every: int = Field(default=10, ge=1)

    @property
    def velocity_clamp(self) -> float:
        if self.vmax is not None:
            return self.vmax
        if self.bounds is None:
            raise ValueError("PsoParams needs bounds or an explicit vmax")
        return 0.2 * self.bounds.longest_side

    def within(self, area: Area) -> "PsoParams":
        """Copy whose search rectangle defaults to `area`."""
        if self.bounds is not None:
            return self
        return self.model_copy(update={"bounds": area})


class Particle(BaseModel):
    """Position o, velocity v and the personal best of one particle."""

    o: Point2D
    v: tuple[float, float] = (0.0, 0.0)
    pbest: Point2D
    pbest_fit: float = float("-inf")


class TraceRecord(BaseModel):
    """Global best after one iteration."""

    model_config = ConfigDict(frozen=True)

    iter: int
    gbest_fit: float
    qx: float
    qy: float


class SwarmResult(BaseModel):
    """Best position found by a placement search."""

    model_config = ConfigDict(frozen=True)

    q_star: Point2D
    fitness: float
    trace: tuple[TraceRecord, ...] = ()
    evaluations: int = 0
    method: Literal["pso", "grid", "fixed"] = "pso"

    @property
    def iterations(self) -> int:
        return len(self.trace)
