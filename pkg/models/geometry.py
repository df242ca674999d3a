"""Positions, UAV pose and radio parameters."""

import math
from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator


class Point2D(BaseModel):
    """Horizontal coordinate in meters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    x: float
    y: float

    @model_validator(mode="before")
    @classmethod
    def accept_pairs(cls, data):
        if isinstance(data, (list, tuple)) and len(data) == 2:
            return {"x": data[0], "y": data[1]}
        return data

    @field_validator("x", "y")
    def validate_finite(cls, v):
        if not math.isfinite(v):
            raise ValueError(f"Coordinate must be finite, got {v}")
        return v

    def as_tuple(self) -> tuple[float, float]:
        return (self.x, self.y)

    @classmethod
    def of(cls, xy) -> "Point2D":
        """Build from any (x, y) pair."""
        x, y = xy
        return cls(x=float(x), y=float(y))


class Area(BaseModel):
    """Axis-aligned rectangle [xmin, xmax] x [ymin, ymax] in meters."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    xmin: float = -500.0
    xmax: float = 500.0
    ymin: float = -500.0
    ymax: float = 500.0

    @model_validator(mode="after")
    def validate_bounds(self):
        for value in (self.xmin, self.xmax, self.ymin, self.ymax):
            if not math.isfinite(value):
                raise ValueError("Area bounds must be finite")
        if self.xmin > self.xmax or self.ymin > self.ymax:
            raise ValueError(
                f"Area bounds inverted: x=[{self.xmin}, {self.xmax}] y=[{self.ymin}, {self.ymax}]"
            )
        return self

    @property
    def center(self) -> Point2D:
        return Point2D(x=(self.xmin + self.xmax) / 2, y=(self.ymin + self.ymax) / 2)

    @property
    def longest_side(self) -> float:
        return max(self.xmax - self.xmin, self.ymax - self.ymin)

    def contains(self, p: Point2D) -> bool:
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax

    def clamp(self, x: float, y: float) -> Point2D:
        """Nearest point of the rectangle."""
        return Point2D(
            x=min(max(x, self.xmin), self.xmax),
            y=min(max(y, self.ymin), self.ymax),
        )


class UavPose(BaseModel):
    """UAV hover position at a fixed altitude."""

    model_config = ConfigDict(frozen=True)

    q: Point2D
    h: float = 200.0


class BerModel(str, Enum):
    # Q(2*sqrt(gamma)), as written for the BPSK link
    PAPER_Q2_SQRT_GAMMA = "paper_q2_sqrt_gamma"
    # Textbook coherent BPSK Q(sqrt(2*gamma))
    STANDARD_BPSK = "standard_bpsk"


class RadioParams(BaseModel):
    """Linear-unit radio parameters; dB values are converted before construction."""

    model_config = ConfigDict(frozen=True)

    beta0: float = Field(default=1e-7, gt=0)
    pt: float = Field(default=0.025, gt=0)
    sigma2: float = Field(default=1e-15, gt=0)
    n_bits: int = Field(default=10, ge=1)
    ber_model: BerModel = BerModel.PAPER_Q2_SQRT_GAMMA
