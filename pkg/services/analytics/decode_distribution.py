"""Closed-form prefix-decoding probabilities and the fairness constraint."""

from math import comb

from pydantic import BaseModel, ConfigDict

from models.geometry import Point2D
from models.scenario import FairnessSpec, Scenario
from services.channel.link import packet_error_rates
from services.errors import ParameterError


class DecodeDistribution(BaseModel):
    """f(1..L) for one (L, T, p); the missing mass is the chance of decoding nothing."""

    model_config = ConfigDict(frozen=True)

    layers: int
    slots: int
    p: float
    probs: tuple[float, ...]

    @property
    def nothing(self) -> float:
        """Probability of decoding no packet at all."""
        return max(0.0, 1.0 - sum(self.probs))


def _check(l: int, layers: int, slots: int, p: float) -> None:
    if not 1 <= l <= layers:
        raise ParameterError(f"Prefix length must be in [1, L={layers}], got {l}")
    if layers > slots:
        raise ParameterError(f"Deadline T (T ≥ L) violated: L={layers} > T={slots}")
    if not 0.0 <= p <= 1.0:
        raise ParameterError(f"Packet error rate must be in [0, 1], got {p}")


def decode_prob(l: int, layers: int, slots: int, p: float) -> float:
    """Probability of decoding exactly the first l packets with per-slot loss p."""
    _check(l, layers, slots, p)
    s = 1.0 - p
    if l == layers:
        return sum(
            comb(slots, i) * s**i * p ** (slots - i) for i in range(layers, slots + 1)
        )
    rest = slots - l - 1
    tail = sum(comb(rest, i) * s**i * p ** (rest - i) for i in range(layers - l))
    return s**l * p * tail


def decode_distribution(layers: int, slots: int, p: float) -> DecodeDistribution:
    """decode_prob for every prefix length 1..L at once."""
    return DecodeDistribution(
        layers=layers,
        slots=slots,
        p=p,
        probs=tuple(decode_prob(l, layers, slots, p) for l in range(1, layers + 1)),
    )


def at_least_prob(l: int, layers: int, slots: int, p: float) -> float:
    """Probability of decoding at least the first l packets."""
    _check(l, layers, slots, p)
    return sum(decode_prob(j, layers, slots, p) for j in range(l, layers + 1))


class FairnessReport(BaseModel):
    """Per-user PER and P_{i,l} at one UAV position."""

    model_config = ConfigDict(frozen=True)

    q: Point2D
    pers: tuple[float, ...]
    at_least: tuple[float, ...]
    p_th: float

    @property
    def feasible(self) -> bool:
        return all(value >= self.p_th for value in self.at_least)

    @property
    def worst_user(self) -> int:
        return min(range(len(self.at_least)), key=lambda i: self.at_least[i])


def fairness_report(q: Point2D, scenario: Scenario, spec: FairnessSpec) -> FairnessReport:
    """PER and at-least-l_min probability of every user for a UAV at `q`."""
    pers = packet_error_rates(scenario, q)
    return FairnessReport(
        q=q,
        pers=tuple(float(p) for p in pers),
        at_least=tuple(
            at_least_prob(spec.l_min, scenario.layers, scenario.slots, float(p))
            for p in pers
        ),
        p_th=spec.p_th,
    )


def feasible(q: Point2D, scenario: Scenario, spec: FairnessSpec) -> bool:
    """Every user decodes the first l_min packets with probability at least p_th."""
    if spec.p_th <= 0.0:
        return True
    return fairness_report(q, scenario, spec).feasible
