"""Monte Carlo fitness of a UAV position under common random numbers."""

from typing import Optional, Sequence

from config.log_setup import get_logger
from models.geometry import Point2D
from models.scenario import MonteCarloParams, ReceptionModel, Scenario
from models.scheduling import SchemeKind
from services.harness.streams import fitness_rng
from services.harness.workers import map_ordered
from services.scheduler.episode import Policy, run_episode

logger = get_logger(__name__)


class FitnessEvaluator:
    """Mean UARNC throughput over R episodes.

    Episode r always draws from the same fitness substream, whatever position is
    scored, so two positions are compared on identical erasure uniforms. Reported
    Monte Carlo rows use the episode substream instead.
    """

    def __init__(
        self,
        scenario: Scenario,
        mc: MonteCarloParams,
        scheme: Policy = SchemeKind.UARNC,
        reception: ReceptionModel = "generic",
    ):
        self.scenario = scenario
        self.mc = mc
        self.scheme = scheme
        self.reception = reception

    def __call__(self, q: Point2D) -> float:
        total = 0.0
        for run in range(self.mc.runs):
            result = run_episode(
                self.scenario,
                q,
                self.scheme,
                fitness_rng(self.mc.master_seed, run),
                reception=self.reception,
            )
            total += result.throughput
        return total / self.mc.runs


def fitness(q: Point2D, scenario: Scenario, mc: MonteCarloParams) -> float:
    return FitnessEvaluator(scenario, mc)(q)


class CachedFitness:
    """Memoizes an evaluator by exact position."""

    def __init__(self, evaluator: FitnessEvaluator):
        self.evaluator = evaluator
        self._memo: dict[tuple[float, float], float] = {}
        self.hits = 0
        self.misses = 0

    def __call__(self, q: Point2D) -> float:
        key = q.as_tuple()
        if key in self._memo:
            self.hits += 1
            return self._memo[key]
        self.misses += 1
        value = self.evaluator(q)
        self._memo[key] = value
        return value

    async def evaluate_many(
        self, points: Sequence[Point2D], workers: Optional[int] = None
    ) -> list[float]:
        """Score a batch; repeated and already-seen positions are computed once."""
        pending: list[Point2D] = []
        seen: set[tuple[float, float]] = set()
        for q in points:
            key = q.as_tuple()
            if key in self._memo or key in seen:
                self.hits += 1
                continue
            seen.add(key)
            pending.append(q)

        if pending:
            logger.debug(
                "Fitness cache miss for %d of %d positions", len(pending), len(points)
            )
            values = await map_ordered(self.evaluator, pending, workers)
            for q, value in zip(pending, values):
                self._memo[q.as_tuple()] = float(value)
            self.misses += len(pending)
        return [self._memo[q.as_tuple()] for q in points]

    @property
    def hit_rate(self) -> float:
        lookups = self.hits + self.misses
        return self.hits / lookups if lookups else 0.0

    def stats(self) -> dict[str, float]:
        return {"hits": self.hits, "misses": self.misses, "hit_rate": self.hit_rate}
