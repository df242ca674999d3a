"""User layouts: explicit lists, uniform drops and Gaussian hotspots."""

import numpy as np

from config.log_setup import get_logger
from models.geometry import Area, Point2D
from models.scenario import ClusterSpec, LayoutKind, Scenario, ScenarioSpec
from services.errors import ParameterError

from .streams import SCENARIO, stream

logger = get_logger(__name__)

MAX_RESAMPLES = 10_000


def _uniform(area: Area, count: int, rng: np.random.Generator) -> list[Point2D]:
    xs = rng.uniform(area.xmin, area.xmax, size=count)
    ys = rng.uniform(area.ymin, area.ymax, size=count)
    return [Point2D(x=float(x), y=float(y)) for x, y in zip(xs, ys)]


def _cluster(area: Area, cluster: ClusterSpec, rng: np.random.Generator) -> list[Point2D]:
    """Gaussian draws around the center, redrawn until they land inside the area."""
    if cluster.sigma == 0.0:
        return [cluster.center] * cluster.count
    points: list[Point2D] = []
    for _ in range(cluster.count):
        for _ in range(MAX_RESAMPLES):
            x, y = rng.normal(cluster.center.as_tuple(), cluster.sigma)
            candidate = Point2D(x=float(x), y=float(y))
            if area.contains(candidate):
                points.append(candidate)
                break
        else:
            raise ParameterError(
                f"Cluster at ({cluster.center.x}, {cluster.center.y}) with sigma={cluster.sigma} "
                f"keeps falling outside the area"
            )
    return points


def generate_scenario(spec: ScenarioSpec, base: Scenario, master_seed: int = 0) -> Scenario:
    """`base` with its users replaced by the layout `spec` describes.

    The layout seed is `spec.seed` when given, else the scenario substream of
    `master_seed`.
    """
    if spec.layout is LayoutKind.EXPLICIT:
        users = list(spec.users)
    else:
        rng = (
            np.random.default_rng(spec.seed)
            if spec.seed is not None
            else stream(master_seed, SCENARIO)
        )
        if spec.layout is LayoutKind.UNIFORM:
            users = _uniform(base.area, spec.num_users, rng)
        else:
            users = [p for cluster in spec.clusters for p in _cluster(base.area, cluster, rng)]
    logger.debug("Generated %s layout with %d users", spec.layout.value, len(users))
    data = base.model_dump()
    data["users"] = [u.model_dump() for u in users]
    return Scenario.model_validate(data)
