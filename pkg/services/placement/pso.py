"""Particle swarm search for the UAV hover position under the fairness constraint."""

from typing import Optional

import numpy as np

from config.log_setup import get_logger
from models.geometry import Point2D
from models.placement import Particle, PsoParams, SwarmResult, TraceRecord
from models.scenario import FairnessSpec, MonteCarloParams, Scenario
from services.analytics.decode_distribution import feasible
from services.errors import InfeasibleProblemError

from .fitness import CachedFitness, FitnessEvaluator

logger = get_logger(__name__)

INIT_BUDGET_FACTOR = 10


def update_velocity(
    p: Particle, gbest: Point2D, params: PsoParams, rng: np.random.Generator
) -> tuple[float, float]:
    """Inertia plus cognitive and social pulls, clamped per axis to +-vmax."""
    w = 0.5 + rng.random() / 2.0 if params.random_inertia else params.w
    phi1 = rng.random(2)
    phi2 = rng.random(2)
    o = np.array(p.o.as_tuple())
    v = (
        w * np.array(p.v)
        + params.c1 * phi1 * (np.array(p.pbest.as_tuple()) - o)
        + params.c2 * phi2 * (np.array(gbest.as_tuple()) - o)
    )
    vmax = params.velocity_clamp
    v = np.clip(v, -vmax, vmax)
    return float(v[0]), float(v[1])


def update_position(
    p: Particle,
    v_new: tuple[float, float],
    scenario: Scenario,
    spec: FairnessSpec,
    params: PsoParams,
) -> Point2D:
    """Clamped move, kept only if the new point satisfies the fairness constraint."""
    bounds = params.bounds or scenario.area
    candidate = bounds.clamp(p.o.x + v_new[0], p.o.y + v_new[1])
    if feasible(candidate, scenario, spec):
        return candidate
    return p.o


def initial_positions(
    scenario: Scenario, spec: FairnessSpec, params: PsoParams, rng: np.random.Generator
) -> list[Point2D]:
    """Rejection-sample feasible starting points within a fixed draw budget."""
    bounds = params.bounds or scenario.area
    budget = INIT_BUDGET_FACTOR * params.sizepop
    found: list[Point2D] = []
    for _ in range(budget):
        candidate = Point2D(
            x=float(rng.uniform(bounds.xmin, bounds.xmax)),
            y=float(rng.uniform(bounds.ymin, bounds.ymax)),
        )
        if feasible(candidate, scenario, spec):
            found.append(candidate)
            if len(found) == params.sizepop:
                return found
    if not found:
        raise InfeasibleProblemError(
            f"No feasible position in {budget} draws "
            f"(l_min={spec.l_min}, p_th={spec.p_th})"
        )
    logger.warning(
        "Only %d of %d particles found feasible starts; reusing them",
        len(found),
        params.sizepop,
    )
    return [found[i % len(found)] for i in range(params.sizepop)]


def _best(particles: list[Particle]) -> tuple[Point2D, float]:
    best = particles[0]
    for particle in particles[1:]:
        if particle.pbest_fit > best.pbest_fit:
            best = particle
    return best.pbest, best.pbest_fit


async def optimize(
    scenario: Scenario,
    spec: FairnessSpec,
    params: PsoParams,
    mc: MonteCarloParams,
    rng: np.random.Generator,
    workers: Optional[int] = None,
    fitness: Optional[CachedFitness] = None,
) -> SwarmResult:
    """Swarm search over the area; iteration 0 is the initial population.

    Fitness evaluations of one iteration run in parallel, every random draw and
    the global-best fold happen in particle order.
    """
    params = params.within(scenario.area)
    fitness = fitness or CachedFitness(FitnessEvaluator(scenario, mc))
    vmax = params.velocity_clamp

    starts = initial_positions(scenario, spec, params, rng)
    particles: list[Particle] = []
    for o in starts:
        if params.init_velocity == "zero":
            v = (0.0, 0.0)
        else:
            draw = rng.uniform(-vmax, vmax, size=2)
            v = (float(draw[0]), float(draw[1]))
        particles.append(Particle(o=o, v=v, pbest=o))

    scores = await fitness.evaluate_many([p.o for p in particles], workers)
    for particle, score in zip(particles, scores):
        particle.pbest_fit = score
    gbest, gbest_fit = _best(particles)
    trace = [TraceRecord(iter=0, gbest_fit=gbest_fit, qx=gbest.x, qy=gbest.y)]
    logger.info(
        "PSO start: %d particles, gbest %.6f at (%.1f, %.1f)",
        len(particles),
        gbest_fit,
        gbest.x,
        gbest.y,
    )

    stalled = 0
    for it in range(1, params.maxg):
        for particle in particles:
            v_new = update_velocity(particle, gbest, params, rng)
            particle.o = update_position(particle, v_new, scenario, spec, params)
            particle.v = v_new

        scores = await fitness.evaluate_many([p.o for p in particles], workers)
        for particle, score in zip(particles, scores):
            if score > particle.pbest_fit:
                particle.pbest = particle.o
                particle.pbest_fit = score

        previous = gbest_fit
        best, best_fit = _best(particles)
        if best_fit > gbest_fit:
            gbest, gbest_fit = best, best_fit
        trace.append(TraceRecord(iter=it, gbest_fit=gbest_fit, qx=gbest.x, qy=gbest.y))
        if it % params.log_every == 0:
            logger.info(
                "PSO iter %d: gbest %.6f at (%.1f, %.1f)", it, gbest_fit, gbest.x, gbest.y
            )

        if params.stall_iterations is not None:
            stalled = stalled + 1 if gbest_fit - previous <= params.stall_tolerance else 0
            if stalled >= params.stall_iterations:
                logger.info("PSO stopped after %d stalled iterations", stalled)
                break

    logger.info(
        "PSO done: q*=(%.2f, %.2f) fitness %.6f, %d evaluations, cache %s",
        gbest.x,
        gbest.y,
        gbest_fit,
        fitness.misses,
        fitness.stats(),
    )
    return SwarmResult(
        q_star=gbest,
        fitness=gbest_fit,
        trace=tuple(trace),
        evaluations=fitness.misses,
        method="pso",
    )
