"""Labeled, disjoint random substreams of one master seed."""

import hashlib

import numpy as np

SCENARIO = "scenario"
EPISODE = "episode"
FITNESS = "fitness"
PSO = "pso"
SCHEDULE_CHECK = "prefix-check"


def label_key(label: str) -> int:
    """Stable 64-bit key of a purpose label."""
    digest = hashlib.sha256(label.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def seed_entropy(master_seed: int, label: str, *indices: int) -> tuple[int, ...]:
    return (int(master_seed), label_key(label), *(int(i) for i in indices))


def stream(master_seed: int, label: str, *indices: int) -> np.random.Generator:
    """Fresh generator for (master_seed, label, indices).

    A new SeedSequence is built on every call: spawning children mutates a
    SeedSequence, so sharing one across episodes would break common random numbers.
    """
    return np.random.default_rng(np.random.SeedSequence(seed_entropy(master_seed, label, *indices)))


def episode_rng(master_seed: int, run: int) -> np.random.Generator:
    return stream(master_seed, EPISODE, run)


def fitness_rng(master_seed: int, run: int) -> np.random.Generator:
    """Replication `run` of placement scoring, disjoint from the reported episodes."""
    return stream(master_seed, FITNESS, run)
