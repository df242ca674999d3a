"""SVC layering rule for uncoded delivery."""

from typing import Iterable


def useful_packets(held: Iterable[int]) -> int:
    """Length of the contiguous prefix {1..l} contained in `held`."""
    held = set(held)
    prefix = 0
    while prefix + 1 in held:
        prefix += 1
    return prefix
