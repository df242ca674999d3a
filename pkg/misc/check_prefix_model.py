"""Compare the generic-rank prefix rule with explicit GF(256) decoding.

For every multiset of generator indices (L layers, up to T packets) draw random
coefficient vectors `trials` times and count how often Gaussian elimination reaches
the prefix the window rule predicts. Explicit decoding must never exceed it, and
must match it in at least 95% of the draws of every multiset.

Usage: python -m misc.check_prefix_model [L T] [trials]
Without L and T every L <= 4 with up to 6 packets is checked.
"""

import itertools
import sys

import pandas as pd

from config.log_setup import get_logger
from services.coding.packets import StatusMatrix, decodable_prefix, encode, generic_prefix
from services.harness.streams import SCHEDULE_CHECK, stream

logger = get_logger(__name__)

MAX_LAYERS = 4
MAX_PACKETS = 6
DEFAULT_TRIALS = 10_000
MIN_MATCH_RATE = 0.95


def check(layers: int, slots: int, trials: int, seed: int = 0) -> pd.DataFrame:
    """One row per multiset of up to `slots` generator indices, `trials` draws each."""
    multisets = [
        gens
        for size in range(1, slots + 1)
        for gens in itertools.combinations_with_replacement(range(1, layers + 1), size)
    ]
    rows = []
    for index, gens in enumerate(multisets):
        rng = stream(seed, SCHEDULE_CHECK, layers, index)
        expected = generic_prefix(gens)
        matches = exceeded = 0
        for _ in range(trials):
            status = StatusMatrix(layers, len(gens))
            for slot, gen in enumerate(gens):
                status.record(encode(gen, layers, rng, slot=slot))
            got = decodable_prefix(status)
            matches += got == expected
            exceeded += got > expected
        rows.append(
            {
                "L": layers,
                "gens": " ".join(map(str, gens)),
                "generic": expected,
                "trials": trials,
                "match_rate": matches / trials,
                "exceeded": exceeded,
            }
        )
    return pd.DataFrame(rows)


def check_all(trials: int, seed: int = 0) -> pd.DataFrame:
    return pd.concat(
        [check(layers, MAX_PACKETS, trials, seed) for layers in range(1, MAX_LAYERS + 1)],
        ignore_index=True,
    )


def main(argv: list[str]) -> int:
    if len(argv) >= 2:
        trials = int(argv[2]) if len(argv) > 2 else DEFAULT_TRIALS
        frame = check(int(argv[0]), int(argv[1]), trials)
    else:
        trials = int(argv[0]) if argv else DEFAULT_TRIALS
        frame = check_all(trials)

    worst = frame.loc[frame["match_rate"].idxmin()]
    print(f"{len(frame)} multisets, {trials} trials each")
    print(f"  overall match rate: {frame['match_rate'].mean():.4f}")
    print(f"  worst multiset:     L={worst['L']} [{worst['gens']}] ({worst['match_rate']:.4f})")

    failed = 0
    violations = int(frame["exceeded"].sum())
    if violations:
        logger.error("Explicit decoding exceeded the generic prefix %d times", violations)
        failed = 1
    short = frame[frame["match_rate"] < MIN_MATCH_RATE]
    for _, row in short.iterrows():
        logger.error(
            "L=%d [%s] matched the generic prefix in only %.4f of draws",
            row["L"],
            row["gens"],
            row["match_rate"],
        )
        failed = 1
    if not failed:
        print(f"  explicit prefix never exceeded the generic rule; every match rate >= {MIN_MATCH_RATE}")
    return failed


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main(sys.argv[1:]))
