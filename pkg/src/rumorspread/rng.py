"""Counter-based random streams for replayable simulation.

Every stream is a Philox generator keyed by the master seed with the counter
words set to (block=0, round, trial, lane). Streams for distinct
(lane, trial, round) triples never overlap because drawing only advances the
low counter word, and a fresh generator is built per triple. This makes every
draw a pure function of (seed, lane, trial, round, position), so traces can be
replayed and protocol variants can be coupled on identical draws.
"""

from __future__ import annotations

import numpy as np

_MASK64 = (1 << 64) - 1

# Lane assignments; keep these stable, they define what a seed reproduces.
LANE_ROUND = 0  # per-round neighbor draws inside protocol runs
LANE_ORIGIN = 1  # per-trial random start node selection
LANE_SAMPLER = 2  # boundary-expansion Monte-Carlo sampling
LANE_GROWTH = 3  # one-round growth estimation


def stream(seed: int, lane: int, trial: int = 0, round_index: int = 0) -> np.random.Generator:
    """A fresh generator for the given (seed, lane, trial, round) address."""
    counter = [0, round_index & _MASK64, trial & _MASK64, lane & _MASK64]
    return np.random.Generator(np.random.Philox(key=int(seed) & _MASK64, counter=counter))


def derive_seed(seed: int, *path: int) -> int:
    """A well-mixed 63-bit seed derived from a root seed and an index path.

    Used to hand independent master seeds to sub-experiments (sweep points,
    component generators) deterministically.
    """
    ss = np.random.SeedSequence(entropy=int(seed) & _MASK64, spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(2, dtype=np.uint64)[0] & (2**63 - 1))
