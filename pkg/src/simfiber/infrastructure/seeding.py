"""Deterministic seed derivation for trials, sweep points and symbol blocks."""

import numpy as np


def derive_seed(master: int, *keys: int) -> int:
    """Derive an independent 64-bit seed from a master seed and a key path.

    The same (master, keys) always yields the same seed and distinct key paths
    yield statistically independent streams, so trial i's seed does not
    depend on how many other trials or workers exist.
    """
    sequence = np.random.SeedSequence([master, *keys])
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def make_rng(master: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master, *keys))
