"""
Deterministic random streams.

Every stream is a numpy Generator over the counter-based Philox bit generator.
Child seeds are derived from (master seed, key...) through SeedSequence, so a
trial's stream depends only on its coordinates and never on scheduling.
"""

from typing import Optional

import numpy as np

from src.config import Config
from src.utils.errors import UsageError


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(int(seed)))


def derive_seed(master_seed: int, *keys: int) -> int:
    """Stable 64-bit child seed for (master_seed, keys)"""
    sequence = np.random.SeedSequence(entropy=int(master_seed), spawn_key=tuple(int(k) for k in keys))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def child_rng(master_seed: int, *keys: int) -> np.random.Generator:
    return make_rng(derive_seed(master_seed, *keys))


def resolve_master_seed(seed: Optional[int]) -> int:
    """Explicit seed, else ZSL_SEED from the environment"""
    if seed is not None:
        return int(seed)
    if Config.ZSL_SEED is not None:
        return int(Config.ZSL_SEED)
    raise UsageError("no master seed: pass --seed or set ZSL_SEED")
