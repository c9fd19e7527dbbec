"""Counter-based uniforms: value (seed, replication, variable) -> [0, 1).

No generator state is carried between draws, so any split of the
replications across chunks or workers yields identical samples.
"""
from __future__ import annotations

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK = (1 << 64) - 1


def mix64(z):
    """SplitMix64 finaliser, elementwise on uint64 arrays (wrapping arithmetic)."""
    z = np.asarray(z, dtype=np.uint64)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def stream_seeds(base_seed: int, replications) -> np.ndarray:
    """Per-replication seed mix64(base_seed + (r + 1) * GOLDEN)."""
    base = np.uint64(int(base_seed) & _MASK)
    r = np.asarray(replications, dtype=np.uint64)
    return mix64(base + (r + np.uint64(1)) * GOLDEN)


def uniforms(base_seed: int, replications, n_vars: int) -> np.ndarray:
    """Array of shape (len(replications), n_vars) of doubles in [0, 1)."""
    seeds = stream_seeds(base_seed, replications)[:, None]
    j = np.arange(1, n_vars + 1, dtype=np.uint64)[None, :]
    bits = mix64(seeds + j * GOLDEN) >> np.uint64(11)
    return bits.astype(np.float64) * (1.0 / (1 << 53))
