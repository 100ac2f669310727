"""Seeded random streams.

Every stream is a PCG64 generator keyed by ``SeedSequence(seed, spawn_key=key)``.
Keys are ``(purpose, index)`` tuples, so coefficient ``k`` of a prior draw or of
an observation channel is reproduced regardless of the truncation level and of
which other streams were consumed.
"""
import numpy as np

PRIOR = 1
NOISE_X1 = 2
NOISE_X2 = 3
SAMPLER = 4


def stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed), spawn_key=tuple(key))))


def coefficient_normals(seed: int, purpose: int, m: int) -> np.ndarray:
    """One standard normal per coefficient ``k = 1..m``, each from its own substream."""
    return np.array([stream(seed, purpose, k).standard_normal() for k in range(1, m + 1)])
