"""Deterministic per-sample RNG streams.

Samplers in this package draw scalar variates in tight Python loops, where
``random.Random`` is noticeably faster than a numpy ``Generator``.  Streams
are derived from a 64-bit master seed through ``numpy.random.SeedSequence``
so that sample ``k`` of a batch is a pure function of ``(seed, stream, k)``,
independent of worker count or scheduling.
"""

import random

import numpy as np

__all__ = ["derive_rng"]


def derive_rng(seed: int, *key: int) -> random.Random:
    """Return an independent ``random.Random`` for the given seed and key path.

    ``key`` typically is ``(stream, sample_index)``; distinct key paths give
    statistically independent streams even for adjacent integer seeds.
    """
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(key))
    state = ss.generate_state(4, np.uint32)
    return random.Random(int.from_bytes(state.tobytes(), "little"))
