"""Deterministic random substreams derived from a single master seed.

Every randomized stage derives its generator via :func:`substream` with a
stage label (plus optional indices), so adding or reordering stages never
perturbs the draws of other stages.
"""

from __future__ import annotations

import hashlib

import numpy as np

__all__ = ["derive_seed", "substream"]


def _label_words(labels: tuple) -> list[int]:
    digest = hashlib.sha256(repr(labels).encode("utf-8")).digest()
    return [int.from_bytes(digest[i : i + 4], "little") for i in range(0, 16, 4)]


def substream(seed: int, *labels) -> np.random.Generator:
    """A Generator keyed by (seed, labels); stable across runs and platforms.

    Parameters
    ----------
    seed : int
        Master seed (for example the --seed CLI value).
    *labels
        Stage name and optional indices, e.g. ``("partition", 3)``.

    Returns
    -------
    numpy.random.Generator
        PCG64 generator seeded from SeedSequence(seed, entropy-from-labels).
    """
    seq = np.random.SeedSequence([int(seed) & 0xFFFFFFFF] + _label_words(labels))
    return np.random.Generator(np.random.PCG64(seq))


def derive_seed(seed: int, *labels) -> int:
    """A 63-bit child seed keyed by (seed, labels), for nested stages."""
    digest = hashlib.sha256(repr((int(seed),) + labels).encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "little") >> 1
