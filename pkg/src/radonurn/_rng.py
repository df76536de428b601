import numpy as np

_MASK64 = (1 << 64) - 1


def make_rng(seed):
    """Philox generator keyed directly by a 64-bit seed.

    A ``Generator`` passes through untouched so nested calls can share a stream.
    """
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        raise TypeError("an explicit seed is required")
    return np.random.Generator(np.random.Philox(key=int(seed) & _MASK64))


def trial_seed(seed, index):
    """Seed for trial ``index`` of a batch: ``seed XOR index``."""
    return (int(seed) ^ int(index)) & _MASK64


def child_seed(rng):
    return int(rng.integers(0, 1 << 63))
