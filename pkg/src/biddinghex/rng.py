"""Counter-based random bits for reproducible, order-independent sampling.

Trial ``i`` of a simulation draws its bits from 64-bit words
``word(seed, n)`` for ``n = i * words_per_trial .. (i + 1) * words_per_trial - 1``,
where ``word`` applies the splitmix64 output function to
``seed + (n + 1) * GOLDEN``.  Because each trial's bits are a pure function
of ``(seed, trial)``, any partition of the trial indices across workers
produces identical per-trial fillings, so serial and parallel runs are
bitwise-comparable.

The scalar and the vectorized paths implement the same function; tests pin
them against each other and against fixed reference values.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


def mix64(x: int) -> int:
    """splitmix64 output function on a 64-bit integer."""
    z = x & _MASK
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK
    return z ^ (z >> 31)


def stream_word(seed: int, n: int) -> int:
    """The ``n``-th 64-bit word of the stream keyed by ``seed``."""
    return mix64((seed + ((n + 1) * GOLDEN)) & _MASK)


def words_per_trial(nbits: int) -> int:
    return (nbits + 63) // 64


def trial_bits(seed: int, trial: int, nbits: int) -> list:
    """Bits of one trial as a list of 0/1 ints, scalar path."""
    w = words_per_trial(nbits)
    base = trial * w
    words = [stream_word(seed, base + k) for k in range(w)]
    return [(words[j >> 6] >> (j & 63)) & 1 for j in range(nbits)]


def _mix64_np(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def unpack_word_bits(words: np.ndarray, nbits: int) -> np.ndarray:
    """Low ``nbits`` bits of each row of 64-bit words as a bool array.

    ``words`` has shape (n, w) with ``w * 64 >= nbits``; the result has shape
    (n, nbits) with entry ``[i, j] = (words[i, j // 64] >> (j % 64)) & 1``.
    Byte order is pinned to little-endian so the expansion is identical on
    every platform.
    """
    le = np.ascontiguousarray(words).astype("<u8", copy=False)
    bits = np.unpackbits(le.view(np.uint8), axis=1, bitorder="little")
    return bits[:, :nbits].view(np.bool_)


def trial_bits_batch(seed: int, trials: np.ndarray, nbits: int) -> np.ndarray:
    """Bits for many trials at once: bool array of shape (len(trials), nbits).

    Identical to stacking :func:`trial_bits` over ``trials``.
    """
    w = words_per_trial(nbits)
    trials = np.asarray(trials, dtype=np.uint64)
    n = trials[:, None] * np.uint64(w) + np.arange(w, dtype=np.uint64)[None, :]
    states = np.uint64(seed & _MASK) + (n + np.uint64(1)) * np.uint64(GOLDEN)
    return unpack_word_bits(_mix64_np(states), nbits)


def derive_seed(seed: int, index: int) -> int:
    """A decorrelated child seed; used for per-decision seeds in self-play."""
    return mix64((seed ^ mix64(index)) + GOLDEN)
