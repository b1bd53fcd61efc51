"""The counter-based generator against published reference outputs and its
own batch/scalar consistency."""

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from biddinghex import rng

U64 = st.integers(min_value=0, max_value=2**64 - 1)

# Reference outputs for the underlying mixing function: the first words of
# the well-known splitmix64 sequence for two published seeds.
SPLITMIX_KAT = {
    0: [0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, 0x06C45D188009454F],
    0xDEADBEEF: [0x4ADFB90F68C9EB9B, 0xDE586A3141A10922],
}


@pytest.mark.parametrize("seed,expected", sorted(SPLITMIX_KAT.items()))
def test_stream_matches_reference_sequence(seed, expected):
    assert [rng.stream_word(seed, i) for i in range(len(expected))] == expected


@given(U64, st.integers(0, 2**32))
def test_stream_word_in_range(seed, index):
    w = rng.stream_word(seed, index)
    assert 0 <= w < 2**64


@given(st.lists(U64, min_size=1, max_size=50))
def test_vectorized_mix_equals_scalar(values):
    arr = np.array(values, dtype=np.uint64)
    assert rng._mix64_np(arr).tolist() == [rng.mix64(v) for v in values]


@given(U64, st.integers(0, 1000), st.integers(1, 200))
def test_trial_bits_match_words(seed, trial, nbits):
    bits = rng.trial_bits(seed, trial, nbits)
    assert len(bits) == nbits
    w = rng.words_per_trial(nbits)
    words = [rng.stream_word(seed, trial * w + j) for j in range(w)]
    for i, bit in enumerate(bits):
        assert bit == bool((words[i // 64] >> (i % 64)) & 1)


@given(U64, st.lists(st.integers(0, 10_000), min_size=1, max_size=20, unique=True), st.integers(1, 130))
def test_trial_bits_batch_equals_scalar(seed, trials, nbits):
    arr = np.array(trials, dtype=np.uint64)
    batch = rng.trial_bits_batch(seed, arr, nbits)
    assert batch.shape == (len(trials), nbits)
    for row, trial in enumerate(trials):
        assert batch[row].tolist() == rng.trial_bits(seed, trial, nbits)


def test_words_per_trial():
    assert rng.words_per_trial(1) == 1
    assert rng.words_per_trial(64) == 1
    assert rng.words_per_trial(65) == 2
    assert rng.words_per_trial(361) == 6  # a full 19x19 board


def test_trials_use_disjoint_words():
    """Trial i must read only words [i*w, (i+1)*w) of the stream."""
    nbits = 100
    w = rng.words_per_trial(nbits)
    assert w == 2
    a = rng.trial_bits(99, 3, nbits)
    b = rng.trial_bits(99, 4, nbits)
    assert a != b  # astronomically unlikely to collide if independent


@given(U64)
def test_derive_seed_stable_and_distinct(seed):
    assert rng.derive_seed(seed, 0) == rng.derive_seed(seed, 0)
    derived = {rng.derive_seed(seed, i) for i in range(64)}
    assert len(derived) == 64


def test_derive_seed_golden():
    # frozen so that persisted seeds keep meaning across releases
    assert rng.derive_seed(7, 0) == 7191089600892374487
    assert rng.derive_seed(7, 1) == 14541976469547213908


@given(st.integers(1, 6), st.integers(1, 64))
def test_unpack_word_bits_round_trip(words_per_row, nbits):
    rows = 5
    rand = np.random.default_rng(12)
    words = rand.integers(0, 2**63, size=(rows, words_per_row), dtype=np.uint64)
    nbits = min(nbits, words_per_row * 64)
    bits = rng.unpack_word_bits(words, nbits)
    assert bits.shape == (rows, nbits)
    for r in range(rows):
        value = int(words[r, 0])
        for i in range(min(nbits, 64)):
            assert bits[r, i] == bool((value >> i) & 1)
