import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from spinframe.rng import RngStream


def test_same_seed_same_sequence():
    a, b = RngStream(7, 3), RngStream(7, 3)
    np.testing.assert_array_equal(a.random(100), b.random(100))


def test_distinct_indices_differ():
    assert not np.array_equal(RngStream(7, 0).random(50), RngStream(7, 1).random(50))
    assert not np.array_equal(RngStream(7, 0).random(50), RngStream(8, 0).random(50))


@settings(max_examples=50)
@given(offset=st.integers(0, 1000), count=st.integers(1, 40))
def test_random_access_matches_sequential(offset, count):
    rng = RngStream(123, 9)
    seq = rng.at(0).random(offset + count)
    np.testing.assert_array_equal(rng.at(offset).random(count), seq[offset:])


def test_sequential_draws_continue():
    rng = RngStream(5)
    first = rng.random(7)
    rest = rng.random(5)
    np.testing.assert_array_equal(np.concatenate([first, rest]), RngStream(5).at(0).random(12))
    assert isinstance(rng.random(), float)


def test_streams_look_independent():
    x = RngStream(1, 0).random(100_000)
    y = RngStream(1, 1).random(100_000)
    # |r| for independent uniforms has sd 1/sqrt(n) ~ 0.0032
    assert abs(np.corrcoef(x, y)[0, 1]) < 0.015
    assert abs(x.mean() - 0.5) < 0.005


def test_substream_is_distinct_and_reproducible():
    base = RngStream(1, 2)
    np.testing.assert_array_equal(base.substream(5).random(10), RngStream(1, 2).substream(5).random(10))
    assert not np.array_equal(base.substream(5).random(10), base.substream(6).random(10))


def test_seed_range_checked():
    with pytest.raises(ValueError):
        RngStream(-1)
    with pytest.raises(ValueError):
        RngStream(0, 2**64)
