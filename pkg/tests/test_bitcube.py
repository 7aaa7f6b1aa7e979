import numpy as np
import pytest
from hypothesis import given, strategies as st

from juntagap import (
    ENUMERATION_CAP,
    CoordinateRangeError,
    EnumerationCapError,
    InfeasibleSubsetError,
    InputWord,
    SplitLayout,
    enumerate_points,
    flip_coordinate,
    sample_subset,
    substream,
)


def test_enumerate_width_2_order():
    words = list(enumerate_points(2))
    assert [str(w) for w in words] == ["00", "01", "10", "11"]


def test_enumerate_width_0_single_empty_word():
    words = list(enumerate_points(0))
    assert len(words) == 1
    assert words[0].width == 0
    assert str(words[0]) == ""


def test_enumerate_width_4_distinct():
    words = list(enumerate_points(4))
    assert len(words) == 16
    assert len({w.value for w in words}) == 16


@pytest.mark.parametrize("width", [1, 5, 10, 12])
def test_enumeration_completeness(width):
    values = sorted(w.value for w in enumerate_points(width))
    assert values == list(range(2**width))


def test_enumeration_cap_named_in_error():
    # raised at call time, before any iteration
    with pytest.raises(EnumerationCapError, match=str(ENUMERATION_CAP)):
        enumerate_points(ENUMERATION_CAP + 1)


def test_flip_examples():
    assert str(flip_coordinate(InputWord.from_bits("0000"), 1)) == "1000"
    assert str(flip_coordinate(InputWord.from_bits("1111"), 4)) == "1110"


def test_flip_out_of_range():
    with pytest.raises(CoordinateRangeError):
        flip_coordinate(InputWord.from_bits("101"), 4)
    with pytest.raises(CoordinateRangeError):
        flip_coordinate(InputWord.from_bits("101"), 0)


@given(st.data())
def test_flip_involution(data):
    width = data.draw(st.integers(1, 64))
    value = data.draw(st.integers(0, 2**width - 1))
    i = data.draw(st.integers(1, width))
    w = InputWord(width, value)
    assert flip_coordinate(flip_coordinate(w, i), i) == w
    assert flip_coordinate(w, i).bit(i) == 1 - w.bit(i)


@given(st.data())
def test_bit_write_then_read(data):
    width = data.draw(st.integers(1, 48))
    value = data.draw(st.integers(0, 2**width - 1))
    i = data.draw(st.integers(1, width))
    b = data.draw(st.sampled_from([0, 1]))
    w = InputWord(width, value).with_bit(i, b)
    assert w.bit(i) == b


def test_bit_access_rejects_out_of_range():
    w = InputWord.from_bits("10")
    with pytest.raises(CoordinateRangeError):
        w.bit(3)
    with pytest.raises(CoordinateRangeError):
        w.with_bit(0, 1)


def test_word_value_must_fit():
    with pytest.raises(ValueError):
        InputWord(2, 4)
    with pytest.raises(ValueError):
        InputWord(-1, 0)


def test_split_layout_roundtrip():
    layout = SplitLayout(d=5, m=4)
    assert layout.width == 8
    assert layout.x_width == 4
    assert layout.y_coordinate(1) == 5
    assert layout.y_coordinate(4) == 8
    w = InputWord.from_bits("11001010")
    x, y = layout.split(w)
    assert str(x) == "1100" and str(y) == "1010"
    assert layout.join(x, y) == w


def test_split_layout_validation():
    with pytest.raises(ValueError):
        SplitLayout(d=1, m=4)
    with pytest.raises(ValueError):
        SplitLayout(d=3, m=0)


# ---------------------------------------------------------------------------
# subset sampling


def test_sample_subset_forced_cases():
    rng = substream(1, 0)
    assert sample_subset(rng, 4, 4) == (1, 2, 3, 4)
    assert sample_subset(rng, 4, 0) == ()


def test_sample_subset_infeasible():
    rng = substream(1, 0)
    with pytest.raises(InfeasibleSubsetError):
        sample_subset(rng, 4, 5)


def test_sample_subset_validity():
    rng = substream(9, 0)
    for _ in range(500):
        s = sample_subset(rng, 11, 3)
        assert len(s) == 3
        assert len(set(s)) == 3
        assert all(1 <= j <= 11 for j in s)
        assert list(s) == sorted(s)


def test_sample_subset_uniform_frequencies():
    # universe 4, t 2: all six 2-subsets should appear with rate 1/6,
    # checked at 4 binomial standard errors over 60000 draws
    rng = substream(123, 0)
    draws = 60000
    counts = {}
    for _ in range(draws):
        s = sample_subset(rng, 4, 2)
        counts[s] = counts.get(s, 0) + 1
    assert len(counts) == 6
    p = 1 / 6
    tol = 4 * np.sqrt(p * (1 - p) / draws)
    for subset, count in counts.items():
        assert abs(count / draws - p) < tol, (subset, count / draws)


# ---------------------------------------------------------------------------
# seed substreams


def test_substreams_distinct_across_workers():
    seed = 77
    first_outputs = set()
    for worker in range(1000):
        rng = substream(seed, worker)
        first_outputs.add(tuple(rng.integers(0, 2, size=64)))
    assert len(first_outputs) == 1000


def test_substream_reproducible():
    a = substream(5, 3).integers(0, 2**63, size=16)
    b = substream(5, 3).integers(0, 2**63, size=16)
    assert np.array_equal(a, b)


def test_substream_validates_seed():
    with pytest.raises(ValueError):
        substream(-1, 0)
    with pytest.raises(ValueError):
        substream(2**64, 0)
    with pytest.raises(ValueError):
        substream(1, -1)
