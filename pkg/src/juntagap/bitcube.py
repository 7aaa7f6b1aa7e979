"""Bit-word substrate: fixed-width Boolean assignments and seeded randomness.

Conventions used throughout the package:

* coordinates are 1-based, ``1 <= i <= width``;
* the integer encoding of a word is MSB-first, i.e. coordinate 1 is the
  most significant bit, so enumerating integers ``0 .. 2**width - 1`` in
  ascending order enumerates words in lexicographic order of
  ``(x_1, x_2, ...)``.

Widths up to :data:`ENUMERATION_CAP` support exhaustive enumeration;
arbitrarily wide words are still valid values for sampled-mode work
(``value`` is a plain Python int, so width is unbounded).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .errors import (
    ArityError,
    CoordinateRangeError,
    EnumerationCapError,
    InfeasibleSubsetError,
)

#: Largest width accepted by exhaustive enumeration (2**30 ~ 1e9 points).
ENUMERATION_CAP = 30

#: Seeds are 64-bit unsigned values.
MAX_SEED = 2**64 - 1


@dataclass(frozen=True)
class InputWord:
    """An assignment to ``width`` Boolean coordinates, packed into an int.

    ``value`` holds the MSB-first encoding: coordinate ``i`` is bit
    ``width - i`` of ``value``.
    """

    width: int
    value: int

    def __post_init__(self):
        if self.width < 0:
            raise ValueError(f"width must be nonnegative, got {self.width}")
        if not 0 <= self.value < (1 << self.width):
            raise ValueError(
                f"value {self.value} does not fit in {self.width} bits"
            )

    @classmethod
    def from_bits(cls, bits: str | Iterable[int]) -> "InputWord":
        """Build a word from a bit string like ``"1100"`` (coordinate 1 first)."""
        seq = [int(b) for b in bits]
        if any(b not in (0, 1) for b in seq):
            raise ValueError(f"bits must be 0/1, got {bits!r}")
        value = 0
        for b in seq:
            value = (value << 1) | b
        return cls(len(seq), value)

    def bit(self, i: int) -> int:
        """Value of coordinate ``i`` (1-based)."""
        self._check_coordinate(i)
        return (self.value >> (self.width - i)) & 1

    def with_bit(self, i: int, b: int) -> "InputWord":
        """Copy of this word with coordinate ``i`` set to ``b``."""
        self._check_coordinate(i)
        if b not in (0, 1):
            raise ValueError(f"bit must be 0 or 1, got {b}")
        mask = 1 << (self.width - i)
        value = (self.value | mask) if b else (self.value & ~mask)
        return InputWord(self.width, value)

    def bits(self) -> tuple[int, ...]:
        return tuple(self.bit(i) for i in range(1, self.width + 1))

    def ones(self) -> tuple[int, ...]:
        """Sorted coordinates set to 1."""
        return tuple(i for i in range(1, self.width + 1) if self.bit(i))

    def weight(self) -> int:
        return self.value.bit_count()

    def _check_coordinate(self, i: int):
        if not 1 <= i <= self.width:
            raise CoordinateRangeError(
                f"coordinate {i} out of range 1..{self.width}"
            )

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b") if self.width else ""


@dataclass(frozen=True)
class SplitLayout:
    """Coordinate layout splitting a word into an address part and a leaf part.

    The first ``d - 1`` coordinates are the address bits ``x_1 .. x_{d-1}``;
    the remaining ``m`` coordinates are the leaf bits, with ``y_i`` living at
    coordinate ``(d - 1) + i``.
    """

    d: int
    m: int

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")

    @property
    def x_width(self) -> int:
        return self.d - 1

    @property
    def width(self) -> int:
        return self.d - 1 + self.m

    def y_coordinate(self, i: int) -> int:
        """Host coordinate of leaf bit ``y_i`` (1-based ``i``)."""
        if not 1 <= i <= self.m:
            raise CoordinateRangeError(f"leaf index {i} out of range 1..{self.m}")
        return self.d - 1 + i

    def split(self, w: InputWord) -> tuple[InputWord, InputWord]:
        """Split a full word into its (address, leaf) parts."""
        if w.width != self.width:
            raise ArityError(f"expected width {self.width}, got {w.width}")
        return (
            InputWord(self.x_width, w.value >> self.m),
            InputWord(self.m, w.value & ((1 << self.m) - 1)),
        )

    def join(self, x: InputWord, y: InputWord) -> InputWord:
        if x.width != self.x_width or y.width != self.m:
            raise ArityError(
                f"expected widths ({self.x_width}, {self.m}), "
                f"got ({x.width}, {y.width})"
            )
        return InputWord(self.width, (x.value << self.m) | y.value)


def enumerate_points(width: int) -> Iterator[InputWord]:
    """Yield all ``2**width`` words in ascending integer order.

    Raises :class:`EnumerationCapError` above :data:`ENUMERATION_CAP`;
    the check fires at call time, not on first iteration.
    """
    if width < 0:
        raise ValueError(f"width must be nonnegative, got {width}")
    if width > ENUMERATION_CAP:
        raise EnumerationCapError(
            f"width {width} exceeds the enumerable-mode cap of {ENUMERATION_CAP}"
        )

    def generate():
        for value in range(1 << width):
            yield InputWord(width, value)

    return generate()


def flip_coordinate(w: InputWord, i: int) -> InputWord:
    """The word differing from ``w`` exactly at coordinate ``i``."""
    w._check_coordinate(i)
    return InputWord(w.width, w.value ^ (1 << (w.width - i)))


def substream(seed: int, worker_index: int) -> np.random.Generator:
    """Deterministic, independent random stream for one worker.

    The (seed, worker_index) pair is mixed injectively, so distinct worker
    indices under one seed give statistically independent streams, and the
    same pair always reproduces the same stream.
    """
    if not 0 <= seed <= MAX_SEED:
        raise ValueError(f"seed must be a 64-bit unsigned value, got {seed}")
    if worker_index < 0:
        raise ValueError(f"worker_index must be nonnegative, got {worker_index}")
    ss = np.random.SeedSequence(entropy=seed, spawn_key=(worker_index,))
    return np.random.Generator(np.random.PCG64(ss))


def sample_subset(rng: np.random.Generator, universe: int, t: int) -> tuple[int, ...]:
    """Uniform random size-``t`` subset of ``{1, ..., universe}``, sorted.

    Uniformity is over all C(universe, t) subsets; the draw is deterministic
    given the generator state.
    """
    if universe < 0:
        raise ValueError(f"universe must be nonnegative, got {universe}")
    if t < 0:
        raise ValueError(f"subset size must be nonnegative, got {t}")
    if t > universe:
        raise InfeasibleSubsetError(
            f"cannot draw a size-{t} subset from a universe of {universe}"
        )
    picked = rng.choice(universe, size=t, replace=False)
    return tuple(sorted(int(j) + 1 for j in picked))
