"""k-junta approximation: fiber majorities, exhaustive search, heuristics.

The optimal approximator among functions depending on a fixed coordinate
set J is the per-fiber majority vote of the target, so every search here
reduces to counting ones per fiber of a truth table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Sequence

import numpy as np

from .bitcube import InputWord
from .errors import ArityError, EnumerationCapError, WorkBudgetError
from .functions import FunctionHandle
from . import analysis

#: Largest host arity for junta searches (full-table based).
JUNTA_ARITY_CAP = 24

#: Largest supported coordinate-set size (table has 2**k entries).
JUNTA_SIZE_CAP = 20

#: Default work budget for the exhaustive search, in fiber visits.
DEFAULT_BUDGET = 10**9


@dataclass(frozen=True, eq=False)
class JuntaSpec:
    """A coordinate set J plus a truth table over its 2**|J| assignments.

    ``table[a]`` is the output on the fiber whose J-restricted assignment
    has MSB-first value ``a`` (the smallest listed coordinate is the most
    significant bit).
    """

    coords: tuple[int, ...]
    table: np.ndarray

    def __post_init__(self):
        coords = tuple(int(c) for c in self.coords)
        if list(coords) != sorted(set(coords)):
            raise ValueError(f"coords must be sorted and distinct, got {coords}")
        if any(c < 1 for c in coords):
            raise ValueError(f"coords must be >= 1, got {coords}")
        table = np.asarray(self.table, dtype=np.uint8)
        if table.shape != (1 << len(coords),):
            raise ValueError(
                f"table must have 2**{len(coords)} entries, got {table.shape}"
            )
        if not np.all((table == 0) | (table == 1)):
            raise ValueError("table entries must be 0/1")
        table.setflags(write=False)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "table", table)

    @property
    def k(self) -> int:
        return len(self.coords)

    def handle(self, arity: int) -> FunctionHandle:
        """Evaluable handle of this junta on a host of the given arity."""
        if self.coords and self.coords[-1] > arity:
            raise ArityError(
                f"junta coordinate {self.coords[-1]} exceeds host arity {arity}"
            )
        coords, table, k = self.coords, self.table, self.k

        def eval_word(w: InputWord) -> int:
            a = 0
            for c in coords:
                a = (a << 1) | w.bit(c)
            return int(table[a])

        def eval_values(values: np.ndarray) -> np.ndarray:
            return table[_fiber_indices(values, arity, coords)]

        return FunctionHandle(
            arity=arity,
            label=f"junta(k={k},coords={list(coords)})",
            eval_word=eval_word,
            eval_values=eval_values,
            source=self,
        )


@dataclass(frozen=True)
class JuntaResult:
    """A junta with its exact distance to the target and how it was found."""

    spec: JuntaSpec
    distance: Fraction
    provenance: str  # "exhaustive" | "fiber-given-subset" | "top-influence"


def _fiber_indices(
    values: np.ndarray, arity: int, coords: Sequence[int]
) -> np.ndarray:
    k = len(coords)
    fib = np.zeros(values.shape, dtype=np.int64)
    for r, c in enumerate(coords):
        bit = (values >> np.uint64(arity - c)) & np.uint64(1)
        fib |= bit.astype(np.int64) << (k - 1 - r)
    return fib


def _check_caps(f: FunctionHandle, coords: Sequence[int]):
    if f.arity > JUNTA_ARITY_CAP:
        raise EnumerationCapError(
            f"junta operations need the full table of {f.label}; arity cap is "
            f"{JUNTA_ARITY_CAP}"
        )
    if len(coords) > JUNTA_SIZE_CAP:
        raise EnumerationCapError(
            f"junta tables hold 2**k entries; k cap is {JUNTA_SIZE_CAP}"
        )
    for c in coords:
        if not 1 <= c <= f.arity:
            raise ArityError(f"coordinate {c} out of range 1..{f.arity}")


def _fiber_majority(
    table: np.ndarray, arity: int, coords: tuple[int, ...]
) -> tuple[np.ndarray, int]:
    """Majority table over each J-fiber and the total minority count."""
    k = len(coords)
    values = np.arange(1 << arity, dtype=np.uint64)
    fib = _fiber_indices(values, arity, coords)
    ones = np.bincount(fib[table == 1], minlength=1 << k)
    fiber_size = 1 << (arity - k)
    majority = (2 * ones > fiber_size).astype(np.uint8)
    minority = int(np.minimum(ones, fiber_size - ones).sum())
    return majority, minority


def fiber_majority_junta(
    f: FunctionHandle, coords: Sequence[int]
) -> JuntaResult:
    """Optimal junta on exactly the coordinate set ``coords``.

    Each fiber takes the majority value of ``f`` over it (ties to 0), which
    minimizes the disagreement fraction among all functions depending only
    on ``coords``; the distance is therefore at most 1/2.
    """
    coords = tuple(sorted(int(c) for c in coords))
    if len(set(coords)) != len(coords):
        raise ValueError(f"coords must be distinct, got {coords}")
    _check_caps(f, coords)
    table = analysis.truth_table(f)
    majority, minority = _fiber_majority(table, f.arity, coords)
    return JuntaResult(
        spec=JuntaSpec(coords=coords, table=majority),
        distance=Fraction(minority, 1 << f.arity),
        provenance="fiber-given-subset",
    )


def best_k_junta(
    f: FunctionHandle, k: int, budget: int = DEFAULT_BUDGET
) -> JuntaResult:
    """Exhaustive minimum-distance k-junta.

    Visits every size-k coordinate set in lexicographic order and keeps the
    first set achieving the minimum, so ties break to the lexicographically
    smallest witness.  Work is gated by ``budget`` counted in fiber visits
    (subsets times table size) before any table is built.
    """
    if not 0 <= k <= f.arity:
        raise ValueError(f"k must lie in 0..{f.arity}, got {k}")
    _check_caps(f, range(1, k + 1))
    work = comb(f.arity, k) * (1 << f.arity)
    if work > budget:
        raise WorkBudgetError(
            f"exhaustive search over C({f.arity},{k}) subsets needs {work} "
            f"fiber visits, above the budget of {budget}; consider "
            f"top_influence_junta"
        )
    table = analysis.truth_table(f)
    n = f.arity
    values = np.arange(1 << n, dtype=np.uint64)
    ones_positions = values[table == 1]
    fiber_size = 1 << (n - k)
    best_coords = None
    best_minority = None
    for coords in combinations(range(1, n + 1), k):
        fib = _fiber_indices(ones_positions, n, coords)
        ones = np.bincount(fib, minlength=1 << k)
        minority = int(np.minimum(ones, fiber_size - ones).sum())
        if best_minority is None or minority < best_minority:
            best_minority = minority
            best_coords = coords
    majority, minority = _fiber_majority(table, n, best_coords)
    assert minority == best_minority
    return JuntaResult(
        spec=JuntaSpec(coords=best_coords, table=majority),
        distance=Fraction(best_minority, 1 << n),
        provenance="exhaustive",
    )


def top_influence_junta(f: FunctionHandle, k: int) -> JuntaResult:
    """Fiber majority on the k most influential coordinates (ties to lower index)."""
    if not 0 <= k <= f.arity:
        raise ValueError(f"k must lie in 0..{f.arity}, got {k}")
    _check_caps(f, range(1, k + 1))
    influences = analysis.all_influences(f)
    order = sorted(range(1, f.arity + 1), key=lambda c: (-influences[c - 1], c))
    coords = tuple(sorted(order[:k]))
    result = fiber_majority_junta(f, coords)
    return JuntaResult(
        spec=result.spec, distance=result.distance, provenance="top-influence"
    )


def junta_distance_lower_bound(p1, k: int, t: int):
    """Distance floor forced on every k-junta by the singleton probability.

    Whenever exactly one clause hits and the junta ignores the addressed
    leaf, the two functions disagree on half the leaf assignments; removing
    the at most ``k * 2**-t`` of singleton mass a junta can track yields
    ``max(0, (p1 - k * 2**-t) / 2)``.  Exact when ``p1`` is a Fraction.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    if t < 0:
        raise ValueError(f"t must be nonnegative, got {t}")
    if not 0 <= p1 <= 1:
        raise ValueError(f"p1 must lie in [0, 1], got {p1}")
    if isinstance(p1, float):
        return max(0.0, (p1 - k * 2.0**-t) / 2.0)
    bound = (Fraction(p1) - Fraction(k, 1 << t)) / 2
    return max(Fraction(0), bound)
