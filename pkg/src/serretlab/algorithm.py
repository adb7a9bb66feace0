"""Slow continued fraction algorithms: validation, exact stepping, and
first-return accelerations.

An algorithm is given by inverse branches A_0..A_{n-1} in PGL2(Z), each with
a nonnegative representative, whose cells Delta_a = A_a * [0, oo] form a
unimodular partition of [0, oo] listed left to right.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from .algebra import (F, IDENTITY, ProjMatrix, eval_word, mobius_apply,
                      monoid_factor, parse_word)
from .exact import INF, ZERO, ExtRational, QuadIrr, UnimodInterval


class AlgorithmError(ValueError):
    """Base class for invalid algorithm specifications."""


class BadDeterminantError(AlgorithmError):
    pass


class NegativeEntriesError(AlgorithmError):
    pass


class NotAPartitionError(AlgorithmError):
    pass


class WrongOrderError(AlgorithmError):
    pass


class TooFewBranchesError(AlgorithmError):
    pass


class UndefinedReturnError(RuntimeError):
    """First return did not happen: either provably (the orbit cycles
    outside the window) or within the step budget."""

    def __init__(self, steps: int, exact: bool):
        self.steps = steps
        self.exact = exact
        kind = "provably never returns" if exact else f"no return within {steps} steps"
        super().__init__(kind)


def branch_interval(m: ProjMatrix) -> UnimodInterval:
    """The cell m * [0, oo] of a nonnegative branch matrix."""
    at_zero = ExtRational(m.b, m.d)
    at_inf = ExtRational(m.a, m.c)
    if m.det == 1:
        return UnimodInterval(at_zero, at_inf)
    return UnimodInterval(at_inf, at_zero)


@dataclass(frozen=True)
class StepResult:
    symbol: int
    value: object  # ExtRational | QuadIrr
    ambiguous: bool = False


@dataclass(frozen=True)
class Window:
    """A union of consecutive cells Delta_i..Delta_j, with optionally
    removed endpoints."""

    i: int
    j: int
    open_left: bool = False
    open_right: bool = False

    @classmethod
    def parse(cls, text: str) -> "Window":
        parts = [p.strip() for p in text.split(",")]
        i, j = int(parts[0]), int(parts[1])
        flags = set(parts[2:])
        unknown = flags - {"open_left", "open_right"}
        if unknown:
            raise ValueError(f"unknown window flags {sorted(unknown)}")
        return cls(i, j, "open_left" in flags, "open_right" in flags)


@dataclass(frozen=True)
class FirstReturn:
    window: Window
    value: object
    time: int
    symbols: tuple[int, ...]


class SlowAlgorithm:
    """A validated slow continued fraction algorithm.

    Use :func:`validate` to construct one; the constructor assumes its
    arguments already satisfy every invariant.
    """

    __slots__ = ("branches", "words", "es", "intervals", "_inverses")

    def __init__(self, branches, words, es, intervals):
        object.__setattr__(self, "branches", tuple(branches))
        object.__setattr__(self, "words", tuple(words))
        object.__setattr__(self, "es", tuple(es))
        object.__setattr__(self, "intervals", tuple(intervals))
        object.__setattr__(self, "_inverses", tuple(m.inverse() for m in self.branches))

    def __setattr__(self, *args):
        raise AttributeError("SlowAlgorithm is immutable")

    @property
    def n(self) -> int:
        return len(self.branches)

    def branch_word(self, a: int) -> str:
        """The branch as a word over L, N, F, e.g. "LNF"."""
        return self.words[a] + ("F" if self.es[a] else "")

    def __eq__(self, other):
        if not isinstance(other, SlowAlgorithm):
            return NotImplemented
        return self.branches == other.branches

    def __hash__(self):
        return hash(self.branches)

    def __repr__(self):
        return f"SlowAlgorithm({{{', '.join(self.branch_word(a) for a in range(self.n))}}})"

    # -- dynamics ---------------------------------------------------------

    def step(self, x) -> StepResult:
        """One application of the map: locate x in its cell and apply the
        inverse branch.  At a shared endpoint the lower index wins; the
        result is flagged ambiguous when the two candidate branches have
        equal orientation (their images 0 and oo both occur)."""
        if isinstance(x, int):
            x = ExtRational(x)
        for a, cell in enumerate(self.intervals):
            if x > cell.right:
                continue
            if x < cell.right:
                return StepResult(a, mobius_apply(self._inverses[a], x), False)
            # x is the right endpoint; shared with cell a+1 unless last
            ambiguous = a + 1 < self.n and self.es[a] == self.es[a + 1]
            return StepResult(a, mobius_apply(self._inverses[a], x), ambiguous)
        raise ValueError(f"{x} is not in [0, oo]")

    def window_interval(self, window: Window) -> tuple[ExtRational, ExtRational]:
        if not 0 <= window.i <= window.j <= self.n - 1:
            raise ValueError(f"window {window} out of range for n={self.n}")
        return self.intervals[window.i].left, self.intervals[window.j].right

    def in_window(self, window: Window, x) -> bool:
        left, right = self.window_interval(window)
        lo = x > left if window.open_left else x >= left
        hi = x < right if window.open_right else x <= right
        return lo and hi

    def first_return(self, window: Window, x, max_steps: int = 10_000) -> FirstReturn:
        """Iterate until the orbit re-enters the window.

        Raises UndefinedReturnError when the orbit provably cycles outside
        the window (exact detection) or when max_steps is exhausted.
        """
        if isinstance(x, int):
            x = ExtRational(x)
        if not self.in_window(window, x):
            raise ValueError(f"{x} is not in the window")
        symbols = []
        value = x
        outside_seen = set()
        for t in range(1, max_steps + 1):
            res = self.step(value)
            symbols.append(res.symbol)
            value = res.value
            if self.in_window(window, value):
                return FirstReturn(window, value, t, tuple(symbols))
            if value in outside_seen:
                raise UndefinedReturnError(t, exact=True)
            outside_seen.add(value)
        raise UndefinedReturnError(max_steps, exact=False)

    def accel_branches(self, window: Window, depth: int) -> list[ProjMatrix]:
        """Inverse branches A_a * B of the acceleration to the window, with
        B a product of at most `depth` outside-window branches; deduplicated
        and sorted by cell position."""
        if depth < 0:
            raise ValueError("depth must be >= 0")
        self.window_interval(window)
        outside = [self.branches[b] for b in range(self.n)
                   if b < window.i or b > window.j]
        products = {IDENTITY}
        frontier = {IDENTITY}
        for _ in range(depth):
            frontier = {m * g for m in frontier for g in outside} - products
            products |= frontier
        result = {self.branches[a] * b
                  for a in range(window.i, window.j + 1) for b in products}
        return sorted(result, key=_interval_sort_key)

    def to_partition(self) -> list[dict]:
        """The defining partition: per branch, the cell endpoints and the
        orientation sign (+1 increasing, -1 decreasing)."""
        return [
            {"interval": [str(cell.left), str(cell.right)],
             "e": 1 if self.es[a] == 0 else -1}
            for a, cell in enumerate(self.intervals)
        ]

    def to_json(self) -> dict:
        return {"branches": [self.branch_word(a) for a in range(self.n)]}


def _interval_sort_key(m: ProjMatrix):
    cell = branch_interval(m)
    # p/q < r/s on [0, oo] iff p*s < r*q
    left, right = cell.left, cell.right
    return _Frac(left), _Frac(right)


class _Frac:
    __slots__ = ("p", "q")

    def __init__(self, x: ExtRational):
        self.p, self.q = x.p, x.q

    def __lt__(self, other):
        return self.p * other.q < other.p * self.q

    def __eq__(self, other):
        return self.p * other.q == other.p * self.q


def _as_matrix(entry) -> ProjMatrix:
    if isinstance(entry, ProjMatrix):
        return entry
    if isinstance(entry, str):
        return eval_word(parse_word(entry))
    if isinstance(entry, (list, tuple)):
        return ProjMatrix.from_rows(entry)
    raise AlgorithmError(f"cannot read a branch from {entry!r}")


def _matrices_from_partition(cells: Sequence[dict]) -> list[ProjMatrix]:
    out = []
    for cell in cells:
        left = ExtRational.parse(cell["interval"][0])
        right = ExtRational.parse(cell["interval"][1])
        e = cell["e"]
        if e not in (1, -1):
            raise AlgorithmError(f"orientation must be +-1, got {e}")
        det = left.p * right.q - right.p * left.q
        if det != -1:
            raise BadDeterminantError(
                f"interval [{left}, {right}] is not unimodular (det {det})")
        m = ProjMatrix(left.p, right.p, left.q, right.q)
        out.append(m * F if e == 1 else m)
    return out


def validate(spec) -> SlowAlgorithm:
    """Build a SlowAlgorithm from branch words, matrices, partition cells,
    or a JSON-style dict, checking every invariant.

    Raises TooFewBranchesError, BadDeterminantError (caught at matrix
    construction), NegativeEntriesError, WrongOrderError, or
    NotAPartitionError as appropriate.
    """
    if isinstance(spec, SlowAlgorithm):
        return spec
    if isinstance(spec, dict):
        if "branches" in spec:
            entries = spec["branches"]
        elif "matrices" in spec:
            entries = spec["matrices"]
        elif "partition" in spec:
            entries = _matrices_from_partition(spec["partition"])
        else:
            raise AlgorithmError("spec needs 'branches', 'matrices' or 'partition'")
    else:
        entries = list(spec)
    try:
        branches = [_as_matrix(x) for x in entries]
    except ValueError as exc:
        if isinstance(exc, AlgorithmError):
            raise
        raise BadDeterminantError(str(exc)) from exc
    if len(branches) < 2:
        raise TooFewBranchesError("a partition has at least 2 cells")

    words, es = [], []
    for m in branches:
        if not m.is_nonnegative:
            raise NegativeEntriesError(f"branch {m} has no nonnegative representative")
        w, e = monoid_factor(m)
        words.append(w)
        es.append(e)

    intervals = [branch_interval(m) for m in branches]
    if _is_consecutive_partition(intervals):
        _check_factor_dichotomy(words)
        return SlowAlgorithm(branches, words, es, intervals)
    order = sorted(range(len(branches)), key=lambda a: _Frac(intervals[a].left))
    if _is_consecutive_partition([intervals[a] for a in order]):
        raise WrongOrderError("cells are a partition but not listed left to right")
    raise NotAPartitionError("cells overlap or leave a gap in [0, oo]")


def _is_consecutive_partition(intervals: Sequence[UnimodInterval]) -> bool:
    if intervals[0].left != ZERO or intervals[-1].right != INF:
        return False
    for prev, cur in zip(intervals, intervals[1:]):
        if prev.right != cur.left:
            return False
    return True


def _check_factor_dichotomy(words: Sequence[str]) -> None:
    """Every left factor of the branch words is either one of them (a leaf)
    or has both children among the left factors.  This holds for any
    unimodular partition; it is rechecked because later graph construction
    depends on it."""
    leaves = set(words)
    factors = {w[:k] for w in words for k in range(len(w) + 1)}
    for f in factors:
        if f in leaves:
            continue
        if not (f + "L" in factors and f + "N" in factors):
            raise NotAPartitionError(
                f"left factor {f!r} is neither a leaf nor fully split")


def load_spec(path: str) -> SlowAlgorithm:
    """Read an algorithm spec from a JSON file."""
    with open(path) as fh:
        return validate(json.load(fh))
