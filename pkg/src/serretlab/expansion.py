"""Symbolic expansions: orbits of exact numbers under a slow algorithm, the
distinguished L/N coding of the positive reals and its inverse, tail and
group equivalence of points, and the tail-class census.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .algebra import (IDENTITY, ProjMatrix, conjugacy_of_periodic, eval_word,
                      min_rotation, mobius_apply, primitive_root)
from .algorithm import SlowAlgorithm, validate
from .exact import INF, ZERO, ExtRational, QuadIrr, squarefree_decompose
from .graph import SchreierGraph, build_graph, contains, schreier_quotient


class BoundExceededError(RuntimeError):
    """A periodic orbit was not detected within the step budget."""


class UPWord:
    """An ultimately periodic one-sided infinite word, stored as a finite
    prefix plus a primitive period.

    Canonical form: the period is primitive and the prefix is as short as
    possible (its last symbol differs from the symbol cyclically preceding
    the period), so equality of UPWords is equality of infinite words.
    """

    __slots__ = ("prefix", "period")

    def __init__(self, prefix, period):
        prefix = tuple(prefix)
        period = tuple(period)
        if not period:
            raise ValueError("period must be nonempty")
        period = primitive_root(period)
        while prefix and prefix[-1] == period[-1]:
            prefix = prefix[:-1]
            period = period[-1:] + period[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "period", period)

    def __setattr__(self, *args):
        raise AttributeError("UPWord is immutable")

    def symbol(self, t: int):
        if t < len(self.prefix):
            return self.prefix[t]
        return self.period[(t - len(self.prefix)) % len(self.period)]

    def head(self, n: int) -> tuple:
        return tuple(self.symbol(t) for t in range(n))

    def tail_key(self) -> tuple:
        return min_rotation(self.period)

    def __eq__(self, other):
        if not isinstance(other, UPWord):
            return NotImplemented
        return self.prefix == other.prefix and self.period == other.period

    def __hash__(self):
        return hash((self.prefix, self.period))

    def __repr__(self):
        return f"UPWord({self.prefix!r}, {self.period!r})"

    def __str__(self):
        commas = any(not isinstance(s, str) and int(s) > 9
                     for s in self.prefix + self.period)
        return (f"{_format_symbols(self.prefix, commas)}"
                f"({_format_symbols(self.period, commas)})")

    @classmethod
    def parse(cls, text: str) -> "UPWord":
        text = text.strip()
        if not text.endswith(")") or "(" not in text:
            raise ValueError("expected the form prefix(period)")
        head, _, tail = text.partition("(")
        return cls(_parse_symbols(head), _parse_symbols(tail[:-1]))


def _format_symbols(symbols, commas: bool | None = None) -> str:
    if all(isinstance(s, str) for s in symbols):
        return "".join(symbols)
    if commas is None:
        commas = any(int(s) > 9 for s in symbols)
    if commas:
        return ",".join(str(s) for s in symbols)
    return "".join(str(s) for s in symbols)


def _parse_symbols(text: str) -> tuple:
    text = text.strip()
    if not text:
        return ()
    if "," in text:
        return tuple(int(p) for p in text.split(","))
    if any(ch in "LN" for ch in text):
        if not all(ch in "LN" for ch in text):
            raise ValueError(f"mixed alphabet in {text!r}")
        return tuple(text)
    return tuple(int(ch) for ch in text)


def tail_equivalent(a: UPWord, b: UPWord) -> bool:
    """Whether the two infinite words agree from some point on.  Shifts are
    free on both sides, so only the periods matter."""
    return conjugacy_of_periodic(a.period, b.period)


class OrbitStatus(Enum):
    PERIODIC = "periodic"
    REACHED_ZERO_INFTY = "reached_zero_infty"
    AMBIGUOUS = "ambiguous"
    BOUND_EXCEEDED = "bound_exceeded"


@dataclass(frozen=True)
class OrbitResult:
    word: object  # UPWord for irrational inputs, tuple of symbols otherwise
    status: OrbitStatus
    steps: int
    final_value: object

    def __str__(self):
        if isinstance(self.word, UPWord):
            return str(self.word)
        return f"{_format_symbols(self.word)}[{self.status.value} at {self.final_value}]"


def orbit(T: SlowAlgorithm, x, max_steps: int = 100_000) -> OrbitResult:
    """The symbolic orbit of x.

    Quadratic irrationals give an ultimately periodic word, found by cycle
    detection on exact values (BoundExceededError if the budget is too
    small).  Rationals stop on reaching {0, oo} or the one possible
    ambiguous point, whichever comes first.
    """
    if isinstance(x, int):
        x = ExtRational(x)
    if isinstance(x, QuadIrr):
        seen: dict = {}
        symbols: list = []
        value = x
        for t in range(max_steps):
            if value in seen:
                t0 = seen[value]
                return OrbitResult(UPWord(symbols[:t0], symbols[t0:]),
                                   OrbitStatus.PERIODIC, t, value)
            seen[value] = t
            res = T.step(value)
            symbols.append(res.symbol)
            value = res.value
        raise BoundExceededError(f"no cycle within {max_steps} steps")
    symbols = []
    value = x
    for t in range(max_steps):
        if value == ZERO or value == INF:
            return OrbitResult(tuple(symbols), OrbitStatus.REACHED_ZERO_INFTY, t, value)
        res = T.step(value)
        if res.ambiguous:
            return OrbitResult(tuple(symbols), OrbitStatus.AMBIGUOUS, t, value)
        symbols.append(res.symbol)
        value = res.value
    return OrbitResult(tuple(symbols), OrbitStatus.BOUND_EXCEEDED, max_steps, value)


_LN = None


def ln_algorithm() -> SlowAlgorithm:
    """The two-branch slow algorithm whose coding is the map pi below."""
    global _LN
    if _LN is None:
        _LN = validate(["L", "N"])
    return _LN


def ln_expansion(x: QuadIrr, max_steps: int = 100_000) -> UPWord:
    """The L/N coding of x in (0, oo): L while below 1, N while above,
    stepping by x -> x/(1-x) resp. x -> x-1."""
    if not isinstance(x, QuadIrr):
        raise TypeError("the coding is defined for irrational points")
    if x.sign() <= 0:
        raise ValueError("x must be positive")
    res = orbit(ln_algorithm(), x, max_steps)
    word = res.word
    lift = {0: "L", 1: "N"}
    return UPWord(tuple(lift[s] for s in word.prefix),
                  tuple(lift[s] for s in word.period))


def attracting_fixed_point(m: ProjMatrix):
    """The attracting fixed point of the Moebius map of m on the real line:
    a QuadIrr for hyperbolic or orientation-reversing matrices, the unique
    rational fixed point for parabolics, None when no attracting fixed
    point exists (identity, elliptics, involutions)."""
    a, b, c, d = m.entries()
    if a + d < 0:
        a, b, c, d = -a, -b, -c, -d
    tr, det = a + d, m.det
    if det == 1:
        if tr < 2 or (b == 0 and c == 0):
            return None
        if tr == 2:  # parabolic
            if c == 0:
                return INF
            return ExtRational(a - d, 2 * c)
        disc = tr * tr - 4
    else:
        if tr == 0:
            return None
        disc = tr * tr + 4
    s, d0 = squarefree_decompose(disc)
    if d0 == 1:
        raise ArithmeticError(f"unexpected rational eigenvalues for {m}")
    return QuadIrr(a - d, s, 2 * c, d0)


def pi_value(z: UPWord):
    """The point of [0, oo] whose L/N coding is z: the prefix matrix applied
    to the attracting fixed point of the period matrix.  Rational only for
    the degenerate periods (L) and (N), with values 0 and oo."""
    for sym in z.prefix + z.period:
        if sym not in ("L", "N"):
            raise ValueError("pi is defined on words over L, N")
    p = eval_word("".join(z.period))
    fixed = attracting_fixed_point(p)
    if fixed is None:
        raise ArithmeticError(f"period {z.period} has no attracting fixed point")
    return mobius_apply(eval_word("".join(z.prefix)), fixed)


# -- regular continued fractions and group equivalence ---------------------


@dataclass(frozen=True)
class _RcfData:
    pre_digits: tuple[int, ...]
    cycle_digits: tuple[int, ...]
    to_cycle: ProjMatrix       # x = to_cycle * cycle_value
    cycle_value: QuadIrr
    cycle_matrix: ProjMatrix   # cycle_value = cycle_matrix * cycle_value

    @property
    def digits(self) -> UPWord:
        return UPWord(self.pre_digits, self.cycle_digits)


def _digit_matrix(a: int) -> ProjMatrix:
    return ProjMatrix(0, 1, 1, a)


def rcf_expansion(x: QuadIrr, max_steps: int = 10_000) -> _RcfData:
    """Regular continued fraction data of x > 0 via the Gauss map, with the
    matrices needed to reconstruct x from its purely periodic tail."""
    if x.sign() <= 0:
        raise ValueError("x must be positive")
    k0 = x.floor()
    w = ProjMatrix(1, k0, 0, 1)
    v = x - k0 if k0 else x
    digits: list[int] = []
    mats: list[ProjMatrix] = []
    vals: list[QuadIrr] = []
    seen: dict[QuadIrr, int] = {}
    for _ in range(max_steps):
        if v in seen:
            t0 = seen[v]
            to_cycle = w
            for g in mats[:t0]:
                to_cycle = to_cycle * g
            cycle_matrix = IDENTITY
            for g in mats[t0:]:
                cycle_matrix = cycle_matrix * g
            return _RcfData(tuple(digits[:t0]), tuple(digits[t0:]),
                            to_cycle, vals[t0], cycle_matrix)
        seen[v] = len(digits)
        vals.append(v)
        inv = v.inverse()
        a = inv.floor()
        digits.append(a)
        mats.append(_digit_matrix(a))
        v = inv - a
    raise BoundExceededError(f"no continued fraction cycle within {max_steps} steps")


def improper_automorph(p: ProjMatrix, fixed: QuadIrr) -> ProjMatrix | None:
    """An orientation-reversing stabilizer of the fixed point of the
    hyperbolic matrix p, if one exists.

    When det p = -1, p itself qualifies.  When det p = +1, a reverser h must
    satisfy h*h = p (up to inversion), which by Cayley-Hamilton forces
    h = (p - 1)/t with t*t = tr(p) - 2; this has a solution iff tr(p) - 2 is
    a perfect square dividing p - 1 entrywise.
    """
    if p.det == -1:
        return p
    a, b, c, d = p.entries()
    if a + d < 0:
        a, b, c, d = -a, -b, -c, -d
    tr = a + d
    if tr <= 2:
        return None
    t = math.isqrt(tr - 2)
    if t * t != tr - 2:
        return None
    entries = (a - 1, b, c, d - 1)
    if any(e % t for e in entries):
        return None
    h = ProjMatrix(*(e // t for e in entries))
    if h.det != -1 or mobius_apply(h, fixed) != fixed:
        return None
    return h


@dataclass(frozen=True)
class SigmaVerdict:
    kind: str                     # "equivalent" | "not_pi_equivalent" | "unknown"
    witness: ProjMatrix | None = None
    detail: str = ""

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "witness": self.witness.rows() if self.witness else None,
            "detail": self.detail,
        }


def sigma_equivalent(T: SlowAlgorithm, x: QuadIrr, y: QuadIrr,
                     quotient: SchreierGraph | None = None,
                     power_range: int = 16) -> SigmaVerdict:
    """Decide whether y = M*x for some M in the branch group.

    Classical tail matching of the regular continued fractions either rules
    out equivalence under the full group or produces one relating matrix
    M0; the rest of the candidates are M0 times stabilizer elements of x,
    generated by the cycle matrix of x (and possibly an orientation
    reverser).  Membership of candidates is read off the Schreier graph.
    """
    if quotient is None:
        quotient, _ = schreier_quotient(build_graph(T))
    if x.D != y.D:
        return SigmaVerdict("not_pi_equivalent", detail="different quadratic fields")
    rx, ry = rcf_expansion(x), rcf_expansion(y)
    root_x = primitive_root(rx.cycle_digits)
    root_y = primitive_root(ry.cycle_digits)
    if min_rotation(root_x) != min_rotation(root_y):
        return SigmaVerdict("not_pi_equivalent",
                            detail="continued fraction tails differ")
    shift = next(r for r in range(len(root_x))
                 if root_x[r:] + root_x[:r] == root_y)
    q = IDENTITY
    for dgt in root_x[:shift]:
        q = q * _digit_matrix(dgt)
    if mobius_apply(q.inverse(), rx.cycle_value) != ry.cycle_value:
        return SigmaVerdict("unknown", detail="tail alignment failed")
    m0 = ry.to_cycle * q.inverse() * rx.to_cycle.inverse()

    g = rx.to_cycle * rx.cycle_matrix * rx.to_cycle.inverse()
    reverser = improper_automorph(rx.cycle_matrix, rx.cycle_value)
    stabilizers = [None, rx.to_cycle * reverser * rx.to_cycle.inverse()] \
        if reverser is not None and rx.cycle_matrix.det == 1 else [None]

    g_pow = IDENTITY
    powers = [IDENTITY]
    for _ in range(power_range):
        g_pow = g_pow * g
        powers.append(g_pow)
    g_inv = g.inverse()
    g_pow = IDENTITY
    for _ in range(power_range):
        g_pow = g_pow * g_inv
        powers.append(g_pow)

    for h in stabilizers:
        for p in powers:
            cand = m0 * p if h is None else m0 * h * p
            if mobius_apply(cand, x) != y:
                continue
            if contains(quotient, cand):
                return SigmaVerdict("equivalent", witness=cand)
    return SigmaVerdict(
        "unknown",
        detail="equivalent under the full group; no candidate found in the branch group")


@dataclass(frozen=True)
class CensusReport:
    radius: int
    points: int
    classes: int
    class_sizes: tuple[int, ...]


def census(T: SlowAlgorithm, x: QuadIrr, word_radius: int,
           max_steps: int = 100_000) -> CensusReport:
    """Partition the branch-group ball image of x into orbit-tail classes.

    Enumerates M*x for every product of at most word_radius branch
    generators and inverses, keeps the values in (0, oo), and groups them
    by the rotation class of their orbit period.
    """
    gens = list(T.branches) + [m.inverse() for m in T.branches]
    ball = {IDENTITY}
    frontier = {IDENTITY}
    for _ in range(word_radius):
        frontier = {m * g for m in frontier for g in gens} - ball
        ball |= frontier
    values = {mobius_apply(m, x) for m in ball}
    values = {v for v in values if v.sign() > 0}

    cache: dict[QuadIrr, tuple] = {}
    for start in values:
        if start in cache:
            continue
        local: dict[QuadIrr, int] = {}
        path: list[QuadIrr] = []
        symbols: list[int] = []
        v = start
        key = None
        for _ in range(max_steps):
            if v in cache:
                key = cache[v]
                break
            if v in local:
                period = symbols[local[v]:]
                key = min_rotation(primitive_root(period))
                break
            local[v] = len(path)
            path.append(v)
            res = T.step(v)
            symbols.append(res.symbol)
            v = res.value
        if key is None:
            raise BoundExceededError(f"orbit of {start} found no cycle")
        for u in path:
            cache[u] = key
    counts: dict[tuple, int] = {}
    for v in values:
        counts[cache[v]] = counts.get(cache[v], 0) + 1
    return CensusReport(word_radius, len(values), len(counts),
                        tuple(sorted(counts.values(), reverse=True)))
