"""The extended modular group PGL2(Z): named generators, words, Moebius
action, and factorization into the free monoid on L, N.

Matrices are taken up to sign; the canonical representative has its first
nonzero entry (in the order a, b, c, d) positive.  Words use the letters
L, N, F, S, R with a trailing apostrophe for inverses, e.g. "NL'N".
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .exact import INF, ExtRational, QuadIrr, squarefree_decompose


class NotNonnegativeError(ValueError):
    """Raised when a matrix has no entrywise-nonnegative sign representative."""


class EmptyWordError(ValueError):
    """Raised when an operation needs a nonempty word."""


class ProjMatrix:
    """An element of PGL2(Z): a 2x2 integer matrix with det +-1, up to sign."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int):
        det = a * d - b * c
        if det not in (1, -1):
            raise ValueError(f"determinant must be +-1, got {det}")
        for x in (a, b, c, d):
            if x != 0:
                if x < 0:
                    a, b, c, d = -a, -b, -c, -d
                break
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *args):
        raise AttributeError("ProjMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "ProjMatrix":
        (a, b), (c, d) = rows
        return cls(a, b, c, d)

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def trace(self) -> int:
        return self.a + self.d

    def entries(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    @property
    def is_nonnegative(self) -> bool:
        return min(self.entries()) >= 0

    def __mul__(self, other: "ProjMatrix") -> "ProjMatrix":
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        return ProjMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> "ProjMatrix":
        # the adjugate is the inverse up to det = +-1, which is a sign
        return ProjMatrix(self.d, -self.b, -self.c, self.a)

    def __eq__(self, other):
        if not isinstance(other, ProjMatrix):
            return NotImplemented
        return self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def __repr__(self):
        return f"ProjMatrix({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"

    def apply(self, x):
        return mobius_apply(self, x)


IDENTITY = ProjMatrix(1, 0, 0, 1)
L = ProjMatrix(1, 0, 1, 1)
N = ProjMatrix(1, 1, 0, 1)
S = ProjMatrix(0, -1, 1, 0)
R = ProjMatrix(1, -1, 1, 0)
F = ProjMatrix(0, 1, 1, 0)

_LETTER_MATRIX = {
    "L": L, "N": N, "S": S, "R": R, "F": F,
    "L'": L.inverse(), "N'": N.inverse(), "R'": R.inverse(),
}

# S and F are involutions, so their primed forms normalize away
_LETTER_ALIAS = {"S'": "S", "F'": "F"}

_INVERSE_LETTER = {
    "L": "L'", "L'": "L", "N": "N'", "N'": "N",
    "R": "R'", "R'": "R", "S": "S", "F": "F",
}


class GenWord:
    """A word over the generators {L, N, F, L', N', S, R, R'}, reduced so
    that no letter is immediately followed by its inverse."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[str]):
        stack: list[str] = []
        for x in letters:
            x = _LETTER_ALIAS.get(x, x)
            if x not in _LETTER_MATRIX:
                raise ValueError(f"unknown generator letter {x!r}")
            if stack and stack[-1] == _INVERSE_LETTER[x]:
                stack.pop()
            else:
                stack.append(x)
        object.__setattr__(self, "letters", tuple(stack))

    def __setattr__(self, *args):
        raise AttributeError("GenWord is immutable")

    @classmethod
    def parse(cls, text: str) -> "GenWord":
        return parse_word(text)

    def inverse(self) -> "GenWord":
        return GenWord(_INVERSE_LETTER[x] for x in reversed(self.letters))

    def __iter__(self):
        return iter(self.letters)

    def __len__(self):
        return len(self.letters)

    def __eq__(self, other):
        if not isinstance(other, GenWord):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self):
        return hash(self.letters)

    def __add__(self, other: "GenWord") -> "GenWord":
        return GenWord(self.letters + tuple(other))

    def __repr__(self):
        return f"GenWord({str(self)!r})"

    def __str__(self):
        return "".join(self.letters)


def parse_word(text: str) -> GenWord:
    """Parse a word like "NL'N" or "LFR'" into a GenWord."""
    letters: list[str] = []
    for ch in text:
        if ch in "LNFSR":
            letters.append(ch)
        elif ch == "'":
            if not letters:
                raise ValueError("dangling inverse mark")
            letters[-1] = _INVERSE_LETTER[letters[-1]]
        elif ch in " \t":
            continue
        else:
            raise ValueError(f"unknown character {ch!r} in word")
    return GenWord(letters)


def eval_word(word) -> ProjMatrix:
    """Multiply out a word (GenWord, iterable of letters, or text)."""
    if isinstance(word, str):
        word = parse_word(word)
    m = IDENTITY
    for x in word:
        m = m * _LETTER_MATRIX[x]
    return m


def mobius_apply(m: ProjMatrix, x):
    """Projective action (a*x + b)/(c*x + d) on ExtRational or QuadIrr."""
    if isinstance(x, int):
        x = ExtRational(x)
    if isinstance(x, ExtRational):
        return ExtRational(m.a * x.p + m.b * x.q, m.c * x.p + m.d * x.q)
    if isinstance(x, QuadIrr):
        # numerator (A + B*sqrt(D)), denominator (C + E*sqrt(D)); rationalize
        A = m.a * x.p + m.b * x.r
        B = m.a * x.q
        C = m.c * x.p + m.d * x.r
        E = m.c * x.q
        return QuadIrr(A * C - B * E * x.D, B * C - A * E, C * C - E * E * x.D, x.D)
    raise TypeError(f"cannot act on {type(x).__name__}")


def monoid_factor(m: ProjMatrix) -> tuple[str, int]:
    """Factor a nonnegative matrix uniquely as (word in the free monoid on
    L, N) times F^e, by Stern-Brocot descent.

    Returns (word, e) with word a string over "LN" and e in {0, 1}.
    """
    if not m.is_nonnegative:
        raise NotNonnegativeError(f"{m} has no nonnegative representative")
    e = 0 if m.det == 1 else 1
    if e:
        m = m * F
    a, b, c, d = m.entries()
    out: list[str] = []
    while (a, b, c, d) != (1, 0, 0, 1):
        if c >= a and d >= b:
            out.append("L")
            c, d = c - a, d - b
        elif a >= c and b >= d:
            out.append("N")
            a, b = a - c, b - d
        else:
            raise NotNonnegativeError(f"{m} is not in the monoid on L, N")
    return "".join(out), e


def generic_factor(m: ProjMatrix) -> GenWord:
    """Any word over {L, N, F, L', N'} evaluating to m.

    Strips F when det = -1, then runs the continued fraction algorithm on
    the first column, writing S = NL'N.
    """
    letters: list[str] = []
    tail: list[str] = []
    if m.det == -1:
        tail = ["F"]
        m = m * F
    a, b, c, d = m.entries()
    while c != 0:
        q = a // c
        # m = N^q * [[a-qc, b-qd], [c, d]] and then swap rows via S
        if q >= 0:
            letters.extend(["N"] * q)
        else:
            letters.extend(["N'"] * (-q))
        a, b = a - q * c, b - q * d
        letters.extend(["N", "L'", "N"])  # S
        a, b, c, d = c, d, -a, -b
    # now c = 0, so the matrix is +-[[1, t], [0, 1]] = N^t
    t = a * b
    if t >= 0:
        letters.extend(["N"] * t)
    else:
        letters.extend(["N'"] * (-t))
    return GenWord(letters + tail)


def primitive_root(word: Sequence) -> tuple:
    """Smallest word u with word = u^k."""
    w = tuple(word)
    n = len(w)
    if n == 0:
        raise EmptyWordError("empty word has no primitive root")
    for length in range(1, n + 1):
        if n % length == 0 and w[:length] * (n // length) == w:
            return w[:length]
    return w


def min_rotation(word: Sequence) -> tuple:
    """Lexicographically smallest rotation, as a canonical form for the
    conjugacy (rotation) class of a word."""
    w = tuple(word)
    if not w:
        return w
    return min(w[i:] + w[:i] for i in range(len(w)))


def conjugacy_of_periodic(u: Sequence, w: Sequence) -> bool:
    """Whether u^oo and w^oo have the same tail, i.e. whether the primitive
    roots of u and w are cyclic rotations of each other."""
    if len(u) == 0 or len(w) == 0:
        raise EmptyWordError("periodic words need a nonempty period")
    ru, rw = primitive_root(u), primitive_root(w)
    if len(ru) != len(rw):
        return False
    return min_rotation(ru) == min_rotation(rw)
