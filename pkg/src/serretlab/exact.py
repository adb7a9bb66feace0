"""Exact numbers for the projective line: rationals on [0, oo] and real
quadratic irrationals (p + q*sqrt(D))/r.

Everything here is integer arithmetic; floats appear only in __float__ for
display.  Values are canonicalized on construction so that equality and
hashing are structural.
"""

from __future__ import annotations

import math

from sympy import factorint


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Write n > 0 as s*s*d with d squarefree; return (s, d)."""
    if n <= 0:
        raise ValueError("need a positive integer")
    s, d = 1, 1
    for p, e in factorint(n).items():
        s *= p ** (e // 2)
        if e % 2:
            d *= p
    return s, d


class ExtRational:
    """A point of the extended rational line, p/q with q >= 0 and 1/0 = oo.

    Stored coprime with q >= 0; infinity is canonically (1, 0).  Order
    comparisons are only defined on [0, oo], which is all the interval
    machinery ever needs.
    """

    __slots__ = ("p", "q")

    def __init__(self, p: int, q: int = 1):
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a projective point")
        if q < 0:
            p, q = -p, -q
        if q == 0:
            p = 1
        else:
            g = math.gcd(p, q)
            p, q = p // g, q // g
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    def __setattr__(self, *a):
        raise AttributeError("ExtRational is immutable")

    @classmethod
    def parse(cls, text: str) -> "ExtRational":
        text = text.strip()
        if text in ("inf", "oo", "infinity"):
            return INF
        if "/" in text:
            num, den = text.split("/")
            return cls(int(num), int(den))
        return cls(int(text))

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def _require_ordered(self):
        if self.q != 0 and self.p < 0:
            raise ValueError("order is only defined on [0, oo]")

    def _cmp(self, other) -> int:
        self._require_ordered()
        if isinstance(other, int):
            other = ExtRational(other)
        if isinstance(other, ExtRational):
            other._require_ordered()
            lhs, rhs = self.p * other.q, other.p * self.q
            return (lhs > rhs) - (lhs < rhs)
        if isinstance(other, QuadIrr):
            return -other._cmp(self)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            other = ExtRational(other)
        if isinstance(other, ExtRational):
            return self.p == other.p and self.q == other.q
        if isinstance(other, QuadIrr):
            return False
        return NotImplemented

    def __hash__(self):
        return hash(("rat", self.p, self.q))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def _finite_pair(self):
        if self.q == 0:
            raise ZeroDivisionError("arithmetic with oo")
        return self.p, self.q

    def __add__(self, other):
        if isinstance(other, int):
            other = ExtRational(other)
        if isinstance(other, ExtRational):
            a, b = self._finite_pair()
            c, d = other._finite_pair()
            return ExtRational(a * d + c * b, b * d)
        if isinstance(other, QuadIrr):
            return other + self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        if self.q == 0:
            return self
        return ExtRational(-self.p, self.q)

    def __sub__(self, other):
        if isinstance(other, (int, ExtRational)):
            return self + (-other if isinstance(other, ExtRational) else ExtRational(-other))
        if isinstance(other, QuadIrr):
            return (-other) + self
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = ExtRational(other)
        if isinstance(other, ExtRational):
            a, b = self._finite_pair()
            c, d = other._finite_pair()
            return ExtRational(a * c, b * d)
        if isinstance(other, QuadIrr):
            return other * self
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = ExtRational(other)
        if isinstance(other, ExtRational):
            c, d = other._finite_pair()
            if c == 0:
                raise ZeroDivisionError("division by zero")
            a, b = self._finite_pair()
            return ExtRational(a * d, b * c)
        if isinstance(other, QuadIrr):
            return other.inverse() * self
        return NotImplemented

    def __rtruediv__(self, other):
        if self.p == 0:
            raise ZeroDivisionError("division by zero")
        a, b = self._finite_pair()
        return ExtRational(b, a) * other

    def __float__(self):
        return math.inf if self.q == 0 else self.p / self.q

    def __repr__(self):
        return f"ExtRational({self.p}, {self.q})"

    def __str__(self):
        if self.q == 0:
            return "oo"
        if self.q == 1:
            return str(self.p)
        return f"{self.p}/{self.q}"


ZERO = ExtRational(0)
ONE = ExtRational(1)
INF = ExtRational(1, 0)


def _sign_of_surd(a: int, b: int, d: int) -> int:
    """Sign of a + b*sqrt(d), d squarefree >= 2."""
    if a >= 0 and b >= 0:
        return 1 if (a or b) else 0
    if a <= 0 and b <= 0:
        return -1 if (a or b) else 0
    lhs, rhs = a * a, b * b * d
    if a > 0:  # b < 0
        return (lhs > rhs) - (lhs < rhs)
    return (rhs > lhs) - (rhs < lhs)


class QuadIrr:
    """The real quadratic irrational (p + q*sqrt(D))/r, D squarefree >= 2.

    Canonical form: r > 0, gcd(p, q, r) = 1, q != 0.  Equality and hashing
    are exact; comparisons against rationals and same-field irrationals use
    pure integer sign tests.
    """

    __slots__ = ("p", "q", "r", "D")

    def __init__(self, p: int, q: int, r: int, D: int):
        if q == 0:
            raise ValueError("q = 0 would make the value rational")
        if r == 0:
            raise ValueError("zero denominator")
        if D < 2:
            raise ValueError("D must be >= 2")
        s, d = squarefree_decompose(D)
        if s != 1:
            q, D = q * s, d
        if r < 0:
            p, q, r = -p, -q, -r
        g = math.gcd(math.gcd(p, q), r)
        object.__setattr__(self, "p", p // g)
        object.__setattr__(self, "q", q // g)
        object.__setattr__(self, "r", r // g)
        object.__setattr__(self, "D", D)

    def __setattr__(self, *a):
        raise AttributeError("QuadIrr is immutable")

    @classmethod
    def sqrt(cls, n: int) -> "QuadIrr":
        if n < 2:
            raise ValueError("sqrt argument must be >= 2 to be irrational")
        s, d = squarefree_decompose(n)
        if d == 1:
            raise ValueError(f"{n} is a perfect square")
        return cls(0, s, 1, d)

    def conjugate(self) -> "QuadIrr":
        return QuadIrr(self.p, -self.q, self.r, self.D)

    def sign(self) -> int:
        return _sign_of_surd(self.p, self.q, self.D)

    def _cmp(self, other) -> int:
        if isinstance(other, int):
            other = ExtRational(other)
        if isinstance(other, ExtRational):
            if other.q == 0:
                return -1  # every real is below oo
            return _sign_of_surd(self.p * other.q - other.p * self.r,
                                 self.q * other.q, self.D)
        if isinstance(other, QuadIrr):
            if other.D != self.D:
                raise ValueError("comparison across different quadratic fields")
            return _sign_of_surd(self.p * other.r - other.p * self.r,
                                 self.q * other.r - other.q * self.r, self.D)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, QuadIrr):
            return (self.p, self.q, self.r, self.D) == (other.p, other.q, other.r, other.D)
        if isinstance(other, (int, ExtRational)):
            return False
        return NotImplemented

    def __hash__(self):
        return hash(("quad", self.p, self.q, self.r, self.D))

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is NotImplemented else c >= 0

    def floor(self) -> int:
        """Exact floor of the value."""
        s = math.isqrt(self.q * self.q * self.D)
        # q*sqrt(D) lies strictly between s and s+1 (resp. -s-1 and -s)
        low = self.p + (s if self.q > 0 else -s - 1)
        k = low // self.r
        while self._cmp(ExtRational(k + 1)) >= 0:
            k += 1
        while self._cmp(ExtRational(k)) < 0:
            k -= 1
        return k

    def _as_triple(self):
        return self.p, self.q, self.r

    def __add__(self, other):
        if isinstance(other, int):
            other = ExtRational(other)
        if isinstance(other, ExtRational):
            a, b = other._finite_pair()
            return QuadIrr(self.p * b + a * self.r, self.q * b, self.r * b, self.D)
        if isinstance(other, QuadIrr):
            if other.D != self.D:
                raise ValueError("mixed quadratic fields")
            q = self.q * other.r + other.q * self.r
            p = self.p * other.r + other.p * self.r
            if q == 0:
                return ExtRational(p, self.r * other.r)
            return QuadIrr(p, q, self.r * other.r, self.D)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return QuadIrr(-self.p, -self.q, self.r, self.D)

    def __sub__(self, other):
        if isinstance(other, int):
            other = ExtRational(other)
        if isinstance(other, (ExtRational, QuadIrr)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            other = ExtRational(other)
        if isinstance(other, ExtRational):
            a, b = other._finite_pair()
            if a == 0:
                return ZERO
            return QuadIrr(self.p * a, self.q * a, self.r * b, self.D)
        if isinstance(other, QuadIrr):
            if other.D != self.D:
                raise ValueError("mixed quadratic fields")
            p1, q1, r1 = self._as_triple()
            p2, q2, r2 = other._as_triple()
            num_p = p1 * p2 + q1 * q2 * self.D
            num_q = p1 * q2 + q1 * p2
            if num_q == 0:
                return ExtRational(num_p, r1 * r2)
            return QuadIrr(num_p, num_q, r1 * r2, self.D)
        return NotImplemented

    __rmul__ = __mul__

    def inverse(self) -> "QuadIrr":
        # 1/x = r*(p - q*sqrt(D)) / (p^2 - q^2 D)
        norm = self.p * self.p - self.q * self.q * self.D
        return QuadIrr(self.p * self.r, -self.q * self.r, norm, self.D)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = ExtRational(other)
        if isinstance(other, ExtRational):
            a, b = other._finite_pair()
            if a == 0:
                raise ZeroDivisionError("division by zero")
            return QuadIrr(self.p * b, self.q * b, self.r * a, self.D)
        if isinstance(other, QuadIrr):
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __float__(self):
        return (self.p + self.q * math.sqrt(self.D)) / self.r

    def __repr__(self):
        return f"QuadIrr({self.p}, {self.q}, {self.r}, {self.D})"

    def __str__(self):
        q = "" if self.q == 1 else ("-" if self.q == -1 else f"{self.q}*")
        core = f"{q}sqrt({self.D})"
        if self.p:
            core = f"{self.p}+{core}" if self.q > 0 else f"{self.p}{core}"
        if self.r == 1:
            return core
        return f"({core})/{self.r}"


def parse_value(text: str):
    """Parse an exact value expression: integers, p/q, sqrt(D), and the
    operators + - * / with parentheses, e.g. "(1335+sqrt(3))/939" or
    "sqrt(3)+1".  Returns an ExtRational or a QuadIrr; no floats."""
    tokens = _tokenize(text)
    value, pos = _parse_sum(tokens, 0)
    if pos != len(tokens):
        raise ValueError(f"trailing input at {tokens[pos]!r}")
    return value


def _tokenize(text: str) -> list:
    out: list = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            out.append(int(text[i:j]))
            i = j
        elif text.startswith("sqrt", i):
            out.append("sqrt")
            i += 4
        elif text.startswith("oo", i) or text.startswith("inf", i):
            out.append("oo")
            i += 2 if text.startswith("oo", i) else 3
        elif ch in "+-*/()":
            out.append(ch)
            i += 1
        else:
            raise ValueError(f"unexpected character {ch!r} in value")
    return out


def _parse_sum(tokens, pos):
    value, pos = _parse_product(tokens, pos)
    while pos < len(tokens) and tokens[pos] in ("+", "-"):
        op = tokens[pos]
        rhs, pos = _parse_product(tokens, pos + 1)
        value = value + rhs if op == "+" else value - rhs
    return value, pos


def _parse_product(tokens, pos):
    value, pos = _parse_atom(tokens, pos)
    while pos < len(tokens) and tokens[pos] in ("*", "/"):
        op = tokens[pos]
        rhs, pos = _parse_atom(tokens, pos + 1)
        value = value * rhs if op == "*" else value / rhs
    return value, pos


def _parse_atom(tokens, pos):
    if pos >= len(tokens):
        raise ValueError("unexpected end of value expression")
    tok = tokens[pos]
    if tok == "-":
        value, pos = _parse_atom(tokens, pos + 1)
        return -value, pos
    if tok == "(":
        value, pos = _parse_sum(tokens, pos + 1)
        if pos >= len(tokens) or tokens[pos] != ")":
            raise ValueError("missing closing parenthesis")
        return value, pos + 1
    if tok == "sqrt":
        if pos + 3 >= len(tokens) or tokens[pos + 1] != "(" \
                or not isinstance(tokens[pos + 2], int) or tokens[pos + 3] != ")":
            raise ValueError("sqrt takes a literal integer argument")
        n = tokens[pos + 2]
        if n < 0:
            raise ValueError("sqrt argument must be nonnegative")
        s, d = (0, 1) if n == 0 else squarefree_decompose(n)
        value = ExtRational(s) if d == 1 else QuadIrr(0, s, 1, d)
        return value, pos + 4
    if tok == "oo":
        return INF, pos + 1
    if isinstance(tok, int):
        return ExtRational(tok), pos + 1
    raise ValueError(f"unexpected token {tok!r}")


class UnimodInterval:
    """Interval [p/q, p'/q'] of the extended line with det [[p,p'],[q,q']] = -1."""

    __slots__ = ("left", "right")

    def __init__(self, left: ExtRational, right: ExtRational):
        det = left.p * right.q - right.p * left.q
        if det != -1:
            raise ValueError(f"endpoints {left}, {right} are not unimodular (det {det})")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def __setattr__(self, *a):
        raise AttributeError("UnimodInterval is immutable")

    def contains(self, x, open_left: bool = False, open_right: bool = False) -> bool:
        lo = x > self.left if open_left else x >= self.left
        hi = x < self.right if open_right else x <= self.right
        return lo and hi

    def __eq__(self, other):
        if not isinstance(other, UnimodInterval):
            return NotImplemented
        return self.left == other.left and self.right == other.right

    def __hash__(self):
        return hash((self.left, self.right))

    def __repr__(self):
        return f"UnimodInterval({self.left!r}, {self.right!r})"

    def __str__(self):
        return f"[{self.left}, {self.right}]"
