"""Quadratic irrationals from eventually periodic continued fractions.

Values are kept in the canonical form ``(P + sqrt(D)) / Q`` read off the
primitive minimal polynomial ``a x^2 + b x + c`` (``a > 0``): the larger root
is ``(-b + sqrt(D)) / (2a)`` and the smaller ``(b + sqrt(D)) / (-2a)``, with
``D = b^2 - 4ac``. All comparisons are exact integer sign tests.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cf import word_matrix
from .errors import DegeneratePeriod, EmptyWord, MpalError, NonStandardWord
from .word import Word, WordStream, format_periodic, parse_periodic, periodic_stream


def _sign_surd(s: int, t: int, d: int) -> int:
    """Sign of ``s + t sqrt(d)`` for ``d >= 0``."""
    if t == 0 or d == 0:
        return (s > 0) - (s < 0)
    if s == 0:
        return (t > 0) - (t < 0)
    if (s > 0) == (t > 0):
        return 1 if s > 0 else -1
    # opposite signs: compare s^2 with t^2 d
    diff = s * s - t * t * d
    if diff == 0:
        return 0
    return (1 if s > 0 else -1) if diff > 0 else (1 if t > 0 else -1)


def _is_square(n: int) -> bool:
    return n >= 0 and math.isqrt(n) ** 2 == n


@dataclass(frozen=True)
class QuadraticIrrational:
    """The number ``(P + sqrt(D)) / Q``; build it with the classmethods."""

    P: int
    D: int
    Q: int

    # construction -----------------------------------------------------------

    @classmethod
    def from_polynomial(cls, a: int, b: int, c: int, larger: bool = True) -> "QuadraticIrrational":
        g = math.gcd(a, b, c)
        if g == 0:
            raise DegeneratePeriod("zero polynomial")
        if a < 0:
            g = -g
        a, b, c = a // g, b // g, c // g
        if a == 0:
            raise DegeneratePeriod("polynomial is not quadratic")
        d = b * b - 4 * a * c
        if d <= 0 or _is_square(d):
            raise DegeneratePeriod(f"discriminant {d} gives no real quadratic irrational")
        if larger:
            return cls(-b, d, 2 * a)
        return cls(b, d, -2 * a)

    @classmethod
    def from_surd(cls, x: int, y: int, d: int, z: int) -> "QuadraticIrrational":
        """The number ``(x + y sqrt(d)) / z``."""
        if z == 0:
            raise ZeroDivisionError("zero denominator")
        if y == 0 or d <= 0 or _is_square(d):
            raise DegeneratePeriod("value is rational")
        # z w - x = y sqrt(d)  =>  z^2 w^2 - 2xz w + x^2 - y^2 d = 0
        larger = (y > 0) == (z > 0)
        return cls.from_polynomial(z * z, -2 * x * z, x * x - y * y * d, larger)

    # structure --------------------------------------------------------------

    @property
    def polynomial(self) -> tuple[int, int, int]:
        """Primitive minimal polynomial ``(a, b, c)`` with ``a > 0``."""
        a = abs(self.Q) // 2
        b = -self.P if self.Q > 0 else self.P
        c = (b * b - self.D) // (4 * a)
        return a, b, c

    @property
    def is_larger_root(self) -> bool:
        return self.Q > 0

    def conjugate(self) -> "QuadraticIrrational":
        a, b, c = self.polynomial
        return QuadraticIrrational.from_polynomial(a, b, c, larger=not self.is_larger_root)

    def mobius(self, a: int, b: int, c: int, d: int) -> "QuadraticIrrational":
        """``(a x + b) / (c x + d)`` computed exactly."""
        P, D, Q = self.P, self.D, self.Q
        # x = (P + sqrt D)/Q: numerator (aP + bQ) + a sqrt D, denominator (cP + dQ) + c sqrt D
        n1, n2 = a * P + b * Q, c * P + d * Q
        den = n2 * n2 - c * c * D
        if den == 0:
            raise ZeroDivisionError("Mobius map sends the value to infinity")
        return QuadraticIrrational.from_surd(n1 * n2 - a * c * D, a * n2 - c * n1, D, den)

    def scale(self, m: int, direction: str = "divide") -> "QuadraticIrrational":
        if direction == "multiply":
            return self.mobius(m, 0, 0, 1)
        if direction == "divide":
            return self.mobius(1, 0, 0, m)
        raise ValueError(f"direction must be 'multiply' or 'divide', not {direction!r}")

    def __mul__(self, m: int) -> "QuadraticIrrational":
        return self.scale(m, "multiply")

    __rmul__ = __mul__

    def __truediv__(self, m: int) -> "QuadraticIrrational":
        return self.scale(m, "divide")

    # comparisons ------------------------------------------------------------

    def compare(self, r) -> int:
        """Sign of ``self - r`` for rational ``r``."""
        r = Fraction(r)
        u, v = r.numerator, r.denominator
        # (vP - uQ + v sqrt D) / (Q v)
        s = _sign_surd(v * self.P - u * self.Q, v, self.D)
        return s if self.Q > 0 else -s

    def __lt__(self, r) -> bool:
        return self.compare(r) < 0

    def __gt__(self, r) -> bool:
        return self.compare(r) > 0

    def is_root_of(self, a: int, b: int, c: int) -> bool:
        """Exact check that ``a x^2 + b x + c == 0``."""
        # x = (P + s)/Q with s^2 = D: Q^2 (a x^2 + b x + c) = rational + sqrt part
        P, D, Q = self.P, self.D, self.Q
        rational = a * (P * P + D) + b * P * Q + c * Q * Q
        irrational = 2 * a * P + b * Q
        return rational == 0 and irrational == 0

    # display ----------------------------------------------------------------

    def surd(self) -> tuple[int, int, int, int]:
        """``(x, f, r, z)`` with value ``(x + f sqrt(r)) / z``, ``r`` squarefree-reduced, ``z > 0``."""
        f, r = 1, self.D
        k = 2
        while k * k <= r:
            while r % (k * k) == 0:
                r //= k * k
                f *= k
            k += 1
        x, z = self.P, self.Q
        if z < 0:
            x, f, z = -x, -f, -z
        g = math.gcd(x, f, z)
        return x // g, f // g, r, z // g

    def __str__(self) -> str:
        x, f, r, z = self.surd()
        root = f"{'' if abs(f) == 1 else abs(f)}sqrt({r})"
        if x == 0:
            body = root if f > 0 else f"-{root}"
        else:
            body = f"{x}{'+' if f > 0 else '-'}{root}"
        return body if z == 1 else f"({body})/{z}"

    def decimal(self, digits: int = 20) -> str:
        """Decimal expansion truncated to ``digits`` places (last digit may be off by one)."""
        scale = 10**digits
        root = math.isqrt(self.D * scale * scale)
        num, den = self.P * scale + root, self.Q
        if den < 0:
            num, den = -num, -den
        q, r = divmod(abs(num), den)
        return ("-" if num < 0 else "") + _format_scaled(q, digits)

    def __float__(self) -> float:
        return (self.P + math.sqrt(self.D)) / self.Q


def _format_scaled(val: int, digits: int) -> str:
    whole, frac = divmod(val, 10**digits)
    return f"{whole}.{frac:0{digits}d}" if digits else str(whole)


def poly_str(a: int, b: int, c: int) -> str:
    out = f"{'' if a == 1 else a}x^2"
    if b:
        out += f"{'+' if b > 0 else '-'}{'' if abs(b) == 1 else abs(b)}x"
    if c:
        out += f"{'+' if c > 0 else '-'}{abs(c)}"
    return out + "=0"


# eventually periodic words ----------------------------------------------------


def primitive_root(w: Sequence[int]) -> Word:
    w = tuple(w)
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w[:p] * (n // p) == w:
            return w[:p]
    return w


@dataclass(frozen=True)
class EventuallyPeriodicWord:
    """``preperiod`` followed by ``period`` repeated forever."""

    preperiod: Word
    period: Word

    def __post_init__(self) -> None:
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise EmptyWord("period must be nonempty")
        if any(t < 1 for t in self.period) or any(t < 1 for t in self.preperiod[1:]):
            raise NonStandardWord("terms after the first must be >= 1")
        if self.preperiod and self.preperiod[0] < 0:
            raise NonStandardWord("negative partial quotient")

    @classmethod
    def parse(cls, text: str) -> "EventuallyPeriodicWord":
        return cls(*parse_periodic(text))

    def canonical(self) -> "EventuallyPeriodicWord":
        """Primitive period and shortest preperiod."""
        u, w = list(self.preperiod), primitive_root(self.period)
        while u and u[-1] == w[-1]:
            u.pop()
            w = (w[-1],) + w[:-1]
        return EventuallyPeriodicWord(tuple(u), w)

    @property
    def is_purely_periodic(self) -> bool:
        return not self.preperiod

    def prefix(self, n: int) -> Word:
        u, w = self.preperiod, self.period
        if n <= len(u):
            return u[:n]
        rest = n - len(u)
        return u + w * (rest // len(w)) + w[: rest % len(w)]

    def stream(self) -> WordStream:
        return periodic_stream(self.preperiod, self.period)

    def __str__(self) -> str:
        return format_periodic(self.preperiod, self.period)


def _as_periodic(e) -> EventuallyPeriodicWord:
    if isinstance(e, str):
        return EventuallyPeriodicWord.parse(e)
    return e


def periodic_value(e) -> QuadraticIrrational:
    """Exact value of an eventually periodic continued fraction."""
    e = _as_periodic(e)
    if e.period[0] < 1:
        raise DegeneratePeriod("period must have positive terms")
    m = word_matrix(e.period)
    # x = (p x + p') / (q x + q')  =>  q x^2 + (q' - p) x - p' = 0, positive root
    tail = QuadraticIrrational.from_polynomial(m.c, m.d - m.a, -m.b, larger=True)
    if not e.preperiod:
        return tail
    u = word_matrix(e.preperiod)
    return tail.mobius(u.a, u.b, u.c, u.d)


def is_reduced(x: QuadraticIrrational) -> bool:
    """``x > 1`` and its conjugate lies strictly between -1 and 0."""
    c = x.conjugate()
    return x.compare(1) > 0 and c.compare(-1) > 0 and c.compare(0) < 0


def scale(x: QuadraticIrrational, m: int, direction: str = "divide") -> QuadraticIrrational:
    return x.scale(m, direction)


def conjugate(x: QuadraticIrrational) -> QuadraticIrrational:
    return x.conjugate()


def galois_roundtrip(e) -> bool:
    """Self-check of Galois' theorem: purely periodic iff the value is reduced."""
    e = _as_periodic(e).canonical()
    return e.is_purely_periodic == is_reduced(periodic_value(e))


# Burger-type decomposition ---------------------------------------------------


class Split(enum.Enum):
    ONE = "one"
    TWO = "two"
    NONE = "none"


@dataclass(frozen=True)
class BurgerVerdict:
    kind: Split
    max_repeat: int
    repeat: int | None = None
    rotation: int | None = None
    parts: tuple[Word, ...] = ()

    def witness_ok(self, period: Sequence[int]) -> bool:
        if self.kind is Split.NONE:
            return not self.parts
        base = tuple(period) * self.repeat
        rotated = base[self.rotation :] + base[: self.rotation]
        joined = tuple(t for part in self.parts for t in part)
        return (
            joined == rotated
            and all(part and part == part[::-1] for part in self.parts)
            and len(self.parts) == (1 if self.kind is Split.ONE else 2)
        )

    def to_dict(self) -> dict:
        return {
            "verdict": self.kind.value,
            "max_repeat": self.max_repeat,
            "repeat": self.repeat,
            "rotation": self.rotation,
            "parts": [list(p) for p in self.parts],
        }


def _rotations(w: Word):
    for r in range(len(w)):
        yield r, w[r:] + w[:r]


def burger_split(w: Sequence[int], max_repeat: int = 2) -> BurgerVerdict:
    """Search rotations of ``w^j`` (``j <= max_repeat``) for one or two symbol palindromes.

    A brute-force sweep; ``NONE`` only means nothing was found within the
    bound.
    """
    w = tuple(w)
    if not w:
        raise EmptyWord("period must be nonempty")
    if any(t < 1 for t in w):
        raise NonStandardWord("period terms must be >= 1")
    for j in range(1, max_repeat + 1):
        for r, rot in _rotations(w * j):
            if rot == rot[::-1]:
                return BurgerVerdict(Split.ONE, max_repeat, j, r, (rot,))
    for j in range(1, max_repeat + 1):
        for r, rot in _rotations(w * j):
            for k in range(1, len(rot)):
                left, right = rot[:k], rot[k:]
                if left == left[::-1] and right == right[::-1]:
                    return BurgerVerdict(Split.TWO, max_repeat, j, r, (left, right))
    return BurgerVerdict(Split.NONE, max_repeat)


def equivalent_to_conjugate(e, max_repeat: int = 2) -> bool:
    """Whether the periodic part admits a one-or-two palindrome period (within ``max_repeat``)."""
    e = _as_periodic(e).canonical()
    return burger_split(e.period, max_repeat).kind is not Split.NONE


__all__ = [
    "QuadraticIrrational",
    "EventuallyPeriodicWord",
    "periodic_value",
    "conjugate",
    "is_reduced",
    "scale",
    "galois_roundtrip",
    "burger_split",
    "equivalent_to_conjugate",
    "BurgerVerdict",
    "Split",
    "poly_str",
    "primitive_root",
    "MpalError",
]
