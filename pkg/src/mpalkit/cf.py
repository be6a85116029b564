"""Exact evaluation of (extended) continued fractions.

Everything goes through the continuant matrix identity: the word
``(b_0, ..., b_j)`` maps to the product of the matrices ``[[b_k, 1], [1, 0]]``,
whose first column is ``(r_j, s_j)`` and second column ``(r_{j-1}, s_{j-1})``.
Zeros are allowed anywhere; the value ``r_j / s_j`` exists iff ``s_j != 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import UndefinedValue, ZeroDenominator
from .word import Word, is_standard

try:
    from gmpy2 import mpz as _big
except ImportError:  # pragma: no cover - gmpy2 is optional
    _big = int

__all__ = [
    "Rational",
    "Mat2",
    "ConvergentTable",
    "word_matrix",
    "convergents",
    "evaluate",
    "evaluate_with_tail",
    "simplify",
    "is_standard",
]

Rational = Fraction

# below this many terms a left-to-right fold beats the product tree
_TREE_CUTOFF = 64


@dataclass(frozen=True)
class Mat2:
    """Row-major integer 2x2 matrix ``[[a, b], [c, d]]``."""

    a: int
    b: int
    c: int
    d: int

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    @classmethod
    def quotient(cls, t: int) -> "Mat2":
        return cls(t, 1, 1, 0)

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    def transpose(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def as_ints(self) -> "Mat2":
        return Mat2(int(self.a), int(self.b), int(self.c), int(self.d))


def _fold(terms: Sequence[int]) -> tuple:
    # continuant recurrence, carrying (p, p_prev, q, q_prev)
    p, pp, q, qq = 1, 0, 0, 1
    for t in terms:
        p, pp = t * p + pp, p
        q, qq = t * q + qq, q
    return p, pp, q, qq


def _tree(terms: Sequence[int], lo: int, hi: int) -> tuple:
    if hi - lo <= _TREE_CUTOFF:
        p, pp, q, qq = _fold(terms[lo:hi])
        return _big(p), _big(pp), _big(q), _big(qq)
    mid = (lo + hi) // 2
    a, b, c, d = _tree(terms, lo, mid)
    e, f, g, h = _tree(terms, mid, hi)
    return a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h


def big_matrix(a: Sequence[int]) -> tuple:
    """Entries ``(p_i, p_{i-1}, q_i, q_{i-1})`` as fast big integers (mpz when available)."""
    a = tuple(a)
    if not a:
        return _big(1), _big(0), _big(0), _big(1)
    return _tree(a, 0, len(a))


def big_mul(x: tuple, y: tuple) -> tuple:
    a, b, c, d = x
    e, f, g, h = y
    return a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h


def word_matrix(a: Sequence[int]) -> Mat2:
    """Product of the single-quotient matrices of ``a``: ``[[p_i, p_{i-1}], [q_i, q_{i-1}]]``.

    Balanced product tree, so long words cost a few large multiplications
    instead of a quadratic number of additions.
    """
    a = tuple(a)
    if len(a) <= _TREE_CUTOFF:
        return Mat2(*_fold(a))
    return Mat2(*_tree(a, 0, len(a))).as_ints()


@dataclass(frozen=True)
class ConvergentTable:
    """Continuants of every prefix of ``word``.

    ``p`` and ``q`` start at the virtual index -1, so ``p[0] == 1`` and
    ``q[0] == 0``; use :meth:`num` / :meth:`den` for natural indexing.
    """

    word: Word
    p: tuple
    q: tuple

    def num(self, k: int) -> int:
        return self.p[k + 1]

    def den(self, k: int) -> int:
        return self.q[k + 1]

    @property
    def last(self) -> int:
        return len(self.word) - 1

    def convergent(self, k: int) -> Fraction:
        if self.q[k + 1] == 0:
            raise ZeroDenominator(f"convergent {k} of {self.word} has zero denominator")
        return Fraction(self.p[k + 1], self.q[k + 1])

    def matrix(self, k: int | None = None) -> Mat2:
        k = self.last if k is None else k
        if k == -1:
            return Mat2.identity()
        return Mat2(self.p[k + 1], self.p[k], self.q[k + 1], self.q[k])


def convergents(a: Sequence[int]) -> ConvergentTable:
    a = tuple(a)
    p, q = [1], [0]
    pp, qq = 0, 1  # index -2
    for t in a:
        p.append(t * p[-1] + pp)
        q.append(t * q[-1] + qq)
        pp, qq = p[-2], q[-2]
    return ConvergentTable(a, tuple(p), tuple(q))


def evaluate(a: Sequence[int]) -> Fraction:
    m = word_matrix(a)
    if m.c == 0:
        raise ZeroDenominator(f"[{', '.join(map(str, a))}] is undefined (zero denominator)")
    return Fraction(m.a, m.c)


def evaluate_with_tail(a: Sequence[int], t):
    """Value of ``[A, tail]`` given the tail value ``t``.

    This is the Mobius action ``(p_i t + p_{i-1}) / (q_i t + q_{i-1})``.
    ``t`` may be anything rational-like or a quadratic irrational (any object
    with a ``mobius`` method).
    """
    m = word_matrix(a)
    if hasattr(t, "mobius"):
        return t.mobius(m.a, m.b, m.c, m.d)
    t = Fraction(t)
    den = m.c * t + m.d
    if den == 0:
        raise ZeroDenominator("tail makes the denominator vanish")
    return (m.a * t + m.b) / den


def simplify(b: Sequence[int]) -> Word:
    """Rewrite an extended word as a standard word of equal value.

    Trailing zeros are stripped first (``[..., x, 0] = [...]`` drops the last
    two terms), then interior zeros are collapsed left to right with
    ``(x, 0, y) -> (x + y)``. The result is either ``(0,)`` or ends in a
    positive term, and has no zero after index 0.
    """
    b = list(b)
    if not b:
        raise UndefinedValue("the empty word has no value")
    try:
        evaluate(b)
    except ZeroDenominator:
        raise UndefinedValue(f"{tuple(b)} has no value; cannot simplify") from None
    while b[-1] == 0 and len(b) > 1:
        del b[-2:]
    i = 1
    while i < len(b) - 1:
        if b[i] == 0:
            b[i - 1 : i + 2] = [b[i - 1] + b[i + 1]]
            i = max(i - 1, 1)
        else:
            i += 1
    return tuple(b)
