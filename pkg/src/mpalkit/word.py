"""Words of partial quotients and lazily generated infinite words.

A finite word is a plain ``tuple`` of non-negative ints. Functions accept any
integer sequence and always return tuples, so results are hashable and safe to
share.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

from .errors import EmptyWord, MpalError, ParseError

Word = tuple  # tuple[int, ...]
Exponent = Union[int, Fraction]


def word(terms: Iterable[int]) -> Word:
    out = tuple(int(t) for t in terms)
    if any(t < 0 for t in out):
        raise MpalError(f"negative partial quotient in {out}")
    return out


def reverse(a: Sequence[int]) -> Word:
    return tuple(reversed(a))


def concat(*words: Sequence[int]) -> Word:
    out: list[int] = []
    for w in words:
        out.extend(w)
    return tuple(out)


def power(a: Sequence[int], x: Exponent) -> Word:
    """Return ``a`` raised to the rational power ``x``.

    ``a^x`` is ``floor(x)`` copies of ``a`` followed by the prefix of ``a`` of
    length ``ceil((x - floor(x)) * |a|)``. ``x`` must be an int or a
    ``Fraction``; floats are refused because the ceiling is discontinuous.
    """
    if isinstance(x, float):
        raise TypeError("fractional exponents must be exact (int or Fraction)")
    x = Fraction(x)
    if x <= 0:
        raise MpalError(f"exponent must be positive, got {x}")
    a = tuple(a)
    if not a:
        raise EmptyWord("power of the empty word is undefined")
    whole = math.floor(x)
    extra = math.ceil((x - whole) * len(a))
    return a * whole + a[:extra]


def power_length(length: int, x: Exponent) -> int:
    x = Fraction(x)
    whole = math.floor(x)
    return whole * length + math.ceil((x - whole) * length)


def occurrences(haystack: Sequence[int], needle: Sequence[int]) -> list[int]:
    """Start indices of every (possibly overlapping) occurrence of ``needle``."""
    needle = tuple(needle)
    if not needle:
        raise MpalError("needle must be nonempty")
    haystack = tuple(haystack)
    n, k = len(haystack), len(needle)
    if k > n:
        return []
    # Knuth-Morris-Pratt failure table
    fail = [0] * k
    j = 0
    for i in range(1, k):
        while j and needle[i] != needle[j]:
            j = fail[j - 1]
        if needle[i] == needle[j]:
            j += 1
        fail[i] = j
    hits = []
    j = 0
    for i, t in enumerate(haystack):
        while j and t != needle[j]:
            j = fail[j - 1]
        if t == needle[j]:
            j += 1
        if j == k:
            hits.append(i - k + 1)
            j = fail[j - 1]
    return hits


def is_palindrome_word(a: Sequence[int]) -> bool:
    a = tuple(a)
    return a == a[::-1]


def is_standard(a: Sequence[int]) -> bool:
    """True iff every term after the first is at least 1 (the empty word counts)."""
    return all(t >= 1 for t in tuple(a)[1:]) and all(t >= 0 for t in a)


def z_array(s: Sequence[int]) -> list[int]:
    """Z-function: ``z[i]`` is the length of the longest common prefix of ``s`` and ``s[i:]``.

    ``z[0]`` is set to ``len(s)``.
    """
    n = len(s)
    z = [0] * n
    if n == 0:
        return z
    z[0] = n
    lo = hi = 0
    for i in range(1, n):
        if i < hi:
            z[i] = min(hi - i, z[i - lo])
        while i + z[i] < n and s[z[i]] == s[i + z[i]]:
            z[i] += 1
        if i + z[i] > hi:
            lo, hi = i, i + z[i]
    return z


# text formats ---------------------------------------------------------------

def parse_word(text: str) -> Word:
    text = text.strip()
    if not text:
        return ()
    try:
        return word(int(t) for t in text.split(","))
    except ValueError as exc:
        if isinstance(exc, MpalError):
            raise
        raise ParseError(f"cannot parse word {text!r}") from None


def format_word(a: Sequence[int]) -> str:
    return ",".join(str(t) for t in a)


def parse_periodic(text: str) -> tuple[Word, Word]:
    """Parse ``"U|W"`` into (preperiod, period). A bare word is a pure period."""
    if "|" in text:
        pre, _, per = text.partition("|")
    else:
        pre, per = "", text
    period = parse_word(per)
    if not period:
        raise EmptyWord("the period of an eventually periodic word must be nonempty")
    return parse_word(pre), period


def format_periodic(pre: Sequence[int], period: Sequence[int]) -> str:
    return f"{format_word(pre)}|{format_word(period)}"


class WordStream:
    """Deterministic infinite word with a memoized, thread-safe prefix cache.

    ``factory`` returns a fresh iterator over the terms; it is called once, on
    first use. ``name`` is only used for reporting.
    """

    def __init__(self, factory: Callable[[], Iterator[int]], name: str = "stream"):
        self._factory = factory
        self._iter: Iterator[int] | None = None
        self._memo: list[int] = []
        self._lock = threading.Lock()
        self.name = name

    def _fill(self, n: int) -> None:
        with self._lock:
            if self._iter is None:
                self._iter = iter(self._factory())
            memo = self._memo
            need = n - len(memo)
            if need > 0:
                before = len(memo)
                memo.extend(_take(self._iter, need))
                if len(memo) - before < need:
                    raise MpalError(f"{self.name}: generator ended after {len(memo)} terms")

    def prefix(self, n: int) -> Word:
        if n < 0:
            raise MpalError("prefix length must be non-negative")
        self._fill(n)
        return tuple(self._memo[:n])

    def term(self, k: int) -> int:
        self._fill(k + 1)
        return self._memo[k]

    def __iter__(self) -> Iterator[int]:
        k = 0
        while True:
            yield self.term(k)
            k += 1

    def fresh(self) -> "WordStream":
        """Same word, independent cache (for confinement to one thread)."""
        return WordStream(self._factory, self.name)

    def __repr__(self) -> str:
        return f"WordStream({self.name!r})"


def _take(it: Iterator[int], n: int) -> Iterator[int]:
    for _ in range(n):
        try:
            yield next(it)
        except StopIteration:
            return


def periodic_stream(pre: Sequence[int], period: Sequence[int]) -> WordStream:
    pre, period = tuple(pre), tuple(period)
    if not period:
        raise EmptyWord("period must be nonempty")

    def terms() -> Iterator[int]:
        yield from pre
        while True:
            yield from period

    return WordStream(terms, name=f"periodic:{format_periodic(pre, period)}")
