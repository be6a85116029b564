"""m-palindromicity: the matrix criterion, construction lemmas and prefix density.

A word ``A = (a_0, ..., a_i)`` with positive terms is an m-palindrome when
``[A] = m [reversed A]``; with ``[A] = p_i / q_i`` this is equivalent to the
integer test ``m q_i == p_{i-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cf import Mat2, big_matrix, big_mul, evaluate, word_matrix
from .errors import (
    HypothesisViolated,
    InsufficientData,
    InvalidParameters,
    NonStandardWord,
    NotMPalindrome,
    UndefinedExtendedValue,
    ZeroDenominator,
)
from .word import Word, WordStream, concat, reverse

# Mersenne prime used to screen prefixes before exact confirmation.
_SCREEN_MODULUS = (1 << 127) - 1


def _check_m(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise InvalidParameters(f"m must be a positive integer, got {m!r}")


def _check_positive(a: Sequence[int], what: str = "word") -> Word:
    a = tuple(a)
    if not a:
        raise NonStandardWord(f"{what} must be nonempty")
    if any(t < 1 for t in a):
        raise NonStandardWord(f"{what} {a} must have all terms >= 1")
    return a


@dataclass(frozen=True)
class MPalCertificate:
    """Witness integers for ``m q_i == p_{i-1}``."""

    m: int
    word: Word
    p_i: int
    q_i: int
    p_prev: int

    def verify(self) -> bool:
        mat = word_matrix(self.word)
        return (
            mat.a == self.p_i
            and mat.c == self.q_i
            and mat.b == self.p_prev
            and self.m * self.q_i == self.p_prev
        )

    def __str__(self) -> str:
        return f"{self.m}*{self.q_i} = {self.p_prev} = p_{len(self.word) - 2}"


def certify(a: Sequence[int], m: int) -> MPalCertificate | None:
    """Certificate that ``a`` is an m-palindrome, or None if it is not."""
    _check_m(m)
    a = _check_positive(a)
    mat = word_matrix(a)
    if m * mat.c != mat.b:
        return None
    return MPalCertificate(m, a, mat.a, mat.c, mat.b)


def is_m_palindrome(a: Sequence[int], m: int) -> bool:
    return certify(a, m) is not None


def is_m_palindrome_extended(a: Sequence[int], m: int) -> bool:
    """Value-level test ``[A] = m [reversed A]`` for words that may contain zeros.

    Both values must exist and be positive, otherwise
    :class:`UndefinedExtendedValue` is raised.
    """
    _check_m(m)
    try:
        fwd, bwd = evaluate(a), evaluate(reverse(a))
    except ZeroDenominator:
        raise UndefinedExtendedValue(f"{tuple(a)} or its reversal is undefined") from None
    if fwd <= 0 or bwd <= 0:
        raise UndefinedExtendedValue(f"{tuple(a)} or its reversal is not positive")
    return fwd == m * bwd


def scan_m(a: Sequence[int], max_m: int) -> list[int]:
    """Every ``m <= max_m`` for which ``a`` is an m-palindrome."""
    a = _check_positive(a)
    mat = word_matrix(a)
    return [m for m in range(1, max_m + 1) if m * mat.c == mat.b]


def _projective_eq(m: int, x: Mat2, y: Mat2) -> bool:
    # m * (x.a / x.c) == y.a / y.c, allowing the empty word's value 1/0
    return m * x.a * y.c == y.a * x.c


def check_ba_join(a: Sequence[int], b: Sequence[int], m: int) -> bool:
    """Decide whether ``BA`` is an m-palindrome from the shorter words alone.

    Requires ``m [reversed A] = [B]``; then ``BA`` is m-palindromic iff
    ``m [a_i, ..., a_1] = [b_0, ..., b_{j-1}]``.
    """
    _check_m(m)
    a = _check_positive(a, "A")
    b = _check_positive(b, "B")
    ra = reverse(a)
    if not _projective_eq(m, word_matrix(ra), word_matrix(b)):
        raise HypothesisViolated(f"m[reversed {a}] != [{b}] for m={m}")
    return _projective_eq(m, word_matrix(ra[:-1]), word_matrix(b[:-1]))


def _has_zero(a: Sequence[int]) -> bool:
    return any(t == 0 for t in a)


def square(a: Sequence[int], m: int) -> Word:
    a = _check_positive(a)
    if not is_m_palindrome(a, m):
        raise NotMPalindrome(f"{a} is not a {m}-palindrome")
    out = concat(a, a)
    assert is_m_palindrome(out, m)
    return out


def sandwich(a: Sequence[int], b: Sequence[int], m: int) -> Word:
    """``ABA`` for m-palindromes ``A`` and ``B``.

    Words containing zeros are accepted when ``[A]``, ``[reversed A]``,
    ``[B]``, ``[reversed B]`` all exist and are positive; m-palindromicity is
    then checked on values.
    """
    _check_m(m)
    a, b = tuple(a), tuple(b)
    if not a or not b:
        raise NotMPalindrome("empty words are not m-palindromes")
    out = concat(a, b, a)
    if _has_zero(a) or _has_zero(b):
        for w in (a, b):
            if not is_m_palindrome_extended(w, m):
                raise NotMPalindrome(f"{w} is not a {m}-palindrome")
        assert is_m_palindrome_extended(out, m)
        return out
    for w in (a, b):
        if not is_m_palindrome(w, m):
            raise NotMPalindrome(f"{w} is not a {m}-palindrome")
    assert is_m_palindrome(out, m)
    return out


@dataclass
class DensityReport:
    """Consecutive m-palindromic prefix lengths found up to ``max_len``."""

    m: int
    max_len: int
    prefix_lengths: list[int]
    ratios: list[Fraction] = field(default_factory=list)
    window: int = 5
    tail_sup: Fraction | None = None

    def __post_init__(self) -> None:
        if not self.ratios:
            self.ratios = [
                Fraction(x, y) for x, y in zip(self.prefix_lengths, self.prefix_lengths[1:])
            ]
        if self.ratios and self.tail_sup is None:
            self.tail_sup = max(self.ratios[-self.window :])

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "max_len": self.max_len,
            "prefix_lengths": self.prefix_lengths,
            "ratios": [str(r) for r in self.ratios],
            "window": self.window,
            "tail_sup": None if self.tail_sup is None else str(self.tail_sup),
        }


def _screen(terms: Sequence[int], m: int, modulus: int) -> list[int]:
    """Prefix lengths passing ``m q_i == p_{i-1}`` modulo ``modulus``.

    Non-hits are exact negatives; hits still need exact confirmation.
    """
    p, pp, q, qq = 1, 0, 0, 1
    hits = []
    n = 0
    for t in terms:
        if t < 1:
            raise NonStandardWord(f"term {n} of the stream is {t}; need terms >= 1")
        p, pp = (t * p + pp) % modulus, p
        q, qq = (t * q + qq) % modulus, q
        n += 1
        if (m * q - pp) % modulus == 0:
            hits.append(n)
    return hits


def mpal_prefix_lengths(terms: Sequence[int], m: int) -> list[int]:
    """Lengths of all m-palindromic prefixes of ``terms``, ascending and gap-free.

    Every prefix is screened modulo a 127-bit prime; the few candidates are
    confirmed exactly by extending a running continuant matrix segment by
    segment, so only four big integers are ever held.
    """
    _check_m(m)
    terms = tuple(terms)
    found = []
    mat = big_matrix(())
    done = 0
    for n in _screen(terms, m, _SCREEN_MODULUS):
        mat = big_mul(mat, big_matrix(terms[done:n]))
        done = n
        if m * mat[2] == mat[1]:
            found.append(n)
    return found


def mpal_prefixes(stream: WordStream, m: int, max_len: int, window: int = 5) -> DensityReport:
    lengths = mpal_prefix_lengths(stream.prefix(max_len), m)
    return DensityReport(m=m, max_len=max_len, prefix_lengths=lengths, window=window)


def density_estimate(report: DensityReport, window: int = 5) -> Fraction:
    """Largest of the last ``window`` ratios ``|P_k| / |P_{k+1}|``.

    A finite-depth estimate of the m-palindromic density, not the limsup.
    """
    if window < 1:
        raise InvalidParameters("window must be positive")
    if len(report.prefix_lengths) < window + 1:
        raise InsufficientData(
            f"need {window + 1} m-palindromic prefixes, found {len(report.prefix_lengths)}"
        )
    return max(report.ratios[-window:])
