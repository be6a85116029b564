"""Builders for the infinite words used as examples and audit subjects.

Every family here is grown by symmetric insertion: a word ``Y`` becomes
``Y I_k Y`` for an insert ``I_k``, so each stage is a prefix of the next and
the limit word can be streamed lazily.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Sequence

from .cf import simplify
from .errors import EmptyWord, InvalidParameters, MpalError, ScheduleNotIncreasing
from .word import Word, WordStream, concat, periodic_stream, power, parse_periodic

Schedule = Callable[[int], int]


def _grow(seed: Sequence[int], insert: Callable[[int], Iterable[int]]) -> Iterator[int]:
    """Terms of the limit of ``Y_0 = seed``, ``Y_k = Y_{k-1} insert(k) Y_{k-1}``."""
    out = list(seed)
    yield from out
    for k in itertools.count(1):
        n = len(out)
        for t in insert(k):
            out.append(t)
            yield t
        for i in range(n):
            t = out[i]
            out.append(t)
            yield t


# perturbed symmetries ----------------------------------------------------------


def s_map(a: Sequence[int], n: int, y: Sequence[int]) -> Word:
    """``Y A^n Y``."""
    return concat(y, power(a, n), y)


@dataclass(frozen=True)
class PerturbedSystem:
    """Insert ``A^{n_k}`` at stage ``k``, starting from ``X``."""

    A: Word
    X: Word
    schedule: Schedule = field(default=lambda k: k)
    name: str = "perturbed"

    def __post_init__(self) -> None:
        object.__setattr__(self, "A", tuple(self.A))
        object.__setattr__(self, "X", tuple(self.X))
        if not self.A or not self.X:
            raise EmptyWord("A and X must be nonempty")

    def n(self, k: int) -> int:
        nk = self.schedule(k)
        if nk < 1:
            raise InvalidParameters(f"schedule must be positive, n_{k} = {nk}")
        return nk

    def t_word(self, k: int) -> Word:
        """``T_{A,k}(X)``; ``k = 0`` gives ``X``."""
        y = self.X
        for i in range(1, k + 1):
            y = s_map(self.A, self.n(i), y)
        return y

    def t_length(self, k: int) -> int:
        length = len(self.X)
        for i in range(1, k + 1):
            length = 2 * length + self.n(i) * len(self.A)
        return length

    def stream(self) -> WordStream:
        return WordStream(lambda: _grow(self.X, lambda k: self.A * self.n(k)), name=self.name)


def perturbed_stream(sys: PerturbedSystem) -> WordStream:
    return sys.stream()


ST_A: Word = (2, 1)
ST_B: Word = (2, 1, 1, 3, 1)


def st_system() -> PerturbedSystem:
    return PerturbedSystem(ST_A, ST_B, lambda k: k, name="st_number")


def st_number_stream() -> WordStream:
    return st_system().stream()


# the G sequence --------------------------------------------------------------

G_C: Word = (1, 1, 0)
G_D: Word = (2, 1)
G_E: Word = (1, 1, 3, 1)


def f_word(k: int) -> Word:
    """``(1, 2, ..., 2, 3)`` with ``k`` middle twos."""
    return (1,) + (2,) * k + (3,)


def u_word(k: int) -> Word:
    """``U_k = T_{C,k}(D)`` with ``n_k = k``; contains zeros."""
    return PerturbedSystem(G_C, G_D).t_word(k)


def g_sequence(k: int, check: bool = False) -> Word:
    """``G_k = (2, S_{F_k} o ... o S_{F_1}(E))``.

    With ``check=True`` also asserts that ``G_k`` is the simplification of
    ``U_{k+1}`` (the extended construction it comes from).
    """
    if k < 1:
        raise InvalidParameters("k must be >= 1")
    body = G_E
    for i in range(1, k + 1):
        body = concat(body, f_word(i), body)
    g = (2,) + body
    if check and simplify(u_word(k + 1)) != g:
        raise MpalError(f"G_{k} is not the simplification of U_{k + 1}")
    return g


def g_length(k: int) -> int:
    length = len(G_E)
    for i in range(1, k + 1):
        length = 2 * length + i + 2
    return length + 1


def g_stream() -> WordStream:
    def terms() -> Iterator[int]:
        yield 2
        yield from _grow(G_E, f_word)

    return WordStream(terms, name="g")


# the B_k / T construction ----------------------------------------------------


class BkSchedule:
    """The increasing sequence ``l_1 < l_2 < ...`` used by ``B_k``.

    With no explicit values, ``l_1 = 1``, ``l_2 = 2`` and each later ``l_k`` is
    the least value with ``|B_k| >= 2^k |T_{k-1}|``. Explicit values are used
    as given (and must be strictly increasing); past their end the growth
    rule takes over.
    """

    def __init__(self, values: Sequence[int] | None = None):
        self._l = [1, 2] if values is None else [int(v) for v in values]
        if len(self._l) < 2:
            raise InvalidParameters("a schedule needs at least l_1 and l_2")
        if self._l[0] < 1 or any(b <= a for a, b in zip(self._l, self._l[1:])):
            raise ScheduleNotIncreasing(f"schedule {self._l} is not strictly increasing")
        # |T_k| for k >= 2, indexed by k
        self._t = {2: 4 * (self._l[1] - self._l[0])}

    def l(self, k: int) -> int:
        if k < 1:
            raise InvalidParameters("schedule index starts at 1")
        while len(self._l) < k:
            j = len(self._l) + 1
            d = -(-(2**j) * self.t_length(j - 1) // 4)
            self._l.append(self._l[-1] + d)
        return self._l[k - 1]

    def d(self, k: int) -> int:
        return self.l(k) - self.l(k - 1)

    def b_length(self, k: int) -> int:
        return 4 * self.d(k)

    def t_length(self, k: int) -> int:
        if k < 2:
            raise InvalidParameters("T_k is defined for k >= 2")
        if k not in self._t:
            self._t[k] = 2 * self.t_length(k - 1) + self.b_length(k)
        return self._t[k]


def _bk_terms(k: int, sched: BkSchedule) -> Iterator[int]:
    lo, hi = sched.l(k - 1), sched.l(k)
    for i in range(1, hi - lo + 1):
        yield 2 * (lo + i)
        yield lo + i
    for i in range(hi - lo):
        yield 2 * (hi - i)
        yield hi - i


def bk_word(k: int, schedule: BkSchedule | Sequence[int] | None = None) -> Word:
    """``B_k = prod_{i=1}^{d_k} (2(l_{k-1}+i), l_{k-1}+i) prod_{i=0}^{d_k-1} (2(l_k-i), l_k-i)``."""
    if k < 2:
        raise InvalidParameters("B_k is defined for k >= 2")
    sched = schedule if isinstance(schedule, BkSchedule) else BkSchedule(schedule)
    return tuple(_bk_terms(k, sched))


def t_word(k: int, schedule: BkSchedule | Sequence[int] | None = None) -> Word:
    """``T_k = S_{B_k} o ... o S_{B_3}(B_2)``; ``T_2 = B_2``."""
    sched = schedule if isinstance(schedule, BkSchedule) else BkSchedule(schedule)
    t = bk_word(2, sched)
    for j in range(3, k + 1):
        t = concat(t, bk_word(j, sched), t)
    return t


def t_stream(schedule: BkSchedule | Sequence[int] | None = None) -> WordStream:
    sched = schedule if isinstance(schedule, BkSchedule) else BkSchedule(schedule)
    return WordStream(
        lambda: _grow(bk_word(2, sched), lambda k: _bk_terms(k + 2, sched)), name="t"
    )


# Fibonacci -------------------------------------------------------------------


def fib(n: int) -> int:
    """Fibonacci numbers with ``f_1 = f_2 = 1``."""
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def fibonacci_word(n: int, alphabet: tuple = ("a", "b")) -> tuple:
    """``S_n``: ``S_0 = (a)``, ``S_1 = (a, b)``, ``S_{n+1} = S_n S_{n-1}``."""
    a, b = alphabet
    prev, cur = (a,), (a, b)
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, cur + prev
    return cur


def fibonacci_star(n: int, alphabet: tuple = ("a", "b")) -> tuple:
    """``S_n`` without its last two letters."""
    return fibonacci_word(n, alphabet)[:-2]


def _check_mrs(m: int, r: int, s: int) -> None:
    if min(m, r, s) < 1 or r == s:
        raise InvalidParameters(f"need m, r, s >= 1 and r != s, got m={m} r={r} s={s}")


def substitute(letters: Iterable, m: int, r: int, s: int, alphabet: tuple = ("a", "b")) -> Word:
    """Replace ``a`` by ``(rm, r)`` and ``b`` by ``(sm, s)``."""
    _check_mrs(m, r, s)
    table = {alphabet[0]: (r * m, r), alphabet[1]: (s * m, s)}
    return tuple(t for x in letters for t in table[x])


def fibonacci_letters() -> Iterator[str]:
    out = ["a", "b"]
    yield from out
    prev_len = 1
    while True:
        n = len(out)
        for i in range(prev_len):
            t = out[i]
            out.append(t)
            yield t
        prev_len = n


def fib_substituted_stream(m: int, r: int, s: int) -> WordStream:
    _check_mrs(m, r, s)
    pair = {"a": (r * m, r), "b": (s * m, s)}

    def terms() -> Iterator[int]:
        for x in fibonacci_letters():
            yield from pair[x]

    return WordStream(terms, name=f"fib:m={m},r={r},s={s}")


# the non-equivalent quadratic example -----------------------------------------

NE_B: Word = (2, 1)
NE_C: Word = (1, 2, 2, 1, 0)
NE_D: Word = (1, 1, 2, 2, 3)


def nonequiv_n(k: int) -> int:
    """``n_1 = 1``, ``n_k = 2 n_{k-1} + 1``."""
    return 2**k - 1


def nonequiv_t(k: int) -> Word:
    """``T_k = S_C^k(B)`` (an extended word)."""
    return PerturbedSystem(NE_C, NE_B, lambda _: 1).t_word(k)


def nonequiv_t_simplified(k: int, check: bool = False) -> Word:
    """``(2, D^{n_k}, 1)``; ``check=True`` asserts it simplifies ``T_k``."""
    out = (2,) + NE_D * nonequiv_n(k) + (1,)
    if check and simplify(nonequiv_t(k)) != out:
        raise MpalError(f"simplify(T_{k}) != (2, D^{nonequiv_n(k)}, 1)")
    return out


def nonequiv_stream() -> WordStream:
    s = periodic_stream((2,), NE_D)
    s.name = "nonequiv"
    return s


# named families ----------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    name: str
    params: dict = field(default_factory=dict)

    FAMILIES = ("st_number", "g", "t", "fib", "nonequiv", "periodic")

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """``name`` or ``name:key=value,...``; ``periodic:U|W`` takes the word directly."""
        name, _, rest = text.partition(":")
        name = {"bk": "t", "bk_word": "t", "g_sequence": "g", "fibonacci": "fib"}.get(name, name)
        if name not in cls.FAMILIES:
            raise InvalidParameters(f"unknown family {name!r}; choose from {', '.join(cls.FAMILIES)}")
        if name == "periodic":
            if not rest:
                raise InvalidParameters("periodic needs a word, e.g. periodic:2|1,1,2,2,3")
            return cls(name, {"word": rest})
        params = {}
        if rest:
            for item in rest.split(","):
                key, eq, value = item.partition("=")
                if not eq:
                    raise InvalidParameters(f"bad parameter {item!r}; expected key=value")
                params[key.strip()] = value.strip()
        return cls(name, params)

    def stream(self) -> WordStream:
        p = self.params
        if self.name == "st_number":
            return st_number_stream()
        if self.name == "g":
            return g_stream()
        if self.name == "t":
            values = p.get("l")
            return t_stream([int(v) for v in values.split(";")] if values else None)
        if self.name == "fib":
            return fib_substituted_stream(int(p.get("m", 2)), int(p.get("r", 1)), int(p.get("s", 2)))
        if self.name == "nonequiv":
            return nonequiv_stream()
        pre, per = parse_periodic(p["word"])
        return periodic_stream(pre, per)


def stream_from_spec(text: str) -> WordStream:
    return FamilySpec.parse(text).stream()
