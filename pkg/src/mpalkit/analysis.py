"""Finite-depth audits of infinite continued fractions.

Nothing here decides transcendence. The audits certify concrete inequalities
with exact rational interval arithmetic and collect repetition evidence up to
an explicit depth; negative findings hold only at the audited depth.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cf import convergents
from .errors import InvalidParameters, InvalidW, NonStandardWord
from .generators import BkSchedule, t_word
from .mpal import mpal_prefix_lengths
from .word import Word, WordStream, concat, power, z_array


@dataclass(frozen=True)
class RationalInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def __contains__(self, x) -> bool:
        # QuadraticIrrational exposes an exact compare(); rationals compare directly
        if hasattr(x, "compare"):
            return x.compare(self.lo) >= 0 and x.compare(self.hi) <= 0
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "RationalInterval") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def abs_upper(self, c: Fraction) -> Fraction:
        """Upper bound of ``|x - c|`` over the interval."""
        return max(abs(self.lo - c), abs(self.hi - c))

    def to_dict(self) -> dict:
        return {"lo": str(self.lo), "hi": str(self.hi)}


def _check_stream_terms(terms: Sequence[int]) -> None:
    if any(t < 1 for t in terms[1:]) or (terms and terms[0] < 0):
        raise NonStandardWord("stream must be standard with terms >= 1 after the first")


def enclose(stream: WordStream, depth: int) -> RationalInterval:
    """Interval between the convergents of index ``depth - 1`` and ``depth``.

    Consecutive convergents bracket the value, and the width is
    ``1 / (q_depth q_{depth-1})``.
    """
    if depth < 2:
        raise InvalidParameters("depth must be >= 2")
    terms = stream.prefix(depth + 1)
    _check_stream_terms(terms)
    tab = convergents(terms)
    a, b = tab.convergent(depth - 1), tab.convergent(depth)
    return RationalInterval(min(a, b), max(a, b))


def _below_inverse_power(x: Fraction, q: int, w: Fraction) -> bool:
    """Exact test of ``x < 1 / q^w`` for ``x >= 0``, ``q >= 1`` and rational ``w = a/b``."""
    if x <= 0:
        return True
    a, b = w.numerator, w.denominator
    return x.numerator**b * q**a < x.denominator**b


@dataclass(frozen=True)
class SchmidtRecord:
    """Audit of one m-palindromic prefix index ``i``.

    ``lhs`` encloses ``|alpha^2 - m p_i / q_{i-1}|``; ``bound1`` is
    ``(1 + 3 alpha_hat) / (q_i q_{i-1})`` with ``alpha_hat`` the enclosure's
    upper end, and ``bound2`` stands for ``1 / q_{i-1}^w`` (compared exactly,
    never evaluated).
    """

    index: int
    p_i: int
    q_i: int
    q_prev: int
    p_prev: int
    lhs: RationalInterval
    bound1: Fraction
    w: Fraction
    schmidt_ok: bool
    goal_ok: bool
    approx_ok: bool

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "p_i": str(self.p_i),
            "q_i": str(self.q_i),
            "p_prev": str(self.p_prev),
            "q_prev": str(self.q_prev),
            "lhs_hi": str(self.lhs.hi),
            "bound1": str(self.bound1),
            "bound2": f"1/{self.q_prev}^({self.w})",
            "schmidt_ok": self.schmidt_ok,
            "goal_ok": self.goal_ok,
            "approx_ok": self.approx_ok,
        }


@dataclass(frozen=True)
class SchmidtAudit:
    m: int
    w: Fraction
    depth: int
    enclosure: RationalInterval
    enclosure_depth: int
    records: tuple[SchmidtRecord, ...]
    i0: int | None

    @property
    def all_schmidt(self) -> bool:
        return all(r.schmidt_ok for r in self.records)

    @property
    def goal_from_i0(self) -> bool:
        """Goal and rational-approximation bounds hold on every record from ``i0`` on."""
        if self.i0 is None:
            return False
        return all(r.goal_ok and r.approx_ok for r in self.records if r.index >= self.i0)

    def to_dict(self) -> dict:
        return {
            "m": self.m,
            "w": str(self.w),
            "depth": self.depth,
            "enclosure_depth": self.enclosure_depth,
            "enclosure": self.enclosure.to_dict(),
            "i0": self.i0,
            "all_schmidt": self.all_schmidt,
            "goal_from_i0": self.goal_from_i0,
            "records": [r.to_dict() for r in self.records],
            "note": "finite-depth certificate at audited depth; no transcendence claim",
        }


def schmidt_audit(
    stream: WordStream,
    m: int,
    w,
    depth: int,
    enclosure_depth: int | None = None,
) -> SchmidtAudit:
    """Certify the quadratic approximation bounds at every m-palindromic index ``1 <= i <= depth``.

    The value is enclosed between convergents at ``enclosure_depth`` (default
    ``2 * depth + 10``), far deeper than any audited index. Index 0 is skipped
    because ``q_{-1} = 0``.
    """
    w = Fraction(w)
    if not Fraction(3, 2) < w < 2:
        raise InvalidW(f"w must lie strictly between 3/2 and 2, got {w}")
    if m < 1:
        raise InvalidParameters("m must be positive")
    if depth < 1:
        raise InvalidParameters("depth must be positive")
    enc_depth = enclosure_depth or 2 * depth + 10
    if enc_depth <= depth:
        raise InvalidParameters("enclosure depth must exceed the audited depth")
    terms = stream.prefix(enc_depth + 1)
    _check_stream_terms(terms)
    tab = convergents(terms)
    a, b = tab.convergent(enc_depth - 1), tab.convergent(enc_depth)
    box = RationalInterval(min(a, b), max(a, b))
    if box.lo < 0:
        raise InvalidParameters("audited value must be non-negative")
    sq = RationalInterval(box.lo * box.lo, box.hi * box.hi)

    records = []
    for length in mpal_prefix_lengths(terms[: depth + 1], m):
        i = length - 1
        if i < 1:
            continue
        p_i, q_i = tab.num(i), tab.den(i)
        p_prev, q_prev = tab.num(i - 1), tab.den(i - 1)
        c = Fraction(m * p_i, q_prev)
        lo = Fraction(0) if c in sq else min(abs(sq.lo - c), abs(sq.hi - c))
        lhs = RationalInterval(lo, sq.abs_upper(c))
        bound1 = (1 + 3 * box.hi) / (q_i * q_prev)
        approx = box.abs_upper(Fraction(p_prev, q_prev))
        records.append(
            SchmidtRecord(
                index=i,
                p_i=p_i,
                q_i=q_i,
                q_prev=q_prev,
                p_prev=p_prev,
                lhs=lhs,
                bound1=bound1,
                w=w,
                schmidt_ok=lhs.hi < bound1,
                goal_ok=_below_inverse_power(lhs.hi, q_prev, w),
                approx_ok=_below_inverse_power(approx, q_prev, w),
            )
        )

    i0 = None
    for r in reversed(records):
        if not (r.goal_ok and r.approx_ok):
            break
        i0 = r.index
    return SchmidtAudit(m, w, depth, box, enc_depth, tuple(records), i0)


# repetition scans ------------------------------------------------------------


@dataclass(frozen=True)
class RepetitionEvidence:
    """``U V^w`` is a prefix of the scanned word, with ``w`` maximal at that depth."""

    V: Word
    U: Word
    w: Fraction

    @property
    def ratio(self) -> Fraction:
        return Fraction(len(self.U), len(self.V))

    @property
    def length(self) -> int:
        return len(self.U) + len(power(self.V, self.w))

    def verify(self, word: Sequence[int]) -> bool:
        piece = concat(self.U, power(self.V, self.w))
        return tuple(word[: len(piece)]) == piece

    def to_dict(self, full: bool = False) -> dict:
        out = {
            "period": len(self.V),
            "offset": len(self.U),
            "w": str(self.w),
            "ratio": str(self.ratio),
        }
        if full:
            out["V"] = list(self.V)
            out["U"] = list(self.U)
        return out


def _sort_key(e: RepetitionEvidence):
    return (-e.w, len(e.V), len(e.U))


def _offset_rows(args) -> list[tuple[int, int, int]]:
    # (offset, period, repeated length) for one offset; module-level for pickling
    text, u, periods = args
    z = z_array(text[u:])
    rest = len(text) - u
    out = []
    for p in periods:
        if p > rest:
            break
        reach = rest if p == rest else min(rest, p + z[p])
        out.append((u, p, reach))
    return out


def initial_exponent_scan(stream: WordStream, depth: int, max_period: int) -> list[RepetitionEvidence]:
    """For each period ``p <= max_period``, the largest ``w`` with ``V^w`` a prefix, ``V`` = first ``p`` terms."""
    if depth < 1 or max_period < 1:
        raise InvalidParameters("depth and max_period must be positive")
    text = stream.prefix(depth)
    rows = _offset_rows((text, 0, range(1, max_period + 1)))
    out = [RepetitionEvidence(text[:p], (), Fraction(reach, p)) for _, p, reach in rows]
    return sorted(out, key=_sort_key)


def _workers(requested: int | None) -> int:
    if requested is not None:
        return max(1, requested)
    try:
        return max(1, int(os.environ.get("MPALKIT_THREADS", "1")))
    except ValueError:
        return 1


def offset_exponent_scan(
    stream: WordStream,
    depth: int,
    max_period: int,
    max_offset_ratio=1,
    workers: int | None = None,
) -> list[RepetitionEvidence]:
    """Like :func:`initial_exponent_scan` but allowing a prefix offset ``U``.

    For each period length the best offset is kept (largest ``w``, then the
    shortest ``U``) subject to ``|U| / |V| <= max_offset_ratio``. Offsets are
    scanned in parallel when ``workers`` (or ``MPALKIT_THREADS``) exceeds 1;
    the output order does not depend on it.
    """
    ratio = Fraction(max_offset_ratio)
    if ratio < 0:
        raise InvalidParameters("offset ratio must be non-negative")
    if depth < 1 or max_period < 1:
        raise InvalidParameters("depth and max_period must be positive")
    text = stream.prefix(depth)
    max_u = min(depth - 1, math.floor(ratio * max_period))
    jobs = []
    for u in range(max_u + 1):
        first = 1 if u == 0 else math.ceil(u / ratio)
        jobs.append((text, u, range(first, max_period + 1)))
    n = _workers(workers)
    if n > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n) as pool:
            chunks = list(pool.map(_offset_rows, jobs, chunksize=max(1, len(jobs) // (4 * n))))
    else:
        chunks = [_offset_rows(job) for job in jobs]
    best: dict[int, tuple[int, int]] = {}
    for rows in chunks:
        for u, p, reach in rows:
            cur = best.get(p)
            # compare reach / p, larger first, then smaller offset
            if cur is None or reach > cur[1] or (reach == cur[1] and u < cur[0]):
                best[p] = (u, reach)
    out = [
        RepetitionEvidence(text[u : u + p], text[:u], Fraction(reach, p))
        for p, (u, reach) in best.items()
    ]
    return sorted(out, key=_sort_key)


@dataclass(frozen=True)
class RepeatedPrefixCheck:
    k: int
    measured: Fraction
    structural: Fraction
    power_bound: Fraction

    @property
    def ok(self) -> bool:
        return self.measured <= self.structural <= self.power_bound


def t_repeated_prefix_ratio(k: int, schedule: BkSchedule | Sequence[int] | None = None) -> RepeatedPrefixCheck:
    """Largest ``|V'| / |V|`` over factors ``V`` of ``X = T_k`` that contain its middle ``B_k``.

    ``V'`` is the longest prefix of ``V`` that occurs again immediately after
    ``V`` in the word. Measured against ``|T_{k-1}| / |B_k|`` and ``1 / 2^k``.
    """
    if k < 3:
        raise InvalidParameters("k must be >= 3")
    sched = schedule if isinstance(schedule, BkSchedule) else BkSchedule(schedule)
    y, u = sched.t_length(k - 1), sched.b_length(k)
    text = t_word(k + 1, sched)
    x_len = 2 * y + u
    best = Fraction(0)
    for s in range(y + 1):
        for e in range(y + u, x_len + 1):
            span = e - s
            lcp = 0
            while lcp < span and e + lcp < len(text) and text[s + lcp] == text[e + lcp]:
                lcp += 1
            best = max(best, Fraction(lcp, span))
    return RepeatedPrefixCheck(k, best, Fraction(y, u), Fraction(1, 2**k))
