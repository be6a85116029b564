"""Exit criteria, one test per criterion.

Each test records a PASS/FAIL line that is printed in the pytest summary (and
on stdout when this file is run directly).
"""

import itertools
import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from mpalkit.cf import convergents, evaluate, simplify
from mpalkit.analysis import schmidt_audit
from mpalkit.generators import (
    fib,
    fib_substituted_stream,
    fibonacci_star,
    g_sequence,
    nonequiv_t,
    nonequiv_t_simplified,
    st_number_stream,
    st_system,
    substitute,
    u_word,
)
from mpalkit.mpal import (
    check_ba_join,
    density_estimate,
    is_m_palindrome,
    mpal_prefixes,
    sandwich,
    square,
)
from mpalkit.errors import HypothesisViolated
from mpalkit.quadratic import (
    EventuallyPeriodicWord,
    QuadraticIrrational,
    Split,
    burger_split,
    is_reduced,
    periodic_value,
)
from mpalkit.word import is_palindrome_word, occurrences, periodic_stream, reverse

from conftest import ACCEPTANCE_LINES, SESSION, value_rtl

PHI_INV = (5**0.5 - 1) / 2


class Criterion:
    def __init__(self, number, title):
        self.number, self.title, self.failures = number, title, []

    def check(self, ok, detail=""):
        if not ok:
            self.failures.append(detail)

    def finish(self, summary=""):
        status = "PASS" if not self.failures else "FAIL"
        extra = f" ({summary})" if summary else ""
        if self.failures:
            extra += f" first failure: {self.failures[0]}"
        line = f"[{status}] criterion {self.number}: {self.title}{extra}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert not self.failures, line


def oracle_mpal(word, m):
    return value_rtl(word) == m * value_rtl(reverse(word))


def small_words(max_len, max_term):
    for n in range(1, max_len + 1):
        yield from itertools.product(range(1, max_term + 1), repeat=n)


def test_criterion_01_criterion_equivalence():
    c = Criterion(1, "matrix criterion <=> rational definition (length <= 6, terms <= 4, m <= 4)")
    count = 0
    for word in small_words(6, 4):
        for m in range(1, 5):
            count += 1
            c.check(is_m_palindrome(word, m) == oracle_mpal(word, m), f"{word}, m={m}")
    c.finish(f"{count} cases, {len(c.failures)} mismatches")


def test_criterion_02_transpose_and_determinant():
    c = Criterion(2, "transpose identity and determinant on 10,000 random words")
    rng = random.Random(20240602)
    for _ in range(10_000):
        word = tuple(rng.randint(1, 100) for _ in range(rng.randint(1, 30)))
        fwd, bwd = convergents(word), convergents(reverse(word))
        i = len(word) - 1
        c.check(bwd.num(i) == fwd.num(i) and bwd.den(i) == fwd.num(i - 1), f"transpose {word}")
        c.check(bwd.num(i - 1) == fwd.den(i) and bwd.den(i - 1) == fwd.den(i - 1), f"transpose {word}")
        c.check(fwd.num(i) * fwd.den(i - 1) - fwd.num(i - 1) * fwd.den(i) == (-1) ** (i + 1), f"det {word}")
    c.finish(f"{len(c.failures)} failures")


def test_criterion_03_mn_n_family():
    c = Criterion(3, "(mn, n) m-palindromic; even prefixes of overline(mn, n) up to length 40")
    for m in range(1, 21):
        for n in range(1, 21):
            c.check(is_m_palindrome((m * n, n), m), f"({m * n},{n})")
            period = (m * n, n)
            for length in range(2, 41, 2):
                c.check(is_m_palindrome(period * (length // 2), m), f"({m * n},{n})^{length // 2}")
    c.finish(f"{len(c.failures)} failures")


def _certified_pool():
    pool = {m: set() for m in range(1, 5)}
    for word in small_words(5, 4):
        for m in range(1, 5):
            if oracle_mpal(word, m):
                pool[m].add(word)
    for m in range(1, 5):
        for n in range(1, 6):
            pool[m].add((m * n, n))
            pool[m].add((m * m, 1) * n + (m,) * (2 * n))
    return {m: sorted(words) for m, words in pool.items()}


def test_criterion_04_construction_lemmas():
    c = Criterion(4, "sandwich/square outputs on 1,000 random certified pairs; BA-join exhaustive")
    pool = _certified_pool()
    rng = random.Random(7)
    for _ in range(1000):
        m = rng.randint(1, 4)
        a, b = rng.choice(pool[m]), rng.choice(pool[m])
        aba = sandwich(a, b, m)
        c.check(is_m_palindrome(aba, m) and oracle_mpal(aba, m), f"ABA {a} {b} m={m}")
        aa = square(a, m)
        c.check(is_m_palindrome(aa, m) and oracle_mpal(aa, m), f"AA {a} m={m}")
    joins = 0
    for la, lb in itertools.product(range(1, 4), repeat=2):
        for a in itertools.product(range(1, 5), repeat=la):
            for b in itertools.product(range(1, 5), repeat=lb):
                for m in range(1, 4):
                    try:
                        verdict = check_ba_join(a, b, m)
                    except HypothesisViolated:
                        continue
                    joins += 1
                    c.check(verdict == oracle_mpal(b + a, m), f"BA-join {a} {b} m={m}")
    c.finish(f"{joins} join cases, {len(c.failures)} failures")


def test_criterion_05_simplification():
    c = Criterion(5, "simplify preserves value, is standard and idempotent; golden cases")
    rng = random.Random(99)
    done = 0
    while done < 10_000:
        word = [rng.randint(0, 5) for _ in range(rng.randint(1, 14))]
        word[rng.randrange(len(word))] = 0
        value = value_rtl(word)
        if value is None:
            continue
        done += 1
        out = simplify(word)
        c.check(evaluate(out) == value, f"value {word}")
        c.check(all(t >= 1 for t in out[1:]) and (out == (0,) or out[-1] > 0), f"standard {word}")
        c.check(simplify(out) == out, f"idempotent {word}")
    c.check(evaluate((1, 1, 1)) == evaluate((1, 2)) == Fraction(3, 2), "[1,1,1]=[1,2]=3/2")
    c.check(simplify((2, 1, 1, 1, 0, 2, 1)) == (2, 1, 1, 3, 1), "U_1")
    c.check(simplify(nonequiv_t(1)) == (2, 1, 1, 2, 2, 3, 1), "S_C((2,1))")
    c.finish(f"{done} random words")


def _st_letters(k):
    # letter-level construction over {A, B}: T_k = T_{k-1} A^k T_{k-1}
    t = "B"
    for i in range(1, k + 1):
        t = t + "A" * i + t
    return t


def test_criterion_06_st_number_example():
    c = Criterion(6, "st_number prefix, 2-palindromic T_{A,k}(B), growth inequality")
    expand = {"A": (2, 1), "B": (2, 1, 1, 3, 1)}
    letters = _st_letters(6)
    assert letters.startswith("BABAABABAAABABAABAB")
    oracle = tuple(t for ch in letters for t in expand[ch])
    stream = st_number_stream()
    c.check(len(oracle) >= 100)
    c.check(stream.prefix(len(oracle)) == oracle, "prefix")
    c.check(stream.prefix(23) == (2, 1, 1, 3, 1, 2, 1, 2, 1, 1, 3, 1, 2, 1, 2, 1, 2, 1, 1, 3, 1, 2, 1), "literal")
    sys_ = st_system()
    for k in range(1, 11):
        c.check(is_m_palindrome(sys_.t_word(k), 2), f"T_{k}")
    for k in range(2, 21):
        prev = sys_.t_length(k - 1)
        c.check(prev > 2 ** (k - 1) - 1, f"|T_{k - 1}|")
        c.check(Fraction(sys_.n(k), prev) < Fraction(k, 2 ** (k - 1) - 1), f"k={k}")
    c.finish(f"{len(oracle)} terms compared")


def test_criterion_07_g_example():
    c = Criterion(7, "G_k 2-palindromic = simplify(U_{k+1}); (2,1) only at 0; |G_k|/|G_{k+1}| -> 1/2")
    for k in range(1, 7):
        g = g_sequence(k)
        c.check(is_m_palindrome(g, 2), f"G_{k} 2-palindrome")
        c.check(simplify(u_word(k + 1)) == g, f"G_{k} = simplify(U_{k + 1})")
    for k in range(1, 9):
        c.check(occurrences(g_sequence(k), (2, 1)) == [0], f"occurrences in G_{k}")
    ratio = Fraction(len(g_sequence(12)), len(g_sequence(13)))
    c.check(abs(ratio - Fraction(1, 2)) < Fraction(1, 100), f"ratio {float(ratio)}")
    c.finish(f"|G_12|/|G_13| = {float(ratio):.6f}")


def test_criterion_08_fibonacci():
    c = Criterion(8, "Fibonacci: lengths 2f_{n+2}-4, palindromic S_n*, m-palindromic S_n*(m,r,s), density")
    for n in range(2, 26):
        star = fibonacci_star(n)
        c.check(is_palindrome_word(star), f"S_{n}* palindrome")
        for m, r, s in [(2, 1, 2), (3, 1, 2), (2, 2, 3)]:
            word = substitute(star, m, r, s)
            c.check(len(word) == 2 * fib(n + 2) - 4, f"|S_{n}*({m},{r},{s})|")
            c.check(is_m_palindrome(word, m), f"S_{n}*({m},{r},{s})")
    depth = 2 * fib(32) - 4
    report = mpal_prefixes(fib_substituted_stream(2, 1, 2), 2, depth)
    est = density_estimate(report, 5)
    c.check(report.prefix_lengths[-1] == depth, "deepest prefix found")
    c.check(abs(float(est) - PHI_INV) < 1e-6, f"estimate {float(est)!r}")
    c.finish(f"estimate at n=30 is {float(est):.10f}, error {abs(float(est) - PHI_INV):.2e}")


def test_criterion_09_nonequivalent_example():
    c = Criterion(9, "quadratic example: values, polynomials, reducedness, Burger, (2,D^{n_k},1)")
    x = periodic_value("|1,1,2,2,3")
    c.check(x == QuadraticIrrational(17, 577, 24) and x.polynomial == (12, -17, -6), "tail value")
    alpha = periodic_value("2|1,1,2,2,3")
    c.check(alpha == QuadraticIrrational(7, 577, 12) and alpha.polynomial == (6, -7, -22), "alpha")
    c.check(not is_reduced(alpha), "alpha not reduced")
    c.check(is_reduced(alpha / 2), "alpha/2 reduced")
    c.check(alpha / 2 == periodic_value("|1,3,2,2,1"), "alpha/2 = [overline(1,3,2,2,1)]")
    for period in [(1, 1, 2, 2, 3), (1, 3, 2, 2, 1)]:
        c.check(burger_split(period, 2).kind is Split.NONE, f"Burger {period}")
    for k, n in zip(range(1, 6), (1, 3, 7, 15, 31)):
        word = (2,) + (1, 1, 2, 2, 3) * n + (1,)
        c.check(nonequiv_t_simplified(k) == word, f"n_{k}")
        c.check(is_m_palindrome(word, 2), f"(2,D^{n},1)")
        c.check(simplify(nonequiv_t(k)) == word, f"simplify T_{k}")
    c.finish()


def test_criterion_10_schmidt_audit():
    c = Criterion(10, "Schmidt records certified at every m-palindromic index <= 200; goal from i0")
    for name, stream in [("st_number", st_number_stream()), ("overline(6,3)", periodic_stream((), (6, 3)))]:
        audit = schmidt_audit(stream, 2, Fraction(8, 5), 200)
        terms = stream.prefix(201)
        expected = [n - 1 for n in range(2, 202) if oracle_mpal(terms[:n], 2)]
        c.check([r.index for r in audit.records] == expected, f"{name} indices")
        c.check(audit.all_schmidt, f"{name} schmidt")
        c.check(audit.i0 is not None and audit.goal_from_i0, f"{name} goal from i0")
    empty = schmidt_audit(periodic_stream((), (5,)), 2, Fraction(8, 5), 200)
    c.check(empty.records == (), "overline(5) has records")
    c.finish()


def test_criterion_11_galois_roundtrip():
    c = Criterion(11, "Galois: purely periodic <=> reduced on 500 random periods")
    rng = random.Random(500)
    for _ in range(500):
        period = tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 6)))
        pure = EventuallyPeriodicWord((), period)
        c.check(is_reduced(periodic_value(pure)), f"pure {period}")
        pre = tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 3)))
        mixed = EventuallyPeriodicWord(pre, period).canonical()
        c.check(is_reduced(periodic_value(mixed)) == mixed.is_purely_periodic, f"{mixed}")
    c.finish(f"{len(c.failures)} failures")


CLI_RUNS = [
    ["cf", "eval", "1,1,1"],
    ["mpal", "check", "2,1,1,3,1", "--m", "2"],
    ["quad", "solve", "2|1,1,2,2,3", "--json"],
    ["mpal", "density", "--stream", "fib:m=2,r=1,s=2", "--m", "2", "--depth", "3000", "--json"],
    ["audit", "stammer", "--stream", "g", "--depth", "600", "--max-period", "100", "--offset-ratio", "1", "--json"],
]


def test_criterion_12_determinism_and_runtime():
    c = Criterion(12, "byte-identical CLI runs; full suite within 5 minutes")
    for argv in CLI_RUNS:
        outs = [
            subprocess.run([sys.executable, "-m", "mpalkit", *argv], capture_output=True, check=False)
            for _ in range(2)
        ]
        c.check(outs[0].stdout == outs[1].stdout and outs[0].returncode == outs[1].returncode, " ".join(argv))
        c.check(outs[0].stdout != b"", f"no output from {' '.join(argv)}")
    c.check("6x^2-7x-22=0" in subprocess.run(
        [sys.executable, "-m", "mpalkit", "quad", "solve", "2|1,1,2,2,3"], capture_output=True, text=True
    ).stdout)
    elapsed = time.monotonic() - SESSION["start"]
    c.check(elapsed <= 300, f"suite took {elapsed:.1f}s")
    c.finish(f"session time so far {elapsed:.1f}s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-s"]))
