"""Slow, obviously-correct reference implementations used only by the tests."""

from __future__ import annotations

from collections import Counter


def is_pal(s: str) -> bool:
    return s == s[::-1]


def factors(s: str, n: int | None = None) -> set[str]:
    if n is not None:
        return {s[i : i + n] for i in range(len(s) - n + 1)}
    return {s[i:j] for i in range(len(s)) for j in range(i + 1, len(s) + 1)}


def palindromes(s: str) -> set[str]:
    """Distinct non-empty palindromic factors, cubic time."""
    return {f for f in factors(s) if is_pal(f)}


def defect(s: str) -> int:
    return len(s) + 1 - (1 + len(palindromes(s)))


def lps(s: str) -> str:
    for i in range(len(s)):
        if is_pal(s[i:]):
            return s[i:]
    return ""


def lazy_prefixes(s: str) -> list[int]:
    out = []
    for n in range(1, len(s) + 1):
        p = lps(s[:n])
        if s[:n].count(p) > 1 or s[: n - 1].find(p) != -1:
            out.append(n)
    return out


def pal_complexity(s: str, n_max: int) -> list[int]:
    pals = palindromes(s)
    return [1] + [sum(1 for p in pals if len(p) == n) for n in range(1, n_max + 1)]


def factor_complexity(s: str, n_max: int) -> list[int]:
    return [len(factors(s, n)) if n else 1 for n in range(n_max + 1)]


def occurrences(s: str, f: str) -> list[int]:
    return [i for i in range(len(s) - len(f) + 1) if s[i : i + len(f)] == f]


def complete_returns(s: str, f: str) -> Counter:
    """Factors of ``s`` with ``f`` as prefix and suffix and exactly two occurrences of ``f``."""
    out: Counter = Counter()
    for i in occurrences(s, f):
        for j in range(i + 1, len(s) - len(f) + 1):
            if s[j : j + len(f)] == f:
                out[s[i : j + len(f)]] += 1
                break
    return out


def oddities(s: str) -> set[frozenset]:
    out = set()
    for p in palindromes(s):
        for r in complete_returns(s, p):
            if not is_pal(r):
                out.add(frozenset((r, r[::-1])))
    return out


def closure(s: str) -> str:
    for k in range(len(s) + 1):
        cand = s + s[:k][::-1]
        if is_pal(cand):
            return cand
    raise AssertionError


def recurrence(s: str, n: int) -> int:
    need = factors(s, n)
    for ell in range(n, len(s) + 1):
        if all(need <= factors(s[i : i + ell], n) for i in range(len(s) - ell + 1)):
            return ell
    return len(s)


def fibonacci(n: int) -> str:
    a, b = "0", "01"
    while len(b) < n:
        a, b = b, b + a
    return b[:n]


def tribonacci(n: int) -> str:
    rules = {"0": "01", "1": "02", "2": "0"}
    s = "0"
    while len(s) < n:
        s = "".join(rules[c] for c in s)
    return s[:n]
