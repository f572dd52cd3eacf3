"""Occurrences, complete return words, oddities and recurrence estimates.

Complete returns are collected only between two occurrences that both lie in
the window; a final occurrence without successor marks the report as
censored instead of inventing a return.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .eertree import PalindromeIndex, PalindromeOracle
from .errors import NonMinimalPeriodError, PalindromeRejectedError, RangeError
from .words import Word, as_text, is_palindrome


@dataclass
class OccurrenceList:
    factor: str
    positions: list[int]

    def __len__(self):
        return len(self.positions)


def _find_all(s: str, f: str) -> list[int]:
    out = []
    i = s.find(f)
    while i != -1:
        out.append(i)
        i = s.find(f, i + 1)
    return out


def occurrences(w, f) -> OccurrenceList:
    """All start offsets of ``f`` in ``w``, overlaps included.

    The empty factor occurs at every boundary ``0..|w|``.
    """
    s, f = as_text(w), as_text(f)
    if not f:
        return OccurrenceList("", list(range(len(s) + 1)))
    return OccurrenceList(f, _find_all(s, f))


@dataclass
class ReturnReport:
    factor: str
    complete_returns: Counter
    return_words: Counter
    censored_tail: bool

    def non_palindromic(self) -> list[str]:
        return sorted(r for r in self.complete_returns if r != r[::-1])

    def to_json(self) -> dict:
        return {
            "factor": self.factor,
            "complete_returns": dict(sorted(self.complete_returns.items())),
            "return_words": dict(sorted(self.return_words.items())),
            "censored_tail": self.censored_tail,
        }


def complete_returns(w, f) -> ReturnReport:
    s, f = as_text(w), as_text(f)
    if not f:
        raise ValueError("complete returns need a non-empty factor")
    occ = _find_all(s, f)
    rets: Counter = Counter()
    words: Counter = Counter()
    for i, j in zip(occ, occ[1:]):
        rets[s[i : j + len(f)]] += 1
        words[s[i:j]] += 1
    return ReturnReport(f, rets, words, censored_tail=bool(occ))


def _palindrome_returns(s: str, idx: PalindromeIndex):
    """Yield ``(L, start, end)`` for every complete return ``s[start:end]`` of every palindrome of length L."""
    length = idx._len
    last_end = [-1] * len(length)
    for i in range(len(s)):
        j = i + 1
        for node in idx.suffix_chain(i):
            e = last_end[node]
            if e >= 0:
                yield length[node], e - length[node], j
            last_end[node] = j


@dataclass
class OdditySet:
    pairs: list[tuple[str, str]]  # (v, reversal(v)) with v the lexicographically smaller
    witnesses: dict[tuple[str, str], str] = field(default_factory=dict)

    def __len__(self):
        return len(self.pairs)

    def as_sets(self) -> set[frozenset]:
        return {frozenset(p) for p in self.pairs}

    def to_json(self) -> dict:
        return {
            "count": len(self.pairs),
            "pairs": [list(p) for p in self.pairs],
            "witnesses": [self.witnesses[p] for p in self.pairs],
        }


def oddities(w, p_max: int | None = None, index: PalindromeIndex | None = None) -> OdditySet:
    """Unordered pairs ``{v, reversal(v)}`` where ``v`` is a non-palindromic complete return of a palindrome.

    Only palindromes of length ``<= p_max`` are scanned when ``p_max`` is given.
    """
    s = as_text(w)
    idx = index or PalindromeIndex(s)
    oracle = PalindromeOracle(s)
    found: dict[tuple[str, str], str] = {}
    for L, a, b in _palindrome_returns(s, idx):
        if p_max is not None and L > p_max:
            continue
        if oracle.is_palindrome(a, b):
            continue
        v = s[a:b]
        r = v[::-1]
        key = (v, r) if v < r else (r, v)
        if key not in found:
            found[key] = s[a : a + L]
    pairs = sorted(found)
    return OdditySet(pairs, {p: found[p] for p in pairs})


def estimate_K(w, index: PalindromeIndex | None = None) -> int:
    """Least K such that every observed complete return of a palindrome of length >= K is a palindrome."""
    s = as_text(w)
    idx = index or PalindromeIndex(s)
    oracle = PalindromeOracle(s)
    worst = 0
    for L, a, b in _palindrome_returns(s, idx):
        if L > worst and not oracle.is_palindrome(a, b):
            worst = L
    return worst + 1 if worst else 0


@dataclass
class RecurrenceProfile:
    per_n: list[int]
    k_estimate: int

    def __getitem__(self, n):
        return self.per_n[n]


def recurrence_lengths(w, n_max: int) -> list[int]:
    """``R(n)`` for ``0 <= n <= n_max``: least window length containing every length-``n`` factor.

    For a factor with occurrences ``s1 < ... < sk`` every length-``l`` window
    contains it iff ``s1 + n``, each gap plus ``n - 1`` and ``|w| - sk`` are all
    at most ``l``.
    """
    s = as_text(w)
    L = len(s)
    if not 0 <= n_max <= L:
        raise RangeError(f"n_max {n_max} must be in 0..{L}")
    out = [0]
    for n in range(1, n_max + 1):
        first: dict[str, int] = {}
        last: dict[str, int] = {}
        gap: dict[str, int] = {}
        for i in range(L - n + 1):
            f = s[i : i + n]
            p = last.get(f)
            if p is None:
                first[f] = i
                gap[f] = 0
            elif i - p > gap[f]:
                gap[f] = i - p
            last[f] = i
        r = 0
        for f, s1 in first.items():
            need = max(s1 + n, gap[f] + n - 1, L - last[f])
            if need > r:
                r = need
        out.append(r)
    return out


def recurrence_function(w, n_max: int) -> RecurrenceProfile:
    return RecurrenceProfile(recurrence_lengths(w, n_max), estimate_K(w))


@dataclass
class AlternationVerdict:
    alternating: bool
    gaps_palindromic: bool
    bad_gaps: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.alternating and self.gaps_palindromic


def alternation_check(w, f) -> AlternationVerdict:
    """Do occurrences of ``f`` and its reversal alternate, with palindromic gap factors?"""
    s, f = as_text(w), as_text(f)
    if is_palindrome(f):
        raise PalindromeRejectedError(f"{f!r} is a palindrome")
    r = f[::-1]
    marks = sorted([(i, 0) for i in _find_all(s, f)] + [(i, 1) for i in _find_all(s, r)])
    alternating = all(a[1] != b[1] for a, b in zip(marks, marks[1:]))
    bad = []
    for (i, a), (j, b) in zip(marks, marks[1:]):
        g = s[i : j + len(f)]
        if a != b and g != g[::-1]:
            bad.append(g)
    return AlternationVerdict(alternating, not bad, sorted(set(bad)))


def primitive_root(w) -> str:
    """Shortest ``u`` with ``w = u^k``."""
    s = as_text(w)
    if not s:
        return s
    k = (s + s).find(s, 1)
    return s[:k] if len(s) % k == 0 else s


def is_minimal_period(w) -> bool:
    s = as_text(w)
    return bool(s) and primitive_root(s) == s


@dataclass
class PeriodicVerdict:
    finite_defect: bool
    split: tuple[str, str] | None

    def __bool__(self):
        return self.finite_defect


def periodic_defect_criterion(period) -> PeriodicVerdict:
    """Finite defect of ``period^omega`` iff the minimal period splits into two palindromes."""
    s = as_text(period)
    if not s:
        raise ValueError("period must be non-empty")
    if not is_minimal_period(s):
        raise NonMinimalPeriodError(
            f"{s!r} is not a minimal period; its primitive root is {primitive_root(s)!r}"
        )
    for i in range(len(s) + 1):
        p, q = s[:i], s[i:]
        if p == p[::-1] and q == q[::-1]:
            alpha = period._alphabet if isinstance(period, Word) else None
            return PeriodicVerdict(True, (Word(p, alpha), Word(q, alpha)))
    return PeriodicVerdict(False, None)
