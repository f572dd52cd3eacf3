"""Palindromic tree (eertree) over a word, and the defect analyses built on it.

The tree gives, in one left-to-right pass, the longest palindromic suffix of
every prefix and whether that suffix is new.  A prefix whose longest
palindromic suffix already occurred earlier is *lazy*; the defect of a word
is the number of lazy prefixes, which is also ``|w| + 1`` minus the number of
distinct palindromes including the empty one.
"""

from __future__ import annotations

from array import array
from dataclasses import dataclass, field
from itertools import accumulate

from .errors import RangeError
from .words import Word, as_text

_IMAG, _EMPTY = 0, 1


class PalindromeIndex:
    """Eertree over ``source``.

    Node 0 is the imaginary root (length -1), node 1 the empty palindrome;
    neither is part of the palindrome registry.
    """

    def __init__(self, w):
        self.source = w if isinstance(w, Word) else Word(as_text(w))
        s = as_text(w)
        n = len(s)
        length = [-1, 0]
        link = [_IMAG, _IMAG]
        edges = [{}, {}]
        first_end = [-1, -1]
        lps_node = array("i", bytes(4 * n))
        created = bytearray(n)
        last = _EMPTY
        for i, c in enumerate(s):
            cur = last
            while True:
                j = i - 1 - length[cur]
                if j >= 0 and s[j] == c:
                    break
                if cur == _IMAG:
                    break
                cur = link[cur]
            node = edges[cur].get(c)
            if node is None:
                node = len(length)
                new_len = length[cur] + 2
                if new_len == 1:
                    suf = _EMPTY
                else:
                    p = link[cur]
                    while True:
                        j = i - 1 - length[p]
                        if (j >= 0 and s[j] == c) or p == _IMAG:
                            break
                        p = link[p]
                    suf = edges[p][c]
                length.append(new_len)
                link.append(suf)
                edges.append({})
                first_end.append(i)
                edges[cur][c] = node
                created[i] = 1
            last = node
            lps_node[i] = node
        self._len = length
        self._link = link
        self._edges = edges
        self._first_end = first_end
        self._lps_node = lps_node
        self._created = created
        self._occ = None

    def __len__(self):
        return len(self._created)

    @property
    def n_palindromes(self) -> int:
        """Distinct non-empty palindromic factors."""
        return len(self._len) - 2

    def _check(self, n):
        if not 1 <= n <= len(self._created):
            raise RangeError(f"prefix length {n} outside 1..{len(self._created)}")

    def lps_length(self, n: int) -> int:
        self._check(n)
        return self._len[self._lps_node[n - 1]]

    def lps_start(self, n: int) -> int:
        return n - self.lps_length(n)

    def lps(self, n: int) -> Word:
        """Longest palindromic suffix of the length-``n`` prefix."""
        start = self.lps_start(n)
        return Word(as_text(self.source)[start:n], self.source._alphabet)

    def lps_is_unioccurrent(self, n: int) -> bool:
        self._check(n)
        return bool(self._created[n - 1])

    @property
    def palcount(self) -> list[int]:
        """``palcount[n-1]``: distinct non-empty palindromes in the length-``n`` prefix."""
        return list(accumulate(self._created))

    @property
    def lazy_prefixes(self) -> list[int]:
        c = self._created
        return [i + 1 for i in range(len(c)) if not c[i]]

    def occurrence_counts(self) -> list[int]:
        """Total occurrences per node, finalized in one pass over suffix links."""
        if self._occ is None:
            occ = [0] * len(self._len)
            for node in self._lps_node:
                occ[node] += 1
            link = self._link
            for node in range(len(occ) - 1, 1, -1):
                occ[link[node]] += occ[node]
            self._occ = occ
        return self._occ

    def registry(self) -> list[tuple[str, int, int]]:
        """``(palindrome, first start offset, occurrence count)`` per distinct palindrome."""
        s = as_text(self.source)
        occ = self.occurrence_counts()
        out = []
        for node in range(2, len(self._len)):
            end = self._first_end[node] + 1
            start = end - self._len[node]
            out.append((s[start:end], start, occ[node]))
        return out

    def palindromes(self) -> set[str]:
        return {p for p, _, _ in self.registry()}

    def length_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for L in self._len[2:]:
            counts[L] = counts.get(L, 0) + 1
        return counts

    def longest_palindrome(self) -> int:
        return max(self._len[2:], default=0)

    def suffix_chain(self, i: int):
        """Nodes of all palindromic suffixes ending at position ``i``, longest first."""
        node = self._lps_node[i]
        length, link = self._len, self._link
        while length[node] > 0:
            yield node
            node = link[node]


def build_index(w) -> PalindromeIndex:
    return PalindromeIndex(w)


def lps(idx: PalindromeIndex, n: int) -> Word:
    return idx.lps(n)


class PalindromeOracle:
    """Manacher radii giving O(1) palindrome tests on any factor of ``s``."""

    def __init__(self, w):
        s = as_text(w)
        t = "\x00".join(s)
        t = "\x00" + t + "\x00" if s else "\x00"
        m = len(t)
        rad = [0] * m
        center = right = 0
        for i in range(m):
            r = min(rad[2 * center - i], right - i) if i < right else 0
            while i - r - 1 >= 0 and i + r + 1 < m and t[i - r - 1] == t[i + r + 1]:
                r += 1
            rad[i] = r
            if i + r > right:
                center, right = i, i + r
        self._rad = rad

    def is_palindrome(self, a: int, b: int) -> bool:
        """True iff ``s[a:b]`` is a palindrome."""
        return b - a <= 1 or self._rad[a + b] >= b - a


@dataclass
class DefectReport:
    defect: int
    defect_per_prefix: array
    saturation_length: int
    lazy_prefixes: list[int]

    def to_json(self) -> dict:
        return {
            "defect": self.defect,
            "saturation_length": self.saturation_length,
            "lazy_prefixes": self.lazy_prefixes[:64],
            "lazy_prefix_count": len(self.lazy_prefixes),
        }


@dataclass
class WindowedDefectReport(DefectReport):
    schedule: list[int] = field(default_factory=list)
    growth: list[int] = field(default_factory=list)
    stabilized: bool = False
    infinite_suspected: bool = False

    def to_json(self) -> dict:
        out = super().to_json()
        out.update(
            schedule=self.schedule,
            growth=self.growth,
            stabilized=self.stabilized,
            infinite_suspected=self.infinite_suspected,
        )
        return out


def _defect_from_index(idx: PalindromeIndex) -> DefectReport:
    n = len(idx)
    lazy = idx.lazy_prefixes
    by_count = n + 1 - (1 + idx.n_palindromes)
    if by_count != len(lazy):
        raise AssertionError(
            f"defect cross-check failed: {by_count} by counting vs {len(lazy)} lazy prefixes"
        )
    per_prefix = array("i", bytes(4 * n))
    d = 0
    created = idx._created
    for i in range(n):
        if not created[i]:
            d += 1
        per_prefix[i] = d
    return DefectReport(
        defect=by_count,
        defect_per_prefix=per_prefix,
        saturation_length=lazy[-1] if lazy else 0,
        lazy_prefixes=lazy,
    )


def defect(w) -> DefectReport:
    """Defect of a finite word, with the per-prefix profile and lazy prefixes."""
    if isinstance(w, PalindromeIndex):
        return _defect_from_index(w)
    return _defect_from_index(PalindromeIndex(w))


def windowed_defect(spec, schedule) -> WindowedDefectReport:
    """Defect of each scheduled prefix of ``spec`` (a WordSpec or a word).

    A window can never certify infinite defect; ``infinite_suspected`` is set
    only when the defect strictly increased at every scheduled step.
    """
    from .words import WordSpec, generate_prefix

    schedule = [int(x) for x in schedule]
    if not schedule:
        raise ValueError("schedule must be non-empty")
    if any(b <= a for a, b in zip(schedule, schedule[1:])) or schedule[0] < 1:
        raise ValueError(f"schedule must be positive and increasing, got {schedule}")
    top = schedule[-1]
    if isinstance(spec, WordSpec):
        w = generate_prefix(spec.with_length(top))
    else:
        w = spec
        if len(w) < top:
            raise RangeError(f"word of length {len(w)} shorter than window {top}")
        w = Word(as_text(w)[:top], w._alphabet if isinstance(w, Word) else None)
    base = defect(w)
    growth = [base.defect_per_prefix[n - 1] for n in schedule]
    return WindowedDefectReport(
        defect=growth[-1],
        defect_per_prefix=base.defect_per_prefix,
        saturation_length=base.saturation_length,
        lazy_prefixes=base.lazy_prefixes,
        schedule=schedule,
        growth=growth,
        stabilized=len(growth) >= 2 and growth[-1] == growth[-2],
        infinite_suspected=len(growth) >= 2
        and all(b > a for a, b in zip(growth, growth[1:])),
    )


def palindromic_complexity(w, n_max: int) -> list[int]:
    """Number of distinct palindromic factors of each length ``0..n_max``."""
    idx = w if isinstance(w, PalindromeIndex) else PalindromeIndex(w)
    if not 0 <= n_max <= len(idx):
        raise RangeError(f"n_max {n_max} outside 0..{len(idx)}")
    counts = idx.length_counts()
    return [1] + [counts.get(n, 0) for n in range(1, n_max + 1)]


def is_rich(w) -> bool:
    """Zero defect, checked both by counting and by unioccurrence of every lps."""
    idx = w if isinstance(w, PalindromeIndex) else PalindromeIndex(w)
    by_count = len(idx) + 1 - (1 + idx.n_palindromes) == 0
    # independent route: the lps node's first occurrence must end at this prefix
    lps_node, first_end = idx._lps_node, idx._first_end
    by_unioccurrence = all(first_end[lps_node[i]] == i for i in range(len(idx)))
    if by_count != by_unioccurrence:
        raise AssertionError("richness criteria disagree")
    return by_count


def longest_lazy_factor(w) -> int:
    """Length of the longest factor whose longest palindromic suffix is not unioccurrent.

    For an end position ``j`` with palindromic suffixes of lengths
    ``L1 > L2 > ...``, the factors ending at ``j`` whose lps is the ``k``-th
    suffix are exactly those with length in ``[Lk, L(k-1) - 1]``; such a factor
    is lazy iff it still contains the previous occurrence of that palindrome.
    Cost is the total number of palindromic-suffix occurrences.
    """
    idx = w if isinstance(w, PalindromeIndex) else PalindromeIndex(w)
    length = idx._len
    last_end = [-1] * len(length)
    best = 0
    for i in range(len(idx)):
        j = i + 1
        prev_len = None
        for node in idx.suffix_chain(i):
            L = length[node]
            e = last_end[node]
            if e >= 0:
                i_min = 0 if prev_len is None else j - prev_len + 1
                if e - L >= i_min and j - i_min > best:
                    best = j - i_min
            last_end[node] = j
            prev_len = L
    return best


def estimate_H(w, form: str = "prefix") -> int:
    """Least H past which the longest palindromic suffix is always unioccurrent.

    ``form="prefix"`` quantifies over prefixes of ``w`` (H is one more than the
    last lazy prefix); ``form="factor"`` quantifies over all factors.  Both
    forms are finite together on an infinite word, but their least values
    differ: on the Fibonacci image under 0->cabcbac, 1->d they are 5 and 9.
    Returns 0 when no lazy prefix (resp. factor) exists.  Window estimate.
    """
    if form == "prefix":
        idx = w if isinstance(w, PalindromeIndex) else PalindromeIndex(w)
        lazy = idx.lazy_prefixes
        return lazy[-1] + 1 if lazy else 0
    if form == "factor":
        best = longest_lazy_factor(w)
        return best + 1 if best else 0
    raise ValueError(f"form must be 'prefix' or 'factor', got {form!r}")
