"""Factor complexity, special factors, bilateral orders and the P/C equality residual.

Everything is windowed: a factor's extension letters are read only from
occurrences whose neighbour lies inside the word, so the first and last
positions contribute no extensions.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .eertree import PalindromeIndex, palindromic_complexity
from .errors import NotAFactorError, RangeError
from .words import as_text


class SuffixAutomaton:
    """Suffix automaton of a word; counts distinct factors of every length in O(|w|)."""

    def __init__(self, w):
        s = as_text(w)
        length = [0]
        link = [-1]
        nxt = [{}]
        last = 0
        for c in s:
            cur = len(length)
            length.append(length[last] + 1)
            link.append(0)
            nxt.append({})
            p = last
            while p != -1 and c not in nxt[p]:
                nxt[p][c] = cur
                p = link[p]
            if p != -1:
                q = nxt[p][c]
                if length[p] + 1 == length[q]:
                    link[cur] = q
                else:
                    clone = len(length)
                    length.append(length[p] + 1)
                    link.append(link[q])
                    nxt.append(dict(nxt[q]))
                    while p != -1 and nxt[p].get(c) == q:
                        nxt[p][c] = clone
                        p = link[p]
                    link[q] = clone
                    link[cur] = clone
            last = cur
        self._len = length
        self._link = link
        self._next = nxt
        self.size = len(s)

    def __contains__(self, f):
        state = 0
        for c in as_text(f):
            state = self._next[state].get(c)
            if state is None:
                return False
        return True

    def factor_counts(self, n_max: int) -> list[int]:
        """``C(n)`` for ``0 <= n <= n_max``; each state covers lengths ``(len(link), len]``."""
        diff = [0] * (n_max + 2)
        length, link = self._len, self._link
        for v in range(1, len(length)):
            lo = length[link[v]] + 1
            if lo > n_max:
                continue
            hi = min(length[v], n_max)
            diff[lo] += 1
            diff[hi + 1] -= 1
        out = [1]
        run = 0
        for n in range(1, n_max + 1):
            run += diff[n]
            out.append(run)
        return out


@dataclass
class FactorStats:
    count: int = 0
    left: set = field(default_factory=set)
    right: set = field(default_factory=set)
    both: set = field(default_factory=set)  # (a, b) with a·f·b present


class FactorIndex:
    """Distinct factors of each queried length with counts and extension letters."""

    def __init__(self, w):
        self.source = w
        self._s = as_text(w)
        self._levels: dict[int, dict[str, FactorStats]] = {}
        self._sam = None

    @property
    def sam(self) -> SuffixAutomaton:
        if self._sam is None:
            self._sam = SuffixAutomaton(self._s)
        return self._sam

    def level(self, n: int) -> dict[str, FactorStats]:
        if n in self._levels:
            return self._levels[n]
        s = self._s
        L = len(s)
        if not 0 <= n <= L:
            raise RangeError(f"factor length {n} outside 0..{L}")
        table: dict[str, FactorStats] = {}
        for i in range(L - n + 1):
            f = s[i : i + n]
            st = table.get(f)
            if st is None:
                st = table[f] = FactorStats()
            st.count += 1
            a = s[i - 1] if i > 0 else None
            b = s[i + n] if i + n < L else None
            if a is not None:
                st.left.add(a)
            if b is not None:
                st.right.add(b)
            if a is not None and b is not None:
                st.both.add((a, b))
        self._levels[n] = table
        return table

    def factors(self, n: int) -> list[str]:
        return sorted(self.level(n))

    def complexity(self, n_max: int) -> list[int]:
        return self.sam.factor_counts(n_max)

    def is_special(self, f: str) -> bool:
        st = self.level(len(f)).get(f)
        return st is not None and (len(st.left) >= 2 or len(st.right) >= 2)


def factor_complexity(w, n_max: int) -> list[int]:
    """``C(n)`` for ``0 <= n <= n_max`` over factors fully inside ``w``."""
    s = as_text(w)
    if not 0 <= n_max <= len(s):
        raise RangeError(f"n_max {n_max} outside 0..{len(s)}")
    return SuffixAutomaton(s).factor_counts(n_max)


@dataclass
class SpecialFactorReport:
    factor: str
    left_extensions: set
    right_extensions: set
    is_left_special: bool
    is_right_special: bool
    is_bispecial: bool
    bilateral_order: int | None  # None when every occurrence touches the window edge
    palindromic_extensions: set | None  # letters a with a·f·a present; None for non-palindromes

    def to_json(self) -> dict:
        return {
            "factor": self.factor,
            "left_extensions": sorted(self.left_extensions),
            "right_extensions": sorted(self.right_extensions),
            "is_left_special": self.is_left_special,
            "is_right_special": self.is_right_special,
            "is_bispecial": self.is_bispecial,
            "bilateral_order": self.bilateral_order,
            "palindromic_extensions": None
            if self.palindromic_extensions is None
            else sorted(self.palindromic_extensions),
        }


def _report(f: str, st: FactorStats) -> SpecialFactorReport:
    b = len(st.both) - len(st.left) - len(st.right) + 1 if st.both else None
    pext = {a for a, c in st.both if a == c} if f == f[::-1] else None
    ls, rs = len(st.left) >= 2, len(st.right) >= 2
    return SpecialFactorReport(f, set(st.left), set(st.right), ls, rs, ls and rs, b, pext)


def special_report(w, f, index: FactorIndex | None = None) -> SpecialFactorReport:
    index = index or FactorIndex(w)
    f = as_text(f)
    if len(f) > len(index._s):
        raise NotAFactorError(f"{f!r} is longer than the word")
    st = index.level(len(f)).get(f)
    if st is None:
        raise NotAFactorError(f"{f!r} does not occur in the word")
    return _report(f, st)


@dataclass(frozen=True)
class EqualityResidual:
    n: int
    residual: int


def trusted_length(w) -> int:
    """Largest ``m`` such that both halves of ``w`` already contain every length-``m`` factor of ``w``.

    Past this length the window has not seen the whole local language, so
    counts there are boundary artefacts.
    """
    s = as_text(w)
    L = len(s)
    if L < 2:
        return 0
    h = L // 2
    full = SuffixAutomaton(s).factor_counts(h)
    left = SuffixAutomaton(s[:h]).factor_counts(h)
    right = SuffixAutomaton(s[h:]).factor_counts(h)
    m = 0
    while m + 1 <= h and full[m + 1] == left[m + 1] == right[m + 1]:
        m += 1
    return m


def trusted_n_max(w) -> int:
    """Largest ``n`` for which the residual at ``n`` only uses saturated factor sets."""
    return max(trusted_length(w) - 2, 0)


def eq1_profile(w, n_max: int | None = None, pal_index: PalindromeIndex | None = None) -> list[EqualityResidual]:
    """``C(n+1) - C(n) + 2 - P(n) - P(n+1)`` for ``0 <= n <= n_max``."""
    s = as_text(w)
    if n_max is None:
        n_max = trusted_n_max(s)
    if n_max < 0 or n_max + 1 > len(s):
        raise RangeError(f"n_max + 1 = {n_max + 1} exceeds word length {len(s)}")
    C = factor_complexity(s, n_max + 1)
    P = palindromic_complexity(pal_index or PalindromeIndex(s), n_max + 1)
    return [EqualityResidual(n, C[n + 1] - C[n] + 2 - P[n] - P[n + 1]) for n in range(n_max + 1)]


def find_N(w, n_max: int | None = None, profile: list[EqualityResidual] | None = None) -> int | None:
    """Least ``N`` with zero residual on all of ``N..n_max``, or None.

    The trailing zero run must span at least ``max(8, n_max / 4)`` lengths
    before ``N`` is reported, guarding against edge-of-window flukes.
    """
    if profile is None:
        profile = eq1_profile(w, n_max)
    if not profile:
        return None
    top = profile[-1].n
    N = top + 1
    for r in reversed(profile):
        if r.residual != 0:
            break
        N = r.n
    run = top - N + 1
    if run <= 0 or run < max(8, top / 4):
        return None
    return N


@dataclass
class RichnessVerdict:
    passed: bool
    offenders: list[SpecialFactorReport]
    checked: int


def richness_via_bispecials(w, n_max: int, index: FactorIndex | None = None) -> RichnessVerdict:
    """Bispecial test of richness: ``b(f) = 0`` for non-palindromes, ``#Pext(f) - 1`` for palindromes."""
    index = index or FactorIndex(w)
    offenders = []
    checked = 0
    for n in range(0, min(n_max, len(index._s)) + 1):
        for f, st in sorted(index.level(n).items()):
            rep = _report(f, st)
            if not rep.is_bispecial or rep.bilateral_order is None:
                continue
            checked += 1
            if rep.palindromic_extensions is None:
                ok = rep.bilateral_order == 0
            else:
                ok = rep.bilateral_order == len(rep.palindromic_extensions) - 1
            if not ok:
                offenders.append(rep)
    return RichnessVerdict(not offenders, offenders, checked)


def reversal_closure_check(w, n_max: int, index: FactorIndex | None = None) -> list[str]:
    """Factors of length ``1..n_max`` whose reversal does not occur in ``w``."""
    index = index or FactorIndex(w)
    out = []
    for n in range(1, min(n_max, len(index._s)) + 1):
        table = index.level(n)
        out.extend(f for f in sorted(table) if f[::-1] not in table)
    return out
