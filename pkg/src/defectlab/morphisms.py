"""Morphism classes: P, P_ret, standard special P, conjugation, and the rich-preimage decomposition.

A morphism is in P if every image is ``p q_a`` with ``p`` and each ``q_a``
palindromes.  It is in P_ret if there is a palindrome ``p`` such that each
``phi(b) p`` is a palindrome containing ``p`` exactly twice (as prefix and as
suffix) and the images are pairwise distinct.  Witnesses are searched
shortest first, so the reported one is canonical.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .eertree import PalindromeIndex, defect
from .errors import DomainMismatchError, InsufficientWindowError
from .words import Alphabet, Morphism, Word, apply_morphism, as_text, compose, is_palindrome

P = "P"
P_RET = "P_ret"
STANDARD_P = "standard-P"
STANDARD_SPECIAL_P = "standard-special-P"


@dataclass
class ClassWitness:
    """Evidence of class membership.

    For class P, ``parts`` maps each domain letter to its palindrome ``q_a``.
    For the standard classes a part is either a word or a negative integer
    ``-k``, meaning the image is ``r`` with its last ``k`` symbols removed.
    """

    class_name: str
    p: str
    parts: dict = field(default_factory=dict)
    depth: int | None = None

    @property
    def r(self) -> str:
        return self.p

    def to_json(self) -> dict:
        out = {"class": self.class_name, "p": self.p,
               "parts": {k: v for k, v in self.parts.items()}}
        if self.depth is not None:
            out["verdict"] = f"validated-to-depth-{self.depth}"
        return out


@dataclass(frozen=True)
class ConjugacyWitness:
    shift: str
    direction: str  # "left": w^-1 phi(a) w ; "right": w phi(a) w^-1

    def to_json(self) -> dict:
        return {"shift": self.shift, "direction": self.direction}


def _tokens(m: Morphism) -> list[tuple[str, str]]:
    return [(a, m.domain.char(a)) for a in m.domain]


def _common_prefix(words) -> str:
    words = list(words)
    if not words:
        return ""
    lo, hi = min(words), max(words)
    k = 0
    while k < len(lo) and lo[k] == hi[k]:
        k += 1
    return lo[:k]


def _common_suffix(words) -> str:
    return _common_prefix([w[::-1] for w in words])[::-1]


def validate_class_P(m: Morphism, p: str) -> ClassWitness | None:
    p = as_text(p)
    if p != p[::-1]:
        return None
    parts = {}
    for a, c in _tokens(m):
        img = m._images[c]
        if not img.startswith(p):
            return None
        q = img[len(p):]
        if q != q[::-1]:
            return None
        parts[a] = q
    return ClassWitness(P, p, parts)


def check_class_P(m: Morphism) -> ClassWitness | None:
    """Class-P witness with the longest valid common palindromic prefix, or None."""
    if not m.non_erasing:
        raise ValueError("class P check needs a non-erasing morphism")
    cp = _common_prefix(m._images.values())
    for k in range(len(cp), -1, -1):
        wit = validate_class_P(m, cp[:k])
        if wit is not None:
            return wit
    return None


def _count_occurrences(s: str, f: str) -> list[int]:
    if not f:
        return list(range(len(s) + 1))
    out = []
    i = s.find(f)
    while i != -1:
        out.append(i)
        i = s.find(f, i + 1)
    return out


def validate_class_Pret(m: Morphism, p: str) -> bool:
    p = as_text(p)
    if p != p[::-1] or not m.injective_on_letters:
        return False
    for img in m._images.values():
        s = img + p
        if s != s[::-1]:
            return False
        if _count_occurrences(s, p) != [0, len(img)]:
            return False
    return True


def check_class_Pret(m: Morphism, p_max: int | None = None) -> ClassWitness | None:
    """Shortest palindrome ``p`` with ``|p| <= p_max`` witnessing P_ret, or None.

    The empty witness is read literally: ``phi(b)`` must then contain the
    empty word exactly twice, which forces single-letter images.
    """
    if not m.non_erasing:
        raise ValueError("class P_ret check needs a non-erasing morphism")
    if p_max is None:
        p_max = 2 * m.max_image_length
    # p is a prefix of phi(b) p for every b, hence a prefix of phi(b0)^omega
    seed = m._images[m.domain.chars[0]]
    periodic = seed * (p_max // len(seed) + 1)
    for k in range(p_max + 1):
        p = periodic[:k]
        if validate_class_Pret(m, p):
            return ClassWitness(P_RET, p, {a: m._images[c] for a, c in _tokens(m)})
    return None


def compose_Pret(outer: Morphism, p_outer: str, inner: Morphism, p_inner: str) -> tuple[Morphism, ClassWitness]:
    """Composition ``outer . inner`` with witness ``outer(p_inner) p_outer``."""
    if set(inner.codomain.chars) - set(outer.domain.chars):
        raise DomainMismatchError("inner codomain must lie in the outer domain")
    if not validate_class_Pret(outer, p_outer) or not validate_class_Pret(inner, p_inner):
        raise ValueError("both morphisms need valid P_ret witnesses")
    m = compose(outer, inner)
    p = as_text(apply_morphism(outer, p_inner)) + as_text(p_outer)
    if not validate_class_Pret(m, p):
        raise AssertionError("composed witness failed validation")
    return m, ClassWitness(P_RET, p, {a: m._images[c] for a, c in _tokens(m)})


def conjugate(m: Morphism, w, direction: str = "left") -> Morphism:
    """``w^-1 phi(a) w`` (direction "left") or ``w phi(a) w^-1`` (direction "right")."""
    w = as_text(w)
    rules = {}
    for a, c in _tokens(m):
        img = m._images[c]
        if direction == "left":
            if not img.startswith(w):
                raise ValueError(f"{w!r} is not a prefix of every image")
            rules[a] = img[len(w):] + w
        elif direction == "right":
            if not img.endswith(w):
                raise ValueError(f"{w!r} is not a suffix of every image")
            rules[a] = w + img[: len(img) - len(w)]
        else:
            raise ValueError(f"direction must be 'left' or 'right', got {direction!r}")
    return Morphism({a: Word(v, m.codomain) for a, v in rules.items()}, m.domain, m.codomain)


def pret_to_P(m: Morphism, p: str) -> tuple[ConjugacyWitness, Morphism, ClassWitness]:
    """Conjugate a P_ret morphism into class P by writing ``p = q x reversal(q)``."""
    p = as_text(p)
    if not validate_class_Pret(m, p):
        raise ValueError(f"{p!r} is not a P_ret witness")
    half = len(p) // 2
    q, x = p[:half], p[half : len(p) - half]
    sigma = conjugate(m, q, "left")
    wit = validate_class_P(sigma, x)
    if wit is None:
        raise AssertionError("conjugate failed class-P validation")
    return ConjugacyWitness(q, "left"), sigma, wit


def _standard_parts(m: Morphism, r: str) -> dict | None:
    parts = {}
    for a, c in _tokens(m):
        img = m._images[c]
        if img.startswith(r):
            q = img[len(r):]
            if q != q[::-1]:
                return None
            parts[a] = q
        elif r.startswith(img) and img:
            pi = r[len(img):]
            if pi != pi[::-1]:
                return None
            parts[a] = -len(pi)
        else:
            return None
    return parts


def _synchronized(m: Morphism, r: str, depth: int, samples=()) -> bool:
    images = m._images
    letters = m.domain.chars
    targets = {c: images[c] + r for c in letters}

    def check(word: str) -> bool:
        starts, pos = [], 0
        for y in word:
            starts.append(pos)
            pos += len(images[y])
        text = "".join(images[y] for y in word) + r
        allowed = set(zip(starts, word))
        for x, t in targets.items():
            for i in _count_occurrences(text, t):
                if (i, x) not in allowed:
                    return False
        return True

    for k in range(1, depth + 1):
        for ys in product(letters, repeat=k):
            if not check("".join(ys)):
                return False
    return all(check(as_text(s)) for s in samples)


def validate_standard_special_P(m: Morphism, r: str, depth: int = 3, samples=()) -> ClassWitness | None:
    r = as_text(r)
    if r != r[::-1]:
        return None
    parts = _standard_parts(m, r)
    if parts is None:
        return None
    finals = [img[-1:] for img in m._images.values()]
    if len(set(finals)) != len(finals) or "" in finals:
        return None
    if not _synchronized(m, r, depth, samples):
        return None
    return ClassWitness(STANDARD_SPECIAL_P, r, parts, depth)


def _standard_candidates(m: Morphism, r_max: int) -> list[str]:
    longest = max(m._images.values(), key=len)
    cands = {longest[:k] for k in range(len(longest) + 1)}
    for k in range(1, len(longest) + 1):
        pi = longest[:k]
        if pi == pi[::-1]:
            cands.add(longest + pi)
    return sorted((r for r in cands if len(r) <= r_max and r == r[::-1]), key=lambda r: (len(r), r))


def check_standard_special_P(m: Morphism, window=None, depth: int = 3, r_max: int | None = None) -> ClassWitness | None:
    """Shortest palindrome ``r`` making ``m`` a standard special P-morphism, or None.

    The occurrence condition cannot be decided from finitely many samples; it
    is checked on the images of every domain word up to ``depth`` letters
    plus the optional ``window`` (a domain word or list of them), and the
    witness records the depth.
    """
    if r_max is None:
        r_max = 2 * m.max_image_length
    samples = [] if window is None else ([window] if isinstance(window, str) else list(window))
    for r in _standard_candidates(m, r_max):
        wit = validate_standard_special_P(m, r, depth, samples)
        if wit is not None:
            return wit
    return None


def binary_pret_to_standard_special(m: Morphism, p: str, depth: int = 3) -> tuple[ConjugacyWitness, Morphism, ClassWitness]:
    """Conjugate a binary P_ret morphism by the common suffix of its images into a standard special P-morphism."""
    if len(m.domain) != 2:
        raise DomainMismatchError("binary_pret_to_standard_special needs a two-letter domain")
    p = as_text(p)
    if not validate_class_Pret(m, p):
        raise ValueError(f"{p!r} is not a P_ret witness")
    p1 = _common_suffix(m._images.values())
    sigma = conjugate(m, p1, "right")
    # sigma(x) = p1 phi(x) p1^-1 starts with p1 p reversal(p1); that word is the palindrome r
    r = p1 + p + p1[::-1]
    wit = validate_standard_special_P(sigma, r, depth)
    if wit is None:
        raise AssertionError(f"conjugate failed standard special validation with r={r!r}")
    return ConjugacyWitness(p1, "right"), sigma, wit


def is_primitive(m: Morphism) -> bool:
    """Some power of the letter-incidence relation is everywhere positive.

    Powers are tried up to the Wielandt bound ``n^2 - 2n + 2``.
    """
    if set(m.domain.chars) != set(m.codomain.chars):
        raise DomainMismatchError("primitivity needs domain == codomain")
    letters = m.domain.chars
    full = frozenset(letters)
    step = {c: frozenset(m._images[c]) for c in letters}
    n = len(letters)
    reach = dict(step)
    for _ in range(max(n * n - 2 * n + 2, 1)):
        if all(reach[c] == full for c in letters):
            return True
        reach = {c: frozenset().union(*(step[d] for d in reach[c])) for c in letters}
    return all(reach[c] == full for c in letters)


@dataclass
class DerivedDecomposition:
    palindromic_prefix: str
    alphabet: Alphabet
    morphism: Morphism
    derived_prefix: Word
    residual_tail: str
    derived_defect: int
    pret_valid: bool
    k_estimate: int
    h_estimate: int
    window_needed: int

    def reconstruct(self) -> str:
        return as_text(apply_morphism(self.morphism, self.derived_prefix)) + self.residual_tail

    def to_json(self) -> dict:
        return {
            "p": self.palindromic_prefix,
            "return_words": self.morphism.rules(),
            "derived_prefix_length": len(self.derived_prefix),
            "derived_prefix_head": self.derived_prefix.format()[:200],
            "residual_tail": self.residual_tail,
            "derived_defect": self.derived_defect,
            "P_ret_valid": self.pret_valid,
            "K": self.k_estimate,
            "H": self.h_estimate,
            "window_needed": self.window_needed,
        }


def derive_rich_preimage(w, K: int | None = None, H: int | None = None) -> DerivedDecomposition:
    """Decode ``w`` over the return words of a palindromic prefix ``p``.

    ``p`` is the shortest palindromic prefix longer than ``K``.  The window must
    exceed ``max(2 R(K), H)``, and every return word of ``p`` must already
    appear in the first half of the window; otherwise
    :class:`InsufficientWindowError` is raised.
    """
    from .eertree import estimate_H
    from .returns import estimate_K, recurrence_lengths

    s = as_text(w)
    idx = PalindromeIndex(s)
    if K is None:
        K = estimate_K(s, idx)
    if H is None:
        H = estimate_H(idx)
    if K >= len(s):
        raise InsufficientWindowError(f"window of length {len(s)} cannot hold R({K})", needed=K + 1)
    R_K = recurrence_lengths(s, K)[K]
    needed = max(2 * R_K, H) + 1
    if len(s) < needed:
        raise InsufficientWindowError(
            f"window length {len(s)} must exceed max(2R(K), H) = {needed - 1}", needed=needed
        )
    p = None
    for n in range(K + 1, len(s) + 1):
        if idx.lps_length(n) == n:
            p = s[:n]
            break
    if p is None:
        raise InsufficientWindowError(f"no palindromic prefix longer than K={K} in the window")
    occ = _count_occurrences(s, p)
    if len(occ) < 2:
        raise InsufficientWindowError(f"palindrome {p!r} returns fewer than once in the window")
    half = len(s) // 2
    order: dict[str, int] = {}
    seen_early: set[str] = set()
    codes = []
    for i, j in zip(occ, occ[1:]):
        q = s[i:j]
        if q not in order:
            order[q] = len(order)
        if j + len(p) <= half:
            seen_early.add(q)
        codes.append(order[q])
    if set(order) != seen_early:
        late = sorted(set(order) - seen_early, key=order.get)
        raise InsufficientWindowError(
            f"return words of {p!r} not closed in the first half of the window: {late!r} appear late",
            needed=2 * len(s),
        )
    m_size = len(order)
    alphabet = Alphabet([str(b) for b in range(m_size)])
    rules = {str(b): q for q, b in order.items()}
    codomain = w._alphabet if isinstance(w, Word) and w._alphabet is not None else Alphabet.infer(s)
    phi = Morphism({k: Word(v, codomain) for k, v in rules.items()}, alphabet, codomain)
    derived = Word("".join(alphabet.char(str(b)) for b in codes), alphabet)
    tail = s[occ[-1]:]
    valid = validate_class_Pret(phi, p)
    dec = DerivedDecomposition(
        palindromic_prefix=p,
        alphabet=alphabet,
        morphism=phi,
        derived_prefix=derived,
        residual_tail=tail,
        derived_defect=defect(derived).defect,
        pret_valid=valid,
        k_estimate=K,
        h_estimate=H,
        window_needed=needed,
    )
    if dec.reconstruct() != s:
        raise AssertionError("derived decomposition does not reconstruct the window")
    return dec
