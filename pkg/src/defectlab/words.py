"""Alphabets, finite words, morphisms, and the generators for infinite-word prefixes.

Symbols are arbitrary printable tokens.  Each token is stored as a single
character internally so every word is a plain :class:`str` and slicing,
hashing and ``str.find`` work at C speed.  Single-character tokens map to
themselves; longer tokens map to code points in the Unicode private use area.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import (
    DomainMismatchError,
    ErasingMorphismError,
    NotProlongableError,
    SizeBudgetError,
)

DEFAULT_BUDGET = 2**24
_PUA = 0xE000


def default_budget() -> int:
    """Symbol budget, overridable through ``DEFECTLAB_BUDGET``."""
    raw = os.environ.get("DEFECTLAB_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


class Alphabet:
    """Ordered finite set of distinct symbols."""

    __slots__ = ("symbols", "_to_char", "_to_token")

    def __init__(self, symbols: Iterable[str]):
        symbols = tuple(str(s) for s in symbols)
        if not symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(symbols)) != len(symbols):
            raise ValueError(f"duplicate symbols in alphabet {symbols!r}")
        for s in symbols:
            if not s or not s.isprintable() or "," in s or s.isspace():
                raise ValueError(f"invalid symbol {s!r}")
        self.symbols = symbols
        self._to_char = {}
        self._to_token = {}
        for i, s in enumerate(symbols):
            c = s if len(s) == 1 else chr(_PUA + i)
            self._to_char[s] = c
            self._to_token[c] = s

    @classmethod
    def infer(cls, text: str) -> Alphabet | None:
        """Sorted alphabet of the characters in ``text`` (None when empty)."""
        chars = sorted(set(text))
        return cls(chars) if chars else None

    @property
    def chars(self) -> tuple[str, ...]:
        """Internal characters in alphabet order."""
        return tuple(self._to_char[s] for s in self.symbols)

    def char(self, token: str) -> str:
        try:
            return self._to_char[token]
        except KeyError:
            raise DomainMismatchError(f"symbol {token!r} not in alphabet {self.symbols}") from None

    def token(self, char: str) -> str:
        try:
            return self._to_token[char]
        except KeyError:
            raise DomainMismatchError(f"character {char!r} not in alphabet {self.symbols}") from None

    @property
    def single_char(self) -> bool:
        return all(len(s) == 1 for s in self.symbols)

    def __contains__(self, char):
        return char in self._to_token

    def __iter__(self):
        return iter(self.symbols)

    def __len__(self):
        return len(self.symbols)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return f"Alphabet({list(self.symbols)!r})"


class Word(str):
    """Immutable finite word: a ``str`` of internal characters plus its alphabet.

    ``Word("abc") == "abc"`` holds, so words compare naturally with literals.
    Slicing returns plain ``str``; wrap the result again when the alphabet
    matters (for display of multi-character symbols).
    """

    def __new__(cls, text: str = "", alphabet: Alphabet | None = None):
        self = super().__new__(cls, text)
        if alphabet is not None:
            for c in set(text):
                if c not in alphabet:
                    raise DomainMismatchError(
                        f"symbol {c!r} not in alphabet {alphabet.symbols}"
                    )
        self._alphabet = alphabet
        return self

    @classmethod
    def parse(cls, literal: str, alphabet: Alphabet | None = None) -> Word:
        """Parse a literal; comma-separated when symbols are multi-character."""
        if "," in literal:
            tokens = [t.strip() for t in literal.split(",") if t.strip()]
            if alphabet is None:
                alphabet = Alphabet(sorted(set(tokens)))
            return cls("".join(alphabet.char(t) for t in tokens), alphabet)
        if alphabet is not None and not alphabet.single_char:
            # a lone multi-character token, or a word of single-char tokens
            if literal in alphabet.symbols:
                return cls(alphabet.char(literal), alphabet)
        return cls(literal, alphabet)

    @property
    def alphabet(self) -> Alphabet | None:
        if self._alphabet is None:
            return Alphabet.infer(self)
        return self._alphabet

    def tokens(self) -> list[str]:
        a = self._alphabet
        if a is None or a.single_char:
            return list(self)
        return [a.token(c) for c in self]

    def format(self) -> str:
        """Display text: comma-separated tokens when any symbol is multi-character."""
        a = self._alphabet
        if a is None or a.single_char:
            return str(self)
        return ",".join(self.tokens())

    def __repr__(self):
        return f"Word({self.format()!r})"

    def __reduce__(self):
        return (Word, (str(self), self._alphabet))


def as_text(w) -> str:
    """Plain ``str`` view of a word-like argument."""
    return str.__str__(w) if isinstance(w, str) else "".join(w)


def _like(text: str, ref) -> Word:
    return Word(text, ref._alphabet if isinstance(ref, Word) else None)


def reversal(w) -> Word:
    return _like(as_text(w)[::-1], w)


def is_palindrome(w) -> bool:
    s = as_text(w)
    return s == s[::-1]


def prefix_function(s: str) -> list[int]:
    """KMP failure function: ``pi[i]`` is the longest proper border of ``s[:i+1]``."""
    pi = [0] * len(s)
    k = 0
    for i in range(1, len(s)):
        c = s[i]
        while k and s[k] != c:
            k = pi[k - 1]
        if s[k] == c:
            k += 1
        pi[i] = k
    return pi


def lps_length(s: str) -> int:
    """Length of the longest palindromic suffix of ``s`` in linear time."""
    if not s:
        return 0
    # longest prefix of reversed(s) that is a suffix of s; "\x00" cannot be a symbol
    pi = prefix_function(s[::-1] + "\x00" + s)
    return pi[-1]


def palindromic_closure(w) -> Word:
    """Shortest palindrome having ``w`` as a prefix."""
    s = as_text(w)
    k = lps_length(s)
    return _like(s + s[: len(s) - k][::-1], w)


_CLOSURE_ALPHABET = Alphabet("012")


def closure_level(i: int, budget: int | None = None) -> Word:
    """The palindrome ``v_i`` of the closure sequence over {0, 1, 2}.

    ``v_0`` is empty and ``v_i`` is the palindromic closure of
    ``v 0 v 1 v 1 v 0 v 2 v 2`` with ``v = v_{i-1}``; ``|v_i| = 11**i - 1``.
    """
    if i < 0:
        raise ValueError(f"closure level must be non-negative, got {i}")
    budget = default_budget() if budget is None else budget
    length = 11**i - 1
    if length > budget:
        raise SizeBudgetError(length, budget)
    v = ""
    for _ in range(i):
        v = as_text(palindromic_closure(v + "0" + v + "1" + v + "1" + v + "0" + v + "2" + v + "2"))
    return Word(v, _CLOSURE_ALPHABET)


def closure_level_for_length(n: int) -> int:
    """Smallest level whose closure word has at least ``n`` symbols."""
    i = 0
    while 11**i - 1 < n:
        i += 1
    return i


class Morphism:
    """Letter-to-word map from a domain alphabet to a codomain alphabet."""

    def __init__(
        self,
        rules: Mapping[str, str],
        domain: Alphabet | None = None,
        codomain: Alphabet | None = None,
    ):
        if domain is None:
            domain = Alphabet(list(rules))
        if codomain is None:
            if any("," in v for v in rules.values()):
                toks = {t.strip() for v in rules.values() for t in v.split(",") if t.strip()}
            else:
                toks = {c for v in rules.values() for c in v}
            codomain = Alphabet(sorted(toks)) if toks else domain
        missing = [a for a in domain if a not in rules]
        extra = [a for a in rules if a not in domain.symbols]
        if missing or extra:
            raise DomainMismatchError(
                f"rules must cover the domain exactly (missing {missing}, extra {extra})"
            )
        self.domain = domain
        self.codomain = codomain
        self._images = {}
        for a in domain:
            img = rules[a]
            img = img if isinstance(img, Word) and img._alphabet == codomain else Word.parse(img, codomain)
            self._images[domain.char(a)] = str.__str__(img)

    @classmethod
    def parse(cls, text: str, domain=None, codomain=None) -> Morphism:
        """Parse ``"0=01,1=0"``; use ``;`` between rules when images are comma-separated."""
        sep = ";" if ";" in text else ","
        rules = {}
        for part in text.split(sep):
            part = part.strip()
            if not part:
                continue
            if "=" not in part:
                raise ValueError(f"malformed rule {part!r}; expected letter=image")
            k, v = part.split("=", 1)
            rules[k.strip()] = v.strip()
        return cls(rules, domain, codomain)

    @classmethod
    def from_json(cls, obj) -> Morphism:
        if isinstance(obj, str):
            obj = json.loads(obj)
        domain = Alphabet(obj["alphabet"]) if obj.get("alphabet") else None
        codomain = Alphabet(obj["codomain"]) if obj.get("codomain") else None
        return cls(obj["rules"], domain, codomain)

    def to_json(self) -> dict:
        return {"rules": self.rules(), "alphabet": list(self.domain.symbols)}

    def rules(self) -> dict[str, str]:
        return {a: self.image(a).format() for a in self.domain}

    def image(self, letter: str) -> Word:
        """Image of a domain token (or internal character)."""
        c = letter if letter in self._images else self.domain.char(letter)
        return Word(self._images[c], self.codomain)

    @property
    def images(self) -> dict[str, str]:
        """Internal-character images keyed by internal domain character."""
        return dict(self._images)

    @property
    def non_erasing(self) -> bool:
        return all(self._images.values())

    @property
    def injective_on_letters(self) -> bool:
        vals = list(self._images.values())
        return len(set(vals)) == len(vals)

    @property
    def max_image_length(self) -> int:
        return max(len(v) for v in self._images.values())

    @property
    def min_image_length(self) -> int:
        return min(len(v) for v in self._images.values())

    def is_prolongable(self, letter: str) -> bool:
        c = letter if letter in self._images else self.domain.char(letter)
        img = self._images[c]
        return len(img) >= 2 and img[0] == c

    def __call__(self, w) -> Word:
        return apply_morphism(self, w)

    def __eq__(self, other):
        return (
            isinstance(other, Morphism)
            and self.domain == other.domain
            and self._images == other._images
        )

    def __hash__(self):
        return hash((self.domain, tuple(sorted(self._images.items()))))

    def __repr__(self):
        body = ", ".join(f"{a}->{self.image(a).format()}" for a in self.domain)
        return f"Morphism({body})"


def apply_morphism(m: Morphism, w) -> Word:
    images = m._images
    s = as_text(w)
    try:
        out = "".join([images[c] for c in s])
    except KeyError as exc:
        raise DomainMismatchError(
            f"symbol {exc.args[0]!r} outside morphism domain {m.domain.symbols}"
        ) from None
    return Word(out, m.codomain)


def compose(outer: Morphism, inner: Morphism) -> Morphism:
    """The morphism ``a -> outer(inner(a))``."""
    if set(inner.codomain.chars) - set(outer.domain.chars):
        raise DomainMismatchError("inner codomain is not contained in outer domain")
    rules = {a: apply_morphism(outer, inner.image(a)) for a in inner.domain}
    return Morphism(rules, inner.domain, outer.codomain)


KINDS = ("literal", "periodic", "fixed_point", "morphic_image", "closure_sequence")


@dataclass(frozen=True)
class WordSpec:
    """Recipe for a finite prefix of an infinite (or finite literal) word."""

    kind: str
    length: int
    text: str | None = None
    period: str | None = None
    morphism: Morphism | None = None
    start: str | None = None
    inner: WordSpec | None = None
    level: int | None = None
    extra: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown word kind {self.kind!r}; expected one of {KINDS}")
        if self.length < 1:
            raise ValueError(f"requested length must be >= 1, got {self.length}")
        if self.kind == "literal" and self.text is None:
            raise ValueError("literal spec needs text")
        if self.kind == "periodic" and not self.period:
            raise ValueError("periodic spec needs a non-empty period")
        if self.kind in ("fixed_point", "morphic_image") and self.morphism is None:
            raise ValueError(f"{self.kind} spec needs a morphism")
        if self.kind == "fixed_point":
            start = self.start if self.start is not None else self.morphism.domain.symbols[0]
            if not self.morphism.is_prolongable(start):
                raise NotProlongableError(
                    f"morphism is not prolongable on {start!r}: image "
                    f"{self.morphism.image(start).format()!r}"
                )
        if self.kind == "morphic_image" and self.inner is None:
            raise ValueError("morphic_image spec needs an inner spec")
        if self.kind == "closure_sequence" and self.level is not None and self.level < 0:
            raise ValueError(f"closure level must be non-negative, got {self.level}")

    def with_length(self, n: int) -> WordSpec:
        return WordSpec(self.kind, n, self.text, self.period, self.morphism,
                        self.start, self.inner, self.level)

    @classmethod
    def literal(cls, text: str, length: int | None = None) -> WordSpec:
        return cls("literal", length if length is not None else max(len(text), 1), text=text)

    @classmethod
    def periodic(cls, period: str, length: int) -> WordSpec:
        return cls("periodic", length, period=period)

    @classmethod
    def fixed_point(cls, morphism: Morphism, length: int, start: str | None = None) -> WordSpec:
        return cls("fixed_point", length, morphism=morphism, start=start)

    @classmethod
    def morphic_image(cls, inner: WordSpec, morphism: Morphism, length: int) -> WordSpec:
        return cls("morphic_image", length, morphism=morphism, inner=inner)

    @classmethod
    def closure_sequence(cls, length: int, level: int | None = None) -> WordSpec:
        return cls("closure_sequence", length, level=level)

    def to_json(self) -> dict:
        out = {"type": self.kind, "length": self.length}
        if self.kind == "literal":
            out["text"] = self.text
        elif self.kind == "periodic":
            out["period"] = self.period
        elif self.kind == "fixed_point":
            out["morphism"] = self.morphism.to_json()
            out["start"] = self.start if self.start is not None else self.morphism.domain.symbols[0]
        elif self.kind == "morphic_image":
            out["inner"] = self.inner.to_json()
            out["morphism"] = self.morphism.to_json()
        elif self.level is not None:
            out["level"] = self.level
        return out

    @classmethod
    def from_json(cls, obj) -> WordSpec:
        if isinstance(obj, str):
            obj = json.loads(obj)
        kind = obj.get("type")
        length = int(obj["length"]) if "length" in obj else None

        def morph(o):
            return Morphism.from_json(o) if isinstance(o, dict) else Morphism.parse(o)

        if kind == "literal":
            return cls.literal(obj["text"], length)
        if length is None:
            raise ValueError(f"{kind} spec needs a length")
        if kind == "periodic":
            return cls.periodic(obj["period"], length)
        if kind == "fixed_point":
            return cls.fixed_point(morph(obj["morphism"]), length, obj.get("start"))
        if kind == "morphic_image":
            inner = dict(obj["inner"])
            inner.setdefault("length", 1)
            return cls.morphic_image(cls.from_json(inner), morph(obj["morphism"]), length)
        if kind == "closure_sequence":
            return cls.closure_sequence(length, obj.get("level"))
        raise ValueError(f"unknown word kind {kind!r}; expected one of {KINDS}")


def generate_prefix(spec: WordSpec, budget: int | None = None) -> Word:
    """The first ``spec.length`` symbols of the word described by ``spec``."""
    budget = default_budget() if budget is None else budget
    n = spec.length
    if n > budget:
        raise SizeBudgetError(n, budget)
    kind = spec.kind
    if kind == "literal":
        return _truncate(Word.parse(spec.text), n)
    if kind == "periodic":
        period = Word.parse(spec.period)
        reps = -(-n // len(period))
        return Word((str.__str__(period) * reps)[:n], period.alphabet)
    if kind == "fixed_point":
        m = spec.morphism
        start = m.domain.char(spec.start) if spec.start is not None else m.domain.chars[0]
        images = m._images
        out = list(images[start])
        pos = 1
        while len(out) < n:
            if pos >= len(out):
                raise NotProlongableError("fixed-point iteration stalled on an erasing image")
            out.extend(images[out[pos]])
            pos += 1
        return Word("".join(out[:n]), m.codomain)
    if kind == "morphic_image":
        m = spec.morphism
        if not m.non_erasing:
            raise ErasingMorphismError("morphic-image generation needs a non-erasing morphism")
        inner_len = math.ceil(n / m.min_image_length) + 1
        inner = generate_prefix(spec.inner.with_length(inner_len), budget)
        return Word(str.__str__(apply_morphism(m, inner))[:n], m.codomain)
    if kind == "closure_sequence":
        level = spec.level if spec.level is not None else closure_level_for_length(n)
        v = closure_level(level, budget)
        if len(v) < n:
            raise ValueError(f"closure level {level} has only {len(v)} symbols, {n} requested")
        return Word(str.__str__(v)[:n], v.alphabet)
    raise ValueError(f"unknown word kind {kind!r}")


def _truncate(w: Word, n: int) -> Word:
    return Word(str.__str__(w)[:n], w._alphabet)
