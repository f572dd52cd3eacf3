"""Built-in corpus of named words and morphisms with their expected analysis values.

Definitions live in ``data/fixtures.json``: a WordSpec or morphism per
fixture plus a list of expectations.  Each expectation has exactly one
``source`` tag: ``literature`` (a published value), ``computed`` (recorded
from an independent brute-force computation) or ``trivial``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from functools import lru_cache
from importlib import resources

from . import complexity, eertree, morphisms, returns
from .words import Morphism, WordSpec, apply_morphism, as_text, closure_level, generate_prefix

SOURCES = ("literature", "computed", "trivial")


@dataclass(frozen=True)
class Expectation:
    analysis: str
    value: object
    source: str
    params: dict = field(default_factory=dict, compare=False)


@dataclass
class Fixture:
    name: str
    description: str
    spec: WordSpec | None
    morphism: Morphism | None
    expected: list[Expectation]
    # "calibrated": length is the smallest power of two reproducing every expectation;
    # "construction": length is fixed by the word's construction
    window_policy: str = "calibrated"

    @property
    def window(self) -> int | None:
        return self.spec.length if self.spec is not None else None

    def word(self, length: int | None = None):
        if self.spec is None:
            raise ValueError(f"fixture {self.name!r} defines a morphism, not a word")
        spec = self.spec if length is None else self.spec.with_length(length)
        return generate_prefix(spec)


@dataclass
class CheckResult:
    fixture: str
    analysis: str
    expected: object
    observed: object
    source: str

    @property
    def passed(self) -> bool:
        return self.expected == self.observed


@lru_cache(maxsize=1)
def _raw() -> list[dict]:
    text = resources.files("defectlab").joinpath("data/fixtures.json").read_text(encoding="utf-8")
    return json.loads(text)["fixtures"]


def fixture_names() -> list[str]:
    return [f["name"] for f in _raw()]


def _parse(obj: dict) -> Fixture:
    expected = []
    for e in obj["expected"]:
        if e.get("source") not in SOURCES:
            raise ValueError(f"fixture {obj['name']}: bad source tag {e.get('source')!r}")
        expected.append(Expectation(e["analysis"], e["value"], e["source"], e.get("params", {})))
    spec = WordSpec.from_json(obj["spec"]) if "spec" in obj else None
    morph = Morphism.from_json(obj["morphism"]) if "morphism" in obj else None
    return Fixture(obj["name"], obj.get("description", ""), spec, morph, expected,
                   obj.get("window_policy", "calibrated"))


def load_fixture(name: str) -> Fixture:
    for obj in _raw():
        if obj["name"] == name:
            return _parse(obj)
    raise KeyError(f"unknown fixture {name!r}; known: {', '.join(fixture_names())}")


def all_fixtures() -> list[Fixture]:
    return [_parse(obj) for obj in _raw()]


def closure_block(i: int) -> str:
    """``v 0 v 1 v 1 v 0 v 2 v 2`` with ``v = v_i``; its palindromic closure is ``v_{i+1}``."""
    v = as_text(closure_level(i))
    return v + "0" + v + "1" + v + "1" + v + "0" + v + "2" + v + "2"


EX57_PHI = "0=0100,1=01011,2=010111"
EX57_P = "010"


def oddity_growth_words(i: int) -> tuple[str, str, str]:
    """``(o_i, O_i, window)`` for the closure word under 0->0100, 1->01011, 2->010111.

    ``o_i = 1 phi(v_i) p 1`` is a palindrome and ``O_i = 1 phi(v_i 1 v_i 0 v_i 2 v_i) p 1``
    is one of its complete returns; ``window`` is ``phi(v_{i+1})``, which contains it.
    """
    phi = Morphism.parse(EX57_PHI)
    v = as_text(closure_level(i))
    img = lambda x: as_text(apply_morphism(phi, x))  # noqa: E731
    small = "1" + img(v) + EX57_P + "1"
    big = "1" + img(v + "1" + v + "0" + v + "2" + v) + EX57_P + "1"
    window = img(closure_level(i + 1))
    return small, big, window


def _closure_occurrences(i: int) -> bool:
    """``v_i x v_i`` holds ``v_i`` twice and ``0 v_{i-1} x v_{i-1} 0`` once, for each letter x."""
    v, u = as_text(closure_level(i)), as_text(closure_level(i - 1))
    for x in "012":
        s = v + x + v
        if len(returns.occurrences(s, v)) != 2:
            return False
        if len(returns.occurrences(s, "0" + u + x + u + "0")) != 1:
            return False
    return True


def _eq1_zero(w):
    prof = complexity.eq1_profile(w)
    return all(r.residual == 0 for r in prof)


def _growth(fx, params):
    rep = eertree.windowed_defect(fx.spec, params["schedule"])
    return {"growth": rep.growth, "stabilized": rep.stabilized,
            "infinite_suspected": rep.infinite_suspected}


def _witness(x):
    return None if x is None else x.p


def _oddity_growth(levels):
    out = []
    for i in levels:
        small, big, window = oddity_growth_words(i)
        rep = returns.complete_returns(window, small)
        out.append(small == small[::-1] and big != big[::-1] and big in rep.complete_returns)
    return all(out)


def _observe(fx: Fixture, e: Expectation, cache: dict):
    a = e.analysis
    p = e.params
    if fx.morphism is not None:
        m = fx.morphism
        if a == "P_ret_witness":
            return _witness(morphisms.check_class_Pret(m))
        if a == "P_witness":
            return _witness(morphisms.check_class_P(m))
        if a == "standard_special_r":
            return _witness(morphisms.check_standard_special_P(m))
        if a == "primitive":
            return morphisms.is_primitive(m)
        if a == "pret_to_P":
            conj, sigma, wit = morphisms.pret_to_P(m, p["p"])
            return {"shift": conj.shift, "rules": sigma.rules(), "p": wit.p, "parts": wit.parts}
        raise ValueError(f"unknown morphism analysis {a!r}")
    if a == "defect_growth":
        return _growth(fx, p)
    if a == "v_rich":
        return all(eertree.is_rich(closure_level(i)) for i in range(p["max_level"] + 1))
    if a == "block_palindromes":
        return [
            len(eertree.build_index(closure_block(i)).palindromes()) + 1 - (6 * len(closure_level(i)) + 7)
            for i in range(p["max_level"] + 1)
        ]
    if a == "closure_occurrences":
        return all(_closure_occurrences(i) for i in range(1, p["max_level"] + 1))
    if a == "oddity_growth":
        return _oddity_growth(p["levels"])
    if "word" not in cache:
        cache["word"] = fx.word()
        cache["index"] = eertree.build_index(cache["word"])
    w, idx = cache["word"], cache["index"]
    if a == "defect":
        return eertree.defect(idx).defect
    if a == "saturation_length":
        return eertree.defect(idx).saturation_length
    if a == "rich":
        return eertree.is_rich(idx)
    if a == "oddities":
        return len(returns.oddities(w, p.get("p_max"), idx))
    if a == "oddity_pairs":
        return [list(x) for x in returns.oddities(w, p.get("p_max"), idx).pairs]
    if a == "K":
        return returns.estimate_K(w, idx)
    if a == "H":
        return eertree.estimate_H(idx)
    if a == "find_N":
        return complexity.find_N(w)
    if a == "eq1_zero":
        return _eq1_zero(w)
    if a == "bispecial_richness":
        return complexity.richness_via_bispecials(w, p.get("n_max", 20)).passed
    if a == "reversal_closed":
        return not complexity.reversal_closure_check(w, p.get("n_max", 8))
    if a == "periodic_criterion":
        return returns.periodic_defect_criterion(fx.spec.period).finite_defect
    if a == "derived_p":
        return morphisms.derive_rich_preimage(w).palindromic_prefix
    if a == "derived_defect":
        return morphisms.derive_rich_preimage(w).derived_defect
    raise ValueError(f"unknown word analysis {a!r}")


def check_fixture(fx: Fixture | str, length: int | None = None) -> list[CheckResult]:
    """Evaluate every expectation of a fixture, optionally at a different window length."""
    if isinstance(fx, str):
        fx = load_fixture(fx)
    if length is not None and fx.spec is not None:
        fx = replace(fx, spec=fx.spec.with_length(length))
    cache: dict = {}
    out = []
    for e in fx.expected:
        try:
            observed = _observe(fx, e, cache)
        except Exception as exc:  # reported as a failed check, never hidden
            observed = f"error: {type(exc).__name__}: {exc}"
        out.append(CheckResult(fx.name, e.analysis, e.value, observed, e.source))
    return out
