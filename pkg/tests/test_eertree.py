import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from defectlab.eertree import (
    PalindromeOracle,
    build_index,
    defect,
    estimate_H,
    is_rich,
    longest_lazy_factor,
    lps,
    palindromic_complexity,
    windowed_defect,
)
from defectlab.errors import RangeError
from defectlab.words import Morphism, WordSpec, closure_level, generate_prefix

small_words = st.integers(1, 4).flatmap(
    lambda k: st.text(alphabet="abcd"[:k], max_size=200)
)
FIB = Morphism.parse("0=01,1=0")
SIGMA = Morphism.parse("0=cabcbac,1=d")
PHI = Morphism.parse("0=0100,1=01011,2=010111")


def sigma_fib(n):
    return WordSpec.morphic_image(WordSpec.fixed_point(FIB, 1), SIGMA, n)


def test_build_index_examples():
    assert build_index("").n_palindromes == 0
    idx = build_index("aa")
    assert idx.palindromes() == {"a", "aa"}
    assert idx.palcount == [1, 2]
    assert build_index(oracles.fibonacci(10)).palcount[-1] == 10


@pytest.mark.parametrize("w, n, p", [("abca", 4, "a"), ("cabc", 4, "c"), ("abcba", 5, "abcba")])
def test_lps_examples(w, n, p):
    assert lps(build_index(w), n) == p


def test_lps_range():
    with pytest.raises(RangeError):
        lps(build_index("abc"), 4)
    with pytest.raises(RangeError):
        lps(build_index("abc"), 0)


def test_defect_examples():
    rep = defect("abca")
    assert rep.defect == 1 and rep.lazy_prefixes == [4]
    assert defect(oracles.fibonacci(500)).defect == 0
    rep = defect(generate_prefix(WordSpec.periodic("abcabcacbacb", 48)))
    assert rep.defect == 4 and rep.saturation_length == 7


def test_windowed_defect_examples():
    rep = windowed_defect(sigma_fib(1), [64, 256, 1024])
    assert rep.growth == [1, 1, 1] and rep.stabilized and not rep.infinite_suspected
    trib = WordSpec.fixed_point(Morphism.parse("0=01,1=02,2=0"), 1)
    rep = windowed_defect(WordSpec.morphic_image(trib, PHI, 1), [256, 4096])
    assert rep.defect == 0 and rep.stabilized
    rep = windowed_defect(WordSpec.morphic_image(WordSpec.closure_sequence(1), PHI, 1), [120, 1330, 14640])
    assert rep.growth[0] < rep.growth[1] < rep.growth[2]
    assert rep.infinite_suspected and not rep.stabilized


def test_windowed_defect_rejects_bad_schedule():
    with pytest.raises(ValueError):
        windowed_defect(sigma_fib(1), [64, 64])
    with pytest.raises(ValueError):
        windowed_defect(sigma_fib(1), [])


def test_palindromic_complexity_examples():
    assert palindromic_complexity("aaa", 3) == [1, 1, 1, 1]
    assert palindromic_complexity(oracles.fibonacci(200), 3)[1:] == [2, 1, 2]
    assert palindromic_complexity(generate_prefix(WordSpec.periodic("abcabcacbacb", 48)), 1)[1] == 3
    with pytest.raises(RangeError):
        palindromic_complexity("abc", 4)


def test_is_rich_examples():
    assert is_rich(closure_level(2))
    assert not is_rich("abca")
    assert is_rich("")


def test_estimate_H_examples():
    assert estimate_H(oracles.fibonacci(1000)) == 0
    for n in (1024, 4096):
        assert estimate_H(generate_prefix(sigma_fib(n))) == 5
    hs = [estimate_H(generate_prefix(WordSpec.morphic_image(WordSpec.closure_sequence(1), PHI, n)))
          for n in (120, 1330, 14640)]
    assert hs[0] < hs[1] < hs[2]


def test_estimate_H_forms_differ_on_sigma_fib():
    w = generate_prefix(sigma_fib(2048))
    assert estimate_H(w, form="prefix") == 5
    assert estimate_H(w, form="factor") == 9
    with pytest.raises(ValueError):
        estimate_H(w, form="other")


@given(small_words)
def test_index_matches_brute_force(w):
    idx = build_index(w)
    assert idx.palindromes() == oracles.palindromes(w)
    assert idx.lazy_prefixes == oracles.lazy_prefixes(w)
    assert defect(w).defect == oracles.defect(w)
    n_max = min(len(w), 12)
    assert palindromic_complexity(idx, n_max) == oracles.pal_complexity(w, n_max)


@given(small_words)
def test_index_invariants(w):
    idx = build_index(w)
    pc = idx.palcount
    for n in range(1, len(w) + 1):
        step = pc[n - 1] - (pc[n - 2] if n > 1 else 0)
        assert step in (0, 1)
        assert pc[n - 1] <= n
        assert (step == 1) == idx.lps_is_unioccurrent(n)
        p = idx.lps(n)
        assert w[:n].endswith(p) and p == p[::-1]
    for pal, start, count in idx.registry():
        assert w[start : start + len(pal)] == pal
        assert count == len(oracles.occurrences(w, pal))
    rep = defect(w)
    assert rep.defect == len(rep.lazy_prefixes)
    assert all(b - a in (0, 1) for a, b in zip(rep.defect_per_prefix, rep.defect_per_prefix[1:]))


@given(small_words, st.data())
def test_defect_monotone_under_factors(w, data):
    if not w:
        return
    i = data.draw(st.integers(0, len(w) - 1))
    j = data.draw(st.integers(i + 1, len(w)))
    assert defect(w[i:j]).defect <= defect(w).defect


@given(st.text(alphabet="abc", max_size=30))
def test_longest_lazy_factor_matches_brute_force(w):
    best = 0
    for i in range(len(w)):
        for j in range(i + 1, len(w) + 1):
            f = w[i:j]
            p = oracles.lps(f)
            if f.count(p) > 1 or f.find(p) != len(f) - len(p):
                best = max(best, len(f))
    assert longest_lazy_factor(w) == best


@given(st.text(alphabet="ab", max_size=40), st.data())
def test_manacher_oracle(w, data):
    o = PalindromeOracle(w)
    a = data.draw(st.integers(0, len(w)))
    b = data.draw(st.integers(a, len(w)))
    assert o.is_palindrome(a, b) == oracles.is_pal(w[a:b])


@pytest.mark.slow
def test_linear_scaling():
    times = {}
    for n in (10**4, 10**5, 10**6):
        w = generate_prefix(WordSpec.fixed_point(FIB, n))
        t = time.perf_counter()
        assert defect(w).defect == 0
        times[n] = time.perf_counter() - t
    assert times[10**6] < 5
    # ten times the input must cost well under a hundred times the time
    assert times[10**6] / max(times[10**5], 1e-3) < 30
